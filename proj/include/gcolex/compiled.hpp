#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gcolex/operators.hpp"

namespace gcolex {

// Mixed-radix index over a set of sites; the first site is the most significant digit.
class LocalSpace {
 public:
  LocalSpace(std::vector<Site> sites, std::size_t radix);

  const std::vector<Site>& sites() const { return sites_; }
  std::size_t radix() const { return radix_; }
  std::uint64_t size() const { return size_; }
  int position(Site s) const;
  std::uint64_t stride(int pos) const { return strides_[pos]; }
  void decode(std::uint64_t code, std::span<Elem> digits) const;
  std::uint64_t encode(std::span<const Elem> digits) const;
  // Embeds local digits into a global configuration with all other sites at the identity.
  Configuration to_global(std::uint64_t code, std::size_t num_sites) const;
  std::uint64_t from_global(std::span<const Elem> config) const;

 private:
  std::vector<Site> sites_;
  std::size_t radix_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

// An operator sum lowered onto a local space with integer weights over a common denominator.
class CompiledFactor {
 public:
  CompiledFactor(const OperatorAsSum& op, const LocalSpace& space, const FiniteGroup& g);
  std::int64_t denominator() const { return den_; }

  // Appends weight * factor |code> to out. digits must be the decoded code.
  template <class Sink>
  void apply(std::uint64_t code, std::span<const Elem> digits, std::int64_t weight, Sink&& sink) const;

 private:
  struct Move {
    int pos;
    std::uint64_t stride;
    std::vector<Elem> map;
  };
  struct Check {
    std::vector<std::pair<int, bool>> factors;
    std::vector<std::vector<Elem>> pre_maps;  // per factor, empty when the pre-permutation is trivial there
    std::vector<bool> accept;
  };
  struct CTerm {
    std::int64_t weight;
    std::vector<Move> moves;
    std::vector<Check> checks;
  };
  const FiniteGroup* g_;
  std::vector<CTerm> terms_;
  std::int64_t den_ = 1;
};

using SparseCodes = std::vector<std::pair<std::uint64_t, std::int64_t>>;

// Scratch accumulator reused across applications.
class Accumulator {
 public:
  explicit Accumulator(std::uint64_t space_size);
  void add(std::uint64_t code, std::int64_t w);
  // Returns merged nonzero entries sorted by code and resets.
  SparseCodes take();

 private:
  bool dense_;
  std::vector<std::int64_t> values_;
  std::vector<std::uint64_t> touched_;
  SparseCodes pending_;
};

// Product of factors; factors[0] acts first.
class CompiledChain {
 public:
  CompiledChain(const std::vector<OperatorAsSum>& factors, const LocalSpace& space, const FiniteGroup& g);
  std::int64_t denominator() const { return den_; }
  SparseCodes apply(const SparseCodes& in, Accumulator& acc) const;
  std::size_t length() const { return factors_.size(); }

 private:
  const LocalSpace* space_;
  std::vector<CompiledFactor> factors_;
  std::int64_t den_ = 1;
};

template <class Sink>
void CompiledFactor::apply(std::uint64_t code, std::span<const Elem> digits, std::int64_t weight, Sink&& sink) const {
  for (const auto& t : terms_) {
    bool ok = true;
    for (const auto& c : t.checks) {
      Elem acc = FiniteGroup::id;
      for (std::size_t i = 0; i < c.factors.size(); ++i) {
        Elem x = digits[c.factors[i].first];
        if (!c.pre_maps[i].empty()) x = c.pre_maps[i][x];
        acc = g_->mul(acc, c.factors[i].second ? g_->inv(x) : x);
      }
      if (!c.accept[acc]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::uint64_t out = code;
    for (const auto& m : t.moves) {
      Elem d = digits[m.pos];
      out = out + m.stride * m.map[d] - m.stride * d;
    }
    sink(out, weight * t.weight);
  }
}

}  // namespace gcolex
