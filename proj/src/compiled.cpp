#include "gcolex/compiled.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gcolex {

LocalSpace::LocalSpace(std::vector<Site> sites, std::size_t radix) : sites_(std::move(sites)), radix_(radix) {
  strides_.assign(sites_.size(), 1);
  for (std::size_t i = sites_.size(); i-- > 0;) {
    strides_[i] = size_;
    if (size_ > UINT64_MAX / radix_) throw std::overflow_error("local space does not fit in 64-bit codes");
    size_ *= radix_;
  }
}

int LocalSpace::position(Site s) const {
  auto it = std::find(sites_.begin(), sites_.end(), s);
  return it == sites_.end() ? -1 : static_cast<int>(it - sites_.begin());
}

void LocalSpace::decode(std::uint64_t code, std::span<Elem> digits) const {
  for (std::size_t i = sites_.size(); i-- > 0;) {
    digits[i] = static_cast<Elem>(code % radix_);
    code /= radix_;
  }
}

std::uint64_t LocalSpace::encode(std::span<const Elem> digits) const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < sites_.size(); ++i) c = c * radix_ + digits[i];
  return c;
}

Configuration LocalSpace::to_global(std::uint64_t code, std::size_t num_sites) const {
  Configuration digits(sites_.size()), out(num_sites, FiniteGroup::id);
  decode(code, digits);
  for (std::size_t i = 0; i < sites_.size(); ++i) out[sites_[i]] = digits[i];
  return out;
}

std::uint64_t LocalSpace::from_global(std::span<const Elem> config) const {
  std::uint64_t c = 0;
  for (Site s : sites_) c = c * radix_ + config[s];
  return c;
}

namespace {

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  std::int64_t l = a / std::gcd(a, b);
  if (l > INT64_MAX / b) throw std::overflow_error("denominator overflow");
  return l * b;
}

std::vector<Elem> action_map(const FiniteGroup& g, const LocalAction& a) {
  std::vector<Elem> m(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) m[x] = g.mul(g.mul(a.left, static_cast<Elem>(x)), g.inv(a.right));
  return m;
}

}  // namespace

CompiledFactor::CompiledFactor(const OperatorAsSum& op, const LocalSpace& space, const FiniteGroup& g) : g_(&g) {
  for (const auto& t : op.terms()) den_ = lcm_checked(den_, t.coef.den());
  for (const auto& t : op.terms()) {
    CTerm ct;
    ct.weight = t.coef.num() * (den_ / t.coef.den());
    for (const auto& a : t.op.actions()) {
      int pos = space.position(a.site);
      if (pos < 0) throw std::invalid_argument("operator acts outside its local space");
      ct.moves.push_back({pos, space.stride(pos), action_map(g, a)});
    }
    for (const auto& gd : t.guards) {
      Check c;
      c.accept = gd.pred.accept;
      for (const auto& f : gd.pred.factors) {
        int pos = space.position(f.site);
        if (pos < 0) throw std::invalid_argument("predicate outside its local space");
        c.factors.push_back({pos, f.inverted});
        std::vector<Elem> m;
        for (const auto& a : gd.pre.actions())
          if (a.site == f.site) m = action_map(g, a);
        c.pre_maps.push_back(std::move(m));
      }
      ct.checks.push_back(std::move(c));
    }
    if (ct.weight != 0) terms_.push_back(std::move(ct));
  }
}

namespace {
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;
}

Accumulator::Accumulator(std::uint64_t space_size) : dense_(space_size <= kDenseLimit) {
  if (dense_) values_.assign(space_size, 0);
}

void Accumulator::add(std::uint64_t code, std::int64_t w) {
  if (!dense_) {
    pending_.push_back({code, w});
    return;
  }
  if (values_[code] == 0) touched_.push_back(code);
  values_[code] += w;
  // An entry that cancels to zero stays in touched_; take() filters it.
}

SparseCodes Accumulator::take() {
  SparseCodes out;
  if (dense_) {
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    for (auto c : touched_) {
      if (values_[c] != 0) out.push_back({c, values_[c]});
      values_[c] = 0;
    }
    touched_.clear();
    return out;
  }
  std::sort(pending_.begin(), pending_.end());
  for (const auto& [c, w] : pending_) {
    if (!out.empty() && out.back().first == c)
      out.back().second += w;
    else
      out.push_back({c, w});
  }
  pending_.clear();
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

CompiledChain::CompiledChain(const std::vector<OperatorAsSum>& factors, const LocalSpace& space,
                             const FiniteGroup& g)
    : space_(&space) {
  for (const auto& f : factors) {
    factors_.emplace_back(f, space, g);
    std::int64_t d = factors_.back().denominator();
    if (den_ > INT64_MAX / d) throw std::overflow_error("denominator overflow");
    den_ *= d;
  }
}

SparseCodes CompiledChain::apply(const SparseCodes& in, Accumulator& acc) const {
  SparseCodes cur = in;
  std::vector<Elem> digits(space_->sites().size());
  for (const auto& f : factors_) {
    for (const auto& [code, w] : cur) {
      space_->decode(code, digits);
      f.apply(code, digits, w, [&](std::uint64_t out, std::int64_t x) { acc.add(out, x); });
    }
    cur = acc.take();
  }
  return cur;
}

}  // namespace gcolex
