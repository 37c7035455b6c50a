#pragma once

#include <span>
#include <vector>

#include "gcolex/colex.hpp"
#include "gcolex/group.hpp"
#include "gcolex/rational.hpp"

namespace gcolex {

using Configuration = std::vector<Elem>;

// g -> left * g * right^-1 on one site.
struct LocalAction {
  Site site = 0;
  Elem left = FiniteGroup::id;
  Elem right = FiniteGroup::id;
  friend bool operator==(const LocalAction&, const LocalAction&) = default;
};

// Product of local two-sided multiplications; a bijection on configurations.
class PermOp {
 public:
  PermOp() = default;
  static PermOp left(Site s, Elem h);   // X_+^h
  static PermOp right(Site s, Elem h);  // X_-^h
  static PermOp from_actions(const FiniteGroup& g, std::vector<LocalAction> actions);

  const std::vector<LocalAction>& actions() const { return actions_; }
  bool is_identity() const { return actions_.empty(); }
  std::vector<Site> support() const;

  // Applies *this first, then next.
  PermOp then(const PermOp& next, const FiniteGroup& g) const;
  PermOp inverse(const FiniteGroup& g) const;
  // Conjugation by g -> g^-1 at the given site swaps the two sides.
  PermOp conjugate_inversion(Site s) const;

  Elem act(const FiniteGroup& g, Site s, Elem x) const;
  void apply(const FiniteGroup& g, std::span<Elem> config) const;

  friend bool operator==(const PermOp&, const PermOp&) = default;

 private:
  std::vector<LocalAction> actions_;  // sorted by site, no identity entries
};

// accept[x1^(+-1) x2^(+-1) ... xk^(+-1)] with factors in the stored order.
struct DiagPredicate {
  struct Factor {
    Site site = 0;
    bool inverted = false;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  std::vector<Factor> factors;
  std::vector<bool> accept;

  static DiagPredicate identity_product(std::vector<Factor> factors, std::size_t order);
  static DiagPredicate in_subgroup(std::vector<Factor> factors, const Subgroup& h);

  Elem product(const FiniteGroup& g, std::span<const Elem> config) const;
  bool eval(const FiniteGroup& g, std::span<const Elem> config) const { return accept[product(g, config)]; }
  std::vector<Site> support() const;
  DiagPredicate conjugate_inversion(Site s) const;
  friend bool operator==(const DiagPredicate&, const DiagPredicate&) = default;
};

// pred(pre(x)): a diagonal filter evaluated after a permutation.
struct Guard {
  DiagPredicate pred;
  PermOp pre;
  bool holds(const FiniteGroup& g, std::span<const Elem> config) const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

// |x> -> coef [all guards hold at x] |op(x)>
struct Term {
  Rational coef{1};
  PermOp op;
  std::vector<Guard> guards;
};

class OperatorAsSum {
 public:
  OperatorAsSum() = default;
  explicit OperatorAsSum(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static OperatorAsSum identity();
  static OperatorAsSum projector(const DiagPredicate& p);
  static OperatorAsSum average(const std::vector<PermOp>& ops);
  static OperatorAsSum sum(const std::vector<PermOp>& ops);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::vector<Site> support() const;

  // (a * b)|x> = a(b|x>)
  friend OperatorAsSum compose(const OperatorAsSum& a, const OperatorAsSum& b, const FiniteGroup& g);
  OperatorAsSum scaled(const Rational& r) const;
  OperatorAsSum conjugate_inversion(Site s) const;

 private:
  std::vector<Term> terms_;
};

using SparseState = std::vector<std::pair<Rational, Configuration>>;

// Exact action on a basis configuration; merged, zero terms dropped, sorted by configuration.
SparseState apply(const OperatorAsSum& op, const FiniteGroup& g, const Configuration& c);
SparseState apply(const OperatorAsSum& op, const FiniteGroup& g, const SparseState& v);

}  // namespace gcolex
