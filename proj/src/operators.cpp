#include "gcolex/operators.hpp"

#include <algorithm>
#include <map>

namespace gcolex {

PermOp PermOp::left(Site s, Elem h) {
  PermOp p;
  if (h != FiniteGroup::id) p.actions_.push_back({s, h, FiniteGroup::id});
  return p;
}

PermOp PermOp::right(Site s, Elem h) {
  PermOp p;
  if (h != FiniteGroup::id) p.actions_.push_back({s, FiniteGroup::id, h});
  return p;
}

PermOp PermOp::from_actions(const FiniteGroup& g, std::vector<LocalAction> actions) {
  PermOp out;
  for (const auto& a : actions) {
    PermOp single;
    if (a.left != FiniteGroup::id || a.right != FiniteGroup::id) single.actions_.push_back(a);
    out = out.then(single, g);
  }
  return out;
}

std::vector<Site> PermOp::support() const {
  std::vector<Site> s;
  for (const auto& a : actions_) s.push_back(a.site);
  return s;
}

PermOp PermOp::then(const PermOp& next, const FiniteGroup& g) const {
  PermOp out;
  auto i = actions_.begin(), j = next.actions_.begin();
  while (i != actions_.end() || j != next.actions_.end()) {
    if (j == next.actions_.end() || (i != actions_.end() && i->site < j->site)) {
      out.actions_.push_back(*i++);
    } else if (i == actions_.end() || j->site < i->site) {
      out.actions_.push_back(*j++);
    } else {
      LocalAction a{i->site, g.mul(j->left, i->left), g.mul(j->right, i->right)};
      if (a.left != FiniteGroup::id || a.right != FiniteGroup::id) out.actions_.push_back(a);
      ++i;
      ++j;
    }
  }
  return out;
}

PermOp PermOp::inverse(const FiniteGroup& g) const {
  PermOp out;
  for (const auto& a : actions_) out.actions_.push_back({a.site, g.inv(a.left), g.inv(a.right)});
  return out;
}

PermOp PermOp::conjugate_inversion(Site s) const {
  PermOp out = *this;
  for (auto& a : out.actions_)
    if (a.site == s) std::swap(a.left, a.right);
  return out;
}

Elem PermOp::act(const FiniteGroup& g, Site s, Elem x) const {
  for (const auto& a : actions_)
    if (a.site == s) return g.mul(g.mul(a.left, x), g.inv(a.right));
  return x;
}

void PermOp::apply(const FiniteGroup& g, std::span<Elem> config) const {
  for (const auto& a : actions_) config[a.site] = g.mul(g.mul(a.left, config[a.site]), g.inv(a.right));
}

DiagPredicate DiagPredicate::identity_product(std::vector<Factor> factors, std::size_t order) {
  DiagPredicate p;
  p.factors = std::move(factors);
  p.accept.assign(order, false);
  p.accept[FiniteGroup::id] = true;
  return p;
}

DiagPredicate DiagPredicate::in_subgroup(std::vector<Factor> factors, const Subgroup& h) {
  DiagPredicate p;
  p.factors = std::move(factors);
  p.accept = h.mask;
  return p;
}

Elem DiagPredicate::product(const FiniteGroup& g, std::span<const Elem> config) const {
  Elem acc = FiniteGroup::id;
  for (const auto& f : factors) acc = g.mul(acc, f.inverted ? g.inv(config[f.site]) : config[f.site]);
  return acc;
}

std::vector<Site> DiagPredicate::support() const {
  std::vector<Site> s;
  for (const auto& f : factors) s.push_back(f.site);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

DiagPredicate DiagPredicate::conjugate_inversion(Site s) const {
  DiagPredicate out = *this;
  for (auto& f : out.factors)
    if (f.site == s) f.inverted = !f.inverted;
  return out;
}

bool Guard::holds(const FiniteGroup& g, std::span<const Elem> config) const {
  if (pre.is_identity()) return pred.eval(g, config);
  Configuration moved(config.begin(), config.end());
  pre.apply(g, moved);
  return pred.eval(g, moved);
}

OperatorAsSum OperatorAsSum::identity() { return OperatorAsSum({Term{}}); }

OperatorAsSum OperatorAsSum::projector(const DiagPredicate& p) { return OperatorAsSum({Term{1, {}, {Guard{p, {}}}}}); }

OperatorAsSum OperatorAsSum::average(const std::vector<PermOp>& ops) {
  std::vector<Term> t;
  for (const auto& op : ops) t.push_back({Rational(1, static_cast<std::int64_t>(ops.size())), op, {}});
  return OperatorAsSum(std::move(t));
}

OperatorAsSum OperatorAsSum::sum(const std::vector<PermOp>& ops) {
  std::vector<Term> t;
  for (const auto& op : ops) t.push_back({1, op, {}});
  return OperatorAsSum(std::move(t));
}

std::vector<Site> OperatorAsSum::support() const {
  std::vector<Site> s;
  for (const auto& t : terms_) {
    for (Site x : t.op.support()) s.push_back(x);
    for (const auto& gd : t.guards) {
      for (Site x : gd.pred.support()) s.push_back(x);
      for (Site x : gd.pre.support()) s.push_back(x);
    }
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

OperatorAsSum compose(const OperatorAsSum& a, const OperatorAsSum& b, const FiniteGroup& g) {
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& tb : b.terms_)
    for (const auto& ta : a.terms_) {
      Term t;
      t.coef = ta.coef * tb.coef;
      t.op = tb.op.then(ta.op, g);
      t.guards = tb.guards;
      for (const auto& gd : ta.guards) t.guards.push_back({gd.pred, tb.op.then(gd.pre, g)});
      out.push_back(std::move(t));
    }
  return OperatorAsSum(std::move(out));
}

OperatorAsSum OperatorAsSum::scaled(const Rational& r) const {
  OperatorAsSum out = *this;
  for (auto& t : out.terms_) t.coef *= r;
  return out;
}

OperatorAsSum OperatorAsSum::conjugate_inversion(Site s) const {
  OperatorAsSum out = *this;
  for (auto& t : out.terms_) {
    t.op = t.op.conjugate_inversion(s);
    for (auto& gd : t.guards) {
      gd.pred = gd.pred.conjugate_inversion(s);
      gd.pre = gd.pre.conjugate_inversion(s);
    }
  }
  return out;
}

SparseState apply(const OperatorAsSum& op, const FiniteGroup& g, const SparseState& v) {
  std::map<Configuration, Rational> acc;
  for (const auto& [w, c] : v)
    for (const auto& t : op.terms()) {
      if (!std::all_of(t.guards.begin(), t.guards.end(), [&](const Guard& gd) { return gd.holds(g, c); })) continue;
      Configuration out = c;
      t.op.apply(g, out);
      acc[out] += w * t.coef;
    }
  SparseState r;
  for (auto& [c, w] : acc)
    if (!w.is_zero()) r.push_back({w, c});
  return r;
}

SparseState apply(const OperatorAsSum& op, const FiniteGroup& g, const Configuration& c) {
  return apply(op, g, SparseState{{Rational(1), c}});
}

}  // namespace gcolex
