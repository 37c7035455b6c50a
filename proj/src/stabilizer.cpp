#include "gcolex/stabilizer.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>

#include <json.hpp>

#include "gcolex/compiled.hpp"

namespace gcolex {

namespace {

bool is_left(bool chirality_plus, bool red, int parity) {
  bool left = chirality_plus != red;
  return parity < 0 ? !left : left;
}

PermOp one_sided(Site s, Elem h, bool left) { return left ? PermOp::left(s, h) : PermOp::right(s, h); }

std::vector<Site> merge_support(const std::vector<Site>& a, const std::vector<Site>& b) {
  std::vector<Site> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool consecutive(const Plaquette& p, Site a, Site b) {
  const auto& vs = p.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Site x = vs[i], y = vs[(i + 1) % vs.size()];
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

}  // namespace

PermOp build_A(const Colex2& c, const FiniteGroup& g, std::uint32_t plaquette, Elem h) {
  const Plaquette& p = c.plaquettes.at(plaquette);
  std::vector<LocalAction> acts;
  for (Site v : p.vertices) {
    bool left = is_left(c.vertices[v].chirality > 0, p.color == Color::Red, c.vertices[v].parity);
    acts.push_back(left ? LocalAction{v, h, FiniteGroup::id} : LocalAction{v, FiniteGroup::id, h});
  }
  return PermOp::from_actions(g, std::move(acts));
}

PermOp build_C(const Colex2& c, const FiniteGroup& g, std::uint32_t red_link, Elem n) {
  const RedLink& l = c.red_links.at(red_link);
  return one_sided(l.up, n, c.vertices[l.up].parity > 0).then(one_sided(l.down, n, c.vertices[l.down].parity < 0), g);
}

PermOp build_corner_C(const Colex2& c, Site s, Elem n) {
  bool left = c.vertices.at(s).chirality > 0;
  if (c.vertices[s].parity < 0) left = !left;
  return one_sided(s, n, left);
}

DiagPredicate build_Z(const Colex2& c, const FiniteGroup& g, const Subgroup& commutator, std::uint32_t plaquette) {
  const Plaquette& p = c.plaquettes.at(plaquette);
  std::vector<Site> order = p.vertices;
  if (p.color == Color::Blue && order.size() > 1) std::reverse(order.begin() + 1, order.end());
  std::vector<DiagPredicate::Factor> fs;
  for (Site v : order) fs.push_back({v, c.vertices[v].parity < 0});
  if (p.color == Color::Red) return DiagPredicate::in_subgroup(std::move(fs), commutator);
  return DiagPredicate::identity_product(std::move(fs), g.order());
}

std::vector<OperatorAsSum> StabilizerSet::dressed_factors(std::uint32_t p) const {
  std::vector<OperatorAsSum> f{sx.at(p)};
  for (auto l : bounding_links.at(p)) f.push_back(sc.at(l));
  return f;
}

OperatorAsSum StabilizerSet::dressed(std::uint32_t p) const {
  OperatorAsSum out = sx.at(p);
  for (auto l : bounding_links.at(p)) out = compose(out, sc.at(l), group);
  return out;
}

std::vector<NamedOperator> StabilizerSet::family() const {
  std::vector<NamedOperator> out;
  for (std::uint32_t p = 0; p < sx.size(); ++p) {
    NamedOperator op{"dressed_SX_p" + std::to_string(p), dressed_factors(p), {}, false};
    for (const auto& f : op.factors) op.support = merge_support(op.support, f.support());
    out.push_back(std::move(op));
  }
  for (std::uint32_t p = 0; p < sz.size(); ++p)
    out.push_back({"SZ_p" + std::to_string(p), {OperatorAsSum::projector(sz[p])}, sz[p].support(), true});
  for (std::uint32_t l = 0; l < sc.size(); ++l) out.push_back({"SC_l" + std::to_string(l), {sc[l]}, sc[l].support()});
  for (std::uint32_t k = 0; k < corner.size(); ++k)
    out.push_back({"cornerC_" + std::to_string(k), {corner[k]}, corner[k].support()});
  return out;
}

NamedOperator StabilizerSet::undressed(std::uint32_t p) const {
  return {"SX_p" + std::to_string(p), {sx.at(p)}, sx.at(p).support(), false};
}

StabilizerSet build_stabilizers(const Colex2& c, const FiniteGroup& g) {
  auto report = validate(c);
  if (!report.ok())
    throw std::invalid_argument("invalid lattice: " + report.failures[0].kind + " at " + report.failures[0].location +
                                ": " + report.failures[0].detail);
  StabilizerSet s{g, commutator_subgroup(g), {}, {}, {}, {}, {}};
  for (std::uint32_t p = 0; p < c.plaquettes.size(); ++p) {
    std::vector<PermOp> ops;
    for (std::size_t h = 0; h < g.order(); ++h) ops.push_back(build_A(c, g, p, static_cast<Elem>(h)));
    s.sx.push_back(OperatorAsSum::average(ops));
    s.sz.push_back(build_Z(c, g, s.commutator, p));
    std::vector<std::uint32_t> links;
    if (c.plaquettes[p].color != Color::Red)
      for (std::uint32_t l = 0; l < c.red_links.size(); ++l)
        if (consecutive(c.plaquettes[p], c.red_links[l].up, c.red_links[l].down)) links.push_back(l);
    s.bounding_links.push_back(std::move(links));
  }
  for (std::uint32_t l = 0; l < c.red_links.size(); ++l) {
    std::vector<PermOp> ops;
    for (Elem n : s.commutator.members) ops.push_back(build_C(c, g, l, n));
    s.sc.push_back(OperatorAsSum::average(ops));
  }
  for (Site v : c.corner_c_sites) {
    std::vector<PermOp> ops;
    for (Elem n : s.commutator.members) ops.push_back(build_corner_C(c, v, n));
    s.corner.push_back(OperatorAsSum::average(ops));
  }
  return s;
}

StabilizerSet conjugate_site(const StabilizerSet& s, Site site) {
  StabilizerSet out = s;
  for (auto& x : out.sx) x = x.conjugate_inversion(site);
  for (auto& z : out.sz) z = z.conjugate_inversion(site);
  for (auto& x : out.sc) x = x.conjugate_inversion(site);
  for (auto& x : out.corner) x = x.conjugate_inversion(site);
  return out;
}

std::string mode_name(CheckMode m) { return m == CheckMode::Exhaustive ? "exhaustive" : "sampled"; }

namespace {

std::uint64_t first_difference(const CompiledChain& ab_first, const CompiledChain& ab_second,
                               const std::vector<std::uint64_t>& codes_or_empty, std::uint64_t begin,
                               std::uint64_t end, const LocalSpace& space) {
  Accumulator acc(space.size());
  for (std::uint64_t i = begin; i < end; ++i) {
    std::uint64_t code = codes_or_empty.empty() ? i : codes_or_empty[i];
    SparseCodes start{{code, 1}};
    auto x = ab_second.apply(ab_first.apply(start, acc), acc);
    auto y = ab_first.apply(ab_second.apply(start, acc), acc);
    if (x != y) return i;
  }
  return end;
}

}  // namespace

std::optional<Configuration> commutation_witness(const NamedOperator& a, const NamedOperator& b, const FiniteGroup& g,
                                                 std::size_t num_sites, const CheckOptions& opt) {
  if (a.diagonal && b.diagonal) return std::nullopt;
  std::vector<Site> joint = merge_support(a.support, b.support);
  std::vector<Site> common;
  std::set_intersection(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                        std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  LocalSpace space(joint, g.order());
  CompiledChain ca(a.factors, space, g), cb(b.factors, space, g);

  std::vector<std::uint64_t> codes;
  std::uint64_t total = space.size();
  if (opt.mode == CheckMode::Exhaustive) {
    if (space.size() > opt.budget_states)
      throw BudgetExceeded("joint support of " + a.name + " and " + b.name + " has " + std::to_string(space.size()) +
                           " configurations, above the budget; use sampled mode");
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(g.order()) - 1);
    Configuration cfg(num_sites);
    codes.resize(opt.samples);
    for (auto& code : codes) {
      for (auto& x : cfg) x = static_cast<Elem>(pick(rng));
      code = space.from_global(cfg);
    }
    total = codes.size();
  }

  unsigned workers = std::max(1u, opt.workers);
  std::uint64_t chunk = (total + workers - 1) / workers;
  std::vector<std::uint64_t> found(workers, total);
  auto job = [&](unsigned w) {
    std::uint64_t lo = std::min(total, w * chunk), hi = std::min(total, lo + chunk);
    found[w] = first_difference(ca, cb, codes, lo, hi, space);
    if (found[w] == hi) found[w] = total;
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
  }
  std::uint64_t first = *std::min_element(found.begin(), found.end());
  if (first == total) return std::nullopt;
  return space.to_global(codes.empty() ? first : codes[first], num_sites);
}

CommutationReport check_commutation(const Colex2& c, const FiniteGroup& g, const CheckOptions& opt) {
  StabilizerSet s = build_stabilizers(c, g);
  auto fam = s.family();
  CommutationReport r;
  r.mode = opt.mode;
  r.seed = opt.seed;
  r.group_abelian = g.is_abelian();
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      ++r.pairs_checked;
      if (auto w = commutation_witness(fam[i], fam[j], g, c.num_vertices(), opt))
        r.failures.push_back({fam[i].name, fam[j].name, *w});
    }
  for (std::uint32_t p = 0; p < c.plaquettes.size() && !r.undressed_witness; ++p) {
    if (c.plaquettes[p].color != Color::Blue) continue;
    for (std::uint32_t q = 0; q < c.plaquettes.size() && !r.undressed_witness; ++q) {
      if (c.plaquettes[q].color != Color::Green) continue;
      const auto& vs = c.plaquettes[q].vertices;
      bool adjacent = false;
      for (std::size_t i = 0; i < vs.size(); ++i) adjacent |= consecutive(c.plaquettes[p], vs[i], vs[(i + 1) % vs.size()]);
      if (!adjacent) continue;
      auto a = s.undressed(p), b = s.undressed(q);
      if (auto w = commutation_witness(a, b, g, c.num_vertices(), opt)) r.undressed_witness = {a.name, b.name, *w};
    }
  }
  return r;
}

std::string CommutationReport::to_json() const {
  nlohmann::json j;
  j["pairs_checked"] = pairs_checked;
  j["mode"] = mode_name(mode);
  j["seed"] = seed;
  auto fail_json = [](const CommutationFailure& f) {
    std::vector<int> w(f.witness.begin(), f.witness.end());
    return nlohmann::json{{"opA", f.op_a}, {"opB", f.op_b}, {"witness_configuration", w}};
  };
  j["failures"] = nlohmann::json::array();
  for (const auto& f : failures) j["failures"].push_back(fail_json(f));
  j["undressed_witness"] = undressed_witness ? fail_json(*undressed_witness) : nlohmann::json(nullptr);
  return j.dump(1) + "\n";
}

RedOrderReport check_red_order_independence(const FiniteGroup& g, int m, std::uint64_t tuples, std::uint64_t seed) {
  if (m < 1 || m > 8) throw std::invalid_argument("red-order check needs 1 <= m <= 8");
  Subgroup k = commutator_subgroup(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(g.order()) - 1);
  RedOrderReport r;
  std::vector<Elem> t(m);
  std::vector<int> perm(m);
  for (std::uint64_t i = 0; i < tuples; ++i) {
    for (auto& x : t) x = static_cast<Elem>(pick(rng));
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<bool> member;
    bool bad = false;
    do {
      Elem acc = FiniteGroup::id;
      for (int p : perm) acc = g.mul(acc, t[p]);
      ++r.orderings;
      if (!member) member = k.contains(acc);
      bad |= *member != k.contains(acc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    ++r.tuples;
    if (bad) {
      ++r.violations;
      if (r.witness.empty()) r.witness = t;
    }
  }
  return r;
}

std::string RedOrderReport::to_json() const {
  nlohmann::json j{{"tuples", tuples}, {"orderings", orderings}, {"violations", violations}};
  j["witness"] = std::vector<int>(witness.begin(), witness.end());
  return j.dump(1) + "\n";
}

}  // namespace gcolex
