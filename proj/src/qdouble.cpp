#include "gcolex/qdouble.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gcolex {

namespace {
int wrap(int a, int n) { return ((a % n) + n) % n; }
}  // namespace

std::uint32_t QDLattice::vertex(int x, int y) const { return static_cast<std::uint32_t>(wrap(y, L2) * L1 + wrap(x, L1)); }

std::uint32_t QDLattice::horizontal(int x, int y) const { return vertex(x, y); }

std::uint32_t QDLattice::vertical(int x, int y) const { return static_cast<std::uint32_t>(L1 * L2) + vertex(x, y); }

QDLattice build_qd(int L1, int L2) {
  if (L1 < 1 || L2 < 1) throw std::invalid_argument("quantum double lattice needs L1, L2 >= 1");
  QDLattice q;
  q.L1 = L1;
  q.L2 = L2;
  q.degenerate = L1 < 2 || L2 < 2;
  q.edges.resize(2 * static_cast<std::size_t>(L1) * L2);
  for (int y = 0; y < L2; ++y)
    for (int x = 0; x < L1; ++x) {
      q.edges[q.horizontal(x, y)] = {q.vertex(x + 1, y), q.vertex(x, y)};
      q.edges[q.vertical(x, y)] = {q.vertex(x, y + 1), q.vertex(x, y)};
    }
  for (int y = 0; y < L2; ++y)
    for (int x = 0; x < L1; ++x)
      q.vertex_edges.push_back({q.vertical(x, y), q.horizontal(x, y), q.vertical(x, y - 1), q.horizontal(x - 1, y)});
  for (int y = 0; y < L2; ++y)
    for (int x = 0; x < L1; ++x) {
      q.plaquette_edges.push_back({q.horizontal(x, y + 1), q.vertical(x + 1, y), q.horizontal(x, y), q.vertical(x, y)});
      q.plaquette_along.push_back({false, true, true, false});
    }
  return q;
}

QDLattice reverse_edge(const QDLattice& q, std::uint32_t edge) {
  QDLattice out = q;
  std::swap(out.edges.at(edge).tail, out.edges.at(edge).head);
  for (std::size_t p = 0; p < out.plaquette_edges.size(); ++p)
    for (int k = 0; k < 4; ++k)
      if (out.plaquette_edges[p][k] == edge) out.plaquette_along[p][k] = !out.plaquette_along[p][k];
  return out;
}

PermOp qd_vertex_op(const QDLattice& q, const FiniteGroup& g, std::uint32_t v, Elem h) {
  std::vector<LocalAction> acts;
  for (auto e : q.vertex_edges.at(v)) {
    if (q.edges[e].tail == v) acts.push_back({e, h, FiniteGroup::id});
    if (q.edges[e].head == v) acts.push_back({e, FiniteGroup::id, h});
  }
  // A self-loop appears twice among the four slots; count each end once.
  std::sort(acts.begin(), acts.end(), [](const LocalAction& a, const LocalAction& b) {
    return std::tie(a.site, a.left, a.right) < std::tie(b.site, b.left, b.right);
  });
  acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
  return PermOp::from_actions(g, std::move(acts));
}

DiagPredicate qd_plaquette_pred(const QDLattice& q, const FiniteGroup& g, std::uint32_t p) {
  std::vector<DiagPredicate::Factor> fs;
  for (int k = 0; k < 4; ++k) fs.push_back({q.plaquette_edges.at(p)[k], !q.plaquette_along[p][k]});
  return DiagPredicate::identity_product(std::move(fs), g.order());
}

PermOp qd_star(const FiniteGroup& g, const std::array<Site, 4>& urdl, Elem h) {
  std::set<Site> distinct(urdl.begin(), urdl.end());
  if (distinct.size() != 4) throw std::invalid_argument("star edges must be distinct");
  return PermOp::from_actions(g, {{urdl[0], FiniteGroup::id, h},
                                  {urdl[1], FiniteGroup::id, h},
                                  {urdl[2], h, FiniteGroup::id},
                                  {urdl[3], h, FiniteGroup::id}});
}

DiagPredicate qd_face(const std::array<Site, 4>& urdl, std::size_t order) {
  return DiagPredicate::identity_product(
      {{urdl[0], true}, {urdl[1], false}, {urdl[2], false}, {urdl[3], true}}, order);
}

std::vector<NamedOperator> QDStabilizers::family() const {
  std::vector<NamedOperator> out;
  for (std::size_t v = 0; v < vertex.size(); ++v)
    out.push_back({"KX_v" + std::to_string(v), {vertex[v]}, vertex[v].support(), false});
  for (std::size_t p = 0; p < plaquette.size(); ++p)
    out.push_back(
        {"KZ_p" + std::to_string(p), {OperatorAsSum::projector(plaquette[p])}, plaquette[p].support(), true});
  return out;
}

QDStabilizers build_qd_stabilizers(const QDLattice& q, const FiniteGroup& g) {
  QDStabilizers s;
  for (std::uint32_t v = 0; v < q.num_vertices(); ++v) {
    std::vector<PermOp> ops;
    for (std::size_t h = 0; h < g.order(); ++h) ops.push_back(qd_vertex_op(q, g, v, static_cast<Elem>(h)));
    s.vertex.push_back(OperatorAsSum::average(ops));
  }
  for (std::uint32_t p = 0; p < q.plaquette_edges.size(); ++p) s.plaquette.push_back(qd_plaquette_pred(q, g, p));
  return s;
}

QDStabilizers conjugate_edge(const QDStabilizers& s, std::uint32_t edge) {
  QDStabilizers out = s;
  for (auto& v : out.vertex) v = v.conjugate_inversion(edge);
  for (auto& p : out.plaquette) p = p.conjugate_inversion(edge);
  return out;
}

OrbitProblem qd_problem(const QDLattice& q, const FiniteGroup& g) {
  OrbitProblem p;
  p.label = "qd:" + std::to_string(q.L1) + "x" + std::to_string(q.L2);
  p.group = g;
  p.num_sites = q.edges.size();
  for (std::uint32_t f = 0; f < q.plaquette_edges.size(); ++f) p.predicates.push_back(qd_plaquette_pred(q, g, f));
  // Vertex operators commute elementwise, so an independent set of them can be gauge-fixed.
  std::vector<bool> touched(q.num_vertices(), false);
  auto gens = generating_set(g, Subgroup{[&] {
                                           std::vector<Elem> all(g.order());
                                           for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
                                           return all;
                                         }(),
                                         std::vector<bool>(g.order(), true)});
  for (std::uint32_t v = 0; v < q.num_vertices(); ++v) {
    std::uint32_t pivot = q.vertex_edges[v][0];
    const auto& pe = q.edges[pivot];
    bool free_pivot = pe.tail != pe.head;
    bool independent = !touched[v];
    for (auto e : q.vertex_edges[v]) independent = independent && !touched[q.edges[e].tail] && !touched[q.edges[e].head];
    if (free_pivot && independent) {
      touched[v] = true;
      GaugeFix fix{pivot, {}};
      for (std::size_t x = 0; x < g.order(); ++x) {
        PermOp chosen;
        for (std::size_t h = 0; h < g.order(); ++h) {
          PermOp cand = qd_vertex_op(q, g, v, static_cast<Elem>(h));
          if (cand.act(g, pivot, static_cast<Elem>(x)) == FiniteGroup::id) chosen = cand;
        }
        fix.fix.push_back(chosen);
      }
      p.gauges.push_back(std::move(fix));
      continue;
    }
    for (Elem h : gens) p.generators.push_back(qd_vertex_op(q, g, v, h));
  }
  return p;
}

GroundSpaceReport qd_degeneracy(int L1, int L2, const FiniteGroup& g, const SpectrumOptions& opt) {
  return count_orbits(qd_problem(build_qd(L1, L2), g), opt);
}

}  // namespace gcolex
