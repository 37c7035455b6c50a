#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gcolex/group.hpp"
#include "gcolex/operators.hpp"
#include "gcolex/spectrum.hpp"
#include "gcolex/stabilizer.hpp"

namespace gcolex {

// Directed square lattice on an L1 x L2 torus, one qudit per edge. Horizontal
// edges point left (-x), vertical edges point down (-y).
struct QDLattice {
  struct DirectedEdge {
    std::uint32_t tail = 0, head = 0;
  };
  int L1 = 0, L2 = 0;
  std::vector<DirectedEdge> edges;
  // Per vertex: incident edges up, right, down, left.
  std::vector<std::array<std::uint32_t, 4>> vertex_edges;
  // Per plaquette: edges up, right, down, left in clockwise traversal from the top-left corner,
  // and whether that traversal follows the edge direction.
  std::vector<std::array<std::uint32_t, 4>> plaquette_edges;
  std::vector<std::array<bool, 4>> plaquette_along;
  bool degenerate = false;

  std::size_t num_vertices() const { return vertex_edges.size(); }
  std::uint32_t vertex(int x, int y) const;
  std::uint32_t horizontal(int x, int y) const;  // joins (x,y) and (x+1,y)
  std::uint32_t vertical(int x, int y) const;    // joins (x,y) and (x,y+1)
};

QDLattice build_qd(int L1, int L2);
// Same lattice with one edge direction flipped.
QDLattice reverse_edge(const QDLattice& q, std::uint32_t edge);

// Left multiplication on the tail of each incident edge, right multiplication on its head.
PermOp qd_vertex_op(const QDLattice& q, const FiniteGroup& g, std::uint32_t v, Elem h);
// Clockwise holonomy equals e: edges traversed along their direction contribute x, against x^-1.
DiagPredicate qd_plaquette_pred(const QDLattice& q, const FiniteGroup& g, std::uint32_t p);

// The same operators written on four edge qudits listed up, right, down, left, for the
// fixed direction convention above.
PermOp qd_star(const FiniteGroup& g, const std::array<Site, 4>& urdl, Elem h);
DiagPredicate qd_face(const std::array<Site, 4>& urdl, std::size_t order);

struct QDStabilizers {
  std::vector<OperatorAsSum> vertex;    // K^X, averaged over G
  std::vector<DiagPredicate> plaquette;  // K^Z
  std::vector<NamedOperator> family() const;
};

QDStabilizers build_qd_stabilizers(const QDLattice& q, const FiniteGroup& g);
QDStabilizers conjugate_edge(const QDStabilizers& s, std::uint32_t edge);

OrbitProblem qd_problem(const QDLattice& q, const FiniteGroup& g);
GroundSpaceReport qd_degeneracy(int L1, int L2, const FiniteGroup& g, const SpectrumOptions& opt = {});

}  // namespace gcolex
