#pragma once

#include <array>
#include <string>
#include <vector>

#include "gcolex/colex.hpp"
#include "gcolex/compiled.hpp"
#include "gcolex/group.hpp"
#include "gcolex/operators.hpp"
#include "gcolex/sparse.hpp"

namespace gcolex {

// Stabilizers of one green square on its four qudits. Local site i carries
// clockwise label i+1; label 1 sits top-left on H squares and top-right on V
// squares, so the V operators are the H operators turned a quarter clockwise.
struct GreenCodespace {
  FiniteGroup group;
  QuotientMap abelian;
  SquareTag tag = SquareTag::H;
  LocalSpace space{{0, 1, 2, 3}, 1};
  OperatorAsSum sz, sc1, sc2, sx;  // sx is the dressed X stabilizer
  SparseMatrix projector;

  // Geometric corner (0 top-left, then clockwise) of each label.
  std::array<int, 4> positions() const;
  std::size_t label_count() const { return group.order() * abelian.quotient.order(); }
};

GreenCodespace build_green_codespace(const FiniteGroup& g, SquareTag tag = SquareTag::H);

// Logical operators of the two encoded systems. System 1 is labelled by
// a = g2 g3 in G, system 2 by the coset k = [g1 g2] in G/[G,G].
struct EncodedOps {
  std::vector<OperatorAsSum> x_plus_1, x_minus_1, t_1, t_1_alt;  // indexed by g in G
  std::vector<OperatorAsSum> x_plus_2, x_minus_2, t_2, t_2_alt;  // indexed by coset
};

EncodedOps build_encoded_ops(const GreenCodespace& cs);

// Orthogonal basis w(a,k) = X_+^a(1) X_+^k(2) w(e,e) of the codespace, column a*|Q|+k,
// each with squared norm norm2.
struct GreenBasis {
  std::vector<SparseVector> columns;
  std::size_t dim = 0;
  Rational norm2;
  SparseMatrix matrix() const;
};

GreenBasis build_green_basis(const GreenCodespace& cs, const EncodedOps& ops);

// Encoded matrix W^T M W / N of a 4-qudit operator and whether M maps the codespace into itself.
struct Encoded {
  SparseMatrix matrix;
  bool preserves = false;
};
Encoded encode(const GreenCodespace& cs, const GreenBasis& b, const OperatorAsSum& op);

struct MappingCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct MappingReport {
  std::vector<MappingCheck> checks;
  bool ok() const;
  std::string to_json() const;
};

MappingReport verify_encoded_dims(const FiniteGroup& g);
MappingReport verify_encoded_algebra(const FiniteGroup& g);
// Each red/blue octagon of the 4.8.8 torus checked on the product of its four green codespaces,
// plus the green and red-link stabilizers checked to act trivially.
MappingReport verify_stabilizer_mapping(const FiniteGroup& g, int n = 2);
// Z2 only: the complete 2^16-dimensional n=2 lattice.
MappingReport verify_full_lattice_z2();

}  // namespace gcolex
