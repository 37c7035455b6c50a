#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcolex/colex.hpp"
#include "gcolex/group.hpp"
#include "gcolex/operators.hpp"

namespace gcolex {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PermOp build_A(const Colex2& c, const FiniteGroup& g, std::uint32_t plaquette, Elem h);
PermOp build_C(const Colex2& c, const FiniteGroup& g, std::uint32_t red_link, Elem n);
PermOp build_corner_C(const Colex2& c, Site s, Elem n);
DiagPredicate build_Z(const Colex2& c, const FiniteGroup& g, const Subgroup& commutator, std::uint32_t plaquette);

// A stabilizer written as a product of commuting factors; factors[0] acts first.
struct NamedOperator {
  std::string name;
  std::vector<OperatorAsSum> factors;
  std::vector<Site> support;
  bool diagonal = false;
};

struct StabilizerSet {
  FiniteGroup group;
  Subgroup commutator;
  std::vector<OperatorAsSum> sx;                          // per plaquette, undressed
  std::vector<DiagPredicate> sz;                          // per plaquette
  std::vector<OperatorAsSum> sc;                          // per red link
  std::vector<OperatorAsSum> corner;                      // per corner C site
  std::vector<std::vector<std::uint32_t>> bounding_links;  // red links on each blue/green plaquette

  // S^X of red plaquettes, S^X times its bounding S^C for blue and green ones.
  std::vector<OperatorAsSum> dressed_factors(std::uint32_t p) const;
  OperatorAsSum dressed(std::uint32_t p) const;

  // Every member of the commuting family: dressed S^X, S^Z, S^C and corner C.
  std::vector<NamedOperator> family() const;
  NamedOperator undressed(std::uint32_t p) const;
};

// Throws std::invalid_argument when the lattice fails validation.
StabilizerSet build_stabilizers(const Colex2& c, const FiniteGroup& g);

// Conjugates every operator by g -> g^-1 at one site.
StabilizerSet conjugate_site(const StabilizerSet& s, Site site);

enum class CheckMode { Exhaustive, Sampled };
std::string mode_name(CheckMode m);

struct CheckOptions {
  CheckMode mode = CheckMode::Exhaustive;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 20140611;
  std::uint64_t budget_states = 200000000;
  unsigned workers = 1;
};

struct CommutationFailure {
  std::string op_a, op_b;
  Configuration witness;
};

struct CommutationReport {
  std::uint64_t pairs_checked = 0;
  CheckMode mode = CheckMode::Exhaustive;
  std::uint64_t seed = 0;
  std::vector<CommutationFailure> failures;
  bool group_abelian = true;
  // Adjacent blue/green S^X without dressing. None exists when the two plaquettes cover the
  // same sites (hex torus n=1), since both then act on the same side everywhere.
  std::optional<CommutationFailure> undressed_witness;

  bool ok() const { return failures.empty(); }
  std::string to_json() const;
};

// First configuration (in local-code order, other sites at e) where AB and BA differ.
std::optional<Configuration> commutation_witness(const NamedOperator& a, const NamedOperator& b, const FiniteGroup& g,
                                                 std::size_t num_sites, const CheckOptions& opt);

CommutationReport check_commutation(const Colex2& c, const FiniteGroup& g, const CheckOptions& opt);

struct RedOrderReport {
  std::uint64_t tuples = 0;
  std::uint64_t orderings = 0;
  std::uint64_t violations = 0;
  std::vector<Elem> witness;
  bool ok() const { return violations == 0; }
  std::string to_json() const;
};

RedOrderReport check_red_order_independence(const FiniteGroup& g, int m, std::uint64_t tuples, std::uint64_t seed);

}  // namespace gcolex
