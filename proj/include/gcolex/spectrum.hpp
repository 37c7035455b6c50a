#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcolex/colex.hpp"
#include "gcolex/group.hpp"
#include "gcolex/operators.hpp"

namespace gcolex {

// A pivot site whose value a stabilizer element moves freely; fix[x] sends value x to e.
// The element must commute with every generator as a permutation.
struct GaugeFix {
  Site pivot = 0;
  std::vector<PermOp> fix;
};

struct OrbitProblem {
  std::string label;
  FiniteGroup group;
  std::size_t num_sites = 0;
  std::vector<DiagPredicate> predicates;
  std::vector<PermOp> generators;
  std::vector<GaugeFix> gauges;
};

struct SpectrumOptions {
  std::uint64_t budget_states = 200000000;
  unsigned workers = 1;
  bool gauge_fix = true;
};

// Valid configurations with every gauge pivot at e, as sorted mixed-radix codes (site 0 most significant).
struct ValidSet {
  std::size_t radix = 0;
  std::size_t num_sites = 0;
  std::vector<std::uint64_t> codes;
  std::uint64_t gauge_multiplicity = 1;
  std::uint64_t valid_count() const { return codes.size() * gauge_multiplicity; }
};

struct GroundSpaceReport {
  std::string lattice;
  std::string group;
  std::string method;
  std::uint64_t valid_count = 0;
  std::uint64_t orbit_count = 0;
  std::uint64_t generators = 0;
  std::uint64_t gauge_fixed = 0;
  double runtime_seconds = 0;

  std::string summary() const;
  // Runtime is left out so that identical runs serialize identically.
  std::string to_json() const;
};

OrbitProblem color_code_problem(const Colex2& c, const FiniteGroup& g, const std::string& label = "colex");

ValidSet enumerate_valid(const OrbitProblem& p, const SpectrumOptions& opt = {});
ValidSet enumerate_valid(const Colex2& c, const FiniteGroup& g, const SpectrumOptions& opt = {});

// Every generator (followed by gauge canonicalization) maps the set into itself.
bool check_generator_closure(const OrbitProblem& p, const ValidSet& v);

GroundSpaceReport count_orbits(const OrbitProblem& p, const SpectrumOptions& opt = {});
GroundSpaceReport degeneracy(const Colex2& c, const FiniteGroup& g, const SpectrumOptions& opt = {});

// Trace of the full stabilizer projector product, computed column by column.
GroundSpaceReport degeneracy_rank_oracle(const Colex2& c, const FiniteGroup& g,
                                         std::uint64_t dimension_cap = std::uint64_t{1} << 20);

}  // namespace gcolex
