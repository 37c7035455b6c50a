#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include <json.hpp>

#include "gcolex/spectrum.hpp"
#include "gcolex/stabilizer.hpp"

using namespace gcolex;

namespace {

struct Instance {
  const char* lattice;
  const char* group;
  std::uint64_t degeneracy;
};

// Brute-force oracle: every configuration, every S^Z, every generator; plain union-find, no gauge fixing.
std::pair<std::uint64_t, std::uint64_t> brute_valid_and_orbits(const Colex2& c, const FiniteGroup& g) {
  StabilizerSet s = build_stabilizers(c, g);
  const std::size_t n = c.num_vertices(), q = g.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  auto decode = [&](std::uint64_t code) {
    Configuration x(n);
    for (std::size_t i = n; i-- > 0;) {
      x[i] = Elem(code % q);
      code /= q;
    }
    return x;
  };
  auto encode = [&](const Configuration& x) {
    std::uint64_t code = 0;
    for (Elem e : x) code = code * q + e;
    return code;
  };
  std::vector<PermOp> gens;
  for (std::uint32_t p = 0; p < c.plaquettes.size(); ++p)
    for (std::size_t h = 0; h < q; ++h) gens.push_back(build_A(c, g, p, Elem(h)));
  for (std::uint32_t l = 0; l < c.red_links.size(); ++l)
    for (Elem k : s.commutator.members) gens.push_back(build_C(c, g, l, k));
  for (Site site : c.corner_c_sites)
    for (Elem k : s.commutator.members) gens.push_back(build_corner_C(c, site, k));
  std::vector<std::uint64_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> valid(total);
  std::uint64_t nvalid = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    Configuration x = decode(code);
    bool ok = true;
    for (const auto& z : s.sz) ok = ok && z.eval(g, x);
    valid[code] = ok;
    nvalid += ok;
  }
  std::uint64_t orbits = nvalid;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (!valid[code]) continue;
    Configuration x = decode(code);
    for (const auto& gen : gens) {
      Configuration y = x;
      gen.apply(g, y);
      std::uint64_t a = find(code), b = find(encode(y));
      if (a != b) {
        parent[a] = b;
        --orbits;
      }
    }
  }
  return {nvalid, orbits};
}

}  // namespace

TEST(Spectrum, ValidCountsAgainstBruteForce) {
  struct V {
    const char* lattice;
    const char* group;
    std::uint64_t valid;
  };
  // Z2 on 4.8.8 n=2: the 8 plaquette parities have GF(2) rank 6 (one dependency per pair of colors), so 2^10.
  for (auto v : {V{"hex-torus:1", "Z2", 32}, V{"squareoct-torus:2", "Z2", 1024}, V{"hex-torus:1", "S3", 3888},
                 V{"triangular:3", "Z3", 81}}) {
    Colex2 c = build_from_spec(v.lattice);
    FiniteGroup g = parse_group(v.group);
    EXPECT_EQ(enumerate_valid(c, g).valid_count(), v.valid) << v.lattice << " " << v.group;
    EXPECT_EQ(brute_valid_and_orbits(c, g).first, v.valid) << v.lattice << " " << v.group;
  }
}

TEST(Spectrum, EmptyProblemHasOneConfiguration) {
  OrbitProblem p;
  p.group = symmetric3();
  ValidSet v = enumerate_valid(p);
  EXPECT_EQ(v.valid_count(), 1u);
  EXPECT_EQ(count_orbits(p).orbit_count, 1u);
}

TEST(Spectrum, OrbitCountAgainstBruteForce) {
  for (auto [lat, grp] : {std::pair{"hex-torus:1", "Z2"}, std::pair{"hex-torus:1", "S3"}, std::pair{"triangular:3", "S3"},
                          std::pair{"triangular:3", "Z4"}, std::pair{"hex-torus:1", "Z3"}}) {
    Colex2 c = build_from_spec(lat);
    FiniteGroup g = parse_group(grp);
    GroundSpaceReport r = degeneracy(c, g);
    auto [valid, orbits] = brute_valid_and_orbits(c, g);
    EXPECT_EQ(r.valid_count, valid) << lat << " " << grp;
    EXPECT_EQ(r.orbit_count, orbits) << lat << " " << grp;
  }
}

TEST(Spectrum, KnownDegeneracies) {
  for (auto i : {Instance{"hex-torus:1", "Z2", 16}, Instance{"squareoct-torus:2", "Z2", 16}, Instance{"hex-torus:2", "Z2", 16},
                 Instance{"hex-torus:1", "Z3", 81}, Instance{"squareoct-torus:2", "Z3", 81}, Instance{"triangular:3", "Z2", 2},
                 Instance{"triangular:5", "Z2", 2}, Instance{"triangular:3", "Z3", 3}, Instance{"triangular:3", "S3", 2},
                 Instance{"triangular:3", "Z4", 4}, Instance{"rect-bg:2x2", "Z2", 4}, Instance{"rect-br:2x2", "Z2", 4},
                 Instance{"rect-bg:3x2", "Z2", 4}, Instance{"rect-br:2x3", "Z2", 4}, Instance{"rect-bg:2x2", "Z3", 9},
                 Instance{"rect-br:2x2", "Z3", 9}}) {
    GroundSpaceReport r = degeneracy(build_from_spec(i.lattice), parse_group(i.group));
    EXPECT_EQ(r.orbit_count, i.degeneracy) << i.lattice << " " << i.group;
  }
}

TEST(Spectrum, TorusDegeneracyEqualsColorCodeAnyons) {
  for (const char* grp : {"Z2", "Z3", "S3"})
    EXPECT_EQ(degeneracy(build_hex_torus(1), parse_group(grp)).orbit_count, color_code_anyon_count(parse_group(grp)));
}

TEST(Spectrum, RankOracleAgrees) {
  for (auto [lat, grp] : {std::pair{"hex-torus:1", "Z2"}, std::pair{"triangular:3", "Z2"}, std::pair{"triangular:3", "Z3"},
                          std::pair{"hex-torus:1", "Z3"}, std::pair{"hex-torus:1", "Z4"}, std::pair{"squareoct-torus:2", "Z2"},
                          std::pair{"rect-bg:2x2", "Z2"}, std::pair{"rect-br:2x2", "Z2"}}) {
    Colex2 c = build_from_spec(lat);
    FiniteGroup g = parse_group(grp);
    GroundSpaceReport oracle = degeneracy_rank_oracle(c, g);
    EXPECT_EQ(oracle.method, "rank_oracle");
    EXPECT_EQ(oracle.orbit_count, degeneracy(c, g).orbit_count) << lat << " " << grp;
  }
  EXPECT_THROW(degeneracy_rank_oracle(build_hex_torus(2), cyclic(2)), BudgetExceeded);
}

TEST(Spectrum, GeneratorClosure) {
  for (auto [lat, grp] : {std::pair{"hex-torus:1", "S3"}, std::pair{"triangular:3", "S3"}, std::pair{"rect-bg:2x2", "Z3"},
                          std::pair{"squareoct-torus:2", "Z3"}}) {
    OrbitProblem p = color_code_problem(build_from_spec(lat), parse_group(grp));
    EXPECT_TRUE(check_generator_closure(p, enumerate_valid(p))) << lat << " " << grp;
  }
}

TEST(Spectrum, GaugeFixingDoesNotChangeCounts) {
  Colex2 c = build_hex_torus(1);
  FiniteGroup g = symmetric3();
  SpectrumOptions plain;
  plain.gauge_fix = false;
  GroundSpaceReport a = degeneracy(c, g), b = degeneracy(c, g, plain);
  EXPECT_EQ(a.orbit_count, b.orbit_count);
  EXPECT_EQ(a.valid_count, b.valid_count);
  EXPECT_EQ(b.gauge_fixed, 0u);
}

TEST(Spectrum, ParityFlipInvariance) {
  for (auto [lat, grp] : {std::pair{"hex-torus:1", "S3"}, std::pair{"triangular:3", "S3"}, std::pair{"triangular:5", "Z2"}}) {
    Colex2 c = build_from_spec(lat);
    FiniteGroup g = parse_group(grp);
    std::uint64_t base = degeneracy(c, g).orbit_count;
    for (Site s = 0; s < c.num_vertices(); s += 2) EXPECT_EQ(degeneracy(apply_parity_flip(c, s), g).orbit_count, base);
  }
}

TEST(Spectrum, ReportIndependentOfWorkers) {
  Colex2 c = build_squareoct_torus(2);
  FiniteGroup g = cyclic(3);
  SpectrumOptions one, many;
  many.workers = 5;
  EXPECT_EQ(degeneracy(c, g, one).to_json(), degeneracy(c, g, many).to_json());
  ValidSet a = enumerate_valid(c, g, one), b = enumerate_valid(c, g, many);
  EXPECT_EQ(a.codes, b.codes);
}

TEST(Spectrum, ReportFormat) {
  GroundSpaceReport r = degeneracy(build_hex_torus(1), cyclic(2));
  EXPECT_EQ(r.summary(), "degeneracy=16 valid=32 method=orbit");
  auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j.at("degeneracy"), 16);
  EXPECT_EQ(j.at("valid_count"), 32);
  EXPECT_FALSE(j.contains("runtime_seconds"));
  EXPECT_EQ(r.to_json(), degeneracy(build_hex_torus(1), cyclic(2)).to_json());
}

TEST(Spectrum, Budget) {
  SpectrumOptions o;
  o.budget_states = 10;
  EXPECT_THROW(degeneracy(build_hex_torus(1), symmetric3(), o), BudgetExceeded);
}
