#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "gcolex/compiled.hpp"
#include "gcolex/stabilizer.hpp"

using namespace gcolex;

namespace {

Configuration random_config(std::mt19937_64& rng, std::size_t n, std::size_t order) {
  std::uniform_int_distribution<int> d(0, int(order) - 1);
  Configuration c(n);
  for (auto& x : c) x = Elem(d(rng));
  return c;
}

SparseState apply_product(const std::vector<OperatorAsSum>& factors, const FiniteGroup& g, const Configuration& c) {
  SparseState s{{Rational(1), c}};
  for (const auto& f : factors) s = apply(f, g, s);
  return s;
}

SparseState apply_named(const NamedOperator& op, const FiniteGroup& g, const SparseState& v) {
  SparseState s = v;
  for (const auto& f : op.factors) s = apply(f, g, s);
  return s;
}

// Rank over GF(2) of bit rows.
int gf2_rank(std::vector<std::vector<int>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv][c]) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != std::size_t(rank) && rows[r][c])
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(PermOp, LeftAndRightMultiplication) {
  FiniteGroup g = symmetric3();
  for (std::size_t h = 0; h < 6; ++h)
    for (std::size_t x = 0; x < 6; ++x) {
      Configuration c{Elem(x)};
      PermOp::left(0, Elem(h)).apply(g, c);
      EXPECT_EQ(c[0], g.mul(Elem(h), Elem(x)));
      c[0] = Elem(x);
      PermOp::right(0, Elem(h)).apply(g, c);
      EXPECT_EQ(c[0], g.mul(Elem(x), g.inv(Elem(h))));
    }
  EXPECT_TRUE(PermOp::left(3, FiniteGroup::id).is_identity());
}

TEST(PermOp, CompositionInverseAndInversionConjugate) {
  FiniteGroup g = symmetric3();
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    Elem a = Elem(rng() % 6), b = Elem(rng() % 6), c = Elem(rng() % 6);
    PermOp p = PermOp::from_actions(g, {{0, a, b}, {2, c, FiniteGroup::id}});
    PermOp q = PermOp::from_actions(g, {{0, c, a}, {1, b, b}});
    Configuration x = random_config(rng, 3, 6), y = x;
    p.apply(g, y);
    q.apply(g, y);
    Configuration z = x;
    p.then(q, g).apply(g, z);
    EXPECT_EQ(y, z);
    p.inverse(g).apply(g, z);
    q.inverse(g).apply(g, y);
    p.inverse(g).apply(g, y);
    EXPECT_EQ(y, x);
    // I p I with I the inversion at site 0.
    Configuration w = x;
    w[0] = g.inv(w[0]);
    p.apply(g, w);
    w[0] = g.inv(w[0]);
    Configuration v = x;
    p.conjugate_inversion(0).apply(g, v);
    EXPECT_EQ(v, w);
  }
}

TEST(Operators, ApplyBasics) {
  FiniteGroup g = symmetric3();
  Configuration c{1, 2, 3};
  SparseState id = apply(OperatorAsSum::identity(), g, c);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0].first, Rational(1));
  EXPECT_EQ(id[0].second, c);
  auto z = OperatorAsSum::projector(DiagPredicate::identity_product({{0, false}, {1, false}}, 6));
  EXPECT_TRUE(apply(z, g, c).empty());
  Configuration ok{2, g.inv(2), 5};
  EXPECT_EQ(apply(z, g, ok).size(), 1u);
  // Terms reaching the same configuration merge.
  auto twice = OperatorAsSum::sum({PermOp::left(0, 1), PermOp::left(0, 1)});
  SparseState m = apply(twice, g, c);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].first, Rational(2));
  EXPECT_TRUE(apply(twice.scaled(Rational(0)), g, c).empty());
}

TEST(Operators, ComposeMatchesSequentialApply) {
  FiniteGroup g = symmetric3();
  auto a = OperatorAsSum::average({PermOp::left(0, 1), PermOp::right(1, 2), PermOp::left(2, 4)});
  auto b = OperatorAsSum::projector(DiagPredicate::in_subgroup({{0, false}, {1, true}, {2, false}}, commutator_subgroup(g)));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Configuration c = random_config(rng, 3, 6);
    EXPECT_EQ(apply(compose(a, b, g), g, c), apply(a, g, apply(b, g, c)));
    EXPECT_EQ(apply(compose(b, a, g), g, c), apply(b, g, apply(a, g, c)));
    EXPECT_LE(compose(a, b, g).size(), a.size() * b.size());
  }
}

TEST(Stabilizer, BuildASideRule) {
  FiniteGroup g = symmetric3();
  for (const char* spec : {"hex-torus:2", "triangular:5", "rect-br:2x2"}) {
    Colex2 c = build_from_spec(spec);
    for (std::uint32_t p = 0; p < c.plaquettes.size(); ++p) {
      PermOp a = build_A(c, g, p, 1);
      EXPECT_EQ(a.actions().size(), c.plaquettes[p].vertices.size());
      for (const auto& act : a.actions()) {
        bool left = (c.vertices[act.site].chirality == 1) != (c.plaquettes[p].color == Color::Red);
        EXPECT_EQ(act.left != FiniteGroup::id, left) << spec << " plaquette " << p;
        EXPECT_EQ(act.right != FiniteGroup::id, !left);
      }
      EXPECT_TRUE(build_A(c, g, p, FiniteGroup::id).is_identity());
    }
    // Parity -1 at a site swaps the side there.
    Site s = c.plaquettes[0].vertices[0];
    Colex2 f = apply_parity_flip(c, s);
    LocalAction before{}, after{};
    for (auto x : build_A(c, g, 0, 1).actions()) if (x.site == s) before = x;
    for (auto x : build_A(f, g, 0, 1).actions()) if (x.site == s) after = x;
    EXPECT_EQ(before.left != FiniteGroup::id, after.right != FiniteGroup::id);
  }
}

TEST(Stabilizer, Z2FlipsEveryBoundaryVertex) {
  FiniteGroup g = cyclic(2);
  Colex2 c = build_hex_torus(2);
  for (std::uint32_t p = 0; p < c.plaquettes.size(); ++p) {
    Configuration x(c.num_vertices(), 0);
    build_A(c, g, p, 1).apply(g, x);
    std::set<Site> flipped;
    for (Site s = 0; s < x.size(); ++s)
      if (x[s]) flipped.insert(s);
    EXPECT_EQ(flipped, std::set<Site>(c.plaquettes[p].vertices.begin(), c.plaquettes[p].vertices.end()));
  }
}

TEST(Stabilizer, SetShapes) {
  StabilizerSet z2 = build_stabilizers(build_hex_torus(1), cyclic(2));
  for (const auto& sc : z2.sc) {
    ASSERT_EQ(sc.size(), 1u);
    EXPECT_TRUE(sc.terms()[0].op.is_identity());
  }
  StabilizerSet s3 = build_stabilizers(build_squareoct_torus(2), symmetric3());
  for (const auto& sc : s3.sc) EXPECT_EQ(sc.size(), 3u);
  for (const auto& sx : s3.sx) EXPECT_EQ(sx.size(), 6u);
  StabilizerSet z3 = build_stabilizers(build_hex_torus(2), cyclic(3));
  for (const auto& z : z3.sz) EXPECT_EQ(z.accept, (std::vector<bool>{true, false, false}));
  StabilizerSet bg = build_stabilizers(build_rect(2, 2, RectScheme::BlueGreen), symmetric3());
  EXPECT_EQ(bg.corner.size(), 4u);
  Colex2 broken = build_hex_torus(2);
  broken.vertices[0].chirality = -broken.vertices[0].chirality;
  EXPECT_THROW(build_stabilizers(broken, cyclic(2)), std::invalid_argument);
}

TEST(Stabilizer, Z2DressedEqualsUndressed) {
  FiniteGroup g = cyclic(2);
  Colex2 c = build_hex_torus(1);
  StabilizerSet s = build_stabilizers(c, g);
  for (std::uint64_t code = 0; code < 64; ++code) {
    Configuration x(6);
    for (int i = 0; i < 6; ++i) x[i] = (code >> i) & 1;
    for (std::uint32_t p = 0; p < 3; ++p) EXPECT_EQ(apply(s.dressed(p), g, x), apply(s.sx[p], g, x));
  }
}

TEST(Stabilizer, OperatorsAreIdempotent) {
  FiniteGroup g = symmetric3();
  for (const char* spec : {"hex-torus:1", "rect-bg:2x2"}) {
    Colex2 c = build_from_spec(spec);
    StabilizerSet s = build_stabilizers(c, g);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
      Configuration x = random_config(rng, c.num_vertices(), 6);
      for (const auto& op : s.family()) {
        SparseState once = apply_product(op.factors, g, x);
        EXPECT_EQ(apply_named(op, g, once), once) << spec << " " << op.name;
      }
      for (std::uint32_t p = 0; p < s.sx.size(); ++p) {
        SparseState once = apply(s.sx[p], g, x);
        EXPECT_EQ(apply(s.sx[p], g, once), once);
      }
    }
  }
}

TEST(Stabilizer, RedSXCommutesWithUndressedSX) {
  FiniteGroup g = symmetric3();
  Colex2 c = build_hex_torus(1);
  StabilizerSet s = build_stabilizers(c, g);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    Configuration x = random_config(rng, 6, 6);
    for (std::uint32_t r = 0; r < 3; ++r) {
      if (c.plaquettes[r].color != Color::Red) continue;
      for (std::uint32_t q = 0; q < 3; ++q)
        if (q != r) EXPECT_EQ(apply(s.sx[r], g, apply(s.sx[q], g, x)), apply(s.sx[q], g, apply(s.sx[r], g, x)));
    }
  }
}

TEST(Stabilizer, CommutationExhaustive) {
  CheckOptions o;
  CommutationReport z2 = check_commutation(build_hex_torus(1), cyclic(2), o);
  EXPECT_TRUE(z2.ok());
  EXPECT_FALSE(z2.undressed_witness.has_value());
  CommutationReport tri = check_commutation(build_triangular(3), symmetric3(), o);
  EXPECT_TRUE(tri.failures.empty());
  CommutationReport rect = check_commutation(build_rect(2, 2, RectScheme::BlueGreen), cyclic(3), o);
  EXPECT_TRUE(rect.failures.empty());
  EXPECT_GT(rect.pairs_checked, 0u);
}

TEST(Stabilizer, UndressedBlueGreenCommuteOnSingleCellHexTorus) {
  CommutationReport r = check_commutation(build_hex_torus(1), symmetric3(), {});
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.undressed_witness.has_value());
}

TEST(Stabilizer, UndressedWitnessIsGenuine) {
  FiniteGroup g = symmetric3();
  Colex2 c = build_triangular(3);
  StabilizerSet s = build_stabilizers(c, g);
  CommutationReport r = check_commutation(c, g, {});
  ASSERT_TRUE(r.undressed_witness.has_value());
  EXPECT_TRUE(r.ok());
  const Configuration& w = r.undressed_witness->witness;
  bool differs = false;
  for (std::uint32_t p = 0; p < 3; ++p)
    for (std::uint32_t q = 0; q < 3; ++q) {
      if (c.plaquettes[p].color != Color::Blue || c.plaquettes[q].color != Color::Green) continue;
      differs |= apply(s.sx[p], g, apply(s.sx[q], g, w)) != apply(s.sx[q], g, apply(s.sx[p], g, w));
    }
  EXPECT_TRUE(differs);
}

TEST(Stabilizer, CommutationReportDeterministic) {
  CheckOptions a;
  a.mode = CheckMode::Sampled;
  a.samples = 500;
  a.seed = 99;
  CheckOptions b = a;
  b.workers = 4;
  Colex2 c = build_rect(2, 2, RectScheme::BlueRed);
  std::string ja = check_commutation(c, symmetric3(), a).to_json();
  EXPECT_EQ(ja, check_commutation(c, symmetric3(), b).to_json());
  auto j = nlohmann::json::parse(ja);
  EXPECT_EQ(j.at("mode"), "sampled");
  EXPECT_EQ(j.at("seed"), 99);
  EXPECT_TRUE(j.contains("pairs_checked"));
  EXPECT_TRUE(j.at("failures").is_array());
}

TEST(Stabilizer, CommutationBudget) {
  CheckOptions o;
  o.budget_states = 10;
  EXPECT_THROW(check_commutation(build_hex_torus(1), symmetric3(), o), BudgetExceeded);
}

TEST(Stabilizer, BrokenOperatorIsCaught) {
  FiniteGroup g = symmetric3();
  Colex2 c = build_triangular(3);
  StabilizerSet s = build_stabilizers(c, g);
  // A single-site shift by h outside [G,G] moves the red plaquette product out of [G,G].
  std::uint32_t red = 0;
  while (c.plaquettes[red].color != Color::Red) ++red;
  Elem h = 0;
  while (s.commutator.contains(h)) ++h;
  NamedOperator lone{"A", {OperatorAsSum::sum({PermOp::left(c.plaquettes[red].vertices[0], h)})}, {}, false};
  lone.support = lone.factors[0].support();
  NamedOperator z{"Z", {OperatorAsSum::projector(s.sz[red])}, s.sz[red].support(), true};
  EXPECT_TRUE(commutation_witness(lone, z, g, 7, {}).has_value());
  std::vector<NamedOperator> fam = s.family();
  EXPECT_FALSE(commutation_witness(fam[0], fam[3], g, 7, {}).has_value());
}

TEST(Stabilizer, RedOrderIndependence) {
  RedOrderReport r = check_red_order_independence(symmetric3(), 4, 1000, 1);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.tuples, 1000u);
  EXPECT_EQ(r.orderings, 24000u);
  EXPECT_TRUE(check_red_order_independence(cyclic(3), 4, 100, 1).ok());
  EXPECT_TRUE(check_red_order_independence(quaternion8(), 5, 100, 2).ok());
}

TEST(Stabilizer, ParityCovariance) {
  for (const FiniteGroup& g : {symmetric3(), cyclic(3)}) {
    for (const char* spec : {"hex-torus:1", "rect-bg:2x2", "triangular:3"}) {
      Colex2 c = build_from_spec(spec);
      StabilizerSet base = build_stabilizers(c, g);
      for (Site site : {Site(0), Site(c.num_vertices() - 1)}) {
        std::vector<NamedOperator> conj = conjugate_site(base, site).family();
        std::vector<NamedOperator> flipped = build_stabilizers(apply_parity_flip(c, site), g).family();
        ASSERT_EQ(conj.size(), flipped.size());
        std::mt19937_64 rng(site + 17);
        for (int t = 0; t < 20; ++t) {
          Configuration x = random_config(rng, c.num_vertices(), g.order());
          for (std::size_t i = 0; i < conj.size(); ++i)
            EXPECT_EQ(apply_product(conj[i].factors, g, x), apply_product(flipped[i].factors, g, x))
                << spec << " " << conj[i].name;
        }
      }
    }
  }
}

TEST(Stabilizer, Z2FlipChangesNothing) {
  FiniteGroup g = cyclic(2);
  Colex2 c = build_triangular(5);
  auto a = build_stabilizers(c, g).family(), b = build_stabilizers(apply_parity_flip(c, 4), g).family();
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    Configuration x = random_config(rng, c.num_vertices(), 2);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(apply_product(a[i].factors, g, x), apply_product(b[i].factors, g, x));
  }
}

TEST(Stabilizer, TriangularZ2HasSixIndependentGenerators) {
  Colex2 c = build_triangular(3);
  std::vector<std::vector<int>> rows;
  for (const auto& p : c.plaquettes) {
    std::vector<int> x(14, 0), z(14, 0);
    for (Site v : p.vertices) {
      x[v] = 1;
      z[7 + v] = 1;
    }
    rows.push_back(x);
    rows.push_back(z);
  }
  EXPECT_EQ(gf2_rank(rows), 6);
}

TEST(Stabilizer, DressedGroundSpaceInsideUndressed) {
  // Uniform superpositions over generator orbits of valid configurations are the
  // dressed ground states; each must also be fixed by every undressed S^X.
  FiniteGroup g = symmetric3();
  Colex2 c = build_hex_torus(1);
  StabilizerSet s = build_stabilizers(c, g);
  std::vector<PermOp> gens;
  for (std::uint32_t p = 0; p < 3; ++p)
    for (Elem h = 0; h < 6; ++h) gens.push_back(build_A(c, g, p, h));
  for (std::uint32_t l = 0; l < c.red_links.size(); ++l)
    for (Elem n : s.commutator.members) gens.push_back(build_C(c, g, l, n));
  auto valid = [&](const Configuration& x) {
    for (const auto& z : s.sz)
      if (!z.eval(g, x)) return false;
    return true;
  };
  std::set<Configuration> seen;
  int orbits = 0;
  std::mt19937_64 rng(8);
  while (orbits < 4) {
    Configuration start = random_config(rng, 6, 6);
    if (!valid(start) || seen.count(start)) continue;
    std::set<Configuration> orbit{start};
    std::vector<Configuration> stack{start};
    while (!stack.empty()) {
      Configuration x = stack.back();
      stack.pop_back();
      for (const auto& gen : gens) {
        Configuration y = x;
        gen.apply(g, y);
        if (orbit.insert(y).second) stack.push_back(y);
      }
    }
    seen.insert(orbit.begin(), orbit.end());
    SparseState state;
    for (const auto& x : orbit) state.push_back({Rational(1), x});
    for (std::uint32_t p = 0; p < 3; ++p) EXPECT_EQ(apply(s.sx[p], g, state), state);
    for (const auto& op : s.family()) EXPECT_EQ(apply_named(op, g, state), state) << op.name;
    ++orbits;
  }
}

TEST(Compiled, FactorAgreesWithApply) {
  FiniteGroup g = symmetric3();
  Colex2 c = build_hex_torus(1);
  StabilizerSet s = build_stabilizers(c, g);
  std::vector<Site> all{0, 1, 2, 3, 4, 5};
  LocalSpace space(all, 6);
  std::mt19937_64 rng(4);
  for (const auto& op : s.family())
    for (const auto& f : op.factors) {
      CompiledFactor cf(f, space, g);
      for (int t = 0; t < 20; ++t) {
        std::uint64_t code = rng() % space.size();
        std::vector<Elem> d(6);
        space.decode(code, d);
        Accumulator acc(space.size());
        cf.apply(code, d, 1, [&](std::uint64_t out, std::int64_t w) { acc.add(out, w); });
        std::map<Configuration, Rational> got;
        for (auto [k, w] : acc.take()) got[space.to_global(k, 6)] += Rational(w, cf.denominator());
        std::map<Configuration, Rational> want;
        for (auto& [w, x] : apply(f, g, space.to_global(code, 6))) want[x] += w;
        EXPECT_EQ(got, want) << op.name;
      }
    }
}

TEST(Compiled, LocalSpaceRoundTrip) {
  LocalSpace sp({4, 1, 7}, 3);
  EXPECT_EQ(sp.size(), 27u);
  EXPECT_EQ(sp.stride(0), 9u);
  for (std::uint64_t code = 0; code < 27; ++code) {
    std::vector<Elem> d(3);
    sp.decode(code, d);
    EXPECT_EQ(sp.encode(d), code);
    EXPECT_EQ(sp.from_global(sp.to_global(code, 8)), code);
  }
}

TEST(Compiled, AccumulatorMergesAndDropsZeros) {
  for (std::uint64_t size : {std::uint64_t{64}, std::uint64_t{1} << 40}) {
    Accumulator acc(size);
    acc.add(5, 2);
    acc.add(3, 1);
    acc.add(5, -2);
    acc.add(9, 4);
    acc.add(3, 1);
    EXPECT_EQ(acc.take(), (SparseCodes{{3, 2}, {9, 4}}));
    EXPECT_TRUE(acc.take().empty());
  }
}
