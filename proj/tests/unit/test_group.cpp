#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gcolex/group.hpp"

using namespace gcolex;

namespace {

std::vector<FiniteGroup> all_named() {
  std::vector<FiniteGroup> out;
  for (auto s : {"Z2", "Z3", "Z4", "S3", "D4", "Q8", "S3xZ2"}) out.push_back(parse_group(s));
  return out;
}

// S3 built directly from composition of permutations of {0,1,2}.
FiniteGroup s3_from_permutations() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup::from_table("S3perm", table);
}

// Oracle for the double anyon count: conjugation orbits of commuting pairs, via Burnside
// this is the number of pairwise commuting triples divided by |G|.
std::uint64_t commuting_triples_over_order(const FiniteGroup& g) {
  std::uint64_t n = 0;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      for (std::size_t c = 0; c < g.order(); ++c) {
        Elem x = Elem(a), y = Elem(b), z = Elem(c);
        if (g.mul(x, y) == g.mul(y, x) && g.mul(x, z) == g.mul(z, x) && g.mul(y, z) == g.mul(z, y)) ++n;
      }
  return n / g.order();
}

std::set<Elem> brute_commutator_closure(const FiniteGroup& g) {
  std::set<Elem> s{FiniteGroup::id};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) s.insert(g.commutator(Elem(a), Elem(b)));
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem x : std::set<Elem>(s))
      for (Elem y : std::set<Elem>(s)) grew |= s.insert(g.mul(x, y)).second;
  }
  return s;
}

}  // namespace

TEST(Group, NamedGroupsSatisfyGroupLaws) {
  for (const auto& g : all_named()) {
    const auto n = g.order();
    for (std::size_t a = 0; a < n; ++a) {
      std::set<Elem> row, col;
      for (std::size_t b = 0; b < n; ++b) {
        row.insert(g.mul(Elem(a), Elem(b)));
        col.insert(g.mul(Elem(b), Elem(a)));
      }
      EXPECT_EQ(row.size(), n) << g.name();
      EXPECT_EQ(col.size(), n) << g.name();
      EXPECT_EQ(g.mul(Elem(a), FiniteGroup::id), a);
      EXPECT_EQ(g.mul(Elem(a), g.inv(Elem(a))), FiniteGroup::id);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          ASSERT_EQ(g.mul(g.mul(Elem(a), Elem(b)), Elem(c)), g.mul(Elem(a), g.mul(Elem(b), Elem(c))));
    }
  }
}

TEST(Group, Orders) {
  EXPECT_EQ(cyclic(2).mul(1, 1), 0);
  EXPECT_EQ(parse_group("Z4").order(), 4u);
  EXPECT_EQ(parse_group("D4").order(), 8u);
  EXPECT_EQ(parse_group("Q8").order(), 8u);
  EXPECT_EQ(direct_product(symmetric3(), cyclic(2)).order(), 12u);
  EXPECT_FALSE(symmetric3().is_abelian());
  EXPECT_TRUE(cyclic(3).is_abelian());
  EXPECT_THROW(parse_group("Z0"), std::invalid_argument);
  EXPECT_THROW(parse_group("nope"), std::invalid_argument);
}

TEST(Group, S3MatchesPermutationComposition) {
  FiniteGroup a = symmetric3(), b = s3_from_permutations();
  EXPECT_FALSE(b.is_abelian());
  EXPECT_EQ(commutator_subgroup(a).size(), commutator_subgroup(b).size());
  EXPECT_EQ(conjugacy_classes(a).size(), conjugacy_classes(b).size());
  EXPECT_EQ(count_double_anyons(a), count_double_anyons(b));
}

TEST(Group, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup::from_table("x", {{0, 1}, {1, 1}}), std::invalid_argument);
  // Latin square without associativity (loop of order 5).
  std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FiniteGroup::from_table("loop", loop);
    FAIL() << "non-associative table accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("("), std::string::npos) << e.what();
  }
}

TEST(Group, TableTextFormat) {
  std::istringstream in("3\n0 1 2\n1 2 0\n2 0 1\n");
  FiniteGroup g = read_group_table(in, "Z3t");
  EXPECT_EQ(g.order(), 3u);
  EXPECT_EQ(count_double_anyons(g), 9u);
  std::istringstream bad("2\n0 1\n");
  EXPECT_THROW(read_group_table(bad, "short"), std::invalid_argument);
}

TEST(Group, CommutatorSubgroupMatchesBruteClosure) {
  for (const auto& g : all_named()) {
    Subgroup k = commutator_subgroup(g);
    auto brute = brute_commutator_closure(g);
    EXPECT_EQ(std::vector<Elem>(brute.begin(), brute.end()), k.members) << g.name();
    EXPECT_TRUE(is_normal(g, k));
  }
  EXPECT_EQ(commutator_subgroup(cyclic(5)).size(), 1u);
  EXPECT_EQ(commutator_subgroup(symmetric3()).size(), 3u);
  EXPECT_EQ(commutator_subgroup(quaternion8()).size(), 2u);
}

TEST(Group, Abelianization) {
  EXPECT_EQ(abelianization(cyclic(3)).quotient.order(), 3u);
  EXPECT_EQ(abelianization(symmetric3()).quotient.order(), 2u);
  EXPECT_EQ(abelianization(parse_group("S3xZ2")).quotient.order(), 4u);
  for (const auto& g : all_named()) {
    QuotientMap q = abelianization(g);
    EXPECT_TRUE(q.quotient.is_abelian()) << g.name();
    EXPECT_EQ(q.coset[FiniteGroup::id], 0);
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b)
        ASSERT_EQ(q.coset[g.mul(Elem(a), Elem(b))], q.quotient.mul(q.coset[a], q.coset[b]));
  }
}

TEST(Group, ConjugacyClassesAndCentralizers) {
  auto sizes = [](const FiniteGroup& g) {
    std::vector<std::size_t> s;
    for (auto& c : conjugacy_classes(g)) s.push_back(c.size());
    return s;
  };
  EXPECT_EQ(sizes(cyclic(2)), (std::vector<std::size_t>{1, 1}));
  auto s3 = sizes(symmetric3());
  std::sort(s3.begin(), s3.end());
  EXPECT_EQ(s3, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(conjugacy_classes(quaternion8()).size(), 5u);
  FiniteGroup g = symmetric3();
  EXPECT_EQ(conjugacy_classes(g).front(), std::vector<Elem>{FiniteGroup::id});
  EXPECT_EQ(centralizer(g, FiniteGroup::id).size(), 6u);
  for (const auto& cls : conjugacy_classes(g)) {
    std::size_t c = centralizer(g, cls.front()).size();
    EXPECT_EQ(c * cls.size(), 6u);  // orbit-stabilizer
    EXPECT_EQ(c, cls.size() == 2 ? 3u : cls.size() == 3 ? 2u : 6u);
  }
}

TEST(Group, AnyonCountsAgainstCommutingTriples) {
  EXPECT_EQ(count_double_anyons(cyclic(2)), 4u);
  EXPECT_EQ(count_double_anyons(symmetric3()), 8u);
  EXPECT_EQ(count_double_anyons(parse_group("S3xZ2")), 32u);
  for (const auto& g : all_named()) EXPECT_EQ(count_double_anyons(g), commuting_triples_over_order(g)) << g.name();
  EXPECT_EQ(color_code_anyon_count(cyclic(2)), 16u);
  EXPECT_EQ(color_code_anyon_count(cyclic(3)), 81u);
  EXPECT_EQ(color_code_anyon_count(symmetric3()), 32u);
}

TEST(Group, AnyonCountIsMultiplicative) {
  std::vector<FiniteGroup> gs{cyclic(2), cyclic(3), symmetric3(), quaternion8()};
  for (const auto& a : gs)
    for (const auto& b : gs)
      if (a.order() * b.order() <= 24)
        EXPECT_EQ(count_double_anyons(direct_product(a, b)), count_double_anyons(a) * count_double_anyons(b));
}

TEST(Group, CommutatorMembershipIgnoresFactorOrder) {
  std::mt19937_64 rng(7);
  for (const auto& g : all_named()) {
    Subgroup k = commutator_subgroup(g);
    std::uniform_int_distribution<int> pick(0, int(g.order()) - 1);
    for (int t = 0; t < 200; ++t) {
      std::array<Elem, 5> xs{};
      for (auto& x : xs) x = Elem(pick(rng));
      auto member = [&](const std::array<Elem, 5>& v) {
        Elem p = FiniteGroup::id;
        for (Elem x : v) p = g.mul(p, x);
        return k.contains(p);
      };
      bool ref = member(xs);
      std::array<Elem, 5> ys = xs;
      std::shuffle(ys.begin(), ys.end(), rng);
      ASSERT_EQ(member(ys), ref) << g.name();
    }
  }
}

TEST(Group, GeneratingSetGenerates) {
  for (const auto& g : all_named()) {
    Subgroup k = commutator_subgroup(g);
    EXPECT_EQ(generated_subgroup(g, generating_set(g, k)).members, k.members);
  }
}
