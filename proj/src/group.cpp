#include "gcolex/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace gcolex {

namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, const std::vector<std::vector<int>>& table) {
  const std::size_t n = table.size();
  if (n == 0 || n > 255) throw std::invalid_argument("group order must be in 1..255");
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("multiplication table is not square");
    for (int x : row)
      if (x < 0 || static_cast<std::size_t>(x) >= n) throw std::invalid_argument("table entry out of range");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n), col_seen(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[table[i][j]]) throw std::invalid_argument("not a Latin square: row " + std::to_string(i));
      if (col_seen[table[j][i]]) throw std::invalid_argument("not a Latin square: column " + std::to_string(i));
      row_seen[table[i][j]] = col_seen[table[j][i]] = true;
    }
  }
  int e = -1;
  for (std::size_t i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j)
      ok = table[i][j] == static_cast<int>(j) && table[j][i] == static_cast<int>(j);
    if (ok) e = static_cast<int>(i);
  }
  if (e < 0) throw std::invalid_argument("table has no identity element");

  auto assoc = [&](int a, int b, int c) {
    if (table[table[a][b]][c] != table[a][table[b][c]])
      throw std::invalid_argument("associativity fails for triple " + triple(a, b, c));
  };
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    for (int t = 0; t < 20000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }

  // relabel: swap e and 0
  std::vector<int> to_new(n), to_old(n);
  std::iota(to_old.begin(), to_old.end(), 0);
  std::swap(to_old[0], to_old[e]);
  for (std::size_t i = 0; i < n; ++i) to_new[to_old[i]] = static_cast<int>(i);

  FiniteGroup g;
  g.name_ = std::move(name);
  g.n_ = n;
  g.table_.resize(n * n);
  g.inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      g.table_[a * n + b] = static_cast<Elem>(to_new[table[to_old[a]][to_old[b]]]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.table_[a * n + b] == 0) g.inv_[a] = static_cast<Elem>(b);
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (table_[a * n_ + b] != table_[b * n_ + a]) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) t[a][b] = table_[a * n_ + b];
  return t;
}

FiniteGroup cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table("Z" + std::to_string(n), t);
}

FiniteGroup symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
      t[a][b] = index(c);
    }
  return FiniteGroup::from_table("S3", t);
}

FiniteGroup dihedral(int n) {
  if (n < 1) throw std::invalid_argument("dihedral group needs n >= 1");
  // element (s, k) = r^k s^s stored as s*n + k
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int sa = a / n, ka = a % n, sb = b / n, kb = b % n;
      // r^ka s^sa r^kb s^sb = r^(ka + (sa ? -kb : kb)) s^(sa^sb)
      int k = ((ka + (sa ? -kb : kb)) % n + n) % n;
      t[a][b] = (sa ^ sb) * n + k;
    }
  return FiniteGroup::from_table("D" + std::to_string(n), t);
}

FiniteGroup quaternion8() {
  // basis 1,i,j,k with signs: element = sign*4 + unit
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int s = (a / 4) ^ (b / 4) ^ sign_mul[a % 4][b % 4];
      t[a][b] = s * 4 + unit_mul[a % 4][b % 4];
    }
  return FiniteGroup::from_table("Q8", t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = static_cast<int>(a.order()), nb = static_cast<int>(b.order());
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb)) * nb +
                b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb));
  return FiniteGroup::from_table(a.name() + "x" + b.name(), t);
}

FiniteGroup parse_group(const std::string& spec) {
  auto pos = spec.find('x');
  if (pos != std::string::npos) {
    FiniteGroup g = direct_product(parse_group(spec.substr(0, pos)), parse_group(spec.substr(pos + 1)));
    return g;
  }
  static const std::regex family(R"(([ZSDQ])(\d+))");
  std::smatch m;
  if (!std::regex_match(spec, m, family)) throw std::invalid_argument("unknown group: " + spec);
  int n = std::stoi(m[2]);
  switch (m[1].str()[0]) {
    case 'Z':
      return cyclic(n);
    case 'D':
      return dihedral(n);
    case 'S':
      if (n == 3) return symmetric3();
      break;
    case 'Q':
      if (n == 8) return quaternion8();
      break;
  }
  throw std::invalid_argument("unknown group: " + spec);
}

FiniteGroup read_group_table(std::istream& in, std::string name) {
  int n = 0;
  if (!(in >> n) || n <= 0) throw std::invalid_argument("group table: bad order line");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (auto& row : t)
    for (int& x : row)
      if (!(in >> x)) throw std::invalid_argument("group table: truncated");
  return FiniteGroup::from_table(std::move(name), t);
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::vector<bool> mask(g.order());
  std::vector<Elem> members{FiniteGroup::id};
  mask[FiniteGroup::id] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Elem s : gens) {
      Elem x = g.mul(members[i], s);
      if (!mask[x]) {
        mask[x] = true;
        members.push_back(x);
      }
    }
  std::sort(members.begin(), members.end());
  return {members, mask};
}

Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<Elem> comms;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) comms.push_back(g.commutator(a, b));
  return generated_subgroup(g, comms);
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (std::size_t x = 0; x < g.order(); ++x)
    for (Elem k : h.members)
      if (!h.contains(g.conj(x, k))) return false;
  return true;
}

QuotientMap quotient(const FiniteGroup& g, const Subgroup& h) {
  if (!is_normal(g, h)) throw std::invalid_argument("quotient by a non-normal subgroup");
  const std::size_t n = g.order();
  QuotientMap q;
  q.kernel = h;
  q.coset.assign(n, 0xff);
  for (std::size_t x = 0; x < n; ++x) {
    if (q.coset[x] != 0xff) continue;
    Elem c = static_cast<Elem>(q.representative.size());
    q.representative.push_back(static_cast<Elem>(x));
    for (Elem k : h.members) q.coset[g.mul(x, k)] = c;
  }
  const std::size_t m = q.representative.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      t[a][b] = q.coset[g.mul(q.representative[a], q.representative[b])];
  q.quotient = FiniteGroup::from_table(g.name() + "/K", t);
  return q;
}

QuotientMap abelianization(const FiniteGroup& g) {
  QuotientMap q = quotient(g, commutator_subgroup(g));
  if (!q.quotient.is_abelian()) throw std::logic_error("abelianization is not abelian");
  q.quotient = FiniteGroup::from_table(g.name() + "/[G,G]", q.quotient.table());
  return q;
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<bool> seen(g.order());
  std::vector<std::vector<Elem>> classes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls;
    for (std::size_t h = 0; h < g.order(); ++h) {
      Elem y = g.conj(h, x);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

Subgroup centralizer(const FiniteGroup& g, Elem x) {
  Subgroup s;
  s.mask.assign(g.order(), false);
  for (std::size_t h = 0; h < g.order(); ++h)
    if (g.mul(h, x) == g.mul(x, h)) {
      s.members.push_back(static_cast<Elem>(h));
      s.mask[h] = true;
    }
  return s;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  const std::size_t m = h.size();
  std::vector<int> index(g.order(), -1);
  for (std::size_t i = 0; i < m; ++i) index[h.members[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      int c = index[g.mul(h.members[a], h.members[b])];
      if (c < 0) throw std::invalid_argument("subset is not closed");
      t[a][b] = c;
    }
  return FiniteGroup::from_table(g.name() + "<sub>", t);
}

std::uint64_t count_double_anyons(const FiniteGroup& g) {
  std::uint64_t total = 0;
  for (const auto& cls : conjugacy_classes(g))
    total += conjugacy_classes(subgroup_as_group(g, centralizer(g, cls.front()))).size();
  return total;
}

std::uint64_t color_code_anyon_count(const FiniteGroup& g) {
  return count_double_anyons(direct_product(g, abelianization(g).quotient));
}

std::vector<Elem> generating_set(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> gens;
  Subgroup cur = generated_subgroup(g, gens);
  for (Elem x : h.members) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generated_subgroup(g, gens);
  }
  return gens;
}

}  // namespace gcolex
