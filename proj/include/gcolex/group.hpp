#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace gcolex {

using Elem = std::uint8_t;

// Finite group given by its multiplication table. Identity is always index 0.
class FiniteGroup {
 public:
  static constexpr Elem id = 0;

  // Validates Latin-square, identity, inverse and associativity laws and
  // relabels so the identity sits at index 0. Throws std::invalid_argument.
  static FiniteGroup from_table(std::string name, const std::vector<std::vector<int>>& table);

  std::size_t order() const { return n_; }
  const std::string& name() const { return name_; }
  Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  bool is_abelian() const;
  std::vector<std::vector<int>> table() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::string name_;
  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
};

struct Subgroup {
  std::vector<Elem> members;  // sorted
  std::vector<bool> mask;     // indexed by element of the parent

  std::size_t size() const { return members.size(); }
  bool contains(Elem g) const { return mask[g]; }
};

struct QuotientMap {
  Subgroup kernel;
  std::vector<Elem> coset;           // element -> coset index (identity coset is 0)
  std::vector<Elem> representative;  // coset index -> smallest element in it
  FiniteGroup quotient;
};

FiniteGroup cyclic(int n);
FiniteGroup symmetric3();
FiniteGroup dihedral(int n);  // order 2n
FiniteGroup quaternion8();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// "Z2", "Z3", "Z4", "S3", "D4", "Q8", "S3xZ2" and generally "Zn", "Dn", "AxB".
FiniteGroup parse_group(const std::string& spec);
// First line n, then n rows of n indices.
FiniteGroup read_group_table(std::istream& in, std::string name);

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens);
Subgroup commutator_subgroup(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
QuotientMap quotient(const FiniteGroup& g, const Subgroup& normal_subgroup);
QuotientMap abelianization(const FiniteGroup& g);
std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g);
Subgroup centralizer(const FiniteGroup& g, Elem x);
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);
std::uint64_t count_double_anyons(const FiniteGroup& g);
std::uint64_t color_code_anyon_count(const FiniteGroup& g);
// A small generating set, chosen greedily in element order.
std::vector<Elem> generating_set(const FiniteGroup& g, const Subgroup& h);

}  // namespace gcolex
