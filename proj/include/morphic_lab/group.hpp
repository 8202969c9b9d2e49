#pragma once

// Explicit finite groups given by their multiplication table. Element 0 is
// always the identity. Groups are immutable; copies share the table.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace morphic_lab {

using Element = int;
using Table = std::vector<std::vector<Element>>;

inline constexpr int kMaxGroupOrder = 4096;

namespace detail {

struct GroupData {
  int order = 0;
  std::vector<std::uint16_t> table;  // row-major, table[a * order + b] = ab
  std::vector<std::uint16_t> inverses;
  std::vector<int> element_orders;
  std::vector<Element> generators;
  std::string name;
  int prime = 0;  // p if order = p^k with k >= 1, else 0
};

}  // namespace detail

class FiniteGroup {
 public:
  // Validates identity, inverses and associativity; throws MorphicError with
  // kNoIdentity / kNoInverse / kNotAssociative naming the offending elements.
  static FiniteGroup from_mult_table(const Table& table, std::string name);
  static FiniteGroup from_flat_table(int order, std::vector<Element> flat,
                                     std::string name);

  // Closure of the generators under composition, numbered breadth-first from
  // the identity permutation. Product x*y means "apply x, then y".
  static FiniteGroup from_perm_generators(
      int degree, const std::vector<std::vector<int>>& generators,
      std::string name);

  int order() const { return d_->order; }
  Element mul(Element a, Element b) const {
    return d_->table[static_cast<std::size_t>(a) * d_->order + b];
  }
  Element inv(Element a) const { return d_->inverses[a]; }
  Element pow(Element a, long long k) const;
  // a^-1 b^-1 a b
  Element commutator(Element a, Element b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  // by^-1 a by
  Element conjugate(Element a, Element by) const {
    return mul(mul(inv(by), a), by);
  }
  int element_order(Element a) const { return d_->element_orders[a]; }
  const std::vector<int>& element_orders() const { return d_->element_orders; }

  const std::string& name() const { return d_->name; }
  // A small generating set (greedy by element order).
  const std::vector<Element>& generators() const { return d_->generators; }

  // The prime p when the order is p^k, k >= 1.
  std::optional<int> prime() const {
    return d_->prime ? std::optional<int>(d_->prime) : std::nullopt;
  }
  // Order 1 counts as a p-group for every p.
  bool is_p_group() const { return d_->order == 1 || d_->prime != 0; }

  Table table() const;
  FiniteGroup renamed(std::string name) const;
  bool same_group(const FiniteGroup& other) const { return d_ == other.d_; }

 private:
  explicit FiniteGroup(std::shared_ptr<const detail::GroupData> d)
      : d_(std::move(d)) {}
  static FiniteGroup validate_and_build(int order,
                                        std::vector<std::uint16_t> table,
                                        std::string name);

  std::shared_ptr<const detail::GroupData> d_;
};

class Subgroup {
 public:
  // Checks that `elements` is a subgroup of `parent`.
  static Subgroup from_elements(const FiniteGroup& parent,
                                std::vector<Element> elements);
  // `sorted_elements` must already be a sorted subgroup.
  static Subgroup trusted(const FiniteGroup& parent,
                          std::vector<Element> sorted_elements);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(Element x) const;
  bool contains(const Subgroup& other) const;
  // Parent-sized membership mask.
  std::vector<char> mask() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements_ == b.elements_;
  }
  // Canonical order: by size, then lexicographically by element list.
  friend std::strong_ordering operator<=>(const Subgroup& a,
                                          const Subgroup& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    return a.elements_ <=> b.elements_;
  }

 private:
  Subgroup(FiniteGroup parent, std::vector<Element> elements)
      : parent_(std::move(parent)), elements_(std::move(elements)) {}

  FiniteGroup parent_;
  std::vector<Element> elements_;
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Element> seed);
// A small generating set of h, chosen greedily by element order.
std::vector<Element> generating_set(const Subgroup& h);

Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// [a, b] = < x^-1 y^-1 x y : x in a, y in b >.
Subgroup commutator_of(const Subgroup& a, const Subgroup& b);
Subgroup commutator_subgroup(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);
// < x^k : x in h >
Subgroup power_subgroup(const Subgroup& h, int k);
// G' G^p for a p-group; throws kNotAPGroup otherwise.
Subgroup frattini_subgroup(const FiniteGroup& g);

// First element of the parent (by index) that fails to normalise h.
std::optional<Element> non_normalizing_element(const Subgroup& h);
bool is_normal(const Subgroup& h);

struct Quotient {
  FiniteGroup group;
  std::vector<Element> projection;       // parent element -> coset index
  std::vector<Element> representatives;  // coset index -> minimal element
};
// Cosets are numbered by minimal representative, so the kernel is coset 0.
// Throws kNotNormal naming a conjugating element.
Quotient quotient(const Subgroup& n);
FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n);

struct Embedded {
  FiniteGroup group;
  std::vector<Element> embedding;  // local index -> parent element
};
Embedded embed(const Subgroup& h);
FiniteGroup subgroup_as_group(const Subgroup& h);

bool is_abelian(const FiniteGroup& g);
int exponent(const FiniteGroup& g);
// Abelian of prime exponent; the trivial group counts as elementary abelian.
bool is_elementary_abelian(const FiniteGroup& g);
bool is_homocyclic(const FiniteGroup& g);
// Classes sorted by their smallest element; each class sorted.
std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);
// d with |G / Phi(G)| = p^d; throws kNotAPGroup.
int min_generators(const FiniteGroup& g);
// Smallest prime dividing the order, 0 for the trivial group.
int smallest_prime_divisor(int n);

// Invariant factors of an abelian group as a sorted list of prime powers.
// The caller guarantees commutativity.
std::vector<long long> prime_power_invariants(const FiniteGroup& g);

// Coordinates on an elementary abelian section upper/lower, with a basis of
// F_p^dim given by the cosets of `lifts`. Throws kNotAbelian when the section
// is not elementary abelian.
struct ElementarySection {
  int p = 0;
  int dim = 0;
  std::vector<Element> lifts;
  // coords[x] is the coordinate vector of x*lower for x in upper, empty
  // otherwise.
  std::vector<std::vector<int>> coords;
};
ElementarySection elementary_section(const Subgroup& upper,
                                     const Subgroup& lower, int p);

}  // namespace morphic_lab
