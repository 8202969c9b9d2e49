#pragma once

// Isomorphism testing for small groups: invariant fingerprints refute, a
// backtracking search over generator images certifies.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphic_lab/group.hpp"

namespace morphic_lab::iso {

inline constexpr long long kDefaultSearchBudget = 10'000'000;
inline constexpr int kCertifiedSearchOrderCap = 512;

// Per-element isomorphism invariant: element order, centraliser order,
// number of q-th roots (q the smallest prime divisor of |G|), membership in
// G' and in the subgroup generated by q-th powers.
using ElementLabel = std::array<int, 5>;

struct IsoFingerprint {
  int order = 0;
  bool abelian = false;
  std::vector<std::pair<int, int>> element_orders;  // (order, count)
  std::vector<std::pair<int, int>> class_sizes;     // (size, count)
  int center_order = 0;
  int derived_order = 0;
  int exponent = 0;
  std::vector<long long> abelianization;  // invariants of G / G'
  std::vector<std::pair<ElementLabel, int>> element_profile;

  friend auto operator<=>(const IsoFingerprint&, const IsoFingerprint&) = default;
};

IsoFingerprint fingerprint(const FiniteGroup& g);

// Name of the first fingerprint field on which a and b differ, or "" if
// they agree.
std::string first_difference(const IsoFingerprint& a, const IsoFingerprint& b);

struct IsoWitness {
  std::vector<Element> mapping;  // domain element -> codomain element
};

// Checks all n^2 table constraints and bijectivity.
bool is_valid_witness(const FiniteGroup& a, const FiniteGroup& b,
                      const IsoWitness& w);

enum class Decision { kYes, kNo };

struct IsoResult {
  Decision decision = Decision::kNo;
  std::optional<IsoWitness> witness;  // set iff kYes
  std::string refuted_by;             // invariant name or "exhausted search"
  long long assignments = 0;

  bool yes() const { return decision == Decision::kYes; }
};

// Precomputed data the search works from.
struct GroupProfile {
  FiniteGroup group;
  IsoFingerprint fp;
  std::vector<ElementLabel> labels;
};
GroupProfile profile(const FiniteGroup& g);

// Fingerprint first, then certified search. Throws kSearchBudgetExceeded
// when the search runs past `budget` partial assignments, and
// kOrderCapExceeded when a search would be needed above the order cap.
IsoResult are_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                         long long budget = kDefaultSearchBudget);
IsoResult are_isomorphic(const GroupProfile& a, const GroupProfile& b,
                         long long budget = kDefaultSearchBudget);

// The search alone, never consulting fingerprints. Candidate images are
// pruned by element labels and partial-homomorphism consistency.
IsoResult certified_search(const GroupProfile& a, const GroupProfile& b,
                           long long budget = kDefaultSearchBudget);

// Throws kNotAbelian.
std::vector<long long> abelian_invariants(const FiniteGroup& g);

// Memo of isomorphism classes: groups are bucketed by fingerprint and only
// compared by certified search inside a bucket.
class IsoClassifier {
 public:
  explicit IsoClassifier(long long budget = kDefaultSearchBudget)
      : budget_(budget) {}

  int classify(const FiniteGroup& g);
  int classify(GroupProfile prof);
  int size() const { return static_cast<int>(reps_.size()); }
  const FiniteGroup& representative(int id) const { return reps_[id].group; }
  long long searches() const { return searches_; }

 private:
  long long budget_;
  long long searches_ = 0;
  std::vector<GroupProfile> reps_;
  std::map<IsoFingerprint, std::vector<int>> buckets_;
};

}  // namespace morphic_lab::iso
