#include "morphic_lab/iso.hpp"

#include <algorithm>
#include <numeric>

#include "morphic_lab/error.hpp"

namespace morphic_lab::iso {

namespace {

template <typename T>
std::vector<std::pair<T, int>> multiset(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<T, int>> out;
  for (const T& v : values) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

class Search {
 public:
  Search(const GroupProfile& a, const GroupProfile& b, long long budget)
      : a_(a.group),
        b_(b.group),
        la_(a.labels),
        lb_(b.labels),
        budget_(budget),
        phi_(a.group.order(), -1),
        used_(b.group.order(), 0) {
    for (Element y = 0; y < b_.order(); ++y) by_label_[lb_[y]].push_back(y);
  }

  IsoResult run() {
    IsoResult result;
    choose_generators();
    phi_[0] = 0;
    used_[0] = 1;
    dom_.push_back(0);
    if (la_[0] == lb_[0] && extend(0)) {
      result.decision = Decision::kYes;
      result.witness = IsoWitness{phi_};
    } else {
      result.refuted_by = "exhausted search";
    }
    result.assignments = assignments_;
    return result;
  }

 private:
  std::size_t candidate_count(Element x) const {
    const auto it = by_label_.find(la_[x]);
    return it == by_label_.end() ? 0 : it->second.size();
  }

  // Greedy most-constrained generating sequence. For p-groups the span is
  // taken modulo Phi(A), which makes the sequence minimal.
  void choose_generators() {
    const int n = a_.order();
    if (n == 1) return;
    std::vector<Element> base;
    if (a_.is_p_group()) base = generating_set(frattini_subgroup(a_));
    std::vector<Element> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::stable_sort(pool.begin(), pool.end(), [&](Element x, Element y) {
      const auto cx = candidate_count(x), cy = candidate_count(y);
      if (cx != cy) return cx < cy;
      return a_.element_order(x) > a_.element_order(y);
    });
    while (true) {
      std::vector<Element> seed = base;
      seed.insert(seed.end(), gens_.begin(), gens_.end());
      const Subgroup span = subgroup_generated(a_, seed);
      if (span.order() == n) break;
      for (const Element x : pool) {
        if (!span.contains(x)) {
          gens_.push_back(x);
          break;
        }
      }
    }
    std::stable_sort(gens_.begin(), gens_.end(), [&](Element x, Element y) {
      return candidate_count(x) < candidate_count(y);
    });
  }

  bool extend(std::size_t level) {
    if (level == gens_.size()) {
      return static_cast<int>(dom_.size()) == a_.order();
    }
    const Element g = gens_[level];
    // Already determined by earlier generators; phi is a homomorphism on
    // their span, so no new edges need checking.
    if (phi_[g] >= 0) return extend(level + 1);
    const auto it = by_label_.find(la_[g]);
    if (it == by_label_.end()) return false;
    for (const Element c : it->second) {
      if (used_[c]) continue;
      if (++assignments_ > budget_) {
        throw MorphicError(ErrorCode::kSearchBudgetExceeded,
                           "isomorphism search " + a_.name() + " vs " +
                               b_.name() + " exceeded " +
                               std::to_string(budget_) +
                               " partial assignments");
      }
      const std::size_t mark = dom_.size();
      if (close(level, c) && extend(level + 1)) return true;
      for (std::size_t i = mark; i < dom_.size(); ++i) {
        used_[phi_[dom_[i]]] = 0;
        phi_[dom_[i]] = -1;
      }
      dom_.resize(mark);
    }
    return false;
  }

  // Extends phi to <gens_[0..level]> with gens_[level] -> image, checking
  // every Cayley edge x -> x*s on the way.
  bool close(std::size_t level, Element image) {
    const std::size_t old = dom_.size();
    auto edge = [&](Element x, Element s, Element s_img) {
      const Element y = a_.mul(x, s);
      const Element img = b_.mul(phi_[x], s_img);
      if (phi_[y] >= 0) return phi_[y] == img;
      if (used_[img] || la_[y] != lb_[img]) return false;
      phi_[y] = img;
      used_[img] = 1;
      dom_.push_back(y);
      return true;
    };
    const Element g = gens_[level];
    if (used_[image] || la_[g] != lb_[image]) return false;
    phi_[g] = image;
    used_[image] = 1;
    dom_.push_back(g);
    // Old elements only need the edge for the new generator.
    for (std::size_t i = 0; i < old; ++i) {
      if (!edge(dom_[i], g, image)) return false;
    }
    for (std::size_t i = old; i < dom_.size(); ++i) {
      for (std::size_t k = 0; k <= level; ++k) {
        if (!edge(dom_[i], gens_[k], phi_[gens_[k]])) return false;
      }
    }
    return true;
  }

  const FiniteGroup& a_;
  const FiniteGroup& b_;
  const std::vector<ElementLabel>& la_;
  const std::vector<ElementLabel>& lb_;
  long long budget_;
  long long assignments_ = 0;
  std::vector<Element> gens_;
  std::vector<Element> phi_;
  std::vector<char> used_;
  std::vector<Element> dom_;
  std::map<ElementLabel, std::vector<Element>> by_label_;
};

}  // namespace

GroupProfile profile(const FiniteGroup& g) {
  const int n = g.order();
  GroupProfile prof{g, {}, {}};
  IsoFingerprint& fp = prof.fp;
  fp.order = n;
  fp.abelian = is_abelian(g);
  fp.element_orders = multiset(g.element_orders());
  fp.exponent = exponent(g);

  std::vector<int> class_size(n, 0);
  std::vector<int> sizes;
  for (const auto& cls : conjugacy_classes(g)) {
    sizes.push_back(static_cast<int>(cls.size()));
    for (const Element x : cls) class_size[x] = static_cast<int>(cls.size());
  }
  fp.class_sizes = multiset(sizes);
  fp.center_order = static_cast<int>(
      std::count(class_size.begin(), class_size.end(), 1));

  const Subgroup derived = commutator_subgroup(g);
  fp.derived_order = derived.order();
  fp.abelianization = prime_power_invariants(quotient(derived).group);

  const int q = smallest_prime_divisor(n);
  std::vector<int> roots(n, 0);
  if (q == 0) {
    roots[0] = 1;
  } else {
    for (Element y = 0; y < n; ++y) ++roots[g.pow(y, q)];
  }
  const auto derived_mask = derived.mask();
  const auto powers_mask =
      (q == 0 ? trivial_subgroup(g) : power_subgroup(whole_group(g), q)).mask();
  prof.labels.resize(n);
  for (Element x = 0; x < n; ++x) {
    prof.labels[x] = {g.element_order(x), n / class_size[x], roots[x],
                      derived_mask[x], powers_mask[x]};
  }
  fp.element_profile = multiset(prof.labels);
  return prof;
}

IsoFingerprint fingerprint(const FiniteGroup& g) { return profile(g).fp; }

std::string first_difference(const IsoFingerprint& a, const IsoFingerprint& b) {
  if (a.order != b.order) return "order";
  if (a.abelian != b.abelian) return "abelian";
  if (a.element_orders != b.element_orders) return "element orders";
  if (a.class_sizes != b.class_sizes) return "conjugacy class sizes";
  if (a.center_order != b.center_order) return "center order";
  if (a.derived_order != b.derived_order) return "derived subgroup order";
  if (a.exponent != b.exponent) return "exponent";
  if (a.abelianization != b.abelianization) return "abelianization";
  if (a.element_profile != b.element_profile) return "element profile";
  return "";
}

bool is_valid_witness(const FiniteGroup& a, const FiniteGroup& b,
                      const IsoWitness& w) {
  const int n = a.order();
  if (b.order() != n || static_cast<int>(w.mapping.size()) != n) return false;
  if (n > 0 && w.mapping[0] != 0) return false;
  std::vector<char> hit(n, 0);
  for (const Element y : w.mapping) {
    if (y < 0 || y >= n || hit[y]) return false;
    hit[y] = 1;
  }
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) {
      if (w.mapping[a.mul(i, j)] != b.mul(w.mapping[i], w.mapping[j])) {
        return false;
      }
    }
  }
  return true;
}

IsoResult certified_search(const GroupProfile& a, const GroupProfile& b,
                           long long budget) {
  if (a.group.order() != b.group.order()) {
    return IsoResult{Decision::kNo, std::nullopt, "order", 0};
  }
  if (a.group.order() > kCertifiedSearchOrderCap) {
    throw MorphicError(ErrorCode::kOrderCapExceeded,
                       "certified isomorphism search is limited to order " +
                           std::to_string(kCertifiedSearchOrderCap));
  }
  IsoResult result = Search(a, b, budget).run();
  if (result.yes() && !is_valid_witness(a.group, b.group, *result.witness)) {
    throw MorphicError(ErrorCode::kInternalConsistency,
                       "search produced an invalid isomorphism witness for " +
                           a.group.name() + " vs " + b.group.name());
  }
  return result;
}

IsoResult are_isomorphic(const GroupProfile& a, const GroupProfile& b,
                         long long budget) {
  const std::string diff = first_difference(a.fp, b.fp);
  if (!diff.empty()) return IsoResult{Decision::kNo, std::nullopt, diff, 0};
  return certified_search(a, b, budget);
}

IsoResult are_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                         long long budget) {
  if (a.order() != b.order()) {
    return IsoResult{Decision::kNo, std::nullopt, "order", 0};
  }
  return are_isomorphic(profile(a), profile(b), budget);
}

std::vector<long long> abelian_invariants(const FiniteGroup& g) {
  if (!is_abelian(g)) {
    throw MorphicError(ErrorCode::kNotAbelian, g.name() + " is not abelian");
  }
  return prime_power_invariants(g);
}

int IsoClassifier::classify(const FiniteGroup& g) { return classify(profile(g)); }

int IsoClassifier::classify(GroupProfile prof) {
  auto& bucket = buckets_[prof.fp];
  for (const int id : bucket) {
    ++searches_;
    if (certified_search(reps_[id], prof, budget_).yes()) return id;
  }
  const int id = static_cast<int>(reps_.size());
  bucket.push_back(id);
  reps_.push_back(std::move(prof));
  return id;
}

}  // namespace morphic_lab::iso
