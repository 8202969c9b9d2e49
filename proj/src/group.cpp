#include "morphic_lab/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "morphic_lab/error.hpp"

namespace morphic_lab {

namespace {

std::string str(long long x) { return std::to_string(x); }

// Elements reachable from the identity by right multiplication with `gens`.
// `mask` must be zeroed and parent-sized; it is left marking the result.
std::vector<Element> close_under(const FiniteGroup& g,
                                 std::span<const Element> gens,
                                 std::vector<char>& mask) {
  std::vector<Element> out{0};
  mask[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Element x = out[i];
    for (const Element s : gens) {
      const Element y = g.mul(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        out.push_back(y);
      }
    }
  }
  return out;
}

std::vector<Element> closure_sorted(const FiniteGroup& g,
                                    std::span<const Element> gens) {
  std::vector<char> mask(g.order(), 0);
  auto out = close_under(g, gens, mask);
  std::sort(out.begin(), out.end());
  return out;
}

// Subgroup generated by `candidates`, adding a candidate as a generator only
// when it is not already covered.
Subgroup generate_from_many(const FiniteGroup& g,
                            std::span<const Element> candidates) {
  std::vector<Element> gens;
  std::vector<char> mask(g.order(), 0);
  mask[0] = 1;
  for (const Element c : candidates) {
    if (mask[c]) continue;
    gens.push_back(c);
    std::fill(mask.begin(), mask.end(), 0);
    close_under(g, gens, mask);
  }
  return Subgroup::trusted(g, closure_sorted(g, gens));
}

void check_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_group(b.parent())) {
    throw MorphicError(ErrorCode::kParentMismatch,
                       "subgroups of different groups: " + a.parent().name() +
                           " vs " + b.parent().name());
  }
}

std::vector<Element> greedy_generators(const FiniteGroup& g,
                                       std::span<const Element> elements) {
  std::vector<Element> order(elements.begin(), elements.end());
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return g.element_order(a) > g.element_order(b);
  });
  std::vector<Element> gens;
  std::vector<char> mask(g.order(), 0);
  mask[0] = 1;
  for (const Element x : order) {
    if (mask[x]) continue;
    gens.push_back(x);
    std::fill(mask.begin(), mask.end(), 0);
    close_under(g, gens, mask);
  }
  return gens;
}

int prime_of_power(int n) {
  if (n < 2) return 0;
  const int p = smallest_prime_divisor(n);
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

}  // namespace

int smallest_prime_divisor(int n) {
  if (n < 2) return 0;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

FiniteGroup FiniteGroup::from_mult_table(const Table& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) {
    throw MorphicError(ErrorCode::kParameterOutOfRange, "empty table");
  }
  if (n > kMaxGroupOrder) {
    throw MorphicError(ErrorCode::kOrderCapExceeded,
                       "order " + str(n) + " exceeds cap " +
                           str(kMaxGroupOrder));
  }
  std::vector<std::uint16_t> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      throw MorphicError(ErrorCode::kParameterOutOfRange,
                         "row " + str(i) + " has " + str(table[i].size()) +
                             " entries, expected " + str(n));
    }
    for (int j = 0; j < n; ++j) {
      const Element v = table[i][j];
      if (v < 0 || v >= n) {
        throw MorphicError(ErrorCode::kParameterOutOfRange,
                           "entry [" + str(i) + "][" + str(j) + "] = " +
                               str(v) + " outside [0, " + str(n) + ")");
      }
      flat[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::uint16_t>(v);
    }
  }
  return validate_and_build(n, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::from_flat_table(int order, std::vector<Element> flat,
                                         std::string name) {
  if (order < 1 || order > kMaxGroupOrder ||
      flat.size() != static_cast<std::size_t>(order) * order) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "flat table does not describe a group of order " +
                           str(order));
  }
  std::vector<std::uint16_t> t(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] < 0 || flat[i] >= order) {
      throw MorphicError(ErrorCode::kParameterOutOfRange,
                         "table entry " + str(flat[i]) + " out of range");
    }
    t[i] = static_cast<std::uint16_t>(flat[i]);
  }
  return validate_and_build(order, std::move(t), std::move(name));
}

FiniteGroup FiniteGroup::validate_and_build(int n,
                                            std::vector<std::uint16_t> table,
                                            std::string name) {
  auto at = [&](int a, int b) -> int {
    return table[static_cast<std::size_t>(a) * n + b];
  };
  for (int j = 0; j < n; ++j) {
    if (at(0, j) != j || at(j, 0) != j) {
      throw MorphicError(ErrorCode::kNoIdentity,
                         "element 0 is not a two-sided identity (fails at " +
                             str(j) + ")");
    }
  }
  std::vector<std::uint16_t> inverses(n);
  for (int i = 0; i < n; ++i) {
    int found = -1;
    for (int j = 0; j < n; ++j) {
      if (at(i, j) != 0) continue;
      if (found >= 0) {
        throw MorphicError(ErrorCode::kNoInverse,
                           "element " + str(i) +
                               " has more than one right inverse (" +
                               str(found) + ", " + str(j) + ")");
      }
      found = j;
    }
    if (found < 0) {
      throw MorphicError(ErrorCode::kNoInverse,
                         "element " + str(i) + " has no inverse");
    }
    if (at(found, i) != 0) {
      throw MorphicError(ErrorCode::kNoInverse,
                         "right inverse " + str(found) + " of element " +
                             str(i) + " is not a left inverse");
    }
    inverses[i] = static_cast<std::uint16_t>(found);
  }

  // Light's test: the set of y with (xy)z = x(yz) for all x, z is closed under
  // products, so checking y over a generating set is exhaustive.
  std::vector<Element> probe_gens;
  {
    std::vector<char> covered(n, 0);
    std::vector<Element> reached{0};
    covered[0] = 1;
    for (int cand = 1; cand < n; ++cand) {
      if (covered[cand]) continue;
      probe_gens.push_back(cand);
      std::fill(covered.begin(), covered.end(), 0);
      reached.assign(1, 0);
      covered[0] = 1;
      for (std::size_t i = 0; i < reached.size(); ++i) {
        for (const Element s : probe_gens) {
          const int y = at(reached[i], s);
          if (!covered[y]) {
            covered[y] = 1;
            reached.push_back(y);
          }
        }
      }
    }
  }
  for (const Element y : probe_gens) {
    for (int x = 0; x < n; ++x) {
      const int xy = at(x, y);
      for (int z = 0; z < n; ++z) {
        if (at(xy, z) != at(x, at(y, z))) {
          throw MorphicError(ErrorCode::kNotAssociative,
                             "(" + str(x) + "*" + str(y) + ")*" + str(z) +
                                 " != " + str(x) + "*(" + str(y) + "*" +
                                 str(z) + ")");
        }
      }
    }
  }

  auto data = std::make_shared<detail::GroupData>();
  data->order = n;
  data->table = std::move(table);
  data->inverses = std::move(inverses);
  data->name = std::move(name);
  data->prime = prime_of_power(n);
  data->element_orders.assign(n, 1);
  for (int a = 1; a < n; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = data->table[static_cast<std::size_t>(x) * n + a];
      ++k;
    }
    data->element_orders[a] = k;
  }
  FiniteGroup g(data);
  std::vector<Element> all(n);
  std::iota(all.begin(), all.end(), 0);
  data->generators = greedy_generators(g, all);
  return g;
}

FiniteGroup FiniteGroup::from_perm_generators(
    int degree, const std::vector<std::vector<int>>& generators,
    std::string name) {
  if (degree < 0) {
    throw MorphicError(ErrorCode::kParameterOutOfRange, "negative degree");
  }
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& gen = generators[k];
    std::vector<char> seen(degree, 0);
    bool ok = static_cast<int>(gen.size()) == degree;
    for (std::size_t i = 0; ok && i < gen.size(); ++i) {
      ok = gen[i] >= 0 && gen[i] < degree && !seen[gen[i]];
      if (ok) seen[gen[i]] = 1;
    }
    if (!ok) {
      throw MorphicError(ErrorCode::kNotAPermutation,
                         "generator " + str(k) + " is not a permutation of [0, " +
                             str(degree) + ")");
    }
  }
  using Perm = std::vector<int>;
  auto compose = [](const Perm& x, const Perm& y) {
    Perm out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[x[i]];
    return out;
  };
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Perm& s : generators) {
      Perm y = compose(elems[i], s);
      if (index.count(y)) continue;
      if (static_cast<int>(elems.size()) >= kMaxGroupOrder) {
        throw MorphicError(ErrorCode::kClosureExceedsCap,
                           "permutation group exceeds " + str(kMaxGroupOrder) +
                               " elements");
      }
      index.emplace(y, static_cast<int>(elems.size()));
      elems.push_back(std::move(y));
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      table[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::uint16_t>(index.at(compose(elems[i], elems[j])));
    }
  }
  return validate_and_build(n, std::move(table), std::move(name));
}

Element FiniteGroup::pow(Element a, long long k) const {
  const int ord = element_order(a);
  k %= ord;
  if (k < 0) k += ord;
  Element result = 0, base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Table FiniteGroup::table() const {
  const int n = order();
  Table t(n, std::vector<Element>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = mul(i, j);
  }
  return t;
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  auto data = std::make_shared<detail::GroupData>(*d_);
  data->name = std::move(name);
  return FiniteGroup(std::move(data));
}

Subgroup Subgroup::from_elements(const FiniteGroup& parent,
                                 std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  const int n = parent.order();
  for (const Element x : elements) {
    if (x < 0 || x >= n) {
      throw MorphicError(ErrorCode::kParameterOutOfRange,
                         "element " + str(x) + " not in " + parent.name());
    }
  }
  if (elements.empty() || elements[0] != 0) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "subgroup must contain the identity");
  }
  std::vector<char> mask(n, 0);
  for (const Element x : elements) mask[x] = 1;
  for (const Element x : elements) {
    if (!mask[parent.inv(x)]) {
      throw MorphicError(ErrorCode::kParameterOutOfRange,
                         "not closed under inverses at " + str(x));
    }
    for (const Element y : elements) {
      if (!mask[parent.mul(x, y)]) {
        throw MorphicError(ErrorCode::kParameterOutOfRange,
                           "not closed: " + str(x) + "*" + str(y));
      }
    }
  }
  return Subgroup(parent, std::move(elements));
}

Subgroup Subgroup::trusted(const FiniteGroup& parent,
                           std::vector<Element> sorted_elements) {
  return Subgroup(parent, std::move(sorted_elements));
}

bool Subgroup::contains(Element x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elements_.begin(), elements_.end(),
                       other.elements_.begin(), other.elements_.end());
}

std::vector<char> Subgroup::mask() const {
  std::vector<char> m(parent_.order(), 0);
  for (const Element x : elements_) m[x] = 1;
  return m;
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup::trusted(g, {0});
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup::trusted(g, std::move(all));
}

Subgroup subgroup_generated(const FiniteGroup& g,
                            std::span<const Element> seed) {
  for (const Element x : seed) {
    if (x < 0 || x >= g.order()) {
      throw MorphicError(ErrorCode::kParameterOutOfRange,
                         "seed element " + str(x) + " not in " + g.name());
    }
  }
  return Subgroup::trusted(g, closure_sorted(g, seed));
}

std::vector<Element> generating_set(const Subgroup& h) {
  return greedy_generators(h.parent(), h.elements());
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  check_same_parent(a, b);
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  auto gens = generating_set(a);
  const auto gb = generating_set(b);
  gens.insert(gens.end(), gb.begin(), gb.end());
  return subgroup_generated(a.parent(), gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  check_same_parent(a, b);
  std::vector<Element> out;
  std::set_intersection(a.elements().begin(), a.elements().end(),
                        b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup::trusted(a.parent(), std::move(out));
}

Subgroup commutator_of(const Subgroup& a, const Subgroup& b) {
  check_same_parent(a, b);
  const FiniteGroup& g = a.parent();
  // [A, B] is the normal closure in <A, B> of the commutators of generators.
  const auto ga = generating_set(a);
  const auto gb = generating_set(b);
  std::vector<Element> conj_by = ga;
  conj_by.insert(conj_by.end(), gb.begin(), gb.end());
  std::vector<Element> seeds;
  for (const Element x : ga) {
    for (const Element y : gb) seeds.push_back(g.commutator(x, y));
  }
  Subgroup c = generate_from_many(g, seeds);
  while (true) {
    std::vector<Element> extra;
    const auto gc = generating_set(c);
    for (const Element x : gc) {
      for (const Element s : conj_by) {
        const Element y = g.conjugate(x, s);
        if (!c.contains(y)) extra.push_back(y);
      }
    }
    if (extra.empty()) return c;
    std::vector<Element> all = gc;
    all.insert(all.end(), extra.begin(), extra.end());
    c = generate_from_many(g, all);
  }
}

Subgroup commutator_subgroup(const FiniteGroup& g) {
  const Subgroup w = whole_group(g);
  return commutator_of(w, w);
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Element> z;
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (const Element s : g.generators()) {
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    }
    if (central) z.push_back(x);
  }
  return Subgroup::trusted(g, std::move(z));
}

Subgroup power_subgroup(const Subgroup& h, int k) {
  std::vector<Element> powers;
  powers.reserve(h.order());
  for (const Element x : h.elements()) powers.push_back(h.parent().pow(x, k));
  return generate_from_many(h.parent(), powers);
}

Subgroup frattini_subgroup(const FiniteGroup& g) {
  if (!g.is_p_group()) {
    throw MorphicError(ErrorCode::kNotAPGroup,
                       g.name() + " of order " + str(g.order()) +
                           " is not a p-group");
  }
  if (g.order() == 1) return trivial_subgroup(g);
  return join(commutator_subgroup(g), power_subgroup(whole_group(g), *g.prime()));
}

std::optional<Element> non_normalizing_element(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto gens = generating_set(h);
  const auto mask = h.mask();
  for (Element s = 0; s < g.order(); ++s) {
    for (const Element x : gens) {
      if (!mask[g.conjugate(x, s)]) return s;
    }
  }
  return std::nullopt;
}

bool is_normal(const Subgroup& h) { return !non_normalizing_element(h); }

Quotient quotient(const Subgroup& n) {
  const FiniteGroup& g = n.parent();
  if (auto w = non_normalizing_element(n)) {
    throw MorphicError(ErrorCode::kNotNormal,
                       "subgroup of order " + str(n.order()) + " in " +
                           g.name() + " is not normalised by element " +
                           str(*w));
  }
  std::vector<Element> projection(g.order(), -1);
  std::vector<Element> reps;
  for (Element x = 0; x < g.order(); ++x) {
    if (projection[x] >= 0) continue;
    const Element label = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (const Element k : n.elements()) projection[g.mul(x, k)] = label;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<Element> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      flat[static_cast<std::size_t>(i) * m + j] =
          projection[g.mul(reps[i], reps[j])];
    }
  }
  FiniteGroup q = FiniteGroup::from_flat_table(
      m, std::move(flat), g.name() + "/N" + str(n.order()));
  return Quotient{std::move(q), std::move(projection), std::move(reps)};
}

FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (!n.parent().same_group(g)) {
    throw MorphicError(ErrorCode::kParentMismatch,
                       "normal subgroup does not belong to " + g.name());
  }
  return quotient(n).group;
}

Embedded embed(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<Element> local(g.order(), -1);
  const auto& el = h.elements();
  for (std::size_t i = 0; i < el.size(); ++i) local[el[i]] = static_cast<int>(i);
  const int m = h.order();
  std::vector<Element> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      flat[static_cast<std::size_t>(i) * m + j] = local[g.mul(el[i], el[j])];
    }
  }
  FiniteGroup sub = FiniteGroup::from_flat_table(
      m, std::move(flat), g.name() + ".H" + str(m));
  return Embedded{std::move(sub), el};
}

FiniteGroup subgroup_as_group(const Subgroup& h) { return embed(h).group; }

bool is_abelian(const FiniteGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
    }
  }
  return true;
}

int exponent(const FiniteGroup& g) {
  long long e = 1;
  for (const int o : g.element_orders()) e = std::lcm(e, static_cast<long long>(o));
  return static_cast<int>(e);
}

bool is_elementary_abelian(const FiniteGroup& g) {
  if (g.order() == 1) return true;
  return is_abelian(g) && g.prime().has_value() && exponent(g) == *g.prime();
}

std::vector<long long> prime_power_invariants(const FiniteGroup& g) {
  std::vector<long long> out;
  int n = g.order();
  std::vector<int> primes;
  for (int d = 2; n > 1; ++d) {
    if (n % d) continue;
    primes.push_back(d);
    while (n % d == 0) n /= d;
  }
  for (const int q : primes) {
    // omega[k] = #{x : x^(q^k) = 1}.
    std::vector<long long> omega{1};
    for (long long qk = q;; qk *= q) {
      long long count = 0;
      for (const int o : g.element_orders()) {
        if (qk % o == 0) ++count;
      }
      omega.push_back(count);
      if (count == omega[omega.size() - 2]) break;
    }
    // rank_at_least[k] = log_q(omega[k] / omega[k-1]).
    std::vector<int> at_least;
    for (std::size_t k = 1; k < omega.size(); ++k) {
      long long ratio = omega[k] / omega[k - 1];
      int r = 0;
      while (ratio > 1) {
        ratio /= q;
        ++r;
      }
      at_least.push_back(r);
    }
    at_least.push_back(0);
    long long qk = q;
    for (std::size_t k = 0; k + 1 < at_least.size(); ++k, qk *= q) {
      for (int c = at_least[k + 1]; c < at_least[k]; ++c) out.push_back(qk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_homocyclic(const FiniteGroup& g) {
  if (!g.is_p_group()) {
    throw MorphicError(ErrorCode::kNotAPGroup, g.name() + " is not a p-group");
  }
  if (!is_abelian(g)) return false;
  const auto inv = prime_power_invariants(g);
  return std::adjacent_find(inv.begin(), inv.end(),
                            std::not_equal_to<>()) == inv.end();
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<Element> cls{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (const Element s : g.generators()) {
        const Element y = g.conjugate(cls[i], s);
        if (!seen[y]) {
          seen[y] = 1;
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

int min_generators(const FiniteGroup& g) {
  const Subgroup phi = frattini_subgroup(g);
  if (g.order() == 1) return 0;
  int index = g.order() / phi.order(), d = 0;
  while (index > 1) {
    index /= *g.prime();
    ++d;
  }
  return d;
}

ElementarySection elementary_section(const Subgroup& upper,
                                     const Subgroup& lower, int p) {
  check_same_parent(upper, lower);
  const FiniteGroup& g = upper.parent();
  if (!upper.contains(lower)) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "section lower term is not contained in the upper term");
  }
  ElementarySection sec;
  sec.p = p;
  const auto lower_gens = generating_set(lower);
  std::vector<Element> gens = lower_gens;
  std::vector<char> span(g.order(), 0);
  close_under(g, gens, span);
  for (const Element x : upper.elements()) {
    if (span[x]) continue;
    sec.lifts.push_back(x);
    gens.push_back(x);
    std::fill(span.begin(), span.end(), 0);
    close_under(g, gens, span);
  }
  sec.dim = static_cast<int>(sec.lifts.size());
  long long expected = lower.order();
  for (int i = 0; i < sec.dim; ++i) expected *= p;
  if (expected != upper.order()) {
    throw MorphicError(ErrorCode::kNotAbelian,
                       "section of order " +
                           str(upper.order() / lower.order()) +
                           " is not elementary abelian");
  }
  sec.coords.assign(g.order(), {});
  sec.coords[0].assign(sec.dim, 0);
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = g.mul(x, gens[k]);
      std::vector<int> c = sec.coords[x];
      if (k >= lower_gens.size()) {
        int& slot = c[k - lower_gens.size()];
        slot = (slot + 1) % p;
      }
      if (sec.coords[y].empty()) {
        sec.coords[y] = std::move(c);
        queue.push_back(y);
      } else if (sec.coords[y] != c) {
        throw MorphicError(ErrorCode::kNotAbelian,
                           "section is not elementary abelian (inconsistent "
                           "coordinates at element " +
                               str(y) + ")");
      }
    }
  }
  return sec;
}

}  // namespace morphic_lab
