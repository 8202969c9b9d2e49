#include "morphic_lab/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "morphic_lab/error.hpp"
#include "morphic_lab/fp_linalg.hpp"

namespace morphic_lab::lattice {

namespace {

std::string str(long long x) { return std::to_string(x); }

struct Bits {
  std::vector<std::uint64_t> words;

  explicit Bits(int n) : words((n + 63) / 64, 0) {}
  void set(int i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  friend bool operator==(const Bits&, const Bits&) = default;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto w : b.words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

Bits to_bits(int n, const std::vector<Element>& elems) {
  Bits b(n);
  for (const Element x : elems) b.set(x);
  return b;
}

void check_order(const FiniteGroup& g, const EnumerationLimits& limits) {
  if (g.order() > limits.order_cap) {
    throw MorphicError(ErrorCode::kOrderCapExceeded,
                       g.name() + " has order " + str(g.order()) +
                           ", above the enumeration cap " +
                           str(limits.order_cap));
  }
}

void check_count(const FiniteGroup& g, std::size_t count,
                 const EnumerationLimits& limits) {
  if (static_cast<long long>(count) > limits.max_subgroups) {
    throw MorphicError(ErrorCode::kOrderCapExceeded,
                       g.name() + " has more than " +
                           str(limits.max_subgroups) + " subgroups");
  }
}

void require_p_group(const FiniteGroup& g) {
  if (!g.is_p_group()) {
    throw MorphicError(ErrorCode::kNotAPGroup,
                       g.name() + " of order " + str(g.order()) +
                           " is not a p-group");
  }
}

struct Node {
  std::vector<Element> elements;  // sorted
  std::vector<Element> gens;
};

// Shared layer-by-layer extension for p-groups. With `normal_only`, an
// element g extends N when gN is central of order p in G/N; otherwise when g
// normalises H and g^p lies in H.
std::vector<Subgroup> enumerate_layers(const FiniteGroup& g, bool normal_only,
                                       const EnumerationLimits& limits) {
  const int n = g.order();
  const int p = g.prime().value_or(1);
  std::vector<Subgroup> out{trivial_subgroup(g)};
  if (n == 1) return out;
  std::vector<Node> layer{Node{{0}, {}}};
  std::vector<char> member(n), done(n);
  while (!layer.empty()) {
    std::vector<Node> next;
    std::unordered_set<Bits, BitsHash> seen;
    for (const Node& h : layer) {
      std::fill(member.begin(), member.end(), 0);
      for (const Element x : h.elements) member[x] = 1;
      done = member;
      for (Element x = 0; x < n; ++x) {
        if (done[x]) continue;
        for (const Element y : h.elements) done[g.mul(x, y)] = 1;
        if (!member[g.pow(x, p)]) continue;
        bool ok = true;
        if (normal_only) {
          for (const Element s : g.generators()) {
            if (!member[g.commutator(x, s)]) {
              ok = false;
              break;
            }
          }
        } else {
          for (const Element s : h.gens) {
            if (!member[g.conjugate(s, x)]) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        // <H, x> is the union of the cosets x^i H.
        std::vector<Element> elems;
        elems.reserve(h.elements.size() * p);
        Element xi = 0;
        for (int i = 0; i < p; ++i) {
          for (const Element y : h.elements) elems.push_back(g.mul(xi, y));
          xi = g.mul(xi, x);
        }
        std::sort(elems.begin(), elems.end());
        Bits key = to_bits(n, elems);
        if (!seen.insert(std::move(key)).second) continue;
        Node node{std::move(elems), h.gens};
        node.gens.push_back(x);
        next.push_back(std::move(node));
        check_count(g, out.size() + next.size(), limits);
      }
    }
    for (const Node& node : next) out.push_back(Subgroup::trusted(g, node.elements));
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubgroupLattice all_subgroups_by_joins(const FiniteGroup& g,
                                       const EnumerationLimits& limits) {
  check_order(g, limits);
  const int n = g.order();
  std::vector<Subgroup> all;
  std::unordered_set<Bits, BitsHash> seen;
  auto add = [&](Subgroup s) {
    if (seen.insert(to_bits(n, s.elements())).second) {
      all.push_back(std::move(s));
      check_count(g, all.size(), limits);
    }
  };
  for (Element x = 0; x < n; ++x) {
    const Element seed[] = {x};
    add(subgroup_generated(g, seed));
  }
  for (std::size_t i = 1; i < all.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      add(join(all[i], all[j]));
    }
  }
  std::sort(all.begin(), all.end());
  SubgroupLattice lat{g, std::move(all), {}};
  for (const Subgroup& s : lat.all) lat.normal_flags.push_back(is_normal(s));
  return lat;
}

SubgroupLattice all_subgroups(const FiniteGroup& g,
                              const EnumerationLimits& limits) {
  check_order(g, limits);
  if (!g.is_p_group()) return all_subgroups_by_joins(g, limits);
  SubgroupLattice lat{g, enumerate_layers(g, false, limits), {}};
  const auto normals = enumerate_layers(g, true, limits);
  for (const Subgroup& s : lat.all) {
    lat.normal_flags.push_back(
        std::binary_search(normals.begin(), normals.end(), s));
  }
  return lat;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g,
                                       const EnumerationLimits& limits) {
  check_order(g, limits);
  if (g.is_p_group()) return enumerate_layers(g, true, limits);
  const SubgroupLattice lat = all_subgroups_by_joins(g, limits);
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < lat.all.size(); ++i) {
    if (lat.normal_flags[i]) out.push_back(lat.all[i]);
  }
  return out;
}

std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g) {
  require_p_group(g);
  if (g.order() == 1) return {};
  const int p = *g.prime();
  const Subgroup phi = frattini_subgroup(g);
  const ElementarySection sec = elementary_section(whole_group(g), phi, p);
  std::vector<Subgroup> out;
  for (const fp::SubspaceFp& hyper :
       fp::enumerate_maximal_subspaces(sec.dim, p)) {
    std::vector<Element> elems;
    for (Element x = 0; x < g.order(); ++x) {
      if (hyper.contains(sec.coords[x])) elems.push_back(x);
    }
    out.push_back(Subgroup::trusted(g, std::move(elems)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> minimal_normal_subgroups(const FiniteGroup& g) {
  require_p_group(g);
  std::vector<Subgroup> out;
  if (g.order() == 1) return out;
  const int p = *g.prime();
  std::vector<char> covered(g.order(), 0);
  const Subgroup z_g = center(g);
  for (const Element z : z_g.elements()) {
    if (covered[z] || g.element_order(z) != p) continue;
    const Element seed[] = {z};
    Subgroup s = subgroup_generated(g, seed);
    for (const Element y : s.elements()) covered[y] = 1;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup k_subgroup(const FiniteGroup& g) {
  require_p_group(g);
  if (is_abelian(g)) {
    throw MorphicError(ErrorCode::kAbelianInput,
                       g.name() + " is abelian; K and the triple are undefined");
  }
  std::optional<Subgroup> k;
  for (const Subgroup& m : maximal_subgroups(g)) {
    Subgroup md = commutator_of(m, m);
    k = k ? intersect(*k, md) : std::move(md);
  }
  return *k;
}

bool derived_drops_by_p_on_maximals(const FiniteGroup& g) {
  require_p_group(g);
  if (g.order() == 1) return true;
  const int p = *g.prime();
  const int derived = commutator_subgroup(g).order();
  for (const Subgroup& m : maximal_subgroups(g)) {
    if (derived != p * commutator_of(m, m).order()) return false;
  }
  return true;
}

}  // namespace morphic_lab::lattice
