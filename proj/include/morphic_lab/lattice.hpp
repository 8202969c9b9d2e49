#pragma once

// Exhaustive subgroup enumeration for small groups. Results are always in
// canonical order: by order, then lexicographically by element list.

#include <vector>

#include "morphic_lab/group.hpp"

namespace morphic_lab::lattice {

inline constexpr int kFullEnumerationOrderCap = 512;

struct EnumerationLimits {
  int order_cap = kFullEnumerationOrderCap;
  // Enumeration aborts with kOrderCapExceeded past this many subgroups.
  long long max_subgroups = 200000;
};

struct SubgroupLattice {
  FiniteGroup parent;
  std::vector<Subgroup> all;
  std::vector<bool> normal_flags;  // parallel to `all`
};

// p-groups are enumerated layer by layer (every subgroup of order p^(k+1)
// extends a normal index-p subgroup by one element); other groups by
// join-closure of the cyclic subgroups.
SubgroupLattice all_subgroups(const FiniteGroup& g,
                              const EnumerationLimits& limits = {});
// The join-closure route, usable for any group.
SubgroupLattice all_subgroups_by_joins(const FiniteGroup& g,
                                       const EnumerationLimits& limits = {});

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g,
                                       const EnumerationLimits& limits = {});

// Index-p subgroups of a p-group, read off the hyperplanes of G / Phi(G).
// Works up to the full group-order cap.
std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g);

// Normal subgroups of order p of a p-group (the order-p subgroups of Z(G)).
std::vector<Subgroup> minimal_normal_subgroups(const FiniteGroup& g);

// K = intersection of M' over the maximal subgroups M of a nonabelian
// p-group. Throws kAbelianInput for abelian input.
Subgroup k_subgroup(const FiniteGroup& g);

// True when |G' / M'| = p for every maximal subgroup M.
bool derived_drops_by_p_on_maximals(const FiniteGroup& g);

}  // namespace morphic_lab::lattice
