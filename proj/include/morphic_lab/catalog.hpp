#pragma once

// The built-in scan catalog: small abelian p-groups, the nonabelian
// families, and two-factor direct products of same-prime members with at
// least one nonabelian factor.

#include <string>
#include <vector>

#include "morphic_lab/families.hpp"

namespace morphic_lab::catalog {

struct CatalogOptions {
  std::vector<int> primes{2, 3};
  // Heisenberg groups for primes outside `primes` (no products are formed).
  std::vector<int> extra_heisenberg{5};
  int abelian_max_order = 81;
  int product_max_order = 512;
  bool include_products = true;
};

// Abelian groups (all partitions) and nonabelian family members.
std::vector<GroupFamilySpec> base_groups(const CatalogOptions& opt = {});
// Base groups followed by the products, each exactly once.
std::vector<GroupFamilySpec> builtin_catalog(const CatalogOptions& opt = {});
std::string describe(const CatalogOptions& opt);

// The classification: homocyclic abelian p-groups, and nonabelian groups of
// order p^3 and exponent p with p odd.
bool expected_morphic(const FiniteGroup& g);

}  // namespace morphic_lab::catalog
