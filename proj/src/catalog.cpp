#include "morphic_lab/catalog.hpp"

#include <algorithm>

namespace morphic_lab::catalog {

namespace {

// Partitions of k into parts, each list non-decreasing.
void partitions(int k, int min_part, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = min_part; part <= k; ++part) {
    cur.push_back(part);
    partitions(k - part, part, cur, out);
    cur.pop_back();
  }
}

bool is_abelian_spec(const GroupFamilySpec& s) {
  return s.family == Family::kAbelian;
}

}  // namespace

std::vector<GroupFamilySpec> base_groups(const CatalogOptions& opt) {
  std::vector<GroupFamilySpec> out;
  for (const int p : opt.primes) {
    long long order = p;
    for (int k = 1; order <= opt.abelian_max_order; ++k, order *= p) {
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      partitions(k, 1, cur, parts);
      for (auto& exps : parts) {
        out.push_back(GroupFamilySpec::abelian(p, std::move(exps)));
      }
    }
    if (p == 2) {
      for (const int n : {8, 16, 32}) {
        out.push_back(GroupFamilySpec::dihedral(n));
        out.push_back(GroupFamilySpec::quaternion(n));
        if (n >= 16) out.push_back(GroupFamilySpec::semidihedral(n));
      }
      // modular(2, 3) is the dihedral group of order 8.
      out.push_back(GroupFamilySpec::modular_maximal_cyclic(2, 4));
    } else {
      if (p <= 7) out.push_back(GroupFamilySpec::heisenberg(p));
      for (const int n : {3, 4}) {
        out.push_back(GroupFamilySpec::modular_maximal_cyclic(p, n));
      }
    }
  }
  for (const int q : opt.extra_heisenberg) {
    if (std::find(opt.primes.begin(), opt.primes.end(), q) == opt.primes.end()) {
      out.push_back(GroupFamilySpec::heisenberg(q));
    }
  }
  return out;
}

std::vector<GroupFamilySpec> builtin_catalog(const CatalogOptions& opt) {
  std::vector<GroupFamilySpec> base = base_groups(opt);
  std::vector<GroupFamilySpec> out = base;
  if (!opt.include_products) return out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i; j < base.size(); ++j) {
      const GroupFamilySpec& a = base[i];
      const GroupFamilySpec& b = base[j];
      if (a.p != b.p) continue;
      if (is_abelian_spec(a) && is_abelian_spec(b)) continue;
      if (a.order() * b.order() > opt.product_max_order) continue;
      // Put the nonabelian factor first for readable names.
      if (is_abelian_spec(a)) {
        out.push_back(GroupFamilySpec::direct_product(b, a));
      } else {
        out.push_back(GroupFamilySpec::direct_product(a, b));
      }
    }
  }
  return out;
}

std::string describe(const CatalogOptions& opt) {
  std::string primes, nonabelian;
  for (const int p : opt.primes) primes += (primes.empty() ? "" : ",") + std::to_string(p);
  for (const auto& s : base_groups(opt)) {
    if (!is_abelian_spec(s)) nonabelian += (nonabelian.empty() ? "" : ", ") + s.name();
  }
  return "built-in: abelian p-groups of order <= " +
         std::to_string(opt.abelian_max_order) + " for p in {" + primes + "}; " +
         nonabelian +
         (opt.include_products
              ? "; two-factor same-prime products with a nonabelian factor of order <= " +
                    std::to_string(opt.product_max_order)
              : std::string());
}

bool expected_morphic(const FiniteGroup& g) {
  if (!g.is_p_group()) return false;
  if (is_abelian(g)) return is_homocyclic(g);
  const int p = *g.prime();
  return p != 2 && g.order() == p * p * p && exponent(g) == p;
}

}  // namespace morphic_lab::catalog
