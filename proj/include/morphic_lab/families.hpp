#pragma once

// Constructors for the group families used throughout the catalog, and the
// textual family-spec grammar shared by the CLI and the Python bindings:
//
//   abelian:P:E1,E2,...        product of cyclic groups of order P^Ei
//   heisenberg:P               unitriangular 3x3 matrices over F_P, P odd
//   dihedral:N | quaternion:N | semidihedral:N     order N = 2^n
//   modular:P:N                <a,b | a^(P^(N-1)) = b^P = 1, a^b = a^(1+P^(N-2))>
//   A*B                        direct product (left-associative)

#include <string>
#include <string_view>
#include <vector>

#include "morphic_lab/group.hpp"

namespace morphic_lab {

enum class Family {
  kAbelian,
  kHeisenberg,
  kDihedral,
  kQuaternion,
  kSemidihedral,
  kModularMaximalCyclic,
  kDirectProduct,
};

struct GroupFamilySpec {
  Family family = Family::kAbelian;
  int p = 0;                    // prime, where applicable
  std::vector<int> params;      // exponents (abelian), {order} or {n}
  std::vector<GroupFamilySpec> factors;  // direct_product only

  static GroupFamilySpec abelian(int p, std::vector<int> exponents);
  static GroupFamilySpec heisenberg(int p);
  static GroupFamilySpec dihedral(int order);
  static GroupFamilySpec quaternion(int order);
  static GroupFamilySpec semidihedral(int order);
  static GroupFamilySpec modular_maximal_cyclic(int p, int n);
  static GroupFamilySpec direct_product(GroupFamilySpec a, GroupFamilySpec b);

  // Order of the group described, without building it.
  long long order() const;
  // Human-readable name, e.g. "heisenberg(3)" or "abelian(2,[1,2])".
  std::string name() const;
  // Round-trips through parse_family_spec.
  std::string to_spec_string() const;

  friend bool operator==(const GroupFamilySpec&, const GroupFamilySpec&) = default;
};

// Throws kParseError on malformed text.
GroupFamilySpec parse_family_spec(std::string_view text);

// Throws kParameterOutOfRange / kOddPrimeRequired outside the catalog bounds.
FiniteGroup make_family(const GroupFamilySpec& spec);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           std::string name);

}  // namespace morphic_lab
