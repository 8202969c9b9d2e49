#pragma once

// The morphic-type predicates on finite groups and extraction of the triple
// (G/Phi(G), G'/K, commutator map) from a nonabelian p-group.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "morphic_lab/group.hpp"
#include "morphic_lab/iso.hpp"
#include "morphic_lab/lattice.hpp"
#include "morphic_lab/triples.hpp"

namespace morphic_lab::predicates {

// How "G/N is isomorphic to ker(phi)" quantifies over epimorphisms phi onto N
// in the ea-morphic condition:
//   kUniversal   some normal M has G/M = N, and every such M has G/N = M;
//   kExistential some normal M has G/M = N and G/N = M.
// Spelled "paper" and "existential" on the command line and in Python.
enum class EaReading { kUniversal, kExistential };

struct Options {
  long long iso_budget = iso::kDefaultSearchBudget;
  lattice::EnumerationLimits limits;
  EaReading ea_reading = EaReading::kUniversal;
  // Try a cheap refutation (maximal subgroups against quotients by central
  // subgroups of order p, cyclic subgroups against the abelianisation)
  // before enumerating lattices.
  bool quick_refutation = true;
};

struct Witness {
  std::string role;  // "N1", "N2", "N", "M", "H", ...
  std::vector<Element> elements;
};

struct PredicateReport {
  std::string group;
  std::string predicate;  // morphic, ea-morphic, self-dual, all-max-iso,
                          // images-subgroups, images-quotients
  bool verdict = true;
  std::vector<Witness> witnesses;  // empty when verdict is true
  std::string detail;              // which condition / direction failed
};

// Evaluates several predicates on one group, sharing the normal-subgroup
// list, the subgroup lattice and the isomorphism classes between them.
class Analyzer {
 public:
  explicit Analyzer(FiniteGroup g, Options opt = {});
  ~Analyzer();
  Analyzer(Analyzer&&) noexcept;
  Analyzer& operator=(Analyzer&&) noexcept;

  PredicateReport morphic();
  PredicateReport ea_morphic();
  PredicateReport self_dual();
  PredicateReport all_max_iso();
  PredicateReport images_subgroups();
  PredicateReport images_quotients();

 private:
  struct State;
  std::unique_ptr<State> s_;
};

PredicateReport is_morphic(const FiniteGroup& g, const Options& opt = {});
PredicateReport is_ea_morphic(const FiniteGroup& g, const Options& opt = {});
PredicateReport is_self_dual(const FiniteGroup& g, const Options& opt = {});
PredicateReport all_maximal_isomorphic(const FiniteGroup& g,
                                       const Options& opt = {});
// (1) every subgroup is a quotient, (2) every quotient is isomorphic to a
// normal subgroup.
std::pair<PredicateReport, PredicateReport> images_properties(
    const FiniteGroup& g, const Options& opt = {});

// Re-checks a FALSE report from scratch: rebuilds the witness subgroups,
// recomputes the quotients and reruns the isomorphism oracle. Returns true
// when the witness confirms the verdict (and trivially for TRUE reports).
bool reverify(const FiniteGroup& g, const PredicateReport& r,
              const Options& opt = {});

struct TripleExtraction {
  std::string group;
  int p = 0;
  int d = 0;
  int e = 0;
  std::vector<Element> v_lifts;  // basis of G / Phi(G)
  std::vector<Element> w_lifts;  // basis of G' / K
  Subgroup k;
  triples::Triple beta;
  int checked_pairs = 0;  // random pairs re-evaluated
};

// Throws kNotAPGroup, kAbelianInput; kNotAbelian when G'/K is not
// elementary abelian; kNotMorphicTriple when the commutator map is not well
// defined on the random pairs checked.
TripleExtraction extract_triple(const FiniteGroup& g, int random_pairs = 100,
                                std::uint64_t seed = 0x5eed);

}  // namespace morphic_lab::predicates
