#pragma once

// Morphic triples (V, W, beta): beta is an alternating bilinear map
// F_p^d x F_p^d -> F_p^e such that V' = W, every hyperplane U of V has U'
// a hyperplane of W, and the U' meet in zero. Here U' is the span of
// beta(U, U).

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphic_lab/fp_linalg.hpp"

namespace morphic_lab::triples {

class Triple {
 public:
  // beta identically zero.
  Triple(int p, int dim_v, int dim_w);
  // `upper` lists beta(e_i, e_j) for i < j in the order (0,1), (0,2), ...,
  // (1,2), ...; each entry has dim_w coordinates.
  Triple(int p, int dim_v, int dim_w, std::vector<fp::Row> upper);

  int p() const { return p_; }
  int dim_v() const { return dim_v_; }
  int dim_w() const { return dim_w_; }
  const std::vector<fp::Row>& upper() const { return upper_; }

  // beta(e_i, e_j) for any i, j (alternating extension).
  fp::Row value(int i, int j) const;
  void set(int i, int j, fp::Row w);
  // beta(x, y) by bilinearity.
  fp::Row apply(const fp::Row& x, const fp::Row& y) const;

  static int pair_index(int i, int j, int d) {
    return i * d - i * (i + 1) / 2 + (j - i - 1);
  }

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;

 private:
  int p_;
  int dim_v_;
  int dim_w_;
  std::vector<fp::Row> upper_;
};

struct TripleVerdict {
  bool is_morphic_triple = false;
  int failed_condition = 0;  // 1, 2 or 3; 0 when verified
  std::optional<fp::SubspaceFp> witness;
  // Verified only vacuously (dim V = 1, W = 0).
  bool degenerate = false;
};

// [U1, U2] and U' = [U, U].
fp::SubspaceFp bracket(const Triple& t, const fp::SubspaceFp& u1,
                       const fp::SubspaceFp& u2);
fp::SubspaceFp derived_of(const Triple& t, const fp::SubspaceFp& u);

TripleVerdict verify_morphic_triple(const Triple& t);

// Kernel of x -> [a, x] + U' on the hyperplane U, for a outside U. Checked
// against a second choice of a. Throws kAOnU, kNotMaximal,
// kNotMorphicTriple.
fp::SubspaceFp t_of(const Triple& t, const fp::SubspaceFp& u,
                    const fp::VectorFp& a);

// Hyperplanes S with S' = U', cross-checked against the hyperplanes
// containing t_of(U).
std::vector<fp::SubspaceFp> spread(const Triple& t, const fp::SubspaceFp& u);

// Distinct U' over the hyperplanes U; checks |Z| (p + 1) = #hyperplanes and
// that dim V is even.
std::vector<fp::SubspaceFp> zset(const Triple& t);

// dim W >= dim V - 1 on a verified triple. Throws kNotMorphicTriple for an
// unverified triple and kInternalConsistency if the bound fails.
bool check_dim_bound(const Triple& t);

enum class SearchMode { kExhaustive, kSampled };

struct SearchResult {
  std::vector<Triple> found;  // sorted, deduplicated
  long long examined = 0;
  long double space_size = 0;
  bool exhaustive = false;       // every tensor was examined
  bool budget_exceeded = false;  // partial result
  std::string note;
};

SearchResult search_triples(int p, int dim_v, int dim_w, long long budget,
                            SearchMode mode = SearchMode::kExhaustive,
                            std::uint64_t seed = 1);

}  // namespace morphic_lab::triples
