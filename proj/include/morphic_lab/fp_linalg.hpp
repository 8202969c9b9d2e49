#pragma once

// Exact linear algebra over the prime field F_p. Subspaces are only ever held
// in reduced row-echelon form, so two equal subspaces compare equal
// structurally.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace morphic_lab::fp {

using Row = std::vector<int>;
using Matrix = std::vector<Row>;

inline constexpr int kMaxDimension = 16;

bool is_prime(long long n);

class PrimeField {
 public:
  explicit PrimeField(int p);

  int p() const { return p_; }
  int reduce(long long x) const {
    const long long r = x % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int add(int a, int b) const { return (a + b) % p_; }
  int sub(int a, int b) const { return (a - b + p_) % p_; }
  int mul(int a, int b) const { return static_cast<int>((1LL * a * b) % p_); }
  int neg(int a) const { return a == 0 ? 0 : p_ - a; }
  int inv(int a) const;

 private:
  int p_;
};

class VectorFp {
 public:
  VectorFp(int p, Row coords);

  int p() const { return p_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const Row& coords() const { return coords_; }
  bool is_zero() const;

  friend bool operator==(const VectorFp&, const VectorFp&) = default;

 private:
  int p_;
  Row coords_;
};

class SubspaceFp {
 public:
  // Zero subspace of F_p^ambient_dim.
  SubspaceFp(int p, int ambient_dim);

  int p() const { return p_; }
  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int codim() const { return ambient_dim_ - dim(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(std::span<const int> v) const;
  bool contains(const SubspaceFp& other) const;
  // Reduces v against the basis; the result is zero iff v lies in the span.
  Row reduce(std::span<const int> v) const;

  std::string to_string() const;

  friend bool operator==(const SubspaceFp& a, const SubspaceFp& b) {
    return a.p_ == b.p_ && a.ambient_dim_ == b.ambient_dim_ &&
           a.basis_ == b.basis_;
  }
  friend std::strong_ordering operator<=>(const SubspaceFp& a,
                                          const SubspaceFp& b);

 private:
  friend SubspaceFp rref(const Matrix&, int, int);

  int p_;
  int ambient_dim_;
  Matrix basis_;
  std::vector<int> pivots_;
};

// Row-reduced span of the rows of `matrix`. Entries may be arbitrary
// integers; they are reduced mod p.
SubspaceFp rref(const Matrix& matrix, int p, int ambient_dim);

// {x : x * matrix = 0} for a rows x cols matrix acting on row vectors. The
// column count must be passed explicitly when it cannot be read off a row.
SubspaceFp kernel(const Matrix& matrix, int p, int cols);
SubspaceFp kernel(const Matrix& matrix, int p);

int rank(const Matrix& matrix, int p, int cols);

SubspaceFp whole_space(int p, int ambient_dim);
SubspaceFp span_of(std::span<const Row> rows, int p, int ambient_dim);

SubspaceFp subspace_sum(const SubspaceFp& a, const SubspaceFp& b);
SubspaceFp subspace_intersect(const SubspaceFp& a, const SubspaceFp& b);

// Linear functionals vanishing on `s`, as a subspace of the dual space.
SubspaceFp annihilator(const SubspaceFp& s);

// All hyperplanes of F_p^ambient_dim, ordered by their normalised normal
// vector (first nonzero coordinate 1), lexicographically.
std::vector<SubspaceFp> enumerate_maximal_subspaces(int ambient_dim, int p);

// All subspaces of F_p^ambient_dim of dimension `dim`, each exactly once.
std::vector<SubspaceFp> enumerate_subspaces(int ambient_dim, int dim, int p);

// All subspaces S with t <= S and dim S = ambient_dim - codim.
std::vector<SubspaceFp> enumerate_subspaces_containing(const SubspaceFp& t,
                                                       int codim);

// 1 + p + ... + p^(e-1).
long long hyperplane_count(int e, int p);

}  // namespace morphic_lab::fp
