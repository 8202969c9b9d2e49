#include "morphic_lab/fp_linalg.hpp"

#include <algorithm>
#include <sstream>

#include "morphic_lab/error.hpp"

namespace morphic_lab::fp {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (!is_prime(p)) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "field characteristic " + std::to_string(p) +
                           " is not prime");
  }
}

int PrimeField::inv(int a) const {
  a = reduce(a);
  if (a == 0) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "zero has no inverse in F_p");
  }
  // Fermat: a^(p-2).
  long long result = 1, base = a;
  for (int e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<int>(result);
}

VectorFp::VectorFp(int p, Row coords) : p_(p), coords_(std::move(coords)) {
  const PrimeField field(p);
  for (int& c : coords_) c = field.reduce(c);
}

bool VectorFp::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](int c) { return c == 0; });
}

namespace {

void check_dimension(int ambient_dim) {
  if (ambient_dim < 0 || ambient_dim > kMaxDimension) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "ambient dimension " + std::to_string(ambient_dim) +
                           " outside [0, " + std::to_string(kMaxDimension) +
                           "]");
  }
}

void check_compatible(const SubspaceFp& a, const SubspaceFp& b) {
  if (a.p() != b.p() || a.ambient_dim() != b.ambient_dim()) {
    throw MorphicError(ErrorCode::kDimensionMismatch,
                       "subspaces live in different spaces: F_" +
                           std::to_string(a.p()) + "^" +
                           std::to_string(a.ambient_dim()) + " vs F_" +
                           std::to_string(b.p()) + "^" +
                           std::to_string(b.ambient_dim()));
  }
}

// In-place reduced row echelon form restricted to the first `pivot_cols`
// columns; returns the pivot columns. Zero rows are dropped.
std::vector<int> reduce_rows(Matrix& m, const PrimeField& field,
                             int pivot_cols) {
  std::vector<int> pivots;
  int r = 0;
  const int rows = static_cast<int>(m.size());
  for (int c = 0; c < pivot_cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i) {
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    const int scale = field.inv(m[r][c]);
    for (int& x : m[r]) x = field.mul(x, scale);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const int f = m[i][c];
      for (std::size_t k = 0; k < m[i].size(); ++k) {
        m[i][k] = field.sub(m[i][k], field.mul(f, m[r][k]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

SubspaceFp::SubspaceFp(int p, int ambient_dim)
    : p_(PrimeField(p).p()), ambient_dim_(ambient_dim) {
  check_dimension(ambient_dim);
}

Row SubspaceFp::reduce(std::span<const int> v) const {
  if (static_cast<int>(v.size()) != ambient_dim_) {
    throw MorphicError(ErrorCode::kDimensionMismatch,
                       "vector of length " + std::to_string(v.size()) +
                           " in F_p^" + std::to_string(ambient_dim_));
  }
  const PrimeField field(p_);
  Row out(v.begin(), v.end());
  for (int& x : out) x = field.reduce(x);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const int f = out[pivots_[i]];
    if (f == 0) continue;
    for (int k = 0; k < ambient_dim_; ++k) {
      out[k] = field.sub(out[k], field.mul(f, basis_[i][k]));
    }
  }
  return out;
}

bool SubspaceFp::contains(std::span<const int> v) const {
  const Row r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

bool SubspaceFp::contains(const SubspaceFp& other) const {
  check_compatible(*this, other);
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Row& r) { return contains(r); });
}

std::string SubspaceFp::to_string() const {
  std::ostringstream os;
  os << "span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) os << ", ";
    os << "(";
    for (int k = 0; k < ambient_dim_; ++k) os << (k ? "," : "") << basis_[i][k];
    os << ")";
  }
  os << "} <= F_" << p_ << "^" << ambient_dim_;
  return os.str();
}

std::strong_ordering operator<=>(const SubspaceFp& a, const SubspaceFp& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  return a.basis_ <=> b.basis_;
}

SubspaceFp rref(const Matrix& matrix, int p, int ambient_dim) {
  const PrimeField field(p);
  check_dimension(ambient_dim);
  Matrix m;
  m.reserve(matrix.size());
  for (const Row& row : matrix) {
    if (static_cast<int>(row.size()) != ambient_dim) {
      throw MorphicError(ErrorCode::kDimensionMismatch,
                         "row of length " + std::to_string(row.size()) +
                             " in F_p^" + std::to_string(ambient_dim));
    }
    Row r(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) r[k] = field.reduce(row[k]);
    m.push_back(std::move(r));
  }
  SubspaceFp out(p, ambient_dim);
  out.pivots_ = reduce_rows(m, field, ambient_dim);
  m.resize(out.pivots_.size());
  out.basis_ = std::move(m);
  return out;
}

SubspaceFp kernel(const Matrix& matrix, int p, int cols) {
  const PrimeField field(p);
  const int rows = static_cast<int>(matrix.size());
  Matrix aug(rows, Row(cols + rows, 0));
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(matrix[i].size()) != cols) {
      throw MorphicError(ErrorCode::kDimensionMismatch,
                         "ragged matrix passed to kernel");
    }
    for (int k = 0; k < cols; ++k) aug[i][k] = field.reduce(matrix[i][k]);
    aug[i][cols + i] = 1;
  }
  const auto pivots = reduce_rows(aug, field, cols);
  Matrix ker;
  for (int i = static_cast<int>(pivots.size()); i < rows; ++i) {
    ker.emplace_back(aug[i].begin() + cols, aug[i].end());
  }
  return rref(ker, p, rows);
}

SubspaceFp kernel(const Matrix& matrix, int p) {
  const int cols = matrix.empty() ? 0 : static_cast<int>(matrix[0].size());
  return kernel(matrix, p, cols);
}

int rank(const Matrix& matrix, int p, int cols) {
  return rref(matrix, p, cols).dim();
}

SubspaceFp whole_space(int p, int ambient_dim) {
  Matrix id(ambient_dim, Row(ambient_dim, 0));
  for (int i = 0; i < ambient_dim; ++i) id[i][i] = 1;
  return rref(id, p, ambient_dim);
}

SubspaceFp span_of(std::span<const Row> rows, int p, int ambient_dim) {
  return rref(Matrix(rows.begin(), rows.end()), p, ambient_dim);
}

SubspaceFp subspace_sum(const SubspaceFp& a, const SubspaceFp& b) {
  check_compatible(a, b);
  Matrix rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return rref(rows, a.p(), a.ambient_dim());
}

SubspaceFp annihilator(const SubspaceFp& s) {
  const int n = s.ambient_dim();
  // x . b = 0 for every basis row b  <=>  x * B^T = 0.
  Matrix bt(n, Row(s.dim(), 0));
  for (int i = 0; i < s.dim(); ++i) {
    for (int k = 0; k < n; ++k) bt[k][i] = s.basis()[i][k];
  }
  return kernel(bt, s.p(), s.dim());
}

SubspaceFp subspace_intersect(const SubspaceFp& a, const SubspaceFp& b) {
  check_compatible(a, b);
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

long long hyperplane_count(int e, int p) {
  long long total = 0, term = 1;
  for (int i = 0; i < e; ++i) {
    total += term;
    term *= p;
  }
  return total;
}

std::vector<SubspaceFp> enumerate_maximal_subspaces(int ambient_dim, int p) {
  const PrimeField field(p);
  check_dimension(ambient_dim);
  std::vector<Row> normals;
  // Normalised functionals: leading nonzero coordinate is 1.
  for (int lead = 0; lead < ambient_dim; ++lead) {
    const int free = ambient_dim - lead - 1;
    long long combos = 1;
    for (int i = 0; i < free; ++i) combos *= p;
    for (long long code = 0; code < combos; ++code) {
      Row f(ambient_dim, 0);
      f[lead] = 1;
      long long c = code;
      for (int k = ambient_dim - 1; k > lead; --k) {
        f[k] = static_cast<int>(c % p);
        c /= p;
      }
      normals.push_back(std::move(f));
    }
  }
  std::sort(normals.begin(), normals.end());
  std::vector<SubspaceFp> out;
  out.reserve(normals.size());
  for (const Row& f : normals) {
    Matrix column(ambient_dim, Row(1, 0));
    for (int k = 0; k < ambient_dim; ++k) column[k][0] = f[k];
    out.push_back(kernel(column, p, 1));
  }
  return out;
}

std::vector<SubspaceFp> enumerate_subspaces(int ambient_dim, int dim, int p) {
  const PrimeField field(p);
  check_dimension(ambient_dim);
  std::vector<SubspaceFp> out;
  if (dim < 0 || dim > ambient_dim) return out;
  std::vector<int> pivots(dim);
  for (int i = 0; i < dim; ++i) pivots[i] = i;
  while (true) {
    // Free entries: row i, column c > pivots[i], c not a pivot column.
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < dim; ++i) {
      for (int c = pivots[i] + 1; c < ambient_dim; ++c) {
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) {
          free.emplace_back(i, c);
        }
      }
    }
    long long combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i) combos *= p;
    for (long long code = 0; code < combos; ++code) {
      Matrix m(dim, Row(ambient_dim, 0));
      for (int i = 0; i < dim; ++i) m[i][pivots[i]] = 1;
      long long c = code;
      for (const auto& [i, col] : free) {
        m[i][col] = static_cast<int>(c % p);
        c /= p;
      }
      out.push_back(rref(m, p, ambient_dim));
    }
    // Next pivot combination.
    int k = dim - 1;
    while (k >= 0 && pivots[k] == ambient_dim - dim + k) --k;
    if (k < 0) break;
    ++pivots[k];
    for (int i = k + 1; i < dim; ++i) pivots[i] = pivots[i - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubspaceFp> enumerate_subspaces_containing(const SubspaceFp& t,
                                                       int codim) {
  std::vector<SubspaceFp> out;
  const int n = t.ambient_dim();
  const int target = n - codim;
  if (codim < 0 || target < t.dim()) return out;
  // Coordinates of V/t are the non-pivot columns of t.
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c) {
    if (!std::binary_search(t.pivots().begin(), t.pivots().end(), c)) {
      free_cols.push_back(c);
    }
  }
  const int m = static_cast<int>(free_cols.size());
  for (const SubspaceFp& q : enumerate_subspaces(m, target - t.dim(), t.p())) {
    Matrix rows = t.basis();
    for (const Row& qr : q.basis()) {
      Row lift(n, 0);
      for (int k = 0; k < m; ++k) lift[free_cols[k]] = qr[k];
      rows.push_back(std::move(lift));
    }
    out.push_back(rref(rows, t.p(), n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace morphic_lab::fp
