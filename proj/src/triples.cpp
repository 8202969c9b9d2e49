#include "morphic_lab/triples.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "morphic_lab/error.hpp"

namespace morphic_lab::triples {

namespace {

std::string str(long long x) { return std::to_string(x); }

void check_dims(const Triple& t, const fp::SubspaceFp& u) {
  if (u.p() != t.p() || u.ambient_dim() != t.dim_v()) {
    throw MorphicError(ErrorCode::kDimensionMismatch,
                       "subspace of F_" + str(u.p()) + "^" +
                           str(u.ambient_dim()) + " used with a triple on F_" +
                           str(t.p()) + "^" + str(t.dim_v()));
  }
}

fp::Row unit(int d, int i) {
  fp::Row r(d, 0);
  r[i] = 1;
  return r;
}

// Throws unless t is a verified, non-degenerate morphic triple.
void require_verified(const Triple& t) {
  const TripleVerdict v = verify_morphic_triple(t);
  if (!v.is_morphic_triple) {
    throw MorphicError(ErrorCode::kNotMorphicTriple,
                       "triple fails condition " + str(v.failed_condition));
  }
  if (v.degenerate) {
    throw MorphicError(ErrorCode::kNotMorphicTriple,
                       "triple is only degenerately morphic (dim V = 1, W = 0)");
  }
}

void require_hyperplane(const Triple& t, const fp::SubspaceFp& u) {
  check_dims(t, u);
  if (u.codim() != 1) {
    throw MorphicError(ErrorCode::kNotMaximal,
                       "U = " + u.to_string() + " has codimension " +
                           str(u.codim()) + ", not 1");
  }
}

fp::SubspaceFp t_of_unchecked(const Triple& t, const fp::SubspaceFp& u,
                              const fp::Row& a) {
  // tau : U -> W / U', x -> [a, x] + U'. Composing with the functionals in
  // ann(U') turns it into a matrix acting on coordinates along U's basis.
  const fp::SubspaceFp ud = derived_of(t, u);
  const fp::SubspaceFp ann = fp::annihilator(ud);
  const int k = u.dim();
  fp::Matrix m(k, fp::Row(ann.dim(), 0));
  for (int i = 0; i < k; ++i) {
    const fp::Row w = t.apply(a, u.basis()[i]);
    for (int j = 0; j < ann.dim(); ++j) {
      long long s = 0;
      for (int c = 0; c < t.dim_w(); ++c) s += 1LL * w[c] * ann.basis()[j][c];
      m[i][j] = static_cast<int>(s % t.p());
    }
  }
  const fp::SubspaceFp coeffs = fp::kernel(m, t.p(), ann.dim());
  fp::Matrix rows;
  for (const fp::Row& c : coeffs.basis()) {
    fp::Row x(t.dim_v(), 0);
    for (int i = 0; i < k; ++i) {
      for (int col = 0; col < t.dim_v(); ++col) {
        x[col] = (x[col] + c[i] * u.basis()[i][col]) % t.p();
      }
    }
    rows.push_back(std::move(x));
  }
  return fp::rref(rows, t.p(), t.dim_v());
}

// A second vector outside u, different from a: a + (first basis vector of
// u), or 2a when u = 0 and p > 2; nullopt when there is no other choice.
std::optional<fp::Row> second_outside(const Triple& t, const fp::SubspaceFp& u,
                                      const fp::Row& a) {
  fp::Row b = a;
  if (u.dim() > 0) {
    for (int c = 0; c < t.dim_v(); ++c) b[c] = (b[c] + u.basis()[0][c]) % t.p();
    return b;
  }
  if (t.p() == 2) return std::nullopt;
  for (int& x : b) x = (2 * x) % t.p();
  return b;
}

}  // namespace

Triple::Triple(int p, int dim_v, int dim_w)
    : Triple(p, dim_v, dim_w,
             std::vector<fp::Row>(
                 static_cast<std::size_t>(std::max(dim_v, 0)) *
                     std::max(dim_v - 1, 0) / 2,
                 fp::Row(std::max(dim_w, 0), 0))) {}

Triple::Triple(int p, int dim_v, int dim_w, std::vector<fp::Row> upper)
    : p_(p), dim_v_(dim_v), dim_w_(dim_w), upper_(std::move(upper)) {
  if (!fp::is_prime(p)) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       str(p) + " is not prime");
  }
  if (dim_v < 1 || dim_v > fp::kMaxDimension || dim_w < 0 ||
      dim_w > fp::kMaxDimension) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "triple dimensions (" + str(dim_v) + ", " + str(dim_w) +
                           ") outside 1..16 x 0..16");
  }
  const std::size_t pairs = static_cast<std::size_t>(dim_v) * (dim_v - 1) / 2;
  if (upper_.size() != pairs) {
    throw MorphicError(ErrorCode::kDimensionMismatch,
                       "expected " + str(pairs) + " tensor entries, got " +
                           str(upper_.size()));
  }
  const fp::PrimeField f(p);
  for (fp::Row& w : upper_) {
    if (static_cast<int>(w.size()) != dim_w) {
      throw MorphicError(ErrorCode::kDimensionMismatch,
                         "tensor entry has " + str(w.size()) +
                             " coordinates, expected " + str(dim_w));
    }
    for (int& x : w) x = f.reduce(x);
  }
}

fp::Row Triple::value(int i, int j) const {
  if (i == j) return fp::Row(dim_w_, 0);
  if (i < j) return upper_[pair_index(i, j, dim_v_)];
  fp::Row w = upper_[pair_index(j, i, dim_v_)];
  for (int& x : w) x = x == 0 ? 0 : p_ - x;
  return w;
}

void Triple::set(int i, int j, fp::Row w) {
  if (i == j || i < 0 || j < 0 || i >= dim_v_ || j >= dim_v_ ||
      static_cast<int>(w.size()) != dim_w_) {
    throw MorphicError(ErrorCode::kDimensionMismatch,
                       "invalid tensor position (" + str(i) + ", " + str(j) +
                           ")");
  }
  const fp::PrimeField f(p_);
  for (int& x : w) x = f.reduce(x);
  if (i > j) {
    std::swap(i, j);
    for (int& x : w) x = f.neg(x);
  }
  upper_[pair_index(i, j, dim_v_)] = std::move(w);
}

fp::Row Triple::apply(const fp::Row& x, const fp::Row& y) const {
  std::vector<long long> acc(dim_w_, 0);
  for (int i = 0; i < dim_v_; ++i) {
    for (int j = i + 1; j < dim_v_; ++j) {
      const long long c = 1LL * x[i] * y[j] - 1LL * x[j] * y[i];
      if (c % p_ == 0) continue;
      const fp::Row& w = upper_[pair_index(i, j, dim_v_)];
      for (int k = 0; k < dim_w_; ++k) acc[k] += c * w[k];
    }
  }
  fp::Row out(dim_w_);
  const fp::PrimeField f(p_);
  for (int k = 0; k < dim_w_; ++k) out[k] = f.reduce(acc[k] % p_);
  return out;
}

fp::SubspaceFp bracket(const Triple& t, const fp::SubspaceFp& u1,
                       const fp::SubspaceFp& u2) {
  check_dims(t, u1);
  check_dims(t, u2);
  fp::Matrix rows;
  for (const fp::Row& a : u1.basis()) {
    for (const fp::Row& b : u2.basis()) rows.push_back(t.apply(a, b));
  }
  return fp::rref(rows, t.p(), t.dim_w());
}

fp::SubspaceFp derived_of(const Triple& t, const fp::SubspaceFp& u) {
  check_dims(t, u);
  fp::Matrix rows;
  const auto& b = u.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      rows.push_back(t.apply(b[i], b[j]));
    }
  }
  return fp::rref(rows, t.p(), t.dim_w());
}

TripleVerdict verify_morphic_triple(const Triple& t) {
  TripleVerdict v;
  const int p = t.p();
  const int d = t.dim_v();
  const int e = t.dim_w();
  const fp::SubspaceFp whole = fp::whole_space(p, d);
  const fp::SubspaceFp vd = derived_of(t, whole);
  if (vd.dim() != e) {
    v.failed_condition = 1;
    v.witness = vd;
    return v;
  }
  const auto hyperplanes = fp::enumerate_maximal_subspaces(d, p);
  if (e == 0) {
    // U' maximal in W = 0 has no content; only dim V = 1 passes.
    if (d == 1) {
      v.is_morphic_triple = true;
      v.degenerate = true;
    } else {
      v.failed_condition = 2;
      v.witness = hyperplanes.front();
    }
    return v;
  }
  fp::SubspaceFp meet = fp::whole_space(p, e);
  for (const fp::SubspaceFp& u : hyperplanes) {
    const fp::SubspaceFp ud = derived_of(t, u);
    if (ud.dim() != e - 1) {
      v.failed_condition = 2;
      v.witness = u;
      return v;
    }
    meet = fp::subspace_intersect(meet, ud);
  }
  if (meet.dim() != 0) {
    v.failed_condition = 3;
    v.witness = meet;
    return v;
  }
  v.is_morphic_triple = true;
  return v;
}

fp::SubspaceFp t_of(const Triple& t, const fp::SubspaceFp& u,
                    const fp::VectorFp& a) {
  require_hyperplane(t, u);
  if (a.p() != t.p() || a.dim() != t.dim_v()) {
    throw MorphicError(ErrorCode::kDimensionMismatch,
                       "vector a does not live in V");
  }
  if (u.contains(a.coords())) {
    throw MorphicError(ErrorCode::kAOnU, "a lies in U = " + u.to_string());
  }
  require_verified(t);
  fp::SubspaceFp result = t_of_unchecked(t, u, a.coords());
  if (result.dim() != u.dim() - 1) {
    throw MorphicError(ErrorCode::kInternalConsistency,
                       "T(U) has dimension " + str(result.dim()) +
                           " inside U of dimension " + str(u.dim()));
  }
  if (const auto b = second_outside(t, u, a.coords())) {
    if (!(t_of_unchecked(t, u, *b) == result)) {
      throw MorphicError(ErrorCode::kInternalConsistency,
                         "T(U) depends on the choice of a for U = " +
                             u.to_string());
    }
  }
  return result;
}

std::vector<fp::SubspaceFp> spread(const Triple& t, const fp::SubspaceFp& u) {
  require_hyperplane(t, u);
  require_verified(t);
  const fp::SubspaceFp ud = derived_of(t, u);
  std::vector<fp::SubspaceFp> brute;
  for (const fp::SubspaceFp& s : fp::enumerate_maximal_subspaces(t.dim_v(), t.p())) {
    if (derived_of(t, s) == ud) brute.push_back(s);
  }
  // Any vector outside U serves as a.
  fp::Row a;
  for (int i = 0; i < t.dim_v() && a.empty(); ++i) {
    if (!u.contains(unit(t.dim_v(), i))) a = unit(t.dim_v(), i);
  }
  const fp::SubspaceFp tu = t_of(t, u, fp::VectorFp(t.p(), a));
  auto via_t = fp::enumerate_subspaces_containing(tu, 1);
  std::sort(brute.begin(), brute.end());
  std::sort(via_t.begin(), via_t.end());
  if (brute != via_t) {
    throw MorphicError(ErrorCode::kInternalConsistency,
                       "spread of U = " + u.to_string() + " has " +
                           str(brute.size()) +
                           " members but T(U) lies in " + str(via_t.size()) +
                           " hyperplanes");
  }
  return brute;
}

std::vector<fp::SubspaceFp> zset(const Triple& t) {
  require_verified(t);
  std::set<fp::SubspaceFp> seen;
  const auto hyperplanes = fp::enumerate_maximal_subspaces(t.dim_v(), t.p());
  for (const fp::SubspaceFp& u : hyperplanes) seen.insert(derived_of(t, u));
  std::vector<fp::SubspaceFp> out(seen.begin(), seen.end());
  if (out.size() * static_cast<std::size_t>(t.p() + 1) != hyperplanes.size()) {
    throw MorphicError(ErrorCode::kInternalConsistency,
                       "|Z| (p + 1) = " + str(out.size() * (t.p() + 1)) +
                           " but V has " + str(hyperplanes.size()) +
                           " hyperplanes");
  }
  if (t.dim_v() % 2 != 0) {
    throw MorphicError(ErrorCode::kInternalConsistency,
                       "verified triple with odd dim V = " + str(t.dim_v()));
  }
  return out;
}

bool check_dim_bound(const Triple& t) {
  const TripleVerdict v = verify_morphic_triple(t);
  if (!v.is_morphic_triple) {
    throw MorphicError(ErrorCode::kNotMorphicTriple,
                       "triple fails condition " + str(v.failed_condition));
  }
  if (t.dim_w() < t.dim_v() - 1) {
    throw MorphicError(ErrorCode::kInternalConsistency,
                       "verified triple with dim W = " + str(t.dim_w()) +
                           " < dim V - 1 = " + str(t.dim_v() - 1));
  }
  return true;
}

SearchResult search_triples(int p, int dim_v, int dim_w, long long budget,
                            SearchMode mode, std::uint64_t seed) {
  if (!fp::is_prime(p) || dim_v < 1 || dim_v > fp::kMaxDimension ||
      dim_w < 0 || dim_w > fp::kMaxDimension || budget < 0) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "search parameters p=" + str(p) + " dimV=" +
                           str(dim_v) + " dimW=" + str(dim_w) +
                           " budget=" + str(budget));
  }
  SearchResult result;
  const int pairs = dim_v * (dim_v - 1) / 2;
  const int digits = pairs * dim_w;
  result.space_size = std::pow(static_cast<long double>(p), digits);
  if (dim_v % 2 != 0 && dim_v > 1) {
    result.note = "d must be even";
  } else if (dim_w < dim_v - 1) {
    result.note = "dim W >= dim V - 1 is violated";
  }

  auto decode = [&](auto&& next_digit) {
    std::vector<fp::Row> upper(pairs, fp::Row(dim_w, 0));
    for (auto& w : upper) {
      for (int& x : w) x = next_digit();
    }
    return Triple(p, dim_v, dim_w, std::move(upper));
  };
  std::set<Triple> found;
  auto consider = [&](const Triple& t) {
    ++result.examined;
    if (verify_morphic_triple(t).is_morphic_triple) found.insert(t);
  };

  if (mode == SearchMode::kExhaustive) {
    const bool fits = result.space_size <= static_cast<long double>(budget);
    const long long limit =
        fits ? static_cast<long long>(result.space_size) : budget;
    std::vector<int> code(digits, 0);
    for (long long n = 0; n < limit; ++n) {
      std::size_t pos = 0;
      consider(decode([&] { return code[pos++]; }));
      for (int k = 0; k < digits; ++k) {
        if (++code[k] < p) break;
        code[k] = 0;
      }
    }
    result.exhaustive = fits;
    result.budget_exceeded = !fits;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> digit(0, p - 1);
    for (long long n = 0; n < budget; ++n) {
      consider(decode([&] { return digit(rng); }));
    }
  }
  result.found.assign(found.begin(), found.end());
  return result;
}

}  // namespace morphic_lab::triples
