#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "morphic_lab/error.hpp"
#include "morphic_lab/triples.hpp"

using namespace morphic_lab;
using namespace morphic_lab::triples;

namespace {

fp::SubspaceFp span(int p, int d, fp::Matrix rows) { return fp::rref(rows, p, d); }

Triple pairing(int p) { return Triple(p, 2, 1, {{1}}); }

// e0^e1 + e2^e3 into a one-dimensional W.
Triple symplectic4() { return Triple(2, 4, 1, {{1}, {0}, {0}, {0}, {0}, {1}}); }

// All vectors of F_p^d.
std::vector<fp::Row> vectors(int p, int d) {
  std::vector<fp::Row> out{fp::Row(d, 0)};
  for (int i = 0; i < d; ++i) {
    std::vector<fp::Row> next;
    for (const auto& v : out) {
      for (int c = 0; c < p; ++c) {
        fp::Row w = v;
        w[i] = c;
        next.push_back(w);
      }
    }
    out = std::move(next);
  }
  return out;
}

// The three conditions checked straight from the definition: hyperplanes
// are kernels of nonzero functionals, U' is spanned by beta over all pairs
// of vectors of U.
bool naive_morphic(const Triple& t) {
  const int p = t.p(), d = t.dim_v(), e = t.dim_w();
  const auto vs = vectors(p, d);
  auto derived = [&](auto&& in_u) {
    fp::Matrix rows;
    for (const auto& x : vs) {
      if (!in_u(x)) continue;
      for (const auto& y : vs) {
        if (in_u(y)) rows.push_back(t.apply(x, y));
      }
    }
    return fp::rref(rows, p, e);
  };
  if (derived([](const fp::Row&) { return true; }).dim() != e) return false;
  fp::SubspaceFp meet = fp::whole_space(p, e);
  for (const auto& f : vs) {
    if (std::all_of(f.begin(), f.end(), [](int c) { return c == 0; })) continue;
    const auto ud = derived([&](const fp::Row& x) {
      long long s = 0;
      for (int i = 0; i < d; ++i) s += 1LL * f[i] * x[i];
      return s % p == 0;
    });
    if (ud.dim() != e - 1) return false;
    meet = fp::subspace_intersect(meet, ud);
  }
  return meet.dim() == 0;
}

// beta : V x V -> Lambda^2 V / L for a plane L with no nonzero vector on
// the Klein quadric w01 w23 - w02 w13 + w03 w12 = 0. Then every U' is the
// image of Lambda^2 U, of dimension 3 in a 4-dimensional W.
Triple klein_triple(int p) {
  auto quadric = [p](const fp::Row& w) {
    const long long q = 1LL * w[0] * w[5] - 1LL * w[1] * w[4] + 1LL * w[2] * w[3];
    return ((q % p) + p) % p;
  };
  for (const auto& l : fp::enumerate_subspaces(6, 2, p)) {
    bool anisotropic = true;
    for (int a = 0; a < p && anisotropic; ++a) {
      for (int b = 0; b < p && anisotropic; ++b) {
        if (a == 0 && b == 0) continue;
        fp::Row w(6);
        for (int i = 0; i < 6; ++i) w[i] = (a * l.basis()[0][i] + b * l.basis()[1][i]) % p;
        anisotropic = quadric(w) != 0;
      }
    }
    if (!anisotropic) continue;
    // Rows of Lambda^2 V map to coordinates on W via functionals vanishing on L.
    const fp::SubspaceFp ann = fp::annihilator(l);
    std::vector<fp::Row> upper(6, fp::Row(4));
    for (int k = 0; k < 6; ++k) {
      for (int c = 0; c < 4; ++c) upper[k][c] = ann.basis()[c][k];
    }
    return Triple(p, 4, 4, upper);
  }
  FAIL("no anisotropic plane");
  return Triple(p, 4, 4);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const MorphicError& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInternalConsistency;
}

}  // namespace

TEST_SUITE("triples") {

TEST_CASE("tensor storage") {
  CHECK(Triple::pair_index(0, 1, 4) == 0);
  CHECK(Triple::pair_index(0, 3, 4) == 2);
  CHECK(Triple::pair_index(1, 2, 4) == 3);
  CHECK(Triple::pair_index(2, 3, 4) == 5);
  Triple t(3, 3, 2);
  t.set(0, 2, {1, 2});
  CHECK(t.value(0, 2) == fp::Row{1, 2});
  CHECK(t.value(2, 0) == fp::Row{2, 1});
  CHECK(t.value(1, 1) == fp::Row{0, 0});
  // beta(e0 + e1, e2) = beta(e0, e2) + beta(e1, e2)
  t.set(1, 2, {1, 1});
  CHECK(t.apply({1, 1, 0}, {0, 0, 1}) == fp::Row{2, 0});
  CHECK(t.apply({0, 0, 1}, {0, 0, 1}) == fp::Row{0, 0});
  CHECK(code_of([] { Triple(4, 2, 1); }) == ErrorCode::kParameterOutOfRange);
  CHECK(code_of([] { Triple(2, 3, 1, {{1}}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("derived subspaces") {
  const Triple t = symplectic4();
  CHECK(derived_of(t, fp::whole_space(2, 4)).dim() == 1);
  CHECK(derived_of(t, span(2, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}})).dim() == 0);
  CHECK(derived_of(t, span(2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}})).dim() == 1);
  CHECK(bracket(t, span(2, 4, {{1, 0, 0, 0}}), span(2, 4, {{0, 0, 0, 1}})).dim() == 0);
}

TEST_CASE("verification") {
  for (int p : {2, 3, 5}) {
    const auto v = verify_morphic_triple(pairing(p));
    CHECK(v.is_morphic_triple);
    CHECK_FALSE(v.degenerate);
  }
  // A three-dimensional subspace of a symplectic 4-space is never isotropic,
  // so U' = W is not a hyperplane of W.
  const auto s = verify_morphic_triple(symplectic4());
  CHECK_FALSE(s.is_morphic_triple);
  CHECK(s.failed_condition == 2);
  CHECK(s.witness.has_value());

  const auto deg = verify_morphic_triple(Triple(2, 1, 0));
  CHECK(deg.is_morphic_triple);
  CHECK(deg.degenerate);
  CHECK(verify_morphic_triple(Triple(3, 2, 0)).failed_condition == 2);
  // beta = 0 into a nonzero W: V' = 0 != W.
  CHECK(verify_morphic_triple(Triple(2, 2, 1)).failed_condition == 1);
}

TEST_CASE("T(U)") {
  const Triple t = pairing(3);
  const auto u = span(3, 2, {{1, 0}});
  CHECK(t_of(t, u, fp::VectorFp(3, {0, 1})).dim() == 0);
  CHECK(t_of(t, u, fp::VectorFp(3, {2, 2})).dim() == 0);
  CHECK(code_of([&] { t_of(t, u, fp::VectorFp(3, {2, 0})); }) == ErrorCode::kAOnU);
  CHECK(code_of([&] { t_of(t, fp::SubspaceFp(3, 2), fp::VectorFp(3, {0, 1})); }) ==
        ErrorCode::kNotMaximal);
  CHECK(code_of([&] {
          t_of(symplectic4(), span(2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}),
               fp::VectorFp(2, {0, 0, 0, 1}));
        }) == ErrorCode::kNotMorphicTriple);
  CHECK(code_of([&] { t_of(t, u, fp::VectorFp(3, {0, 1, 0})); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("spread and Z") {
  for (int p : {2, 3, 5}) {
    const Triple t = pairing(p);
    for (const auto& u : fp::enumerate_maximal_subspaces(2, p)) {
      CHECK(static_cast<int>(spread(t, u).size()) == p + 1);
    }
    const auto z = zset(t);
    CHECK(z.size() == 1);
    CHECK(check_dim_bound(t));
  }
  CHECK(code_of([] { zset(symplectic4()); }) == ErrorCode::kNotMorphicTriple);
  CHECK(code_of([] { check_dim_bound(symplectic4()); }) == ErrorCode::kNotMorphicTriple);
}

TEST_CASE("search") {
  const auto r2 = search_triples(2, 2, 1, 1000);
  CHECK(r2.exhaustive);
  CHECK(r2.found.size() == 1);
  CHECK(r2.note.empty());
  const auto r3 = search_triples(3, 2, 1, 1000);
  CHECK(r3.found.size() == 2);

  const auto odd = search_triples(2, 3, 3, 1000000);
  CHECK(odd.exhaustive);
  CHECK(odd.found.empty());
  CHECK(odd.note == "d must be even");

  const auto low = search_triples(2, 4, 2, 1000000);
  CHECK(low.exhaustive);
  CHECK(low.found.empty());
  CHECK(low.note == "dim W >= dim V - 1 is violated");

  const auto partial = search_triples(2, 4, 3, 100);
  CHECK(partial.budget_exceeded);
  CHECK_FALSE(partial.exhaustive);
  CHECK(partial.examined == 100);

  const auto a = search_triples(3, 2, 1, 50, SearchMode::kSampled, 7);
  const auto b = search_triples(3, 2, 1, 50, SearchMode::kSampled, 7);
  CHECK(a.found == b.found);
  CHECK(a.found.size() == 2);
  CHECK(code_of([] { search_triples(6, 2, 1, 10); }) == ErrorCode::kParameterOutOfRange);
}

TEST_CASE("four-dimensional triples from the Klein quadric") {
  for (int p : {2, 3}) {
    CAPTURE(p);
    const Triple t = klein_triple(p);
    const auto v = verify_morphic_triple(t);
    REQUIRE(v.is_morphic_triple);
    CHECK(naive_morphic(t));
    CHECK(check_dim_bound(t));
    // |Z| = 1 + p^2 of the 1 + p + p^2 + p^3 hyperplanes of W.
    CHECK(static_cast<int>(zset(t).size()) == 1 + p * p);
    for (const auto& u : fp::enumerate_maximal_subspaces(4, p)) {
      const auto s = spread(t, u);
      CHECK(static_cast<int>(s.size()) == p + 1);
      CHECK(std::find(s.begin(), s.end(), u) != s.end());
      // T(U) does not depend on a.
      std::set<fp::SubspaceFp> ts;
      for (const auto& a : vectors(p, 4)) {
        if (!u.contains(a)) ts.insert(t_of(t, u, fp::VectorFp(p, a)));
      }
      CHECK(ts.size() == 1);
    }
  }
}

TEST_CASE("verification agrees with the definition on random tensors") {
  // Sampled tensors are almost never morphic, so seed the pool with the
  // known ones too.
  std::vector<Triple> pool{pairing(2), pairing(3), klein_triple(2), symplectic4(),
                           Triple(2, 2, 0), Triple(3, 2, 2, {{1, 0}})};
  std::mt19937_64 rng(11);
  for (int n = 0; n < 300; ++n) {
    const int p = n % 2 == 0 ? 2 : 3;
    const int d = 2 + static_cast<int>(rng() % 3);
    const int e = static_cast<int>(rng() % 5);
    std::vector<fp::Row> upper(d * (d - 1) / 2, fp::Row(e));
    for (auto& w : upper) {
      for (int& x : w) x = static_cast<int>(rng() % p);
    }
    pool.emplace_back(p, d, e, upper);
  }
  for (const Triple& t : pool) {
    CHECK(verify_morphic_triple(t).is_morphic_triple == naive_morphic(t));
  }
}

TEST_CASE("no morphic triple over F_2 with dim V = 4, dim W = 3") {
  const auto r = search_triples(2, 4, 3, 1 << 18);
  REQUIRE(r.exhaustive);
  CHECK(r.examined == (1 << 18));
  CHECK(r.found.empty());
}

}  // TEST_SUITE
