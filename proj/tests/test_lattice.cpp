#include "doctest.h"
#include "morphic_lab/catalog.hpp"
#include "morphic_lab/error.hpp"
#include "morphic_lab/families.hpp"
#include "morphic_lab/lattice.hpp"
#include "oracle.hpp"

using namespace morphic_lab;

namespace {

FiniteGroup fam(const char* spec) { return make_family(parse_family_spec(spec)); }

std::vector<std::vector<Element>> lists(const std::vector<Subgroup>& v) {
  std::vector<std::vector<Element>> out;
  for (const auto& s : v) out.push_back(s.elements());
  return out;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("small lattices") {
  const FiniteGroup one = FiniteGroup::from_mult_table({{0}}, "1");
  CHECK(lattice::all_subgroups(one).all.size() == 1);
  CHECK(lattice::all_subgroups(fam("quaternion:8")).all.size() == 6);
  CHECK(lattice::all_subgroups(fam("abelian:2:1,1")).all.size() == 5);
  CHECK(lattice::normal_subgroups(fam("dihedral:8")).size() == 6);
  const auto h3n = lattice::normal_subgroups(fam("heisenberg:3"));
  CHECK(h3n.size() == 7);
  int order9 = 0;
  for (const auto& n : h3n) order9 += n.order() == 9;
  CHECK(order9 == 4);
}

TEST_CASE("layered enumeration agrees with the join route and the oracle") {
  for (const char* s : {"abelian:2:1,2", "abelian:2:1,1,1", "dihedral:8", "quaternion:8",
                        "heisenberg:3", "modular:3:3", "dihedral:16", "quaternion:16",
                        "semidihedral:16", "modular:2:4", "abelian:3:1,2",
                        "dihedral:8*abelian:2:1", "quaternion:8*abelian:2:1"}) {
    CAPTURE(s);
    const FiniteGroup g = fam(s);
    const auto layered = lattice::all_subgroups(g);
    const auto joins = lattice::all_subgroups_by_joins(g);
    CHECK(lists(layered.all) == lists(joins.all));
    CHECK(layered.normal_flags == joins.normal_flags);
    const auto t = oracle::Table::of(g);
    CHECK(lists(layered.all) == oracle::subgroups(t));
    CHECK(lists(lattice::normal_subgroups(g)) == oracle::normal_subgroups(t));
  }
}

TEST_CASE("lattice invariants") {
  const FiniteGroup g = fam("heisenberg:3*abelian:3:1");
  const auto lat = lattice::all_subgroups(g);
  CHECK(lat.all.front().order() == 1);
  CHECK(lat.all.back().order() == g.order());
  const auto classes = conjugacy_classes(g);
  for (std::size_t i = 0; i < lat.all.size(); ++i) {
    CHECK(g.order() % lat.all[i].order() == 0);
    if (i > 0) CHECK(lat.all[i - 1] < lat.all[i]);
    if (!lat.normal_flags[i]) continue;
    // Normal subgroups are unions of conjugacy classes.
    for (const auto& c : classes) {
      int inside = 0;
      for (const Element x : c) inside += lat.all[i].contains(x);
      CHECK((inside == 0 || inside == static_cast<int>(c.size())));
    }
  }
  // Closed under joins of members.
  for (std::size_t i = 0; i < lat.all.size(); i += 7) {
    for (std::size_t j = 0; j < lat.all.size(); j += 11) {
      const Subgroup k = join(lat.all[i], lat.all[j]);
      CHECK(std::binary_search(lat.all.begin(), lat.all.end(), k));
    }
  }
}

TEST_CASE("caps") {
  const FiniteGroup big = fam("dihedral:256*abelian:2:2");
  CHECK_THROWS_AS(lattice::all_subgroups(big), MorphicError);
  lattice::EnumerationLimits tight;
  tight.max_subgroups = 10;
  try {
    lattice::all_subgroups(fam("abelian:2:1,1,1"), tight);
    FAIL("expected cap");
  } catch (const MorphicError& e) {
    CHECK(e.code() == ErrorCode::kOrderCapExceeded);
  }
  // Maximal subgroups still work above the enumeration cap.
  CHECK(lattice::maximal_subgroups(big).size() == 7);
}

TEST_CASE("maximal subgroups") {
  CHECK(lattice::maximal_subgroups(fam("abelian:2:2")).size() == 1);
  const auto h3 = lattice::maximal_subgroups(fam("heisenberg:3"));
  CHECK(h3.size() == 4);
  for (const auto& m : h3) CHECK(m.order() == 9);
  CHECK(lattice::maximal_subgroups(fam("abelian:2:1,1,1")).size() == 7);
}

TEST_CASE("maximal-count law and frattini cross-check over the catalog") {
  catalog::CatalogOptions opt;
  opt.product_max_order = 128;
  for (const auto& spec : catalog::builtin_catalog(opt)) {
    const FiniteGroup g = make_family(spec);
    CAPTURE(g.name());
    const int p = *g.prime();
    const int d = min_generators(g);
    const auto maxes = lattice::maximal_subgroups(g);
    CHECK(static_cast<long long>(maxes.size()) == (ipow(p, d) - 1) / (p - 1));
    // Intersection of the maximals against G'G^p.
    Subgroup meet = whole_group(g);
    for (const auto& m : maxes) {
      CHECK(m.order() * p == g.order());
      CHECK(is_normal(m));
      meet = intersect(meet, m);
    }
    CHECK(meet == frattini_subgroup(g));
  }
}

TEST_CASE("maximals agree with an oracle filter of the lattice") {
  for (const char* s : {"dihedral:16", "heisenberg:3", "abelian:2:1,2", "modular:3:4"}) {
    const FiniteGroup g = fam(s);
    const int p = *g.prime();
    std::vector<std::vector<Element>> expect;
    for (auto& h : oracle::subgroups(oracle::Table::of(g))) {
      if (static_cast<int>(h.size()) * p == g.order()) expect.push_back(h);
    }
    CHECK(lists(lattice::maximal_subgroups(g)) == expect);
  }
}

TEST_CASE("k subgroup") {
  CHECK(lattice::k_subgroup(fam("heisenberg:3")).order() == 1);
  CHECK(lattice::k_subgroup(fam("quaternion:8")).order() == 1);
  try {
    lattice::k_subgroup(fam("abelian:3:1,1"));
    FAIL("expected AbelianInput");
  } catch (const MorphicError& e) {
    CHECK(e.code() == ErrorCode::kAbelianInput);
  }
  // modular(3,4): brute-force intersection of the derived subgroups of the
  // index-p subgroups found by the oracle.
  const FiniteGroup g = fam("modular:3:4");
  const auto t = oracle::Table::of(g);
  std::vector<Element> k;
  bool first = true;
  for (auto& h : oracle::subgroups(t)) {
    if (static_cast<int>(h.size()) * 3 != g.order()) continue;
    const auto sub = oracle::sub_table(t, h);
    std::vector<Element> d;
    for (const int x : oracle::derived(sub)) d.push_back(h[x]);
    std::sort(d.begin(), d.end());
    if (first) {
      k = d;
      first = false;
    } else {
      std::vector<Element> both;
      std::set_intersection(k.begin(), k.end(), d.begin(), d.end(),
                            std::back_inserter(both));
      k = both;
    }
  }
  const Subgroup kk = lattice::k_subgroup(g);
  CHECK(kk.elements() == k);
  CHECK(is_normal(kk));
  if (lattice::derived_drops_by_p_on_maximals(g)) {
    CHECK(kk.contains(commutator_of(whole_group(g), frattini_subgroup(g))));
  }
}

}  // TEST_SUITE
