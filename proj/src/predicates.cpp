#include "morphic_lab/predicates.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "morphic_lab/error.hpp"

namespace morphic_lab::predicates {

namespace {

std::string str(long long x) { return std::to_string(x); }

void require_cap(const FiniteGroup& g, const Options& opt) {
  if (g.order() > opt.limits.order_cap) {
    throw MorphicError(ErrorCode::kOrderCapExceeded,
                       g.name() + " has order " + str(g.order()) +
                           ", above the cap " + str(opt.limits.order_cap));
  }
}

void require_p_group(const FiniteGroup& g) {
  if (!g.is_p_group()) {
    throw MorphicError(ErrorCode::kNotAPGroup,
                       g.name() + " of order " + str(g.order()) +
                           " is not a p-group");
  }
}

PredicateReport pass(const FiniteGroup& g, std::string predicate) {
  return PredicateReport{g.name(), std::move(predicate), true, {}, ""};
}

PredicateReport fail(const FiniteGroup& g, std::string predicate,
                     std::vector<Witness> w, std::string detail) {
  return PredicateReport{g.name(), std::move(predicate), false, std::move(w),
                         std::move(detail)};
}

Witness wit(std::string role, const Subgroup& s) {
  return Witness{std::move(role), s.elements()};
}

bool elementary_class(const FiniteGroup& h) {
  return is_elementary_abelian(h);
}

// Orders m of elements of g such that no quotient of g is cyclic of order m
// (equivalently m does not divide the exponent of G/G').
std::optional<Element> cyclic_subgroup_not_quotient(const FiniteGroup& g) {
  const int ab_exp =
      exponent(quotient_group(g, commutator_subgroup(g)));
  for (Element x = 0; x < g.order(); ++x) {
    if (ab_exp % g.element_order(x) != 0) return x;
  }
  return std::nullopt;
}

}  // namespace

struct Analyzer::State {
  FiniteGroup g;
  Options opt;
  iso::IsoClassifier classes;

  // Quick-pass data: maximal subgroups and quotients by central subgroups of
  // order p.
  bool quick_ready = false;
  std::vector<Subgroup> maximals;
  std::vector<int> max_cls;
  std::vector<Subgroup> minimals;
  std::vector<int> min_quo_cls;

  std::optional<std::vector<Subgroup>> normals;
  std::vector<int> n_sub;  // class of N
  std::vector<int> n_quo;  // class of G/N
  std::vector<char> n_ea;  // N or G/N elementary abelian

  std::optional<lattice::SubgroupLattice> lattice;
  std::vector<int> l_sub;

  State(FiniteGroup group, Options o)
      : g(std::move(group)), opt(o), classes(o.iso_budget) {}

  int sub_class(const Subgroup& h) { return classes.classify(subgroup_as_group(h)); }
  int quo_class(const Subgroup& n) { return classes.classify(quotient_group(g, n)); }

  void ensure_quick() {
    if (quick_ready) return;
    quick_ready = true;
    if (g.order() == 1) return;
    maximals = lattice::maximal_subgroups(g);
    for (const Subgroup& m : maximals) max_cls.push_back(sub_class(m));
    minimals = lattice::minimal_normal_subgroups(g);
    for (const Subgroup& n : minimals) min_quo_cls.push_back(quo_class(n));
  }

  void ensure_normals() {
    if (normals) return;
    normals = lattice::normal_subgroups(g, opt.limits);
    for (const Subgroup& n : *normals) {
      const FiniteGroup as_group = subgroup_as_group(n);
      const FiniteGroup quo = quotient_group(g, n);
      n_sub.push_back(classes.classify(as_group));
      n_quo.push_back(classes.classify(quo));
      n_ea.push_back(elementary_class(as_group) || elementary_class(quo));
    }
  }

  void ensure_lattice() {
    if (lattice) return;
    ensure_normals();
    lattice = lattice::all_subgroups(g, opt.limits);
    for (std::size_t i = 0; i < lattice->all.size(); ++i) {
      const Subgroup& h = lattice->all[i];
      const auto it = std::lower_bound(normals->begin(), normals->end(), h);
      if (it != normals->end() && *it == h) {
        l_sub.push_back(n_sub[it - normals->begin()]);
      } else {
        l_sub.push_back(sub_class(h));
      }
    }
  }

  // Indices of normal subgroups grouped by class.
  std::map<int, std::vector<int>> normals_by_sub_class() const {
    std::map<int, std::vector<int>> out;
    for (std::size_t i = 0; i < n_sub.size(); ++i) {
      out[n_sub[i]].push_back(static_cast<int>(i));
    }
    return out;
  }
  std::map<int, std::vector<int>> normals_by_quo_class() const {
    std::map<int, std::vector<int>> out;
    for (std::size_t i = 0; i < n_quo.size(); ++i) {
      out[n_quo[i]].push_back(static_cast<int>(i));
    }
    return out;
  }
};

Analyzer::Analyzer(FiniteGroup g, Options opt)
    : s_(std::make_unique<State>(std::move(g), opt)) {}
Analyzer::~Analyzer() = default;
Analyzer::Analyzer(Analyzer&&) noexcept = default;
Analyzer& Analyzer::operator=(Analyzer&&) noexcept = default;

PredicateReport Analyzer::morphic() {
  State& s = *s_;
  const FiniteGroup& g = s.g;
  require_p_group(g);
  require_cap(g, s.opt);
  const std::string name = "morphic";
  if (s.opt.quick_refutation) {
    // G/M = C_p = N0 always holds, so G/N0 must be isomorphic to M.
    s.ensure_quick();
    for (std::size_t i = 0; i < s.minimals.size(); ++i) {
      for (std::size_t j = 0; j < s.maximals.size(); ++j) {
        if (s.min_quo_cls[i] != s.max_cls[j]) {
          return fail(g, name,
                      {wit("N1", s.maximals[j]), wit("N2", s.minimals[i])},
                      "G/N1 is isomorphic to N2 but G/N2 is not isomorphic "
                      "to N1");
        }
      }
    }
  }
  s.ensure_normals();
  const auto& normals = *s.normals;
  const auto by_sub = s.normals_by_sub_class();
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const auto it = by_sub.find(s.n_quo[i]);
    if (it == by_sub.end()) continue;
    for (const int j : it->second) {
      if (s.n_quo[j] != s.n_sub[i]) {
        return fail(g, name, {wit("N1", normals[i]), wit("N2", normals[j])},
                    "G/N1 is isomorphic to N2 but G/N2 is not isomorphic to "
                    "N1");
      }
    }
  }
  return pass(g, name);
}

PredicateReport Analyzer::ea_morphic() {
  State& s = *s_;
  const FiniteGroup& g = s.g;
  require_p_group(g);
  require_cap(g, s.opt);
  const std::string name = "ea-morphic";
  const bool universal = s.opt.ea_reading == EaReading::kUniversal;
  if (s.opt.quick_refutation) {
    // N0 of order p qualifies, and the M with G/M = N0 are the maximals.
    s.ensure_quick();
    for (std::size_t i = 0; i < s.minimals.size(); ++i) {
      if (universal) {
        for (std::size_t j = 0; j < s.maximals.size(); ++j) {
          if (s.min_quo_cls[i] != s.max_cls[j]) {
            return fail(g, name,
                        {wit("N", s.minimals[i]), wit("M", s.maximals[j])},
                        "G/M is isomorphic to N but G/N is not isomorphic to "
                        "M");
          }
        }
      } else if (std::find(s.max_cls.begin(), s.max_cls.end(),
                           s.min_quo_cls[i]) == s.max_cls.end()) {
        return fail(g, name, {wit("N", s.minimals[i])},
                    "no normal M has G/M isomorphic to N and G/N isomorphic "
                    "to M");
      }
    }
  }
  s.ensure_normals();
  const auto& normals = *s.normals;
  const auto by_quo = s.normals_by_quo_class();
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (!s.n_ea[i]) continue;
    // Candidates M with G/M isomorphic to N.
    const auto it = by_quo.find(s.n_sub[i]);
    if (universal) {
      if (it == by_quo.end()) {
        return fail(g, name, {wit("N", normals[i])},
                    "no normal M has G/M isomorphic to N");
      }
      for (const int j : it->second) {
        if (s.n_quo[i] != s.n_sub[j]) {
          return fail(g, name, {wit("N", normals[i]), wit("M", normals[j])},
                      "G/M is isomorphic to N but G/N is not isomorphic to "
                      "M");
        }
      }
    } else {
      bool found = false;
      if (it != by_quo.end()) {
        for (const int j : it->second) {
          if (s.n_quo[i] == s.n_sub[j]) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        return fail(g, name, {wit("N", normals[i])},
                    "no normal M has G/M isomorphic to N and G/N isomorphic "
                    "to M");
      }
    }
  }
  return pass(g, name);
}

PredicateReport Analyzer::self_dual() {
  State& s = *s_;
  const FiniteGroup& g = s.g;
  require_cap(g, s.opt);
  const std::string name = "self-dual";
  if (s.opt.quick_refutation) {
    if (const auto x = cyclic_subgroup_not_quotient(g)) {
      const Element seed[] = {*x};
      return fail(g, name, {wit("H", subgroup_generated(g, seed))},
                  "the subgroup H is isomorphic to no quotient of G");
    }
  }
  s.ensure_lattice();
  const std::vector<int> quo(s.n_quo.begin(), s.n_quo.end());
  for (std::size_t i = 0; i < s.lattice->all.size(); ++i) {
    if (std::find(quo.begin(), quo.end(), s.l_sub[i]) == quo.end()) {
      return fail(g, name, {wit("H", s.lattice->all[i])},
                  "the subgroup H is isomorphic to no quotient of G");
    }
  }
  for (std::size_t i = 0; i < s.normals->size(); ++i) {
    if (std::find(s.l_sub.begin(), s.l_sub.end(), s.n_quo[i]) ==
        s.l_sub.end()) {
      return fail(g, name, {wit("N", (*s.normals)[i])},
                  "the quotient G/N is isomorphic to no subgroup of G");
    }
  }
  return pass(g, name);
}

PredicateReport Analyzer::all_max_iso() {
  State& s = *s_;
  const FiniteGroup& g = s.g;
  require_p_group(g);
  require_cap(g, s.opt);
  const std::string name = "all-max-iso";
  s.ensure_quick();
  for (std::size_t j = 1; j < s.maximals.size(); ++j) {
    if (s.max_cls[j] != s.max_cls[0]) {
      return fail(g, name, {wit("M1", s.maximals[0]), wit("M2", s.maximals[j])},
                  "maximal subgroups M1 and M2 are not isomorphic");
    }
  }
  return pass(g, name);
}

PredicateReport Analyzer::images_subgroups() {
  State& s = *s_;
  const FiniteGroup& g = s.g;
  require_cap(g, s.opt);
  const std::string name = "images-subgroups";
  if (s.opt.quick_refutation) {
    if (const auto x = cyclic_subgroup_not_quotient(g)) {
      const Element seed[] = {*x};
      return fail(g, name, {wit("H", subgroup_generated(g, seed))},
                  "the subgroup H is isomorphic to no quotient of G");
    }
  }
  s.ensure_lattice();
  for (std::size_t i = 0; i < s.lattice->all.size(); ++i) {
    if (std::find(s.n_quo.begin(), s.n_quo.end(), s.l_sub[i]) ==
        s.n_quo.end()) {
      return fail(g, name, {wit("H", s.lattice->all[i])},
                  "the subgroup H is isomorphic to no quotient of G");
    }
  }
  return pass(g, name);
}

PredicateReport Analyzer::images_quotients() {
  State& s = *s_;
  const FiniteGroup& g = s.g;
  require_cap(g, s.opt);
  const std::string name = "images-quotients";
  s.ensure_normals();
  for (std::size_t i = 0; i < s.normals->size(); ++i) {
    if (std::find(s.n_sub.begin(), s.n_sub.end(), s.n_quo[i]) ==
        s.n_sub.end()) {
      return fail(g, name, {wit("N", (*s.normals)[i])},
                  "the quotient G/N is isomorphic to no normal subgroup of G");
    }
  }
  return pass(g, name);
}

PredicateReport is_morphic(const FiniteGroup& g, const Options& opt) {
  return Analyzer(g, opt).morphic();
}
PredicateReport is_ea_morphic(const FiniteGroup& g, const Options& opt) {
  return Analyzer(g, opt).ea_morphic();
}
PredicateReport is_self_dual(const FiniteGroup& g, const Options& opt) {
  return Analyzer(g, opt).self_dual();
}
PredicateReport all_maximal_isomorphic(const FiniteGroup& g,
                                       const Options& opt) {
  return Analyzer(g, opt).all_max_iso();
}
std::pair<PredicateReport, PredicateReport> images_properties(
    const FiniteGroup& g, const Options& opt) {
  Analyzer a(g, opt);
  PredicateReport first = a.images_subgroups();
  return {std::move(first), a.images_quotients()};
}

namespace {

// Independent re-check helpers: every isomorphism question goes through a
// fresh call to the oracle, never through a classifier.
struct Rechecker {
  const FiniteGroup& g;
  const Options& opt;

  bool iso(const FiniteGroup& a, const FiniteGroup& b) const {
    return iso::are_isomorphic(a, b, opt.iso_budget).yes();
  }
  FiniteGroup quo(const Subgroup& n) const { return quotient_group(g, n); }
  static FiniteGroup sub(const Subgroup& h) { return subgroup_as_group(h); }

  // G/M isomorphic to x for some normal M.
  bool some_quotient_iso(const FiniteGroup& x) const {
    for (const Subgroup& m : lattice::normal_subgroups(g, opt.limits)) {
      if (m.order() * x.order() == g.order() && iso(quo(m), x)) return true;
    }
    return false;
  }
  bool some_subgroup_iso(const FiniteGroup& x, bool normal_only) const {
    if (normal_only) {
      for (const Subgroup& m : lattice::normal_subgroups(g, opt.limits)) {
        if (m.order() == x.order() && iso(sub(m), x)) return true;
      }
      return false;
    }
    const lattice::SubgroupLattice lat = lattice::all_subgroups(g, opt.limits);
    for (const Subgroup& h : lat.all) {
      if (h.order() == x.order() && iso(sub(h), x)) return true;
    }
    return false;
  }
};

}  // namespace

bool reverify(const FiniteGroup& g, const PredicateReport& r,
              const Options& opt) {
  if (r.verdict) return true;
  std::map<std::string, Subgroup> w;
  for (const Witness& x : r.witnesses) {
    w.emplace(x.role, Subgroup::from_elements(g, x.elements));
  }
  const Rechecker rc{g, opt};
  auto has = [&](const char* role) { return w.count(role) > 0; };
  auto normal = [&](const char* role) { return is_normal(w.at(role)); };

  if (r.predicate == "morphic") {
    if (!has("N1") || !has("N2") || !normal("N1") || !normal("N2")) return false;
    const Subgroup& n1 = w.at("N1");
    const Subgroup& n2 = w.at("N2");
    return rc.iso(rc.quo(n1), Rechecker::sub(n2)) &&
           !rc.iso(rc.quo(n2), Rechecker::sub(n1));
  }
  if (r.predicate == "ea-morphic") {
    if (!has("N") || !normal("N")) return false;
    const Subgroup& n = w.at("N");
    const FiniteGroup ng = Rechecker::sub(n);
    const FiniteGroup qn = rc.quo(n);
    if (!is_elementary_abelian(ng) && !is_elementary_abelian(qn)) return false;
    if (has("M")) {
      if (!normal("M")) return false;
      const Subgroup& m = w.at("M");
      return rc.iso(rc.quo(m), ng) && !rc.iso(qn, Rechecker::sub(m));
    }
    if (opt.ea_reading == EaReading::kUniversal) return !rc.some_quotient_iso(ng);
    for (const Subgroup& m : lattice::normal_subgroups(g, opt.limits)) {
      if (m.order() * n.order() != g.order()) continue;
      if (rc.iso(rc.quo(m), ng) && rc.iso(qn, Rechecker::sub(m))) return false;
    }
    return true;
  }
  if (r.predicate == "self-dual" || r.predicate == "images-subgroups") {
    if (has("H")) return !rc.some_quotient_iso(Rechecker::sub(w.at("H")));
    if (r.predicate == "self-dual" && has("N") && normal("N")) {
      return !rc.some_subgroup_iso(rc.quo(w.at("N")), false);
    }
    return false;
  }
  if (r.predicate == "images-quotients") {
    if (!has("N") || !normal("N")) return false;
    return !rc.some_subgroup_iso(rc.quo(w.at("N")), true);
  }
  if (r.predicate == "all-max-iso") {
    if (!has("M1") || !has("M2") || !g.prime()) return false;
    const int p = *g.prime();
    for (const char* role : {"M1", "M2"}) {
      if (w.at(role).order() * p != g.order() || !normal(role)) return false;
    }
    return !rc.iso(Rechecker::sub(w.at("M1")), Rechecker::sub(w.at("M2")));
  }
  return false;
}

TripleExtraction extract_triple(const FiniteGroup& g, int random_pairs,
                                std::uint64_t seed) {
  require_p_group(g);
  if (is_abelian(g)) {
    throw MorphicError(ErrorCode::kAbelianInput,
                       g.name() + " is abelian; there is no triple to extract");
  }
  const int p = *g.prime();
  const Subgroup phi = frattini_subgroup(g);
  const ElementarySection v = elementary_section(whole_group(g), phi, p);
  const Subgroup k = lattice::k_subgroup(g);
  const Subgroup derived = commutator_subgroup(g);
  ElementarySection w;
  try {
    w = elementary_section(derived, k, p);
  } catch (const MorphicError& e) {
    throw MorphicError(ErrorCode::kNotAbelian,
                       "G'/K is not elementary abelian for " + g.name() +
                           ": " + e.what());
  }
  triples::Triple beta(p, v.dim, w.dim);
  for (int i = 0; i < v.dim; ++i) {
    for (int j = i + 1; j < v.dim; ++j) {
      beta.set(i, j, w.coords[g.commutator(v.lifts[i], v.lifts[j])]);
    }
  }
  // Alternative coset representatives x f, y f' with f, f' in Phi(G) must
  // give the value predicted by bilinearity.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> any(0, g.order() - 1);
  std::uniform_int_distribution<int> in_phi(0, phi.order() - 1);
  for (int n = 0; n < random_pairs; ++n) {
    const Element x = any(rng);
    const Element y = any(rng);
    const Element xf = g.mul(x, phi.elements()[in_phi(rng)]);
    const Element yf = g.mul(y, phi.elements()[in_phi(rng)]);
    const auto& got = w.coords[g.commutator(xf, yf)];
    if (got != beta.apply(v.coords[x], v.coords[y])) {
      throw MorphicError(
          ErrorCode::kNotMorphicTriple,
          "the commutator map of " + g.name() +
              " is not well defined and bilinear on G/Phi(G) modulo K "
              "(elements " + str(xf) + ", " + str(yf) + ")");
    }
  }
  return TripleExtraction{g.name(), p, v.dim, w.dim, v.lifts, w.lifts, k,
                          std::move(beta), random_pairs};
}

}  // namespace morphic_lab::predicates
