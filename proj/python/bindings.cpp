// Python bindings. Results come back as plain dicts (the same JSON views
// the CLI prints) so they are easy to compare and serialise.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "morphic_lab/catalog.hpp"
#include "morphic_lab/cli.hpp"
#include "morphic_lab/error.hpp"
#include "morphic_lab/families.hpp"
#include "morphic_lab/group_io.hpp"
#include "morphic_lab/iso.hpp"
#include "morphic_lab/lattice.hpp"
#include "morphic_lab/predicates.hpp"
#include "morphic_lab/report.hpp"
#include "morphic_lab/triples.hpp"

namespace py = pybind11;
using namespace morphic_lab;
using report::json;

namespace {

py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

predicates::Options options(const std::string& ea_reading, long long budget) {
  predicates::Options opt;
  if (ea_reading == "existential") {
    opt.ea_reading = predicates::EaReading::kExistential;
  } else if (ea_reading != "paper") {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "ea_reading must be 'paper' or 'existential'");
  }
  opt.iso_budget = budget;
  return opt;
}

std::vector<std::vector<Element>> element_lists(const std::vector<Subgroup>& subs) {
  std::vector<std::vector<Element>> out;
  for (const Subgroup& s : subs) out.push_back(s.elements());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Morphic, ea-morphic and self-dual finite p-groups";
  m.attr("__version__") = MORPHIC_LAB_VERSION;

  // Raised as MorphicError(code_name, message).
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] {
    return py::exception<MorphicError>(m, "MorphicError", PyExc_RuntimeError);
  });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MorphicError& e) {
      const py::object& exc = error.get_stored();
      py::set_error(exc, exc(std::string(error_code_name(e.code())), e.what()));
    }
  });

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def_static("from_table", &FiniteGroup::from_mult_table, py::arg("table"),
                  py::arg("name") = "G")
      .def_static("from_perms", &FiniteGroup::from_perm_generators, py::arg("degree"),
                  py::arg("generators"), py::arg("name") = "G")
      .def_static("family",
                  [](const std::string& spec) { return make_family(parse_family_spec(spec)); },
                  py::arg("spec"))
      .def_static("load", &load_group_file, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return parse_group_json(text, "<string>"); },
                  py::arg("text"))
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("name", &FiniteGroup::name)
      .def_property_readonly("prime", &FiniteGroup::prime)
      .def("is_p_group", &FiniteGroup::is_p_group)
      .def("table", &FiniteGroup::table)
      .def("mul", &FiniteGroup::mul)
      .def("inv", &FiniteGroup::inv)
      .def("to_json", [](const FiniteGroup& g) { return to_py(json::parse(group_to_json(g))); })
      .def("__len__", &FiniteGroup::order)
      .def("__repr__", [](const FiniteGroup& g) {
        return "<FiniteGroup " + g.name() + " of order " + std::to_string(g.order()) + ">";
      });

  m.def("is_abelian", &is_abelian);
  m.def("is_homocyclic", &is_homocyclic);
  m.def("min_generators", &min_generators);
  m.def("derived_subgroup", [](const FiniteGroup& g) { return commutator_subgroup(g).elements(); });
  m.def("center", [](const FiniteGroup& g) { return center(g).elements(); });
  m.def("frattini_subgroup", [](const FiniteGroup& g) { return frattini_subgroup(g).elements(); });
  m.def("quotient", [](const FiniteGroup& g, const std::vector<Element>& n) {
    return quotient_group(g, Subgroup::from_elements(g, n));
  });
  m.def("subgroup_as_group", [](const FiniteGroup& g, const std::vector<Element>& h) {
    return subgroup_as_group(Subgroup::from_elements(g, h));
  });
  m.def("all_subgroups", [](const FiniteGroup& g) { return element_lists(lattice::all_subgroups(g).all); });
  m.def("normal_subgroups", [](const FiniteGroup& g) { return element_lists(lattice::normal_subgroups(g)); });
  m.def("maximal_subgroups", [](const FiniteGroup& g) { return element_lists(lattice::maximal_subgroups(g)); });
  m.def("k_subgroup", [](const FiniteGroup& g) { return lattice::k_subgroup(g).elements(); });

  m.def(
      "are_isomorphic",
      [](const FiniteGroup& a, const FiniteGroup& b, long long budget) {
        const iso::IsoResult r = iso::are_isomorphic(a, b, budget);
        py::dict d;
        d["isomorphic"] = r.yes();
        d["mapping"] = r.witness ? py::cast(r.witness->mapping) : py::none();
        d["refuted_by"] = r.refuted_by;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("budget") = iso::kDefaultSearchBudget);

  auto predicate = [&m](const char* name, auto fn) {
    m.def(
        name,
        [fn](const FiniteGroup& g, const std::string& ea_reading, long long budget) {
          return to_py(report::to_json(fn(g, options(ea_reading, budget))));
        },
        py::arg("g"), py::arg("ea_reading") = "paper",
        py::arg("budget") = iso::kDefaultSearchBudget);
  };
  predicate("is_morphic", predicates::is_morphic);
  predicate("is_ea_morphic", predicates::is_ea_morphic);
  predicate("is_self_dual", predicates::is_self_dual);
  predicate("all_maximal_isomorphic", predicates::all_maximal_isomorphic);
  m.def("images_properties", [](const FiniteGroup& g) {
    const auto [a, b] = predicates::images_properties(g);
    return py::make_tuple(to_py(report::to_json(a)), to_py(report::to_json(b)));
  });
  m.def("reverify", [](const FiniteGroup& g, const py::dict& rep) {
    predicates::PredicateReport r;
    r.predicate = rep["predicate"].cast<std::string>();
    r.verdict = rep["verdict"].cast<bool>();
    if (rep.contains("witness")) {
      for (auto [role, elems] : rep["witness"].cast<py::dict>()) {
        r.witnesses.push_back({role.cast<std::string>(), elems.cast<std::vector<Element>>()});
      }
    }
    return predicates::reverify(g, r);
  });

  m.def("extract_triple", [](const FiniteGroup& g) {
    return to_py(report::to_json(predicates::extract_triple(g)));
  });
  m.def("verify_morphic_triple", [](const py::object& t) {
    return to_py(report::to_json(triples::verify_morphic_triple(report::triple_from_json(from_py(t)))));
  });
  m.def("zset_size", [](const py::object& t) {
    return triples::zset(report::triple_from_json(from_py(t))).size();
  });
  m.def(
      "search_triples",
      [](int p, int dim_v, int dim_w, long long budget, const std::string& mode,
         std::uint64_t seed) {
        const auto sm = mode == "sampled" ? triples::SearchMode::kSampled
                                          : triples::SearchMode::kExhaustive;
        return to_py(report::to_json(triples::search_triples(p, dim_v, dim_w, budget, sm, seed)));
      },
      py::arg("p"), py::arg("dim_v"), py::arg("dim_w"), py::arg("budget") = 1000000,
      py::arg("mode") = "exhaustive", py::arg("seed") = 1);

  m.def("catalog", [](bool include_products) {
    catalog::CatalogOptions opt;
    opt.include_products = include_products;
    std::vector<std::string> out;
    for (const auto& s : catalog::builtin_catalog(opt)) out.push_back(s.to_spec_string());
    return out;
  }, py::arg("include_products") = true);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
