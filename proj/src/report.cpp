#include "morphic_lab/report.hpp"

namespace morphic_lab::report {

json to_json(const fp::SubspaceFp& s) {
  return json{{"p", s.p()}, {"ambient_dim", s.ambient_dim()},
              {"dim", s.dim()}, {"basis", s.basis()}};
}

json to_json(const predicates::PredicateReport& r) {
  json j{{"group", r.group}, {"predicate", r.predicate}, {"verdict", r.verdict}};
  if (!r.verdict) {
    json w = json::object();
    for (const auto& x : r.witnesses) w[x.role] = x.elements;
    j["witness"] = std::move(w);
    j["detail"] = r.detail;
  }
  return j;
}

json to_json(const triples::Triple& t) {
  json beta = json::array();
  for (int i = 0; i < t.dim_v(); ++i) {
    for (int k = i + 1; k < t.dim_v(); ++k) {
      beta.push_back(json::array({i, k, t.value(i, k)}));
    }
  }
  return json{{"p", t.p()}, {"dimV", t.dim_v()}, {"dimW", t.dim_w()},
              {"beta", std::move(beta)}};
}

json to_json(const triples::TripleVerdict& v) {
  json j{{"is_morphic_triple", v.is_morphic_triple},
         {"degenerate", v.degenerate}};
  j["failed_condition"] =
      v.failed_condition ? json(v.failed_condition) : json(nullptr);
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return j;
}

json to_json(const triples::SearchResult& r) {
  json found = json::array();
  for (const auto& t : r.found) found.push_back(to_json(t));
  json j{{"found", std::move(found)},
         {"count", r.found.size()},
         {"examined", r.examined},
         {"space_size", static_cast<double>(r.space_size)},
         {"exhaustive", r.exhaustive},
         {"budget_exceeded", r.budget_exceeded}};
  j["note"] = r.note.empty() ? json(nullptr) : json(r.note);
  return j;
}

json to_json(const predicates::TripleExtraction& x) {
  return json{{"group", x.group},
              {"p", x.p},
              {"d", x.d},
              {"e", x.e},
              {"v_lifts", x.v_lifts},
              {"w_lifts", x.w_lifts},
              {"k", x.k.elements()},
              {"triple", to_json(x.beta)},
              {"checked_pairs", x.checked_pairs}};
}

json error_json(const MorphicError& e) {
  return json{{"error", std::string(error_code_name(e.code()))},
              {"message", e.what()}};
}

triples::Triple triple_from_json(const json& j) {
  auto bad = [](const std::string& what) -> MorphicError {
    return MorphicError(ErrorCode::kParseError, "triple: " + what);
  };
  try {
    if (!j.is_object()) throw bad("expected an object");
    for (const char* key : {"p", "dimV", "dimW", "beta"}) {
      if (!j.contains(key)) throw bad(std::string("missing field \"") + key + "\"");
    }
    triples::Triple t(j.at("p").get<int>(), j.at("dimV").get<int>(),
                      j.at("dimW").get<int>());
    for (const auto& entry : j.at("beta")) {
      if (!entry.is_array() || entry.size() != 3) {
        throw bad("beta entries are [i, j, [coords]]");
      }
      const int a = entry[0].get<int>();
      const int b = entry[1].get<int>();
      if (a >= b) throw bad("beta entries need i < j");
      t.set(a, b, entry[2].get<fp::Row>());
    }
    return t;
  } catch (const json::exception& e) {
    throw bad(e.what());
  } catch (const MorphicError& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw bad(e.what());
  }
}

}  // namespace morphic_lab::report
