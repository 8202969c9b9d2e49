#pragma once

// JSON views of the library's results. nlohmann::json keeps object keys
// sorted, so dumps are byte-for-byte deterministic.

#include "json.hpp"
#include "morphic_lab/error.hpp"
#include "morphic_lab/fp_linalg.hpp"
#include "morphic_lab/predicates.hpp"
#include "morphic_lab/triples.hpp"

namespace morphic_lab::report {

using nlohmann::json;

json to_json(const fp::SubspaceFp& s);
json to_json(const predicates::PredicateReport& r);
json to_json(const triples::Triple& t);
json to_json(const triples::TripleVerdict& v);
json to_json(const triples::SearchResult& r);
json to_json(const predicates::TripleExtraction& x);
json error_json(const MorphicError& e);

// {"p":..,"dimV":..,"dimW":..,"beta":[[i,j,[coords]],...]}; positions not
// listed are zero. Throws kParseError.
triples::Triple triple_from_json(const json& j);

}  // namespace morphic_lab::report
