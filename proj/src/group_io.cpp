#include "morphic_lab/group_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "morphic_lab/error.hpp"

namespace morphic_lab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& path,
                      const std::string& what) {
  throw MorphicError(ErrorCode::kParseError,
                     origin + ": at " + path + ": " + what);
}

const json& field(const json& doc, const std::string& origin,
                  const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) bad(origin, "/", std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_number_integer()) bad(origin, path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x > kMaxGroupOrder * 16LL) bad(origin, path, "integer out of range");
  return static_cast<int>(x);
}

std::vector<int> int_array(const json& v, const std::string& origin,
                           const std::string& path) {
  if (!v.is_array()) bad(origin, path, "expected an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_int(v[i], origin, path + "/" + std::to_string(i)));
  }
  return out;
}

}  // namespace

FiniteGroup parse_group_json(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MorphicError(ErrorCode::kParseError,
                       origin + ": at byte " + std::to_string(e.byte) + ": " +
                           e.what());
  }
  if (!doc.is_object()) bad(origin, "/", "expected a JSON object");
  const json& format = field(doc, origin, "format");
  if (!format.is_string()) bad(origin, "/format", "expected a string");
  std::string name = origin;
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) bad(origin, "/name", "expected a string");
    name = it->get<std::string>();
  }
  const std::string f = format.get<std::string>();
  if (f == "mult-table") {
    const int n = as_int(field(doc, origin, "order"), origin, "/order");
    if (n < 1 || n > kMaxGroupOrder) bad(origin, "/order", "order must be in 1..4096");
    const json& rows = field(doc, origin, "table");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
      bad(origin, "/table", "expected " + std::to_string(n) + " rows");
    }
    std::vector<Element> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      const std::string path = "/table/" + std::to_string(i);
      const auto row = int_array(rows[i], origin, path);
      if (row.size() != static_cast<std::size_t>(n)) {
        bad(origin, path, "expected " + std::to_string(n) + " entries");
      }
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] >= n) bad(origin, path + "/" + std::to_string(j), "entry out of range");
      }
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return FiniteGroup::from_flat_table(n, std::move(flat), std::move(name));
  }
  if (f == "perm-gens") {
    const int degree = as_int(field(doc, origin, "degree"), origin, "/degree");
    if (degree > 4096) bad(origin, "/degree", "degree too large");
    const json& gens = field(doc, origin, "generators");
    if (!gens.is_array()) bad(origin, "/generators", "expected an array");
    std::vector<std::vector<int>> perms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      perms.push_back(int_array(gens[i], origin, "/generators/" + std::to_string(i)));
    }
    return FiniteGroup::from_perm_generators(degree, perms, std::move(name));
  }
  bad(origin, "/format", "unknown format \"" + f + "\"");
}

FiniteGroup load_group_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MorphicError(ErrorCode::kParseError, path + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_json(buf.str(), path);
}

std::string group_to_json(const FiniteGroup& g) {
  json doc;
  doc["format"] = "mult-table";
  doc["name"] = g.name();
  doc["order"] = g.order();
  doc["table"] = g.table();
  return doc.dump();
}

}  // namespace morphic_lab
