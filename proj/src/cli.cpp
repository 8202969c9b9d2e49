#include "morphic_lab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "morphic_lab/catalog.hpp"
#include "morphic_lab/families.hpp"
#include "morphic_lab/group_io.hpp"
#include "morphic_lab/lattice.hpp"
#include "morphic_lab/predicates.hpp"
#include "morphic_lab/report.hpp"
#include "morphic_lab/triples.hpp"

namespace morphic_lab::cli {

namespace {

using report::json;
namespace fs = std::filesystem;

constexpr long long kDefaultTripleBudget = 1'000'000;

struct Flags {
  std::string predicate = "all";
  std::string report_path;
  bool verify = false;
  long long budget = -1;  // verb-specific default when negative
  int cap = lattice::kFullEnumerationOrderCap;
  std::string ea_reading = "paper";
};

predicates::Options make_options(const Flags& f) {
  predicates::Options opt;
  if (f.budget >= 0) opt.iso_budget = f.budget;
  opt.limits.order_cap = f.cap;
  opt.ea_reading = f.ea_reading == "existential"
                       ? predicates::EaReading::kExistential
                       : predicates::EaReading::kUniversal;
  return opt;
}

// Writes JSON lines to stdout and, with --report, to a file as well.
class Sink {
 public:
  Sink(std::ostream& out, const std::string& path) : out_(out) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) {
        throw MorphicError(ErrorCode::kParseError,
                           "cannot write report file " + path);
      }
    }
  }
  void line(const json& j) {
    const std::string s = j.dump();
    out_ << s << '\n';
    if (file_.is_open()) file_ << s << '\n';
  }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

int thread_count() {
  if (const char* env = std::getenv("MORPHIC_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// ---------------------------------------------------------------- check

const std::vector<std::string> kAllPredicates = {
    "morphic", "ea-morphic", "self-dual", "all-max-iso", "images"};

bool needs_p_group(const std::string& predicate) {
  return predicate == "morphic" || predicate == "ea-morphic" ||
         predicate == "all-max-iso";
}

std::vector<predicates::PredicateReport> evaluate(predicates::Analyzer& a,
                                                  const std::string& pred) {
  if (pred == "morphic") return {a.morphic()};
  if (pred == "ea-morphic") return {a.ea_morphic()};
  if (pred == "self-dual") return {a.self_dual()};
  if (pred == "all-max-iso") return {a.all_max_iso()};
  return {a.images_subgroups(), a.images_quotients()};
}

int cmd_check(const std::string& source, const Flags& flags,
              std::ostream& out) {
  const FiniteGroup g = resolve_source(source);
  const predicates::Options opt = make_options(flags);
  predicates::Analyzer analyzer(g, opt);
  Sink sink(out, flags.report_path);
  const std::vector<std::string> preds =
      flags.predicate == "all" ? kAllPredicates
                               : std::vector<std::string>{flags.predicate};
  bool verify_failed = false;
  for (const std::string& pred : preds) {
    if (flags.predicate == "all" && needs_p_group(pred) && !g.is_p_group()) {
      sink.line(json{{"group", g.name()},
                     {"predicate", pred},
                     {"verdict", nullptr},
                     {"note", "requires a p-group"}});
      continue;
    }
    for (const auto& r : evaluate(analyzer, pred)) {
      json j = report::to_json(r);
      if (flags.verify && !r.verdict) {
        const bool ok = predicates::reverify(g, r, opt);
        j["reverified"] = ok;
        verify_failed = verify_failed || !ok;
      }
      sink.line(j);
    }
  }
  return verify_failed ? kExitInternal : kExitOk;
}

// ----------------------------------------------------------------- scan

struct ScanItem {
  std::string source;
  std::optional<GroupFamilySpec> spec;  // else `source` is a file
};

struct ScanResult {
  std::optional<json> row;
  std::optional<json> error;
  bool budget_error = false;
  std::vector<std::string> verify_failures;
};

json triple_summary(const FiniteGroup& g) {
  try {
    const predicates::TripleExtraction x = predicates::extract_triple(g);
    const triples::TripleVerdict v = triples::verify_morphic_triple(x.beta);
    json j{{"d", x.d},
           {"e", x.e},
           {"verified", v.is_morphic_triple},
           {"degenerate", v.degenerate},
           {"dim_bound", x.e >= x.d - 1}};
    if (v.is_morphic_triple && !v.degenerate) {
      j["zset_size"] = triples::zset(x.beta).size();
      bool spread_ok = true;
      for (const auto& u : fp::enumerate_maximal_subspaces(x.d, x.p)) {
        spread_ok = spread_ok &&
                    static_cast<int>(triples::spread(x.beta, u).size()) == x.p + 1;
      }
      j["spread_ok"] = spread_ok;
    }
    return j;
  } catch (const MorphicError& e) {
    if (e.code() == ErrorCode::kSearchBudgetExceeded) throw;
    return report::error_json(e);
  }
}

ScanResult scan_one(const ScanItem& item, const Flags& flags) {
  ScanResult res;
  const predicates::Options opt = make_options(flags);
  try {
    const FiniteGroup g = item.spec ? make_family(*item.spec)
                                    : load_group_file(item.source);
    const bool pgroup = g.is_p_group();
    const bool abelian = is_abelian(g);
    json row{{"kind", "row"},
             {"source", item.source},
             {"name", g.name()},
             {"order", g.order()},
             {"abelian", abelian}};
    row["p"] = g.prime() ? json(*g.prime()) : json(nullptr);
    row["d"] = pgroup ? json(min_generators(g)) : json(nullptr);
    row["homocyclic"] = pgroup && abelian && is_homocyclic(g);
    row["expected_morphic"] = catalog::expected_morphic(g);
    json notes = json::array();
    json witnesses = json::object();
    predicates::Analyzer a(g, opt);
    auto eval = [&](const char* key, auto fn) {
      try {
        const predicates::PredicateReport r = fn();
        row[key] = r.verdict;
        if (!r.verdict) {
          witnesses[key] = report::to_json(r)["witness"];
          if (flags.verify && !predicates::reverify(g, r, opt)) {
            res.verify_failures.push_back(g.name() + ": " + key);
          }
        }
      } catch (const MorphicError& e) {
        if (e.code() != ErrorCode::kOrderCapExceeded &&
            e.code() != ErrorCode::kNotAPGroup) {
          throw;
        }
        row[key] = nullptr;
        notes.push_back(std::string(key) + " skipped: " + e.what());
      }
    };
    eval("morphic", [&] { return a.morphic(); });
    eval("ea_morphic", [&] { return a.ea_morphic(); });
    eval("all_max_iso", [&] { return a.all_max_iso(); });
    eval("self_dual", [&] { return a.self_dual(); });
    row["triple"] = nullptr;
    if (!abelian && row["ea_morphic"] == json(true)) {
      row["triple"] = triple_summary(g);
    }
    row["witness"] = std::move(witnesses);
    row["notes"] = std::move(notes);
    if (flags.verify) row["reverified"] = res.verify_failures.empty();
    res.row = std::move(row);
  } catch (const MorphicError& e) {
    json err = report::error_json(e);
    err["kind"] = "error";
    err["source"] = item.source;
    res.error = std::move(err);
    res.budget_error = e.code() == ErrorCode::kSearchBudgetExceeded ||
                       e.code() == ErrorCode::kBudgetExceeded;
  }
  return res;
}

json scan_summary(const std::vector<json>& rows, std::size_t errors,
                  const std::vector<std::string>& verify_failures,
                  bool verify) {
  json morphic_disc = json::array(), two_gen_disc = json::array();
  json unevaluated = json::array(), ea_not_self_dual = json::array();
  json self_dual_unknown = json::array();
  int morphic = 0, ea = 0, self_dual = 0, nonabelian_ea = 0;
  for (const json& r : rows) {
    const std::string name = r["name"];
    if (r["morphic"].is_null()) {
      unevaluated.push_back(name);
    } else {
      const bool m = r["morphic"];
      morphic += m;
      if (m != r["expected_morphic"].get<bool>()) morphic_disc.push_back(name);
    }
    if (r["self_dual"] == json(true)) ++self_dual;
    if (r["ea_morphic"] == json(true)) {
      ++ea;
      if (r["self_dual"] == json(false)) ea_not_self_dual.push_back(name);
      if (r["self_dual"].is_null()) self_dual_unknown.push_back(name);
      if (!r["abelian"].get<bool>()) {
        ++nonabelian_ea;
        if (r["d"] != json(2)) two_gen_disc.push_back(name);
      }
    }
  }
  json s{{"kind", "summary"},
         {"groups", rows.size()},
         {"errors", errors},
         {"counts",
          {{"morphic", morphic},
           {"ea_morphic", ea},
           {"self_dual", self_dual},
           {"nonabelian_ea_morphic", nonabelian_ea}}},
         {"morphic_classification",
          {{"holds", morphic_disc.empty()},
           {"discrepancies", morphic_disc},
           {"unevaluated", unevaluated}}},
         {"ea_morphic_two_generated",
          {{"holds", two_gen_disc.empty()},
           {"vacuous", nonabelian_ea == 0},
           {"discrepancies", two_gen_disc}}},
         {"ea_morphic_not_self_dual",
          {{"found", ea_not_self_dual}, {"self_dual_unknown", self_dual_unknown}}}};
  if (verify) {
    s["verification"] = {{"holds", verify_failures.empty()},
                         {"failures", verify_failures}};
  }
  return s;
}

int cmd_scan(const std::string& dir, const Flags& flags,
             const catalog::CatalogOptions& copt, std::ostream& out) {
  std::vector<ScanItem> items;
  std::string description;
  if (dir.empty()) {
    for (auto& spec : catalog::builtin_catalog(copt)) {
      items.push_back(ScanItem{spec.to_spec_string(), spec});
    }
    description = catalog::describe(copt);
  } else {
    if (!fs::is_directory(dir)) {
      throw MorphicError(ErrorCode::kParseError, dir + " is not a directory");
    }
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
    for (auto& f : files) items.push_back(ScanItem{std::move(f), std::nullopt});
    description = "directory: " + dir;
  }

  std::vector<ScanResult> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      results[i] = scan_one(items[i], flags);
    }
  };
  const int n_threads =
      std::min<int>(thread_count(), std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Sink sink(out, flags.report_path);
  sink.line(json{{"kind", "header"},
                 {"version", MORPHIC_LAB_VERSION},
                 {"catalog", description},
                 {"ea_reading", flags.ea_reading},
                 {"cap", flags.cap}});
  std::vector<json> rows;
  std::vector<std::string> verify_failures;
  std::size_t errors = 0;
  bool budget = false;
  for (const ScanResult& r : results) {
    if (r.row) {
      sink.line(*r.row);
      rows.push_back(*r.row);
    }
    if (r.error) {
      sink.line(*r.error);
      ++errors;
    }
    budget = budget || r.budget_error;
    verify_failures.insert(verify_failures.end(), r.verify_failures.begin(),
                           r.verify_failures.end());
  }
  sink.line(scan_summary(rows, errors, verify_failures, flags.verify));
  if (budget) return kExitBudget;
  if (!verify_failures.empty()) return kExitInternal;
  return kExitOk;
}

// --------------------------------------------------------------- triple

int cmd_triple_from(const std::string& source, const Flags& flags,
                    std::ostream& out) {
  const FiniteGroup g = resolve_source(source);
  const predicates::TripleExtraction x = predicates::extract_triple(g);
  const triples::TripleVerdict v = triples::verify_morphic_triple(x.beta);
  json doc = report::to_json(x);
  doc["kind"] = "extraction";
  doc["verdict"] = report::to_json(v);
  doc["spread_counts"] = nullptr;
  doc["zset_size"] = nullptr;
  doc["dim_bound"] = x.e >= x.d - 1;
  if (v.is_morphic_triple && !v.degenerate) {
    json counts = json::array();
    for (const auto& u : fp::enumerate_maximal_subspaces(x.d, x.p)) {
      counts.push_back(triples::spread(x.beta, u).size());
    }
    doc["spread_counts"] = std::move(counts);
    doc["zset_size"] = triples::zset(x.beta).size();
    doc["dim_bound"] = triples::check_dim_bound(x.beta);
  }
  Sink(out, flags.report_path).line(doc);
  return kExitOk;
}

int parse_kv_int(const std::map<std::string, std::string>& kv,
                 const std::string& key) {
  const auto it = kv.find(key);
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw MorphicError(ErrorCode::kParseError,
                       "search parameter " + key + "=" + it->second +
                           " is not an integer");
  }
}

// Checks the spread, T(U) and Z laws on a found triple; throws on failure.
void check_triple_laws(const triples::Triple& t) {
  const auto hyperplanes = fp::enumerate_maximal_subspaces(t.dim_v(), t.p());
  for (const auto& u : hyperplanes) {
    if (static_cast<int>(triples::spread(t, u).size()) != t.p() + 1) {
      throw MorphicError(ErrorCode::kInternalConsistency,
                         "spread size differs from p + 1");
    }
  }
  triples::zset(t);
  triples::check_dim_bound(t);
}

int cmd_triple_search(const std::vector<std::string>& params,
                      const Flags& flags, std::ostream& out) {
  std::map<std::string, std::string> kv;
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw MorphicError(ErrorCode::kParseError,
                         "search parameters are key=value, got \"" + p + "\"");
    }
    kv[p.substr(0, eq)] = p.substr(eq + 1);
  }
  for (const auto& [k, v] : kv) {
    if (k != "p" && k != "dimV" && k != "dimW" && k != "mode" && k != "seed") {
      throw MorphicError(ErrorCode::kParseError, "unknown search parameter " + k);
    }
  }
  for (const char* key : {"p", "dimV"}) {
    if (!kv.count(key)) {
      throw MorphicError(ErrorCode::kParseError,
                         std::string("search needs ") + key + "=...");
    }
  }
  const int p = parse_kv_int(kv, "p");
  const int d = parse_kv_int(kv, "dimV");
  if (!fp::is_prime(p) || d < 1 || d > 8) {
    throw MorphicError(ErrorCode::kParameterOutOfRange,
                       "search needs a prime p and 1 <= dimV <= 8");
  }
  triples::SearchMode mode = triples::SearchMode::kExhaustive;
  if (kv.count("mode")) {
    if (kv["mode"] == "sampled") {
      mode = triples::SearchMode::kSampled;
    } else if (kv["mode"] != "exhaustive") {
      throw MorphicError(ErrorCode::kParseError,
                         "mode must be exhaustive or sampled");
    }
  }
  const std::uint64_t seed = kv.count("seed") ? parse_kv_int(kv, "seed") : 1;
  const long long budget = flags.budget >= 0 ? flags.budget : kDefaultTripleBudget;
  std::vector<int> dims;
  if (kv.count("dimW")) {
    dims.push_back(parse_kv_int(kv, "dimW"));
  } else {
    for (int e = 0; e <= d * (d - 1) / 2; ++e) dims.push_back(e);
  }
  json runs = json::array();
  std::size_t total = 0;
  bool partial = false;
  std::string reason;
  for (const int e : dims) {
    const triples::SearchResult r =
        triples::search_triples(p, d, e, budget, mode, seed);
    for (const auto& t : r.found) check_triple_laws(t);
    json j = report::to_json(r);
    j["dimW"] = e;
    runs.push_back(std::move(j));
    total += r.found.size();
    partial = partial || r.budget_exceeded;
    if (reason.empty() && !r.note.empty()) reason = r.note;
  }
  if (total > 0) {
    reason.clear();
  } else if (reason.empty()) {
    reason = partial ? "none found in the examined part of the space"
                     : "no morphic triple exists with these parameters";
  }
  json doc{{"kind", "search"},
           {"p", p},
           {"dimV", d},
           {"mode", mode == triples::SearchMode::kExhaustive ? "exhaustive"
                                                             : "sampled"},
           {"budget", budget},
           {"runs", std::move(runs)},
           {"found_total", total},
           {"partial", partial}};
  doc["reason"] = reason.empty() ? json(nullptr) : json(reason);
  Sink(out, flags.report_path).line(doc);
  return partial ? kExitBudget : kExitOk;
}

void add_common(CLI::App* cmd, Flags& flags, bool with_predicate) {
  if (with_predicate) {
    cmd->add_option("--predicate", flags.predicate, "Predicate to evaluate")
        ->check(CLI::IsMember({"morphic", "ea-morphic", "self-dual",
                               "all-max-iso", "images", "all"}));
  }
  cmd->add_option("--report", flags.report_path,
                  "Also write the JSON output to this file");
  cmd->add_option("--budget", flags.budget,
                  "Search budget (isomorphism assignments, or tensors for "
                  "triple search)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--cap", flags.cap, "Order cap for full lattice enumeration")
      ->check(CLI::Range(1, kMaxGroupOrder));
  cmd->add_option("--ea-reading", flags.ea_reading,
                  "Quantifier reading of the ea-morphic condition")
      ->check(CLI::IsMember({"paper", "existential"}));
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kNotAssociative:
    case ErrorCode::kNoIdentity:
    case ErrorCode::kNoInverse:
    case ErrorCode::kNotAPermutation:
    case ErrorCode::kParameterOutOfRange:
    case ErrorCode::kOddPrimeRequired:
    case ErrorCode::kDimensionMismatch:
      return kExitInput;
    case ErrorCode::kClosureExceedsCap:
    case ErrorCode::kOrderCapExceeded:
    case ErrorCode::kSearchBudgetExceeded:
    case ErrorCode::kBudgetExceeded:
      return kExitBudget;
    case ErrorCode::kNotAPGroup:
    case ErrorCode::kNotAbelian:
    case ErrorCode::kAbelianInput:
    case ErrorCode::kNotNormal:
    case ErrorCode::kParentMismatch:
    case ErrorCode::kAOnU:
    case ErrorCode::kNotMaximal:
    case ErrorCode::kNotMorphicTriple:
      return kExitPrecondition;
    case ErrorCode::kInternalConsistency:
      return kExitInternal;
  }
  return kExitInternal;
}

FiniteGroup resolve_source(const std::string& source) {
  std::error_code ec;
  if (fs::is_regular_file(source, ec) || source.ends_with(".json") ||
      source.find('/') != std::string::npos) {
    return load_group_file(source);
  }
  return make_family(parse_family_spec(source));
}

const char* formats_text() {
  return R"(Group sources
  A family spec or a path to a group file.

Family specs
  abelian:P:E1,E2,...      C_{P^E1} x C_{P^E2} x ...        e.g. abelian:2:1,2
  heisenberg:P             unitriangular 3x3 over F_P, P odd <= 7
  dihedral:N               dihedral group of order N = 2^n, 4 <= N <= 256
  quaternion:N             generalised quaternion, 8 <= N <= 256
  semidihedral:N           semidihedral, 16 <= N <= 256
  modular:P:N              <a,b | a^(P^(N-1)) = b^P = 1, a^b = a^(1+P^(N-2))>,
                           N >= 3, P^N <= 2401
  A*B                      direct product, e.g. heisenberg:3*abelian:3:1

Group files (JSON)
  {"format":"mult-table","name":"C2","order":2,"table":[[0,1],[1,0]]}
      row i, column j holds i*j; element 0 must be the identity.
  {"format":"perm-gens","name":"D8","degree":4,"generators":[[1,2,3,0],[0,3,2,1]]}
      each generator lists the images of 0..degree-1; x*y applies x first.

Triple JSON
  {"p":3,"dimV":2,"dimW":1,"beta":[[0,1,[1]]]}
      beta(e_i, e_j) for i < j; unlisted pairs are zero.

Output
  check and scan print JSON Lines; scan ends with a {"kind":"summary"} line.
  Errors go to stderr as {"error":NAME,"message":TEXT}.

Exit codes
  0 ok, 1 internal inconsistency, 2 malformed input, 3 cap or budget
  exceeded, 4 unmet precondition.

Environment
  MORPHIC_LAB_THREADS  number of scan worker threads.
)";
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Morphic and self-dual p-group laboratory", "morphic-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MORPHIC_LAB_VERSION);

  Flags flags;
  std::string source;
  CLI::App* check = app.add_subcommand("check", "Evaluate predicates on a group");
  check->add_option("source", source, "Family spec or group file")->required();
  check->add_flag("--verify", flags.verify, "Re-verify every FALSE witness");
  add_common(check, flags, true);

  std::string dir;
  catalog::CatalogOptions copt;
  CLI::App* scan = app.add_subcommand("scan", "Scan a catalog of groups");
  scan->add_option("dir", dir, "Directory of group files (default: built-in catalog)");
  scan->add_flag("--verify", flags.verify, "Re-verify every FALSE witness");
  scan->add_option("--primes", copt.primes, "Primes of the built-in catalog")
      ->delimiter(',');
  scan->add_option("--max-order", copt.product_max_order,
                   "Largest direct product in the built-in catalog");
  scan->add_flag("!--no-products", copt.include_products,
                 "Leave direct products out of the built-in catalog");
  add_common(scan, flags, false);

  std::string from;
  std::vector<std::string> search;
  CLI::App* triple = app.add_subcommand("triple", "Extract or search morphic triples");
  auto* from_opt = triple->add_option("--from", from, "Group to extract the triple from");
  auto* search_opt = triple->add_option(
      "--search", search, "Search parameters: p=P dimV=D [dimW=E] [mode=exhaustive|sampled] [seed=S]");
  from_opt->excludes(search_opt);
  add_common(triple, flags, false);

  app.add_subcommand("formats", "Describe input and output formats");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) return cmd_check(source, flags, out);
    if (*scan) return cmd_scan(dir, flags, copt, out);
    if (*triple) {
      if (from.empty() && search.empty()) {
        err << "triple: one of --from or --search is required\n";
        return kExitInput;
      }
      return from.empty() ? cmd_triple_search(search, flags, out)
                          : cmd_triple_from(from, flags, out);
    }
    out << formats_text();
    return kExitOk;
  } catch (const MorphicError& e) {
    err << report::error_json(e).dump() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace morphic_lab::cli
