#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "morphic_lab/cli.hpp"

using nlohmann::json;
namespace cli = morphic_lab::cli;
namespace fs = std::filesystem;

namespace {

const std::string kData = MORPHIC_LAB_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check") {
  const Run r = run({"check", "abelian:2:1,2", "--predicate", "morphic", "--verify"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0]["predicate"] == "morphic");
  CHECK(ls[0]["verdict"] == false);
  CHECK(ls[0]["reverified"] == true);
  CHECK(ls[0]["witness"].contains("N1"));

  const Run all = run({"check", "heisenberg:3", "--predicate", "all"});
  CHECK(all.code == 0);
  for (const json& j : lines(all.out)) CHECK(j["verdict"] == true);
}

TEST_CASE("group files") {
  const Run d8 = run({"check", kData + "/groups/d8_perm.json", "--predicate", "morphic"});
  CHECK(d8.code == 0);
  CHECK(lines(d8.out)[0]["verdict"] == false);
  const Run q8 = run({"check", kData + "/groups/q8_perm.json", "--predicate", "morphic"});
  CHECK(q8.code == 0);
  CHECK(lines(q8.out)[0]["verdict"] == false);
}

TEST_CASE("exit codes") {
  CHECK(run({"check", "nosuch/file.json"}).code == 2);
  CHECK(run({"check", kData + "/mixed/truncated.json"}).code == 2);
  CHECK(run({"check", kData + "/mixed/loop5.json"}).code == 2);
  CHECK(run({"check", "heisenberg:4"}).code == 2);
  CHECK(run({"check", "bogus:1"}).code == 2);
  CHECK(run({"bogus-verb"}).code == 2);
  CHECK(run({"triple", "--from", kData + "/groups/c4_table.json"}).code == 4);
  CHECK(run({"triple", "--from", "abelian:3:1,1"}).code == 4);
  CHECK(run({"check", "dihedral:256*abelian:2:2", "--predicate", "ea-morphic"}).code == 3);
  CHECK(run({"triple", "--search", "p=2", "dimV=4", "dimW=3", "--budget", "10"}).code == 3);
  CHECK(run({"triple"}).code == 2);
  CHECK(run({"triple", "--from", "heisenberg:3", "--search", "p=2"}).code == 2);
  const Run bad = run({"check", "heisenberg:2"});
  const json e = json::parse(bad.err);
  CHECK(e["error"] == "OddPrimeRequired");
  CHECK(e.contains("message"));
}

TEST_CASE("triple verb") {
  const Run x = run({"triple", "--from", "heisenberg:3"});
  CHECK(x.code == 0);
  const json j = lines(x.out).at(0);
  CHECK(j["kind"] == "extraction");
  CHECK(j["d"] == 2);
  CHECK(j["e"] == 1);
  CHECK(j["verdict"]["is_morphic_triple"] == true);

  const Run s = run({"triple", "--search", "p=3", "dimV=2", "dimW=1"});
  CHECK(s.code == 0);
  const json sj = lines(s.out).at(0);
  CHECK(sj["found_total"] == 2);
  CHECK(sj["partial"] == false);

  const Run odd = run({"triple", "--search", "p=2", "dimV=3"});
  CHECK(odd.code == 0);
  const json oj = lines(odd.out).at(0);
  CHECK(oj["found_total"] == 0);
  CHECK(oj["reason"] == "d must be even");
  CHECK(run({"triple", "--search", "p=2"}).code == 2);
  CHECK(run({"triple", "--search", "p=2", "dimV=x"}).code == 2);
}

TEST_CASE("scan of a directory with a corrupted file") {
  const Run r = run({"scan", kData + "/mixed", "--verify"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls.front()["kind"] == "header");
  int errors = 0, rows = 0;
  for (const json& j : ls) {
    if (j["kind"] == "error") ++errors;
    if (j["kind"] == "row") ++rows;
  }
  CHECK(errors == 2);
  CHECK(rows == 1);
  CHECK(ls.back()["kind"] == "summary");
  CHECK(ls.back()["errors"] == 2);
  CHECK(ls.back()["verification"]["holds"] == true);
}

TEST_CASE("scan is deterministic and writes a report") {
  const fs::path report = fs::temp_directory_path() / "morphic_lab_cli_report.jsonl";
  const std::vector<std::string> args{"scan", "--primes", "3", "--max-order", "81",
                                      "--report", report.string()};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::ifstream in(report);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == a.out);
  const json summary = lines(a.out).back();
  CHECK(summary["morphic_classification"]["holds"] == true);
  fs::remove(report);
}

TEST_CASE("formats and version") {
  const Run f = run({"formats"});
  CHECK(f.code == 0);
  CHECK(f.out.find("mult-table") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
}

}  // TEST_SUITE
