#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sharpconvex/cli/figures.hpp"
#include "sharpconvex/cli/report.hpp"
#include "sharpconvex/cli/run.hpp"

using namespace sharpconvex::cli;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = invoke(args);
  REQUIRE(r.code != kExitUsage);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("git blob hash matches git hash-object") {
  CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("csv quoting and number formatting") {
  Table t{{"name", "value"}, {{"plain", 0.1}, {"a,b", 1.0}, {"say \"hi\"", Json(format_number(NAN))}, {"x\ny", true}}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "name,value\nplain,0.1\n\"a,b\",1\n\"say \"\"hi\"\"\",nan\n\"x\ny\",true\n");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("verify-theorem examples") {
  const auto j = json_of({"verify-theorem", "--n", "2", "--p", "1"});
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["summary"]["lambda"].get<double>() == 0.5);
  CHECK(j["rows"].size() == 400);

  const auto bad = invoke({"verify-theorem", "--n", "2", "--p", "1", "--lambda", "0.6", "--format", "json"});
  CHECK(bad.code == kExitFail);
  const auto jb = Json::parse(bad.out);
  CHECK(jb["summary"]["pass"] == false);
  CHECK(jb["summary"]["worst_margin"].get<double>() < 0.0);
  CHECK(jb["summary"]["witness"].get<double>() < 1.0);
  // every small radius violates the inflated constant
  for (const auto& row : jb["rows"]) {
    if (row[0].get<double>() < 0.01) CHECK(row[3].get<double>() < 0.0);
  }
}

TEST_CASE("best-lambda and r-star") {
  auto r = invoke({"best-lambda", "--n", "3", "--p", "1", "--a-grid", "0.001:1:20:log"});
  CHECK(r.code == kExitPass);
  const auto j = json_of({"best-lambda", "--n", "3", "--p", "1", "--a-grid", "0.001:1:20:log"});
  CHECK(j["summary"]["limit_at_zero"].get<double>() == Approx(2.0 / 3.0).epsilon(1e-4));

  const auto rs = json_of({"r-star", "--m", "-1", "--p", "2", "--q", "4"});
  CHECK(rs["summary"]["pass"] == true);
  CHECK(rs["summary"]["r_star"].get<double>() == Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-3));
  CHECK(rs["summary"]["label"] == "consistent with sharpness");
}

TEST_CASE("scan records failing cells and continues") {
  const auto r = invoke({"scan", "--m", "-1,0", "--p", "1", "--q", "2", "--format", "json"});
  CHECK(r.code == kExitFail);
  const auto j = Json::parse(r.out);
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0][6] != "ok");
  CHECK(j["rows"][1][6] == "ok");
  CHECK(j["summary"]["failed_cells"] == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--tol", "1"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--tol", "1e-13"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--p", "1,2"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--p", "3"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--n", "2.5"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--a-grid", "0:1:4:log"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--quad-order", "1"}).code == kExitUsage);
  CHECK(invoke({"verify-theorem", "--format", "xml"}).code == kExitUsage);
  CHECK(invoke({"r-star", "--m", "-2"}).code == kExitUsage);
  CHECK(invoke({"figures", "--which", "fig3"}).code == kExitUsage);
  CHECK(invoke({"best-lambda", "--q", "2"}).code == kExitUsage);
  const auto r = invoke({"verify-theorem", "--jobs", "0"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("reports are deterministic and hashed") {
  const std::vector<std::string> args = {"r-star", "--m", "1", "--p", "2", "--q", "4", "--format", "json"};
  const auto a = invoke(args);
  auto jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "3"});
  const auto b = invoke(jobs);
  CHECK(a.out == b.out);

  const auto s1 = invoke({"scan", "--m", "0,1", "--p", "1,2", "--q", "4", "--jobs", "1"});
  const auto s3 = invoke({"scan", "--m", "0,1", "--p", "1,2", "--q", "4", "--jobs", "3"});
  CHECK(s1.out == s3.out);

  const auto j = Json::parse(a.out);
  Report rep;
  rep.command = j["command"];
  rep.parameters = j["parameters"];
  CHECK(j["config_hash"] == config_hash(rep));
  rep.parameters["q"] = 5.0;
  CHECK(j["config_hash"] != config_hash(rep));
}

TEST_CASE("output file is written") {
  const auto dir = std::filesystem::temp_directory_path() / "sharpconvex_test_cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = (dir / "vt.csv").string();
  const auto r = invoke({"verify-theorem", "--a-grid", "0.1,1", "--out", path});
  CHECK(r.code == kExitPass);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "a,sphere_mean,bound,margin");

  CHECK(invoke({"verify-theorem", "--a-grid", "0.1", "--out", (dir / "missing" / "x.csv").string()}).code ==
        kExitFail);
  std::filesystem::remove_all(dir);
}

TEST_CASE("environment sets the default quadrature order") {
  setenv("SHARPCONVEX_QUAD_ORDER", "64", 1);
  auto j = json_of({"verify-theorem", "--a-grid", "0.5"});
  CHECK(j["parameters"]["quad_order"] == 64);
  j = json_of({"verify-theorem", "--a-grid", "0.5", "--quad-order", "128"});
  CHECK(j["parameters"]["quad_order"] == 128);
  setenv("SHARPCONVEX_QUAD_ORDER", "lots", 1);
  CHECK(invoke({"verify-theorem", "--a-grid", "0.5"}).code == kExitUsage);
  unsetenv("SHARPCONVEX_QUAD_ORDER");
}

TEST_CASE("figure one data") {
  const auto t = fig1_table();
  CHECK(t.columns == std::vector<std::string>{"p", "t", "phi", "phi_prime"});
  CHECK(t.rows.size() == 5 * 200);
  bool found = false;
  for (const auto& row : t.rows) {
    const double p = row[0].get<double>();
    const double tt = row[1].get<double>();
    CHECK(tt >= 1.0);
    CHECK(tt < 3.0 / (2.0 - p));
    if (p == 1.0 && tt == 1.0) {
      found = true;
      CHECK(row[2].get<double>() == Approx(4.0 / 3.0 - std::sqrt(5.0 / 3.0)).epsilon(1e-12));
      CHECK(row[2].get<double>() == Approx(0.04234).epsilon(1e-4));
    }
  }
  CHECK(found);
}

TEST_CASE("figure two data") {
  const auto t = fig2_table();
  CHECK(t.rows.size() == 2 * 11 * 500);
  auto value = [](const std::vector<Json>& row) {
    return row[3].is_number() ? row[3].get<double>() : std::stod(row[3].get<std::string>());
  };
  bool boundary = false;
  bool negative = false;
  bool negative_at_q1 = false;
  for (const auto& row : t.rows) {
    const double y = row[0].get<double>();
    const double q = row[1].get<double>();
    const double x = row[2].get<double>();
    if (y == 0.5 && std::abs(q - 2.0) < 1e-12 && x == 1.0) {
      boundary = true;
      CHECK(value(row) == Approx(0.0).epsilon(1e-15));
    }
    if (y == 0.3 && std::abs(q - 2.0) < 1e-12 && x >= y && x < 0.5 && value(row) < 0.0) negative = true;
    if (y == 0.3 && q == 1.0 && value(row) < 0.0) negative_at_q1 = true;
  }
  CHECK(boundary);
  CHECK(negative);
  CHECK_FALSE(negative_at_q1);
}

TEST_CASE("figures command writes both files") {
  const auto dir = std::filesystem::temp_directory_path() / "sharpconvex_test_figs";
  std::filesystem::remove_all(dir);
  const auto r = invoke({"figures", "--out", dir.string()});
  CHECK(r.code == kExitPass);
  CHECK(std::filesystem::exists(dir / "fig1.csv"));
  CHECK(std::filesystem::exists(dir / "fig2.csv"));
  CHECK(invoke({"figures", "--which", "fig2", "--format", "json", "--out", dir.string()}).code == kExitPass);
  std::ifstream f(dir / "fig2.json");
  const auto j = Json::parse(f);
  CHECK(j["rows"].size() == 11000);
  std::filesystem::remove_all(dir);
}
