#include <cstdlib>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qzeta/cli.hpp"
#include "qzeta/parallel.hpp"

using namespace qzeta;
using namespace qzeta::cli;
using nlohmann::json;

namespace {

std::vector<json> run_json(const RunConfig& cfg, int& status) {
  std::ostringstream out;
  status = run(cfg, out);
  std::vector<json> rows;
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) rows.push_back(json::parse(line));
  return rows;
}

RunConfig config(Command c, std::map<std::string, std::vector<std::string>> params) {
  RunConfig cfg;
  cfg.command = c;
  cfg.params = std::move(params);
  return cfg;
}

}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("2") == Complex(2));
  CHECK(parse_complex("-0.5") == Complex(-0.5));
  CHECK(parse_complex("4+0.5i") == Complex(4, 0.5));
  CHECK(parse_complex("3-1i") == Complex(3, -1));
  CHECK(parse_complex(" 1e-3+2E2i ") == Complex(1e-3, 200));
  CHECK(parse_complex(".5") == Complex(0.5));
  for (const char* bad : {"", "i", "1+", "1+i", "abc", "1+2j", "1 + 2i", "2i", "--1"})
    CHECK_THROWS_AS(parse_complex(bad), UsageError);
}

TEST_CASE("grids and lists") {
  const std::vector<Complex> g = parse_grid("1:2:5");
  REQUIRE(g.size() == 5);
  CHECK(g[0] == Complex(1));
  CHECK(g[2] == Complex(1.5));
  CHECK(g[4] == Complex(2));
  CHECK(parse_grid("3+1i:3+1i:1") == std::vector<Complex>{Complex(3, 1)});
  CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
  CHECK_THROWS_AS(parse_grid("1:2:0"), UsageError);
  CHECK_THROWS_AS(parse_grid("1:2:x"), UsageError);
  CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "c"});
  CHECK(parse_command("f-identity") == Command::f_identity);
  CHECK(command_name(Command::sum_formula) == "sum-formula");
  CHECK_THROWS_AS(parse_command("nope"), UsageError);
}

TEST_CASE("command examples") {
  int status = -1;
  auto rows = run_json(config(Command::sum_formula, {{"k", {"5"}}, {"r", {"2"}}, {"q", {"0.5"}}}), status);
  CHECK(status == exit_ok);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["abs_diff"].get<double>() < 1e-10);
  CHECK(rows[0]["error"].is_null());

  rows = run_json(config(Command::eval, {{"index", {"0.5,0.4"}}, {"q", {"0.5"}}}), status);
  CHECK(status == exit_domain);
  CHECK(rows[0]["error"] == "out of convergence domain");
  CHECK(rows[0]["lhs"].is_null());

  rows = run_json(config(Command::theorem3, {{"s", {"2.0"}}, {"q", {"0.5"}}}), status);
  CHECK(status == exit_domain);
  CHECK(rows[0]["error"] == "pole proximity");
}

TEST_CASE("record schema is the same for every command") {
  const std::vector<RunConfig> configs = {
      config(Command::eval, {{"index", {"1,2"}}, {"q", {"0.3"}}}),
      config(Command::sum_formula, {{"k", {"4"}}, {"r", {"2"}}}),
      config(Command::theorem3, {{"s", {"3+1i"}}}),
      config(Command::theorem4, {{"b", {"2"}}, {"s", {"4.5"}}}),
      config(Command::f_identity, {{"D", {"1"}}, {"s", {"6"}}}),
      config(Command::lemmas, {{"lemma", {"lemma1", "lemma2", "dalpha", "bounds"}},
                               {"s", {"4"}},
                               {"alpha", {"2.5"}},
                               {"points", {"100"}}}),
      config(Command::limit, {{"index", {"2"}}}),
      config(Command::eval, {{"index", {"0.5,0.4"}}}),
  };
  std::set<std::string> keys;
  for (const RunConfig& cfg : configs) {
    int status = -1;
    for (const json& row : run_json(cfg, status)) {
      std::set<std::string> k;
      for (const auto& item : row.items()) k.insert(item.key());
      if (keys.empty()) keys = k;
      REQUIRE(k == keys);
      REQUIRE(row["abs_diff"].get<double>() >= 0);
      REQUIRE(row["error_estimate"].get<double>() >= 0);
      if (!row["lhs"].is_null()) {
        REQUIRE(row["lhs"].contains("re"));
        REQUIRE(row["lhs"].contains("im"));
      }
    }
  }
  for (const char* k : {"case_id", "inputs", "lhs", "rhs", "abs_diff", "error_estimate", "converged",
                        "convention_note", "error"})
    CHECK(keys.count(k) == 1);
}

TEST_CASE("exit status") {
  std::vector<Record> recs(3);
  CHECK(exit_status(recs) == exit_ok);
  recs[1].status = exit_tolerance;
  CHECK(exit_status(recs) == exit_tolerance);
  recs[0].status = exit_domain;
  CHECK(exit_status(recs) == exit_domain);
  recs[2].status = exit_usage;
  CHECK(exit_status(recs) == exit_usage);

  int status = -1;
  RunConfig tight = config(Command::sum_formula, {{"k", {"5"}}, {"r", {"2"}}});
  tight.tolerance = 0;
  tight.policy.tol = 1e-3;  // error estimate stays far below the actual difference? no: it tracks it
  run_json(tight, status);
  CHECK((status == exit_ok || status == exit_tolerance));

  // an argument error inside a case is a usage error
  run_json(config(Command::sum_formula, {{"k", {"4"}}, {"r", {"5"}}}), status);
  CHECK(status == exit_usage);
  // malformed values are rejected before anything runs
  std::ostringstream sink;
  CHECK_THROWS_AS(run(config(Command::eval, {{"index", {"1,x"}}}), sink), UsageError);
  CHECK_THROWS_AS(run(config(Command::sum_formula, {{"k", {"4.5"}}, {"r", {"2"}}}), sink), UsageError);
  CHECK_THROWS_AS(run(config(Command::sum_formula, {{"k", {"4"}}}), sink), UsageError);
  CHECK_THROWS_AS(run(config(Command::lemmas, {{"lemma", {"lemma9"}}}), sink), UsageError);
  CHECK(sink.str().empty());
}

TEST_CASE("scan cross product and ordering") {
  RunConfig cfg;
  cfg.command = Command::scan;
  cfg.scan_target = Command::theorem4;
  cfg.grids = {"b=2:3:2", "s=5.25:5.75:3"};
  cfg.params = {{"q", {"0.3", "0.5"}}};
  int status = -1;
  const auto rows = run_json(cfg, status);
  CHECK(status == exit_ok);
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i - 1]["case_id"].get<std::string>() < rows[i]["case_id"].get<std::string>());
  CHECK(rows[0]["case_id"] == "scan-theorem4-00001");
  CHECK(rows[0]["inputs"]["b"] == 2);
  CHECK(rows[11]["inputs"]["b"] == 3);
  CHECK(rows[1]["inputs"]["s"]["re"].get<double>() == 5.25);
  CHECK(rows[2]["inputs"]["s"]["re"].get<double>() == 5.5);

  cfg.grids = {"lemma=1:2:2"};
  std::ostringstream sink;
  CHECK_THROWS_AS(run(cfg, sink), UsageError);
  cfg.grids = {"b2:3:2"};
  CHECK_THROWS_AS(run(cfg, sink), UsageError);
}

TEST_CASE("reruns are identical and independent of thread count") {
  RunConfig cfg;
  cfg.command = Command::scan;
  cfg.scan_target = Command::theorem3;
  cfg.grids = {"s=2.5:4:4", "q=0.3:0.8:2"};
  std::ostringstream a, b, c;
  setenv("QZETA_MAX_THREADS", "1", 1);
  CHECK(max_threads() == 1);
  run(cfg, a);
  unsetenv("QZETA_MAX_THREADS");
  run(cfg, b);
  setenv("QZETA_MAX_THREADS", "3", 1);
  run(cfg, c);
  unsetenv("QZETA_MAX_THREADS");
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
}

TEST_CASE("csv output") {
  RunConfig cfg = config(Command::eval, {{"index", {"1,2", "3+1i"}}, {"q", {"0.5"}}});
  cfg.format = OutputFormat::csv;
  std::ostringstream out;
  CHECK(run(cfg, out) == exit_ok);
  std::istringstream in(out.str());
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(header ==
        "case_id,command,inputs,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,error_estimate,tolerance,converged,passed,"
        "convention_note,error");
  CHECK(row1.rfind("eval-00001,eval,\"index=1,2;q=0.5;cont=false\",", 0) == 0);
  CHECK(row2.rfind("eval-00002,eval,index=3+1i;q=0.5;cont=false,", 0) == 0);
}

TEST_CASE("parallel_for visits every index once") {
  setenv("QZETA_MAX_THREADS", "4", 1);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (const int h : hits) REQUIRE(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("QZETA_MAX_THREADS");
}
