#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpbound/cli.hpp"
#include "lpbound/io.hpp"

using namespace lpbound;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
  try {
    io::parse("{\n  \"cyclic_orders\": [6,]\n}", "g.json");
    FAIL("expected FormatError");
  } catch (const io::FormatError& e) {
    CHECK(std::string(e.what()).rfind("g.json:2:", 0) == 0);
  }
}

TEST_CASE("group and forbidden set round trip") {
  const auto g = io::group_from_json(io::parse(R"({"cyclic_orders":[2,3]})"));
  CHECK(g.cyclic_orders() == std::vector<int>{2, 3});
  CHECK(io::to_json(g) == io::parse(R"({"cyclic_orders":[2,3]})"));

  const auto A = io::forbidden_from_json(g, io::parse(R"({"members":[[0,1],[0,2]]})"));
  CHECK(A.members() == std::vector<std::size_t>{0, 1, 2});
  CHECK(io::forbidden_from_json(g, io::to_json(A)).members() == A.members());

  CHECK_THROWS_AS(io::group_from_json(io::parse(R"({"orders":[2]})")), io::FormatError);
  CHECK_THROWS_AS(io::forbidden_from_json(g, io::parse(R"({"members":[[0,7]]})")), io::FormatError);
}

TEST_CASE("functions and matrices round trip") {
  FiniteAbelianGroup g({3});
  GroupFunction f(g, {Complex(1, 2), Complex(-0.5, 0), Complex(0.25, -1)});
  const auto back = io::function_from_json(g, io::to_json(f));
  CHECK(back.values() == f.values());
  CHECK_THROWS_AS(io::function_from_json(g, io::parse(R"({"re":[1,2]})")), io::FormatError);

  auto m = ComplexMatrix::identity(2);
  m(0, 1) = Complex(0.0, 1.0);
  const auto mb = io::matrix_from_json(io::to_json(m));
  CHECK(mb(0, 1) == Complex(0.0, 1.0));
  CHECK(mb(1, 1) == Complex(1.0, 0.0));
}

TEST_CASE("linear programs round trip") {
  LinearProgram lp;
  lp.objective = {1, 2};
  lp.ub_rows = {{1, 1}};
  lp.ub_rhs = {3};
  lp.lower = {-std::numeric_limits<double>::infinity(), 0.0};
  lp.upper = {std::nullopt, 1.0};
  const auto back = io::lp_from_json(io::to_json(lp));
  CHECK(std::isinf(back.lower[0]));
  CHECK(back.upper[1] == 1.0);
  CHECK(solve(back).objective_value == doctest::Approx(solve(lp).objective_value));
}

TEST_CASE("cli bound") {
  const auto r = run_cli({"bound", "--group", "5", "--forbidden", "1,4"});
  CHECK(r.code == 0);
  const auto j = io::parse(r.out);
  CHECK(j["bound"].get<double>() == doctest::Approx(2.2360679775));
  CHECK(j["brute_force"]["cardinality"] == 2);
  CHECK(j["tolerances"]["tol"] == 1e-9);

  const auto t = run_cli({"bound", "--group", "2x3", "--forbidden", "0:1,0:2", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("Delsarte bound") != std::string::npos);
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli({}).code == 64);
  CHECK(run_cli({"bound"}).code == 64);
  CHECK(run_cli({"bound", "--group", "5", "--forbidden", "1"}).code == 64);
  CHECK(run_cli({"bound", "--group", "5", "--tol", "-1"}).code == 64);
  CHECK(run_cli({"bound", "--group", "5", "--format", "csv"}).code == 64);
  CHECK(run_cli({"mub"}).code == 64);

  const auto bad = temp_file("lpbound_bad_group.json", "{\"cyclic_orders\": [6,}");
  const auto r = run_cli({"bound", "--group", bad});
  CHECK(r.code == 64);
  CHECK(r.err.find(":1:") != std::string::npos);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("cli verify-witness") {
  const auto good = temp_file("lpbound_h_good.json", R"({"re":[1,0,0,0,0]})");
  CHECK(run_cli({"verify-witness", "--group", "5", "--forbidden", "1,4", "--witness", good}).code == 0);
  const auto bad = temp_file("lpbound_h_bad.json", R"({"re":[1,0,0.5,0.5,0]})");
  CHECK(run_cli({"verify-witness", "--group", "5", "--forbidden", "1,4", "--witness", bad}).code == 2);
}

TEST_CASE("cli improve and corollary") {
  auto r = run_cli({"improve", "--group", "6", "--forbidden", "1,5", "--locations", "0,3"});
  CHECK(r.code == 0);
  CHECK(io::parse(r.out)["improved"]["value"].get<double>() < 3.0);
  CHECK(run_cli({"improve", "--group", "6", "--forbidden", "1,5", "--locations", "0,2,4"}).code == 3);

  r = run_cli({"corollary", "--group", "6", "--forbidden", "1,5", "--pinned", "0,3"});
  CHECK(r.code == 0);
  CHECK(io::parse(r.out)["verdict"]["excluded"] == true);
  CHECK(run_cli({"corollary", "--group", "6", "--forbidden", "1,5", "--pinned", "0,2"}).code == 2);
}

TEST_CASE("cli mub subcommands") {
  auto r = run_cli({"mub", "certify-fab", "--a-phase", "0", "--b-phase", "0"});
  CHECK(r.code == 0);
  CHECK(io::parse(r.out)["verdict"] == true);
  CHECK(run_cli({"mub", "certify-fab", "--a-phase", "0", "--b-phase", "0"}).out == r.out);

  r = run_cli({"mub", "optimize-c"});
  CHECK(r.code == 0);
  const auto j = io::parse(r.out);
  CHECK(j["c_numeric"].get<double>() == doctest::Approx(0.8430).epsilon(1e-4));
  CHECK(j["max_lagrange_residual"].get<double>() < 1e-8);

  r = run_cli({"mub", "sweep", "--grid", "2", "--samples", "1", "--format", "csv", "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("a_phase,b_phase,verdict,margin,n_samples,worst_sample_K\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("cli oracle max-b and --out") {
  const auto path = (std::filesystem::temp_directory_path() / "lpbound_maxb.json").string();
  const auto r = run_cli({"oracle", "max-b", "--group", "6", "--forbidden", "3", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(io::read_file(path)["cardinality"] == 3);
  CHECK(run_cli({"oracle", "max-b", "--group", "30", "--forbidden", "1,29"}).code == 64);
}
