#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "affsing/config.hpp"
#include "runner.hpp"

using namespace affsing;
using config::Config;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("affsing_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config files are typed") {
  auto c = Config::parse_string("# comment\nn = 3\nd = 1\nA = 355/113, sqrt(2) - 1\nt_grid = 1, 2.5\n\nseed = 7\n");
  CHECK(c.get_int("n", 0) == 3);
  CHECK(c.get_u64("seed", 0) == 7);
  CHECK(c.get_scalar_list("A", {}) == std::vector<std::string>{"355/113", "sqrt(2) - 1"});
  CHECK(c.get_real_list("t_grid", {}) == std::vector<double>{1, 2.5});
  CHECK(c.get_real("theta", 0.3) == 0.3);
  CHECK_THROWS_AS(Config::parse_string("unknown_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("n = two\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("n 3\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("A = sqrt(2\n"), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/affsing.cfg"), ConfigError);
}

TEST_CASE("canonical form and hash ignore layout") {
  auto a = Config::parse_string("n = 2\nA = 1/2 ,  1/3\n");
  auto b = Config::parse_string("A=1/2,1/3\n# x\nn=2\n");
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  auto c = a;
  c.set("seed", "2");
  CHECK(c.hash() != a.hash());
  c.erase("seed");
  CHECK(c.hash() == a.hash());
}

TEST_CASE("FNV-1a reference vectors") {
  CHECK(config::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(config::fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(config::fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("list splitting respects parentheses") {
  CHECK(config::split_list("root(8, 3), 1/2") == std::vector<std::string>{"root(8, 3)", "1/2"});
}

TEST_CASE("CSV follows RFC 4180") {
  CHECK(tools::csv_field("plain") == "plain");
  CHECK(tools::csv_field("a,b") == "\"a,b\"");
  CHECK(tools::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(tools::csv_field("two\nlines") == "\"two\nlines\"");
  tools::CsvTable t({"x", "y"});
  t.row({"1", "a,b"});
  CHECK(t.str() == "x,y\r\n1,\"a,b\"\r\n");
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(tools::num(x)) == x);
  CHECK(tools::json_num(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(tools::json_num(1.5) == 1.5);
  CHECK(tools::int_vec({3, -1, 0}) == "3 -1 0");
}

TEST_CASE("run context validation") {
  CHECK_THROWS_AS(tools::make_context(Config::parse_string("n = 2\nd = 2\n")), ConfigError);
  CHECK_THROWS_AS(tools::make_context(Config::parse_string("precision = 8\n")), ConfigError);
  CHECK_THROWS_AS(tools::make_context(Config::parse_string("theta = 0.9\n")), ConfigError);
  auto ctx = tools::make_context(Config::parse_string("n = 3\nd = 1\nA = 1/2, 1/3, 1/5, 1/7\n"));
  CHECK(ctx.dims == Dims(3, 1));
  CHECK(ctx.A().is_exact());
  CHECK_THROWS(tools::make_context(Config::parse_string("n = 3\nd = 1\nA = 1/2\n")).A());
}

TEST_CASE("runs are byte-identical and the output location is not hashed") {
  auto d1 = scratch("bound1"), d2 = scratch("bound2");
  auto cfg = Config::parse_string("omega_points = 11\n");
  cfg.set("out", d1.string());
  auto r1 = tools::run_command("bound", tools::make_context(cfg));
  cfg.set("out", d2.string());
  auto r2 = tools::run_command("bound", tools::make_context(cfg));
  CHECK(r1.summary["config_hash"] == r2.summary["config_hash"]);
  for (const auto& f : {"bound.csv", "bound.json"}) {
    REQUIRE(std::filesystem::exists(d1 / f));
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  auto csv = slurp(d1 / "bound.csv");
  CHECK(csv.rfind("omega,dim_bound,rho_bound\r\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("omega subcommand reports an exact relation") {
  auto dir = scratch("omega");
  auto cfg = Config::parse_string("A = 1/2, 1/3\nQ_max = 100\n");
  cfg.set("out", dir.string());
  auto r = tools::run_command("omega", tools::make_context(cfg));
  CHECK(r.summary["results"]["omega"] == "inf");
  std::filesystem::remove_all(dir);
}
