#include <cstdlib>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "minsum/errors.hpp"
#include "minsum/raster.hpp"
#include "minsum/scenario_io.hpp"
#include "support.hpp"

using namespace minsum;
using nlohmann::json;
using support::scenario_dir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "minsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fig(const std::string& name) { return scenario_dir() + "/" + name + ".json"; }

}  // namespace

TEST_CASE("scenario files round trip") {
  for (const char* name : {"smooth_pair", "mixed_pair", "bounded_pair", "bounded_pair_mu0", "zero_mu", "known_quadratic"}) {
    const Scenario a = read_scenario_file(fig(name));
    const Scenario b = parse_scenario(serialize_scenario(a));
    CHECK(a == b);
    CHECK(serialize_scenario(a) == serialize_scenario(b));
  }
  support::Rng rng(71);
  for (int t = 0; t < 200; ++t) {
    Scenario sc{{support::smooth(rng.point(3, -1, 1) * 1e-3, rng.uniform(0, 1) / 3, 1 + rng.uniform(0, 1) / 7),
                 support::nonsmooth(rng.point(3, -1e5, 1e5), rng.uniform(0, 1) / 11)},
                std::nullopt};
    CHECK(parse_scenario(serialize_scenario(sc)) == sc);
  }
}

TEST_CASE("scenario parsing errors") {
  CHECK_THROWS_AS(parse_scenario("{"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[]"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": []})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": 1}]})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": 1, "L": "Infinity"}]})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": "1", "L": 2}]})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": 2, "L": 1}]})"), DomainError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": 1, "L": 2},
                                                  {"x_star": [0, 1], "mu": 1, "L": 2}]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": 1, "L": 2,
                                   "known": {"kind": "cubic", "A": [[1]], "center": [0]}}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"summands": [{"x_star": [0], "mu": 1, "L": 2}], "bound_B": 3})"),
                  UnsupportedScenario);
}

TEST_CASE("check command") {
  const Run a = run({"check", fig("smooth_pair"), std::to_string(10.0 / 22), "0"});
  CHECK(a.code == 0);
  const json j = json::parse(a.out);
  CHECK(j["state"] == "inside");
  CHECK(j["predicate_used"] == "two_smooth");
  CHECK(j["fired_conditions"].is_array());
  CHECK(j["margin"].get<double>() > 13);

  CHECK(run({"check", fig("smooth_pair"), "0", "3"}).code == 1);
  CHECK(run({"check", fig("zero_mu"), "123", "-456"}).code == 0);
  // On the x-axis the margin is 28 - 32x for x > 10/22, zero at x = 0.875.
  CHECK(run({"check", fig("smooth_pair"), "0.875", "0"}).code == 2);
  CHECK(run({"check", fig("smooth_pair"), "0", "0", "0"}).code == 65);
  CHECK(run({"check", "/nonexistent.json", "0", "0"}).code == 64);
  CHECK(run({"check", fig("smooth_pair"), "zero", "0"}).code == 64);

  const Run p3 = run({"check", fig("bounded_pair"), "0", "0"});
  CHECK(p3.code == 0);
  const json k = json::parse(p3.out);
  CHECK(k["predicate_used"] == "two_nonsmooth_bounded");
  CHECK(k["fired_conditions"][0] == "base_norms");
}

TEST_CASE("check rejects two nonsmooth summands without a bound") {
  const auto path = support::write_temp(
      "nob.json", R"({"summands": [{"x_star": [0, 0], "mu": 1, "L": "inf"}, {"x_star": [1, 0], "mu": 1, "L": "inf"}]})");
  const Run r = run({"check", path, "0", "0"});
  CHECK(r.code == 66);
  CHECK(r.err.find("unbounded") != std::string::npos);
}

TEST_CASE("predicate override") {
  const Run forced = run({"check", fig("smooth_pair"), "0.2", "0.1", "--predicate", "m_smooth"});
  CHECK(forced.code == 0);
  CHECK(json::parse(forced.out)["predicate_used"] == "m_smooth");
  CHECK(run({"check", fig("smooth_pair"), "0.2", "0.1", "--predicate", "smooth_nonsmooth"}).code == 66);
  CHECK(run({"check", fig("smooth_pair"), "0.2", "0.1", "--predicate", "bogus"}).code == 64);
}

TEST_CASE("MINSUM_TOL widens the boundary band") {
  // Margin at (0.875 + 1e-6, 0) is -3.2e-5.
  const std::vector<std::string> args{"check", fig("smooth_pair"), "0.875001", "0"};
  const int strict = run(args).code;
  setenv("MINSUM_TOL", "1e-3", 1);
  const int loose = run(args).code;
  setenv("MINSUM_TOL", "abc", 1);
  const int bad = run(args).code;
  unsetenv("MINSUM_TOL");
  CHECK(strict == 1);
  CHECK(loose == 2);
  CHECK(bad == 64);
}

TEST_CASE("region command writes CSV and SVG") {
  const auto csv = support::temp_path("r.csv").string();
  const auto svg = support::temp_path("r.svg").string();
  const Run r = run({"region", fig("mixed_pair"), "--bbox", "-3", "3", "-3", "3", "--res", "200", "200", "--out", csv,
                     "--svg", svg});
  REQUIRE(r.code == 0);
  std::istringstream in(support::slurp(csv));
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,state,margin,conditions");
  std::size_t rows = 0;
  std::size_t inside = 0;
  bool border_member = false;
  while (std::getline(in, line)) {
    const auto i = rows % 200;
    const auto j = rows / 200;
    const bool member = line.find(",inside,") != std::string::npos || line.find(",boundary,") != std::string::npos;
    inside += member;
    border_member |= member && (i == 0 || j == 0 || i == 199 || j == 199);
    ++rows;
  }
  CHECK(rows == 40000);
  CHECK(inside > 0);
  CHECK_FALSE(border_member);
  CHECK(support::slurp(svg).rfind("<svg", 0) == 0);

  const Run tiny = run({"region", fig("smooth_pair"), "--bbox", "-1", "1", "-1", "1", "--res", "2", "2", "--out", csv});
  CHECK(tiny.code == 0);
  std::istringstream t(support::slurp(csv));
  std::size_t n = 0;
  while (std::getline(t, line)) ++n;
  CHECK(n == 5);

  const auto three = support::write_temp(
      "three.json", R"({"summands": [{"x_star": [0, 0, 0], "mu": 1, "L": 2}, {"x_star": [1, 0, 0], "mu": 1, "L": 2}]})");
  CHECK(run({"region", three, "--bbox", "-1", "1", "-1", "1", "--res", "4", "4", "--out", csv}).code == 65);
  CHECK(run({"region", fig("smooth_pair"), "--bbox", "-1", "1", "-1", "--res", "4", "4", "--out", csv}).code == 64);
}

TEST_CASE("region conditions agree with check at every cell center") {
  const auto csv = support::temp_path("p3.csv").string();
  REQUIRE(run({"region", fig("bounded_pair"), "--bbox", "-3", "3", "-3", "3", "--res", "24", "24", "--out", csv}).code == 0);
  std::istringstream in(support::slurp(csv));
  std::string line;
  std::getline(in, line);
  const std::map<std::string, int> bit{{"base_norms", 1}, {"i", 2}, {"ii", 4}, {"iii", 8}};
  int cells = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string part; std::getline(ss, part, ',');) f.push_back(part);
    REQUIRE(f.size() == 5);
    const Run c = run({"check", fig("bounded_pair"), f[0], f[1]});
    const json j = json::parse(c.out);
    int bits = 0;
    for (const auto& name : j["fired_conditions"]) bits |= bit.at(name.get<std::string>());
    CHECK(j["state"] == f[2]);
    CHECK(std::to_string(bits) == f[4]);
    CHECK(std::stod(f[3]) == j["margin"].get<double>());
    ++cells;
  }
  CHECK(cells == 576);
}

TEST_CASE("region CSV is byte-identical across runs and thread counts") {
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "1", "1", "4", "0"}) {
    const auto csv = support::temp_path("det.csv").string();
    REQUIRE(run({"region", fig("smooth_pair"), "--bbox", "-3", "3", "-3", "3", "--res", "150", "120", "--out", csv,
                 "--threads", threads})
                .code == 0);
    outputs.push_back(support::slurp(csv));
  }
  for (const auto& o : outputs) CHECK(o == outputs[0]);
}

TEST_CASE("bounds command") {
  const auto path = support::write_temp("unit.json", R"({"summands": [
      {"x_star": [1, 0], "mu": 1, "L": 4}, {"x_star": [-1, 0], "mu": 1, "L": 4}, {"x_star": [0, 1], "mu": 1, "L": 4}]})");
  const Run r = run({"bounds", path});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["bounds"][0]["binding_term"] == "ball_smooth");
  CHECK(j["bounds"][0]["bound"].get<double>() == doctest::Approx(1.25));
  CHECK(j["bounds"][1]["binding_term"] == "baseline");
  CHECK(j["bounds"][1]["bound"].get<double>() == doctest::Approx(3.0));
  CHECK(j["enclosing_ball"]["radius"].get<double>() == doctest::Approx(1.0));

  const json p3 = json::parse(run({"bounds", fig("bounded_pair")}).out);
  CHECK(p3["bounds"][0]["binding_term"].get<std::string>().rfind("focal_", 0) == 0);

  const json z = json::parse(run({"bounds", fig("zero_mu")}).out);
  CHECK(z["bounds"].empty());
  CHECK(z["notes"][0].get<std::string>().find("no finite bound") != std::string::npos);
}

TEST_CASE("focal command") {
  const json j = json::parse(run({"focal", fig("smooth_pair")}).out);
  CHECK(j["smooth_focal_point"][0].get<double>() == doctest::Approx(10.0 / 22));
  CHECK(j["smooth_focal_verdict"]["state"] == "inside");
  const json k = json::parse(run({"focal", fig("bounded_pair")}).out);
  CHECK(k["strongly_convex_focal_point"][0].get<double>() == doctest::Approx(0.25 / 3.75));
  CHECK(run({"focal", fig("known_quadratic")}).code == 66);
}

TEST_CASE("verify command") {
  const Run r = run({"verify", "--random", "--family", "two-smooth", "--seeds", "100", "--points", "100"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["points_checked"] == 10000);
  CHECK(j["mismatches"] == 0);

  const Run f = run({"verify", fig("bounded_pair_mu0"), "--points", "500"});
  CHECK(f.code == 0);
  CHECK(json::parse(f.out)["points_checked"] == 500);

  CHECK(run({"verify"}).code == 64);
  CHECK(run({"verify", "--random", "--family", "nope"}).code == 64);
}

TEST_CASE("verify flags a corrupted predicate with reproduction data") {
  cli::VerifyOptions opt;
  opt.family = "smooth-nonsmooth";
  opt.seeds = 3;
  opt.points = 50;
  opt.predicate_fn = [](const Scenario& s, const Vec& x) {
    Verdict v = evaluate(s, x);
    if (v.state == State::inside) v.state = State::outside;
    return v;
  };
  const auto report = support::temp_path("report.json").string();
  opt.report_path = report;
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cli::run_verify(opt, out, err) != 0);
  const json j = json::parse(support::slurp(report));
  REQUIRE(j["failures"].size() > 0);
  const json& f = j["failures"][0];
  CHECK(f["kind"] == "cross_check");
  CHECK(f.contains("seed"));
  CHECK(f["point"].size() == 2);
  // The recorded scenario reproduces the closed-form verdict.
  const Scenario sc = parse_scenario(f["scenario"].dump());
  const Vec x = support::vec({f["point"][0].get<double>(), f["point"][1].get<double>()});
  CHECK(evaluate(sc, x).member());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"--help"}).code == 0);
}
