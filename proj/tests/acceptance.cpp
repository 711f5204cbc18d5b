// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "minsum/bounds.hpp"
#include "minsum/membership.hpp"
#include "minsum/oracle.hpp"
#include "support.hpp"

using namespace minsum;
using support::nonsmooth;
using support::smooth;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // <= 0: none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome predicate_oracle_equivalence() {
  const int ms[] = {2, 3, 5};
  const Eigen::Index ns[] = {2, 4};
  const double Ls[] = {5, 15};
  support::Rng rng(1001);
  int inside = 0;
  double worst = kInf;
  for (int k = 0; k < 1000; ++k) {
    const int m = ms[k % 3];
    const Eigen::Index n = ns[(k / 3) % 2];
    const double L = Ls[(k / 6) % 2];
    std::vector<Summand> s;
    for (int i = 0; i < m; ++i) s.push_back(smooth(rng.point(n, -1, 1), 1, L));
    const Scenario sc{s, std::nullopt};
    const auto mode = k % 2 ? oracle::SpectrumMode::extremal : oracle::SpectrumMode::uniform;
    const auto inst = oracle::sample_quadratic_instance(sc, static_cast<std::uint64_t>(k), mode);
    const double scale = 1 + oracle::scenario_scale(sc, inst.exact_minimizer);
    const double margin = member_m_smooth(inst.exact_minimizer, s).margin;
    worst = std::min(worst, margin / scale);
    inside += margin >= -1e-7 * scale;
  }
  return {inside == 1000, fmt("%d/1000 minimizers inside, worst margin/scale %.3g", inside, worst)};
}

Outcome prop3_vs_qp() {
  std::string detail;
  bool pass = true;
  for (const auto& [name, sc] : {std::pair{"mu2=2", support::bounded_pair()}, std::pair{"mu2=0", support::bounded_pair_mu0()}}) {
    const auto pts = oracle::sample_points({-3, 3, -3, 3}, 2, 500, 2024);
    const auto r = oracle::cross_check(sc, pts);
    pass = pass && r.ok() && r.checked == 500;
    std::size_t members = 0;
    for (const auto& p : pts) members += evaluate(sc, p).member();
    detail += fmt("%s: %zu/500 agree, %zu in band, %zu mismatches, %zu members; ", name, r.agreements,
                  r.boundary_disagreements, r.failures.size(), members);
  }
  return {pass, detail};
}

Outcome limit_consistency() {
  const Scenario sc = support::mixed_pair();
  const auto& s1 = sc.summands[0];
  const auto& s2 = sc.summands[1];
  const Summand s2_big = smooth(s2.x_star, s2.params.mu(), 1e8);
  int differ = 0;
  int out_of_band = 0;
  for (int j = 0; j < 100; ++j) {
    for (int i = 0; i < 100; ++i) {
      const Vec x = support::vec({-3 + 6 * (i + 0.5) / 100, -3 + 6 * (j + 0.5) / 100});
      const Verdict a = member_two_smooth(x, s1, s2_big);
      const Verdict b = member_smooth_nonsmooth(x, s1, s2);
      if (a.member() == b.member()) continue;
      ++differ;
      // With L2 = 1e8 the two-smooth tolerance band is wide in absolute terms; a cell is in
      // the band when either predicate calls it boundary or the limit margin is tiny.
      const double scale = 1 + oracle::scenario_scale(sc, x);
      const bool in_band = a.state == State::boundary || b.state == State::boundary ||
                           std::abs(b.margin) <= 1e-5 * scale * scale;
      out_of_band += !in_band;
    }
  }
  return {differ <= 50 && out_of_band == 0,
          fmt("%d/10000 cells differ (limit 50), %d outside the band", differ, out_of_band)};
}

Outcome triangle_degeneracy() {
  support::Rng rng(1004);
  int failures = 0;
  int boundary = 0;
  int boundary_1d = 0;
  for (int t = 0; t < 10000; ++t) {
    // In 1-D every point off the segment makes the triangle inequality tight, so the
    // verdict there is boundary; the closed set still contains it.
    const Eigen::Index n = rng.integer(1, 4);
    const Scenario sc{{smooth(rng.point(n, -5, 5), 0, rng.uniform(0.1, 100)),
                       smooth(rng.point(n, -5, 5), 0, rng.uniform(0.1, 100))},
                      std::nullopt};
    const Verdict v = evaluate(sc, rng.point(n, -1e3, 1e3));
    failures += !v.member();
    boundary += v.state == State::boundary;
    boundary_1d += v.state == State::boundary && n == 1;
  }
  return {failures == 0, fmt("%d failures in 10000 points (%d on the boundary, %d of them 1-D)", failures,
                             boundary, boundary_1d)};
}

Outcome focal_strictness() {
  support::Rng rng(1005);
  int smooth_ok = 0;
  int prop3_ok = 0;
  double min_ratio = kInf;
  for (int t = 0; t < 100; ++t) {
    const int m = rng.integer(2, 5);
    const Eigen::Index n = rng.integer(2, 3);
    std::vector<Summand> s;
    for (int i = 0; i < m; ++i) {
      const double mu = i == 0 ? rng.uniform(0.05, 2) : rng.uniform(0, 2);
      s.push_back(smooth(rng.point(n, -2, 2), mu, mu + rng.uniform(0.5, 10)));
    }
    const Vec xf = focal_point_smooth(s);
    const double eps = Tolerance{}.eps(oracle::scenario_scale(Scenario{s, std::nullopt}, xf));
    const double margin = member_m_smooth(xf, s).margin;
    min_ratio = std::min(min_ratio, margin / eps);
    smooth_ok += margin > 10 * eps;

    const Summand a = nonsmooth(s[0].x_star, s[0].params.mu());
    const Summand b = nonsmooth(s[1].x_star, s[1].params.mu());
    const std::vector<Summand> pair{a, b};
    const double B = min_bound_B(a.params.mu(), b.params.mu(), a.x_star, b.x_star) + 1e-9;
    prop3_ok += member_two_nonsmooth_bounded(focal_point_strongly_convex(pair), a, b, B).member();
  }
  return {smooth_ok == 100 && prop3_ok == 100,
          fmt("(L+mu) focal point strictly inside %d/100 (min margin %.3g eps); mu focal point in the "
              "bounded set at least B %d/100",
              smooth_ok, min_ratio, prop3_ok)};
}

Outcome bound_validity() {
  support::Rng rng(1006);
  const double kappas[] = {2, 4, 25};
  double best[3] = {0, 0, 0};
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const int k = t % 3;
    const double kappa = kappas[k];
    const int m = rng.integer(2, 5);
    const Eigen::Index n = rng.integer(2, 3);
    std::vector<Summand> s;
    for (int i = 0; i < m; ++i) s.push_back(smooth(rng.in_unit_ball(n), 1, kappa));
    const auto mode = (t / 3) % 2 ? oracle::SpectrumMode::extremal : oracle::SpectrumMode::uniform;
    const auto inst = oracle::sample_quadratic_instance(Scenario{s, std::nullopt}, static_cast<std::uint64_t>(t), mode);
    const double norm = inst.exact_minimizer.norm();
    best[k] = std::max(best[k], norm);
    violations += norm > ball_bound_smooth(kappa) + 1e-7;
  }
  return {violations == 0 && best[2] > 1.0,
          fmt("%d violations; largest norm / bound: k=2 %.4f/%.4f, k=4 %.4f/%.4f, k=25 %.4f/%.4f", violations,
              best[0], ball_bound_smooth(2), best[1], ball_bound_smooth(4), best[2], ball_bound_smooth(25))};
}

Outcome focal_containment() {
  int bad = 0;
  std::size_t members = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scenario sc = oracle::random_scenario(oracle::ScenarioFamily::two_nonsmooth_bounded, seed);
    const auto& a = sc.summands[0];
    const auto& b = sc.summands[1];
    const BoundReport rep = focal_distance_report(a.params.mu(), b.params.mu(), a.x_star, b.x_star, *sc.bound_B);
    const RegionRaster r = rasterize_region(sc, oracle::default_box(sc), 120, 120);
    for (int j = 0; j < r.ny; ++j) {
      for (int i = 0; i < r.nx; ++i) {
        if (!r.at(i, j).member()) continue;
        ++members;
        const Vec x = r.cell_center(i, j);
        const double scale = 1 + oracle::scenario_scale(sc, x);
        const double d = (x - rep.center).norm();
        worst = std::max(worst, d / std::max(rep.bound_value, 1e-300));
        bad += d > rep.bound_value + 1e-7 * scale;
      }
    }
  }
  return {bad == 0 && members > 0,
          fmt("%d of %zu member cells outside the bound; max distance/bound %.4f", bad, members, worst)};
}

Outcome interpolation_round_trip() {
  support::Rng rng(1008);
  int witnessed = 0;
  int witness_fail = 0;
  for (int t = 0; t < 100000; ++t) {
    const Eigen::Index n = rng.integer(1, 4);
    const ClassParams p = rng.smooth_params();
    const Vec x = rng.point(n, -2, 2);
    const Vec xs = rng.point(n, -2, 2);
    const Ball b = geometric_ball(x, xs, p);
    const Vec g = b.center + b.radius * rng.in_unit_ball(n);
    if (minimizer_condition_margin(x, g, xs, p) < 0) continue;
    const WitnessValues w = witness_values(x, g, xs, p);
    const std::vector<Triplet> trip{{x, g, w.f_x}, {xs, Vec::Zero(n), w.f_star}};
    ++witnessed;
    witness_fail += !check_interpolation(trip, p).member();
  }
  int sign_fail = 0;
  int infeasible = 0;
  for (int t = 0; t < 100000; ++t) {
    const Eigen::Index n = rng.integer(1, 4);
    const ClassParams p = rng.smooth_params();
    const Vec x = rng.point(n, -2, 2);
    const Vec xs = rng.point(n, -2, 2);
    const Ball b = geometric_ball(x, xs, p);
    const Vec g = b.center + rng.uniform(0, 2) * b.radius * rng.in_unit_ball(n);
    const double scalar = minimizer_condition_margin(x, g, xs, p);
    const double geometric = b.radius - (g - b.center).norm();
    infeasible += geometric < 0;
    const double eps = Tolerance{}.eps(std::max({max_abs(x), max_abs(xs), max_abs(g), p.L()}));
    if (std::abs(scalar) <= eps) continue;
    sign_fail += (scalar > 0) != (geometric > 0);
  }
  return {witness_fail == 0 && witnessed >= 90000 && sign_fail == 0,
          fmt("witness round trip %d/%d; sign disagreements %d/100000 (%d infeasible tuples)", witnessed - witness_fail,
              witnessed, sign_fail, infeasible)};
}

Outcome region_determinism() {
  std::vector<std::string> files;
  for (const char* threads : {"1", "1", "1", "8", "0"}) {
    const auto csv = support::temp_path("smooth_pair.csv").string();
    const auto svg = support::temp_path("smooth_pair.svg").string();
    const char* argv[] = {"minsum", "region", MINSUM_SCENARIO_DIR "/smooth_pair.json", "--bbox", "-3", "3", "-3", "3",
                          "--res", "200", "200", "--out", csv.c_str(), "--svg", svg.c_str(), "--threads", threads};
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run(static_cast<int>(std::size(argv)), argv, out, err) != 0) return {false, "region failed: " + err.str()};
    files.push_back(support::slurp(csv) + support::slurp(svg));
  }
  bool same = true;
  for (const auto& f : files) same = same && f == files[0];
  return {same, fmt("3 single-thread runs, 8 threads and all cores: %s (%zu bytes)", same ? "identical" : "DIFFER",
                    files[0].size())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "predicate-oracle equivalence", 10, predicate_oracle_equivalence},
      {2, "bounded two-nonsmooth vs QP oracle", 5, prop3_vs_qp},
      {3, "limit consistency L2 -> inf", 2, limit_consistency},
      {4, "triangle-inequality degeneracy", 0, triangle_degeneracy},
      {5, "focal-point strictness", 0, focal_strictness},
      {6, "ball bound validity", 0, bound_validity},
      {7, "focal-distance containment", 0, focal_containment},
      {8, "interpolation round trip", 0, interpolation_round_trip},
      {9, "region determinism", 0, region_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2fs", secs);
    if (c.time_limit_s > 0) {
      timing += fmt(" (limit %.0fs)", c.time_limit_s);
      pass = pass && secs < c.time_limit_s;
    }
    failed += !pass;
    std::printf("AC%d %s %s: %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
