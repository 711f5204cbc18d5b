#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "minsum/bounds.hpp"
#include "minsum/errors.hpp"
#include "minsum/raster.hpp"
#include "minsum/scenario_io.hpp"

namespace minsum::cli {

namespace {

using nlohmann::json;

json real_json(double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "-inf"); }

json vec_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

json fired_json(ConditionSet c) {
  json out = json::array();
  if (c.has(ConditionSet::base_norms)) out.push_back("base_norms");
  if (c.has(ConditionSet::clause_i)) out.push_back("i");
  if (c.has(ConditionSet::clause_ii)) out.push_back("ii");
  if (c.has(ConditionSet::clause_iii)) out.push_back("iii");
  return out;
}

json verdict_json(const Verdict& v) {
  return {{"state", std::string(to_string(v.state))},
          {"margin", real_json(v.margin)},
          {"fired_conditions", fired_json(v.fired)}};
}

std::optional<Predicate> predicate_option(const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  const auto p = parse_predicate(*name);
  if (!p) throw ParseError("unknown predicate \"" + *name + "\"");
  return p;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return exit_dimension;
  } catch (const UnsupportedScenario& e) {
    err << "error: " << e.what() << '\n';
    return exit_unsupported;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse;
  } catch (const CoincidentPoints& e) {
    err << "error: " << e.what() << '\n';
    return exit_unsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_internal;
  }
}

}  // namespace

Tolerance tolerance_from_env() {
  Tolerance tol;
  if (const char* s = std::getenv("MINSUM_TOL"); s != nullptr && *s != '\0') {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v >= 0.0) || !std::isfinite(v)) {
      throw ParseError(std::string("MINSUM_TOL is not a non-negative number: ") + s);
    }
    tol.rel = v;
  }
  return tol;
}

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Tolerance tol = tolerance_from_env();
    const Scenario sc = read_scenario_file(opt.scenario_path);
    const auto forced = predicate_option(opt.predicate);
    Vec x = Eigen::Map<const Vec>(opt.point.data(), static_cast<Eigen::Index>(opt.point.size()));
    if (x.size() != sc.dim()) {
      throw DimensionMismatch("point has dimension " + std::to_string(x.size()) +
                              ", scenario has dimension " + std::to_string(sc.dim()));
    }
    const Predicate p = forced ? *forced : route(sc);
    const Verdict v = evaluate(sc, x, p, tol);
    json doc = verdict_json(v);
    doc["predicate_used"] = std::string(to_string(p));
    out << doc.dump() << '\n';
    switch (v.state) {
      case State::inside:
        return int(exit_inside);
      case State::boundary:
        return int(exit_boundary);
      case State::outside:
        break;
    }
    return int(exit_outside);
  });
}

int run_region(const RegionOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RasterOptions ropt;
    ropt.tol = tolerance_from_env();
    ropt.predicate = predicate_option(opt.predicate);
    ropt.threads = opt.threads;
    const Scenario sc = read_scenario_file(opt.scenario_path);
    const auto& b = opt.bbox;
    const RegionRaster raster = rasterize_region(sc, BoundingBox{b[0], b[1], b[2], b[3]}, opt.nx, opt.ny, ropt);
    {
      std::ofstream csv(opt.csv_path, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot write " + opt.csv_path);
      write_csv(raster, csv);
    }
    if (opt.svg_path) {
      std::ofstream svg(*opt.svg_path, std::ios::binary);
      if (!svg) throw std::runtime_error("cannot write " + *opt.svg_path);
      write_svg(raster, svg);
    }
    std::size_t inside = 0;
    for (const auto& c : raster.cells) inside += c.member() ? 1 : 0;
    out << json{{"predicate_used", std::string(to_string(raster.predicate))},
                {"cells", raster.cells.size()},
                {"member_cells", inside},
                {"csv", opt.csv_path}}
               .dump()
        << '\n';
    return 0;
  });
}

int run_bounds(const std::string& scenario_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Tolerance tol = tolerance_from_env();
    const Scenario sc = read_scenario_file(scenario_path);
    const ScenarioBounds sb = scenario_bounds(sc, tol);
    json doc;
    if (sb.enclosing) {
      doc["enclosing_ball"] = {{"center", vec_json(sb.enclosing->center)},
                               {"radius", sb.enclosing->radius}};
    }
    doc["bounds"] = json::array();
    for (const auto& r : sb.bounds) {
      json j{{"binding_term", std::string(to_string(r.binding_term))},
             {"bound", real_json(r.bound_value)},
             {"center", vec_json(r.center)}};
      if (r.kappa) j["kappa"] = real_json(*r.kappa);
      doc["bounds"].push_back(std::move(j));
    }
    doc["notes"] = sb.notes;
    out << doc.dump(2) << '\n';
    return 0;
  });
}

int run_focal(const std::string& scenario_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Tolerance tol = tolerance_from_env();
    const Scenario sc = read_scenario_file(scenario_path);
    json doc;
    if (sc.known_count() > 0) throw UnsupportedScenario("focal: scenarios with known summands have no focal point");
    bool all_smooth = true;
    double mu_sum = 0.0;
    for (const auto& s : sc.summands) {
      all_smooth = all_smooth && s.params.smooth();
      mu_sum += s.params.mu();
    }
    if (all_smooth) {
      const Vec f = focal_point_smooth(sc.summands);
      doc["smooth_focal_point"] = vec_json(f);
      doc["smooth_focal_verdict"] = verdict_json(evaluate(sc, f, tol));
    }
    if (mu_sum > 0.0) doc["strongly_convex_focal_point"] = vec_json(focal_point_strongly_convex(sc.summands));
    if (doc.is_null()) throw UnsupportedScenario("focal: no focal point defined (mixed smoothness and zero mu)");
    out << doc.dump(2) << '\n';
    return 0;
  });
}

int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Tolerance tol = tolerance_from_env();
    std::optional<Scenario> fixed;
    std::optional<oracle::ScenarioFamily> family;
    if (opt.scenario_path) {
      fixed = read_scenario_file(*opt.scenario_path);
    } else {
      family = oracle::parse_family(opt.family);
      if (!family) throw ParseError("unknown scenario family \"" + opt.family + "\"");
    }
    const auto forced = predicate_option(opt.predicate);

    oracle::CrossCheckOptions copt;
    copt.tol = tol;
    copt.predicate = opt.predicate_fn;
    if (!copt.predicate && forced) {
      copt.predicate = [p = *forced, tol](const Scenario& s, const Vec& x) { return evaluate(s, x, p, tol); };
    }

    oracle::CrossCheckReport total;
    std::size_t necessity_instances = 0;
    std::size_t necessity_discarded = 0;
    json failures = json::array();

    for (std::size_t k = 0; k < opt.seeds; ++k) {
      const std::uint64_t seed = opt.first_seed + k;
      const Scenario sc = fixed ? *fixed : oracle::random_scenario(*family, seed);
      // Half uniform over the default box, half concentrated near the minimizers.
      auto points = oracle::sample_points(oracle::default_box(sc), sc.dim(), opt.points - opt.points / 2, seed);
      for (auto& p : oracle::sample_points_near(sc, opt.points / 2, seed)) points.push_back(std::move(p));
      const auto report = oracle::cross_check(sc, points, copt);
      for (const auto& f : report.failures) {
        failures.push_back({{"kind", "cross_check"},
                            {"seed", seed},
                            {"scenario", json::parse(serialize_scenario(sc))},
                            {"point", vec_json(f.point)},
                            {"verdict", verdict_json(f.verdict)},
                            {"oracle", f.oracle},
                            {"oracle_status", f.oracle_status},
                            {"oracle_value", real_json(f.oracle_value)},
                            {"oracle_member", f.oracle_member}});
      }
      total.merge(report);

      if (opt.necessity > 0 && !opt.predicate_fn && !forced) {
        const auto nec = oracle::necessity_sweep(sc, seed * 100003ull, opt.necessity,
                                                 k % 2 ? oracle::SpectrumMode::extremal
                                                       : oracle::SpectrumMode::uniform,
                                                 tol);
        necessity_instances += nec.instances;
        necessity_discarded += nec.discarded;
        for (const auto& f : nec.failures) {
          failures.push_back({{"kind", "necessity"},
                              {"seed", seed},
                              {"instance_seed", f.seed},
                              {"scenario", json::parse(serialize_scenario(sc))},
                              {"point", vec_json(f.minimizer)},
                              {"verdict", verdict_json(f.verdict)}});
        }
      }
    }

    json doc{{"scenarios", opt.seeds},
             {"points_checked", total.checked},
             {"agreements", total.agreements},
             {"boundary_disagreements", total.boundary_disagreements},
             {"indeterminate", total.indeterminate},
             {"heuristic_infeasible", total.heuristic_infeasible},
             {"skipped_degenerate", total.skipped_degenerate},
             {"necessity_instances", necessity_instances},
             {"necessity_discarded", necessity_discarded},
             {"mismatches", failures.size()},
             {"failures", failures}};
    if (opt.report_path) {
      std::ofstream f(*opt.report_path);
      if (!f) throw std::runtime_error("cannot write " + *opt.report_path);
      f << doc.dump(2) << '\n';
    }
    out << doc.dump(2) << '\n';
    return failures.empty() ? 0 : int(exit_mismatch);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Potential minimizers of sums of convex functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "minsum 0.1.0");

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Classify a point; exit 0 inside, 1 outside, 2 boundary");
  c->add_option("scenario", check.scenario_path, "Scenario JSON file")->required();
  c->add_option("point", check.point, "Point coordinates")->required();
  c->add_option("--predicate", check.predicate, "Force a predicate instead of routing");

  RegionOptions region;
  std::vector<double> bbox;
  std::vector<int> res;
  auto* r = app.add_subcommand("region", "Rasterize a 2-D region to CSV (and SVG)");
  r->add_option("scenario", region.scenario_path, "Scenario JSON file")->required();
  r->add_option("--bbox", bbox, "xmin xmax ymin ymax")->expected(4)->required();
  r->add_option("--res", res, "nx ny")->expected(2)->required();
  r->add_option("--out", region.csv_path, "CSV output path")->required();
  r->add_option("--svg", region.svg_path, "SVG output path");
  r->add_option("--predicate", region.predicate, "Force a predicate instead of routing");
  r->add_option("--threads", region.threads, "Worker threads (0 = all cores)");

  std::string bounds_path;
  auto* b = app.add_subcommand("bounds", "Report norm bounds on potential minimizers");
  b->add_option("scenario", bounds_path, "Scenario JSON file")->required();

  VerifyOptions verify;
  std::string verify_path;
  bool random = false;
  auto* v = app.add_subcommand("verify", "Cross-check the closed forms against brute-force oracles");
  v->add_option("scenario", verify_path, "Scenario JSON file");
  v->add_flag("--random", random, "Use random scenarios of --family");
  v->add_option("--family", verify.family,
                "two-smooth | smooth-nonsmooth | two-nonsmooth-bounded | m-smooth | m-one-nonsmooth | with-known");
  v->add_option("--seeds", verify.seeds, "Number of seeds (scenarios in --random mode)");
  v->add_option("--first-seed", verify.first_seed, "First seed");
  v->add_option("--points", verify.points, "Sample points per seed");
  v->add_option("--necessity", verify.necessity, "Random quadratic instances per seed");
  v->add_option("--report", verify.report_path, "Also write the JSON report here");
  v->add_option("--predicate", verify.predicate, "Force a predicate instead of routing");

  std::string focal_path;
  auto* f = app.add_subcommand("focal", "Print the focal points of a scenario");
  f->add_option("scenario", focal_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "minsum 0.1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse;
  }

  if (c->parsed()) return run_check(check, out, err);
  if (r->parsed()) {
    std::copy(bbox.begin(), bbox.end(), region.bbox.begin());
    region.nx = res[0];
    region.ny = res[1];
    return run_region(region, out, err);
  }
  if (b->parsed()) return run_bounds(bounds_path, out, err);
  if (v->parsed()) {
    if (random == !verify_path.empty()) {
      err << "error: verify takes either a scenario file or --random\n";
      return exit_parse;
    }
    if (!random) verify.scenario_path = verify_path;
    return run_verify(verify, out, err);
  }
  return run_focal(focal_path, out, err);
}

}  // namespace minsum::cli
