#include "minsum/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "minsum/bounds.hpp"
#include "minsum/errors.hpp"

namespace minsum::oracle {

namespace {

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ull;

double set_distance(const GradientSet& set, const Vec& p) {
  return std::visit([&](const auto& s) { return distance(s, p); }, set);
}

Vec set_project(const GradientSet& set, const Vec& p) {
  return std::visit([&](const auto& s) { return project(s, p); }, set);
}

// Largest finite gradient magnitude a set carries; the projection tolerance
// is relative to it.
double set_scale(const GradientSet& set) {
  if (const auto* b = std::get_if<Ball>(&set)) return b->center.norm() + b->radius;
  const auto& h = std::get<HalfSpace>(set);
  const double nn = h.normal.norm();
  return nn > 0.0 ? std::abs(h.offset) / nn : 0.0;
}

// max_{y in set} <w, y>; +inf when unbounded in direction w.
double support_max(const GradientSet& set, const Vec& w) {
  if (const auto* b = std::get_if<Ball>(&set)) return w.dot(b->center) + b->radius * w.norm();
  const auto& h = std::get<HalfSpace>(set);
  const double nn = h.normal.squaredNorm();
  if (nn == 0.0) return h.offset >= 0.0 ? (w.isZero(0.0) ? 0.0 : kInf) : -kInf;
  const double t = w.dot(h.normal) / nn;
  if (t < 0.0 || (w - t * h.normal).norm() > 1e-12 * w.norm()) return kInf;
  return t * h.offset;
}

double support_min(const GradientSet& set, const Vec& w) { return -support_max(set, -w); }

// Positive value certifies that the two sets are at least that far apart.
double separation_gap(const GradientSet& a, const GradientSet& b, const Vec& a_point,
                      const Vec& b_point) {
  std::vector<Vec> directions;
  const Vec w0 = b_point - a_point;
  if (w0.norm() > 0.0) directions.push_back(w0);
  if (const auto* h = std::get_if<HalfSpace>(&a)) directions.push_back(h->normal);
  if (const auto* h = std::get_if<HalfSpace>(&b)) directions.push_back(-h->normal);
  double best = -kInf;
  for (const auto& w : directions) {
    const double wn = w.norm();
    if (wn == 0.0) continue;
    const double gap = (support_min(b, w) - support_max(a, w)) / wn;
    if (std::isfinite(gap)) best = std::max(best, gap);
  }
  return best;
}

GradientSet reflect_and_shift(const GradientSet& set, const Vec& shift) {
  // {s : -s - shift in set}
  if (const auto* b = std::get_if<Ball>(&set)) return Ball{-b->center - shift, b->radius};
  const auto& h = std::get<HalfSpace>(set);
  return HalfSpace{-h.normal, h.offset + h.normal.dot(shift)};
}

struct UnknownSplit {
  Vec known_sum;
  std::vector<std::size_t> known_index;
  std::vector<std::size_t> unknown_index;  // the nonsmooth one (if any) last
};

UnknownSplit split_unknown(const Scenario& scenario, const Vec& x_star) {
  UnknownSplit out{Vec::Zero(x_star.size()), {}, {}};
  std::optional<std::size_t> nonsmooth;
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    const auto& s = scenario.summands[i];
    if (s.is_known()) {
      out.known_sum += s.known->gradient(x_star);
      out.known_index.push_back(i);
    } else if (!s.params.smooth()) {
      if (nonsmooth) {
        throw UnsupportedScenario("projection oracle: more than one nonsmooth unknown summand");
      }
      nonsmooth = i;
    } else {
      out.unknown_index.push_back(i);
    }
  }
  if (nonsmooth) out.unknown_index.push_back(*nonsmooth);
  return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) { return seed + k * kSeedStride; }

}  // namespace

std::string_view to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::feasible:
      return "feasible";
    case FeasibilityStatus::infeasible_certified:
      return "infeasible_certified";
    case FeasibilityStatus::infeasible_heuristic:
      return "infeasible_heuristic";
    case FeasibilityStatus::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

Mat random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

QuadraticInstance sample_quadratic_instance(const Scenario& scenario, std::uint64_t seed,
                                            SpectrumMode mode, double infinite_L_cap) {
  scenario.validate();
  const auto n = scenario.dim();
  double cap = infinite_L_cap;
  if (!(cap > 0.0)) {
    cap = 1.0;
    for (const auto& s : scenario.summands) cap = std::max(cap, s.params.magnitude());
    cap *= 10.0;
  }

  constexpr int kAttempts = 32;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::mt19937_64 rng(mix(seed, static_cast<std::uint64_t>(attempt)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    QuadraticInstance inst;
    Mat total = Mat::Zero(n, n);
    Vec rhs = Vec::Zero(n);
    for (const auto& s : scenario.summands) {
      if (s.is_known()) {
        inst.summands.push_back(*s.known);
      } else {
        const double lo = s.params.mu();
        const double hi = s.params.smooth() ? s.params.L() : std::max(cap, lo + 1.0);
        Vec diag(n);
        for (Eigen::Index k = 0; k < n; ++k) {
          diag(k) = mode == SpectrumMode::uniform ? lo + (hi - lo) * unit(rng)
                                                  : (unit(rng) < 0.5 ? lo : hi);
        }
        const Mat q = random_orthogonal(n, rng);
        Mat a = q * diag.asDiagonal() * q.transpose();
        a = 0.5 * (a + a.transpose());
        inst.summands.push_back(KnownFunction::quadratic(a, s.x_star));
      }
      const auto& f = inst.summands.back();
      total += f.matrix();
      rhs += f.matrix() * f.center();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(total, Eigen::EigenvaluesOnly);
    const double lo_eig = es.eigenvalues().minCoeff();
    const double hi_eig = es.eigenvalues().maxCoeff();
    if (!(lo_eig > 1e-10 * std::max(1.0, hi_eig))) continue;
    inst.exact_minimizer = total.ldlt().solve(rhs);
    Vec grad = Vec::Zero(n);
    for (const auto& f : inst.summands) grad += f.gradient(inst.exact_minimizer);
    inst.residual = grad.norm();
    const double scale = std::max(1.0, hi_eig * (inst.exact_minimizer.norm() + rhs.norm() / hi_eig));
    if (!(inst.residual <= 1e-9 * scale)) {
      throw DomainError("sample_quadratic_instance: linear solve residual too large");
    }
    return inst;
  }
  throw DomainError("sample_quadratic_instance: sum of Hessians stayed singular after resampling");
}

FeasibilityResult feasibility_by_projection(const FeasibilityProblem& problem) {
  if (problem.constraints.empty()) throw DomainError("feasibility_by_projection: no constraints");
  const auto n = problem.dim;
  for (const auto& c : problem.constraints) {
    const Eigen::Index d = std::visit(
        [](const auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Ball>) return s.center.size();
          else return s.normal.size();
        },
        c.set);
    if (d != n) throw DimensionMismatch("feasibility_by_projection: constraint dimension");
    if (c.target == Constraint::Target::block && c.block >= problem.blocks) {
      throw DomainError("feasibility_by_projection: block index out of range");
    }
  }

  FeasibilityResult result;
  const std::size_t k = problem.blocks;

  auto sum_of_blocks = [&](const std::vector<Vec>& g) {
    Vec s = Vec::Zero(n);
    for (const auto& v : g) s += v;
    return s;
  };
  auto residual_of = [&](const std::vector<Vec>& g) {
    double r = 0.0;
    const Vec s = sum_of_blocks(g);
    for (const auto& c : problem.constraints) {
      const Vec& p = c.target == Constraint::Target::sum ? s : g[c.block];
      r = std::max(r, set_distance(c.set, p));
    }
    return r;
  };

  // Zero blocks: the sum is the zero vector, nothing to iterate.
  if (k == 0) {
    result.residual = residual_of({});
    result.status = result.residual <= problem.tol ? FeasibilityStatus::feasible
                                                   : FeasibilityStatus::infeasible_certified;
    if (result.status != FeasibilityStatus::feasible) result.certified_gap = result.residual;
    return result;
  }

  std::vector<Vec> g(k, Vec::Zero(n));
  for (const auto& c : problem.constraints) {
    if (c.target == Constraint::Target::block) {
      if (const auto* b = std::get_if<Ball>(&c.set)) g[c.block] = b->center;
    }
  }

  // With a single block every constraint acts on g_1 directly.
  const bool two_plain_sets = k == 1 && problem.constraints.size() == 2;
  double checkpoint = kInf;
  constexpr int kCheckEvery = 1000;

  for (int it = 1; it <= problem.max_iterations; ++it) {
    for (const auto& c : problem.constraints) {
      if (c.target == Constraint::Target::block) {
        g[c.block] = set_project(c.set, g[c.block]);
      } else {
        const Vec s = sum_of_blocks(g);
        const Vec shift = (set_project(c.set, s) - s) / static_cast<double>(k);
        for (auto& v : g) v += shift;
      }
    }
    result.iterations = it;
    result.residual = residual_of(g);
    if (result.residual <= problem.tol) {
      result.status = FeasibilityStatus::feasible;
      result.point = g;
      return result;
    }
    if (two_plain_sets && (it <= 8 || it % 50 == 0)) {
      const auto& a = problem.constraints[0].set;
      const auto& b = problem.constraints[1].set;
      const Vec on_b = g[0];
      const Vec on_a = set_project(a, on_b);
      const double gap = separation_gap(a, b, on_a, on_b);
      if (gap > problem.tol) {
        result.status = FeasibilityStatus::infeasible_certified;
        result.certified_gap = gap;
        result.point = g;
        return result;
      }
    }
    if (it % kCheckEvery == 0) {
      if (result.residual > 10.0 * problem.tol && result.residual >= (1.0 - 1e-6) * checkpoint) {
        result.status = FeasibilityStatus::infeasible_heuristic;
        result.point = g;
        return result;
      }
      checkpoint = result.residual;
    }
  }
  result.status = FeasibilityStatus::indeterminate;
  result.point = g;
  return result;
}

FeasibilityProblem gradient_feasibility_problem(const Scenario& scenario, const Vec& x_star,
                                                double rel_tol, int max_iterations) {
  scenario.validate();
  require_same_dim(x_star, scenario.summands.front().x_star, "gradient_feasibility_problem");
  if (scenario.bound_B) {
    throw UnsupportedScenario("projection oracle: bounded two-nonsmooth case uses the QP oracle");
  }
  const UnknownSplit split = split_unknown(scenario, x_star);
  const auto& u = split.unknown_index;

  FeasibilityProblem problem;
  problem.dim = x_star.size();
  problem.max_iterations = max_iterations;
  problem.blocks = u.empty() ? 0 : u.size() - 1;

  double scale = std::max(1.0, split.known_sum.norm());
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    const auto& s = scenario.summands[u[j]];
    Constraint c{Constraint::Target::block, j, admissible_gradients(x_star, s.x_star, s.params)};
    scale = std::max(scale, set_scale(c.set));
    problem.constraints.push_back(std::move(c));
  }
  if (u.empty()) {
    problem.constraints.push_back({Constraint::Target::sum, 0, Ball{-split.known_sum, 0.0}});
  } else {
    const auto& last = scenario.summands[u.back()];
    const GradientSet own = admissible_gradients(x_star, last.x_star, last.params);
    scale = std::max(scale, set_scale(own));
    const auto target = problem.blocks == 1 ? Constraint::Target::block : Constraint::Target::sum;
    problem.constraints.push_back({target, 0, reflect_and_shift(own, split.known_sum)});
  }
  // g_m alone must satisfy its own condition when nothing else is unknown.
  if (problem.blocks == 0 && !u.empty()) problem.constraints.back().target = Constraint::Target::sum;
  problem.tol = rel_tol * scale;
  return problem;
}

std::vector<Vec> gradients_from_blocks(const Scenario& scenario, const Vec& x_star,
                                       std::span<const Vec> blocks) {
  const UnknownSplit split = split_unknown(scenario, x_star);
  std::vector<Vec> out(scenario.size(), Vec::Zero(x_star.size()));
  for (const auto i : split.known_index) out[i] = scenario.summands[i].known->gradient(x_star);
  Vec rest = split.known_sum;
  for (std::size_t j = 0; j + 1 < split.unknown_index.size(); ++j) {
    out[split.unknown_index[j]] = blocks[j];
    rest += blocks[j];
  }
  if (!split.unknown_index.empty()) out[split.unknown_index.back()] = -rest;
  return out;
}

QpSolution qp_min_norm_gradient(const Vec& x_star, const Vec& x1, const Vec& x2, double mu1,
                                double mu2) {
  require_same_dim(x_star, x1, "qp_min_norm_gradient");
  require_same_dim(x_star, x2, "qp_min_norm_gradient");
  const std::array<Vec, 2> a{Vec(x1 - x_star), Vec(x_star - x2)};
  const std::array<double, 2> b{-mu1 * a[0].squaredNorm(), -mu2 * a[1].squaredNorm()};
  if (a[0].squaredNorm() == 0.0 || a[1].squaredNorm() == 0.0) {
    throw CoincidentPoints("qp_min_norm_gradient: x* must differ from x1 and x2");
  }

  auto feasible = [&](const Vec& g) {
    for (int k = 0; k < 2; ++k) {
      const double slack = 1e-12 * (std::abs(b[k]) + a[k].norm() * g.norm() + 1.0);
      if (a[k].dot(g) > b[k] + slack) return false;
    }
    return true;
  };

  std::vector<Vec> candidates;
  candidates.push_back(Vec::Zero(x_star.size()));
  for (int k = 0; k < 2; ++k) candidates.push_back(a[k] * (b[k] / a[k].squaredNorm()));
  Eigen::Matrix2d gram;
  gram << a[0].squaredNorm(), a[0].dot(a[1]), a[0].dot(a[1]), a[1].squaredNorm();
  if (std::abs(gram.determinant()) > 1e-12 * gram(0, 0) * gram(1, 1)) {
    const Eigen::Vector2d lambda = gram.partialPivLu().solve(Eigen::Vector2d(b[0], b[1]));
    candidates.push_back(lambda(0) * a[0] + lambda(1) * a[1]);
  }

  QpSolution best{kInf, Vec::Zero(x_star.size())};
  for (const auto& g : candidates) {
    if (feasible(g) && g.squaredNorm() < best.value) best = {g.squaredNorm(), g};
  }
  return best;
}

void CrossCheckReport::merge(const CrossCheckReport& other) {
  checked += other.checked;
  agreements += other.agreements;
  boundary_disagreements += other.boundary_disagreements;
  indeterminate += other.indeterminate;
  heuristic_infeasible += other.heuristic_infeasible;
  skipped_degenerate += other.skipped_degenerate;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

double scenario_scale(const Scenario& scenario, const Vec& x_star) {
  double scale = max_abs(x_star);
  for (const auto& s : scenario.summands) {
    scale = std::max({scale, max_abs(s.x_star), s.params.magnitude()});
    if (s.known) {
      scale = std::max({scale, max_abs(s.known->center()), s.known->matrix().cwiseAbs().maxCoeff()});
    }
  }
  if (scenario.bound_B) scale = std::max(scale, *scenario.bound_B);
  return scale;
}

CrossCheckReport cross_check(const Scenario& scenario, std::span<const Vec> points,
                             const CrossCheckOptions& options) {
  CrossCheckReport report;
  if (points.empty()) return report;
  const Predicate predicate = route(scenario);
  const PredicateFn fn = options.predicate ? options.predicate
                                           : PredicateFn([&](const Scenario& s, const Vec& x) {
                                               return evaluate(s, x, predicate, options.tol);
                                             });

  for (const auto& x : points) {
    CrossCheckRecord rec;
    rec.point = x;
    rec.verdict = fn(scenario, x);
    const double band = options.band_rel * (1.0 + scenario_scale(scenario, x));
    bool oracle_near_boundary = false;

    if (predicate == Predicate::two_nonsmooth_bounded) {
      const auto& s1 = scenario.summands[0];
      const auto& s2 = scenario.summands[1];
      const double eps = options.tol.eps(scenario_scale(scenario, x));
      if ((x - s1.x_star).norm() <= eps || (x - s2.x_star).norm() <= eps) {
        ++report.skipped_degenerate;
        continue;
      }
      const double B = *scenario.bound_B;
      const QpSolution qp = qp_min_norm_gradient(x, s1.x_star, s2.x_star, s1.params.mu(), s2.params.mu());
      rec.oracle = "qp";
      rec.oracle_value = qp.value;
      rec.oracle_member = qp.value <= B * B;
      rec.oracle_status = rec.oracle_member ? "feasible" : "infeasible";
      oracle_near_boundary = std::abs(qp.value - B * B) <= options.band_rel * (1.0 + B * B);
    } else {
      const FeasibilityProblem problem =
          gradient_feasibility_problem(scenario, x, options.projection_tol, options.max_iterations);
      const FeasibilityResult res = feasibility_by_projection(problem);
      rec.oracle = "projection";
      rec.oracle_value = res.residual;
      rec.oracle_status = std::string(to_string(res.status));
      if (res.status == FeasibilityStatus::indeterminate) {
        ++report.indeterminate;
        ++report.checked;
        continue;
      }
      if (res.status == FeasibilityStatus::infeasible_heuristic) ++report.heuristic_infeasible;
      rec.oracle_member = res.status == FeasibilityStatus::feasible;
    }

    ++report.checked;
    if (rec.oracle_member == rec.verdict.member()) {
      ++report.agreements;
    } else if (std::abs(rec.verdict.margin) <= band || oracle_near_boundary) {
      ++report.boundary_disagreements;
    } else {
      report.failures.push_back(std::move(rec));
    }
  }
  return report;
}

NecessityReport necessity_sweep(const Scenario& scenario, std::uint64_t first_seed,
                                std::size_t count, SpectrumMode mode, const Tolerance& tol,
                                double band_rel) {
  NecessityReport report;
  const Predicate predicate = route(scenario);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = first_seed + k;
    const QuadraticInstance inst = sample_quadratic_instance(scenario, seed, mode);
    const Vec& x = inst.exact_minimizer;
    if (scenario.bound_B && inst.summands[0].gradient(x).norm() > *scenario.bound_B) {
      ++report.discarded;
      continue;
    }
    ++report.instances;
    const Verdict v = evaluate(scenario, x, predicate, tol);
    const double scale = 1.0 + scenario_scale(scenario, x);
    report.worst_margin = std::min(report.worst_margin, v.margin / scale);
    if (v.margin < -band_rel * scale) report.failures.push_back({seed, x, v});
  }
  return report;
}

std::optional<ScenarioFamily> parse_family(std::string_view name) {
  for (auto f : {ScenarioFamily::two_smooth, ScenarioFamily::smooth_nonsmooth,
                 ScenarioFamily::two_nonsmooth_bounded, ScenarioFamily::m_smooth,
                 ScenarioFamily::m_one_nonsmooth, ScenarioFamily::with_known}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view to_string(ScenarioFamily f) {
  switch (f) {
    case ScenarioFamily::two_smooth:
      return "two-smooth";
    case ScenarioFamily::smooth_nonsmooth:
      return "smooth-nonsmooth";
    case ScenarioFamily::two_nonsmooth_bounded:
      return "two-nonsmooth-bounded";
    case ScenarioFamily::m_smooth:
      return "m-smooth";
    case ScenarioFamily::m_one_nonsmooth:
      return "m-one-nonsmooth";
    case ScenarioFamily::with_known:
      return "with-known";
  }
  return "two-smooth";
}

Scenario random_scenario(ScenarioFamily family, std::uint64_t seed, Eigen::Index n) {
  std::mt19937_64 rng(mix(seed, 0xC0FFEEull));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto point = [&] {
    Vec p(n);
    for (Eigen::Index k = 0; k < n; ++k) p(k) = uniform(-2.0, 2.0);
    return p;
  };
  auto smooth = [&] {
    const double mu = uniform(0.0, 2.0);
    return Summand{point(), ClassParams(mu, mu + uniform(0.5, 10.0)), std::nullopt};
  };
  auto nonsmooth = [&](double mu_lo) {
    return Summand{point(), ClassParams(uniform(mu_lo, 2.0), kInf), std::nullopt};
  };

  Scenario sc;
  switch (family) {
    case ScenarioFamily::two_smooth:
      sc.summands = {smooth(), smooth()};
      break;
    case ScenarioFamily::smooth_nonsmooth:
      sc.summands = {smooth(), nonsmooth(0.0)};
      break;
    case ScenarioFamily::two_nonsmooth_bounded: {
      sc.summands = {nonsmooth(0.1), nonsmooth(0.0)};
      if (unit(rng) < 0.5) std::swap(sc.summands[0], sc.summands[1]);
      const auto& a = sc.summands[0];
      const auto& b = sc.summands[1];
      const double b_min = min_bound_B(a.params.mu(), b.params.mu(), a.x_star, b.x_star);
      sc.bound_B = std::max(b_min * uniform(1.05, 3.0), uniform(0.2, 1.0));
      break;
    }
    case ScenarioFamily::m_smooth: {
      const int m = 3 + static_cast<int>(unit(rng) * 3);
      for (int i = 0; i < m; ++i) sc.summands.push_back(smooth());
      break;
    }
    case ScenarioFamily::m_one_nonsmooth: {
      const int m = 3 + static_cast<int>(unit(rng) * 2);
      for (int i = 0; i + 1 < m; ++i) sc.summands.push_back(smooth());
      sc.summands.push_back(nonsmooth(0.0));
      break;
    }
    case ScenarioFamily::with_known: {
      const int known = 1 + static_cast<int>(unit(rng) * 2);
      const int unknown = 1 + static_cast<int>(unit(rng) * 3);
      for (int i = 0; i < known; ++i) {
        Vec diag(n);
        for (Eigen::Index k = 0; k < n; ++k) diag(k) = uniform(0.0, 3.0);
        const Mat q = random_orthogonal(n, rng);
        Mat a = q * diag.asDiagonal() * q.transpose();
        a = 0.5 * (a + a.transpose());
        const Vec c = point();
        sc.summands.push_back(
            Summand{c, ClassParams(diag.minCoeff(), diag.maxCoeff() + 1.0), KnownFunction::quadratic(a, c)});
      }
      for (int i = 0; i < unknown; ++i) sc.summands.push_back(smooth());
      break;
    }
  }
  sc.validate();
  return sc;
}

BoundingBox default_box(const Scenario& scenario) {
  std::vector<Vec> pts;
  for (const auto& s : scenario.summands) pts.push_back(s.x_star);
  const Ball enc = smallest_enclosing_ball(pts);
  const double half = 3.0 * (enc.radius + 0.5);
  const double cx = enc.center(0);
  const double cy = enc.center.size() > 1 ? enc.center(1) : 0.0;
  return BoundingBox{cx - half, cx + half, cy - half, cy + half};
}

std::vector<Vec> sample_points(const BoundingBox& box, Eigen::Index n, std::size_t count,
                               std::uint64_t seed) {
  std::mt19937_64 rng(mix(seed, 0xB0Bull));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vec p(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const bool y_axis = n == 2 && k == 1;
      const double lo = y_axis ? box.ymin : box.xmin;
      const double hi = y_axis ? box.ymax : box.xmax;
      p(k) = lo + (hi - lo) * unit(rng);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Vec> sample_points_near(const Scenario& scenario, std::size_t count, std::uint64_t seed,
                                    double spread) {
  std::vector<Vec> centers;
  for (const auto& s : scenario.summands) centers.push_back(s.x_star);
  const double sigma = spread * std::max(1.0, smallest_enclosing_ball(centers).radius);
  std::mt19937_64 rng(mix(seed, 0xFACEull));
  std::exponential_distribution<double> weight(1.0);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vec p = Vec::Zero(scenario.dim());
    double total = 0.0;
    for (const auto& c : centers) {
      const double w = weight(rng);
      p += w * c;
      total += w;
    }
    p /= total;
    for (Eigen::Index k = 0; k < p.size(); ++k) p(k) += normal(rng);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace minsum::oracle
