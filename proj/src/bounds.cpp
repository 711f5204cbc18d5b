#include "minsum/bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "minsum/errors.hpp"
#include "minsum/membership.hpp"

namespace minsum {

std::string_view to_string(BindingTerm t) {
  switch (t) {
    case BindingTerm::focal_linear:
      return "focal_linear";
    case BindingTerm::focal_quadratic:
      return "focal_quadratic";
    case BindingTerm::ball_smooth:
      return "ball_smooth";
    case BindingTerm::ball_nonsmooth:
      return "ball_nonsmooth";
    case BindingTerm::baseline:
      return "baseline";
  }
  return "baseline";
}

BoundReport focal_distance_report(double mu1, double mu2, const Vec& x1, const Vec& x2, double B,
                                  const Tolerance& tol) {
  const double b_min = min_bound_B(mu1, mu2, x1, x2);
  const double eps = tol.eps(std::max({max_abs(x1), max_abs(x2), mu1, mu2, B}));
  if (!std::isfinite(B) || B < b_min - eps) {
    throw DomainError("focal_distance_bound: B is below the least admissible bound");
  }
  const double s = mu1 + mu2;
  const double dist = (x1 - x2).norm();
  const double linear = std::max(0.0, B / s * dist - mu1 * mu2 / (s * s) * dist * dist);
  const double quadratic = B * B / (s * s);
  BoundReport r;
  r.binding_term = linear <= quadratic ? BindingTerm::focal_linear : BindingTerm::focal_quadratic;
  r.bound_value = std::sqrt(std::min(linear, quadratic));
  r.center = (mu1 * x1 + mu2 * x2) / s;
  return r;
}

double focal_distance_bound(double mu1, double mu2, const Vec& x1, const Vec& x2, double B,
                            const Tolerance& tol) {
  return focal_distance_report(mu1, mu2, x1, x2, B, tol).bound_value;
}

double ball_bound_smooth(double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw DomainError("ball_bound_smooth: need kappa > 1");
  const double r = std::sqrt(kappa);
  return 0.5 * (r + 1.0 / r);
}

double ball_bound_one_nonsmooth(double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) {
    throw DomainError("ball_bound_one_nonsmooth: need kappa > 1");
  }
  return std::sqrt(kappa + 1.0);
}

double ball_bound_baseline(double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw DomainError("ball_bound_baseline: need kappa >= 1");
  return 1.0 + std::sqrt(kappa);
}

namespace {

// Smallest ball with every point of `support` on its boundary, restricted to
// their affine hull.
Ball circumball(const std::vector<Vec>& support, Eigen::Index n) {
  if (support.empty()) return Ball{Vec::Zero(n), -1.0};
  const Vec& p0 = support.front();
  if (support.size() == 1) return Ball{p0, 0.0};
  const auto k = static_cast<Eigen::Index>(support.size()) - 1;
  Mat V(n, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    V.col(j) = support[static_cast<std::size_t>(j) + 1] - p0;
    rhs(j) = 0.5 * V.col(j).squaredNorm();
  }
  const Mat gram = V.transpose() * V;
  const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
  const Vec center = p0 + V * lambda;
  double radius = 0.0;
  for (const auto& p : support) radius = std::max(radius, (p - center).norm());
  return Ball{center, radius};
}

bool covers(const Ball& b, const Vec& p) {
  if (b.radius < 0.0) return false;
  const double slack = 1e-12 * (1.0 + b.radius + max_abs(p));
  return (p - b.center).norm() <= b.radius + slack;
}

Ball move_to_front(std::vector<Vec>& pts, std::size_t end, std::vector<Vec>& support,
                   Eigen::Index n) {
  Ball b = circumball(support, n);
  if (static_cast<Eigen::Index>(support.size()) == n + 1) return b;
  for (std::size_t i = 0; i < end; ++i) {
    if (covers(b, pts[i])) continue;
    support.push_back(pts[i]);
    b = move_to_front(pts, i, support, n);
    support.pop_back();
    std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i),
                pts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return b;
}

}  // namespace

Ball smallest_enclosing_ball(std::span<const Vec> points) {
  if (points.empty()) throw DomainError("smallest_enclosing_ball: no points");
  const auto n = points.front().size();
  for (const auto& p : points) require_same_dim(points.front(), p, "smallest_enclosing_ball");
  std::vector<Vec> pts(points.begin(), points.end());
  std::vector<Vec> support;
  Ball b = move_to_front(pts, pts.size(), support, n);
  b.radius = 0.0;
  for (const auto& p : points) b.radius = std::max(b.radius, (p - b.center).norm());
  return b;
}

ScenarioBounds scenario_bounds(const Scenario& scenario, const Tolerance& tol) {
  const Predicate predicate = route(scenario);
  ScenarioBounds out;

  if (predicate == Predicate::two_nonsmooth_bounded) {
    const auto& s1 = scenario.summands[0];
    const auto& s2 = scenario.summands[1];
    if (!(s1.params.mu() + s2.params.mu() > 0.0)) {
      out.notes.emplace_back("all mu = 0: no finite bound applies");
      return out;
    }
    out.bounds.push_back(focal_distance_report(s1.params.mu(), s2.params.mu(), s1.x_star,
                                               s2.x_star, *scenario.bound_B, tol));
    return out;
  }
  if (scenario.known_count() > 0) {
    out.notes.emplace_back("ball bounds do not cover explicitly known summands");
    return out;
  }

  std::vector<Vec> minimizers;
  for (const auto& s : scenario.summands) minimizers.push_back(s.x_star);
  const Ball enclosing = smallest_enclosing_ball(minimizers);

  double mu_min = kInf;
  double L_max = 0.0;
  std::size_t nonsmooth = 0;
  for (const auto& s : scenario.summands) {
    if (!s.params.smooth()) {
      ++nonsmooth;
      continue;
    }
    mu_min = std::min(mu_min, s.params.mu());
    L_max = std::max(L_max, s.params.L());
  }
  if (L_max == 0.0) {
    out.notes.emplace_back("no smooth summand: ball bounds do not apply");
    return out;
  }
  if (!(mu_min > 0.0)) {
    out.notes.emplace_back("some smooth summand has mu = 0: no finite bound applies");
    return out;
  }
  const double kappa = L_max / mu_min;
  out.enclosing = enclosing;
  const double r = enclosing.radius;
  if (nonsmooth == 0) {
    out.bounds.push_back({r * ball_bound_smooth(kappa), BindingTerm::ball_smooth, kappa, enclosing.center});
    out.bounds.push_back({r * ball_bound_baseline(kappa), BindingTerm::baseline, kappa, enclosing.center});
  } else {
    out.bounds.push_back(
        {r * ball_bound_one_nonsmooth(kappa), BindingTerm::ball_nonsmooth, kappa, enclosing.center});
  }
  return out;
}

}  // namespace minsum
