// Closed-form norm bounds on potential minimizers.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minsum/geometry.hpp"
#include "minsum/scenario.hpp"

namespace minsum {

enum class BindingTerm { focal_linear, focal_quadratic, ball_smooth, ball_nonsmooth, baseline };

std::string_view to_string(BindingTerm t);

/// A bound on |x* - center| for every potential minimizer x*.
struct BoundReport {
  double bound_value = 0.0;
  BindingTerm binding_term = BindingTerm::baseline;
  std::optional<double> kappa;
  Vec center;
};

/// Radius of the ball around the mu-weighted focal point containing every
/// potential minimizer of two nonsmooth summands with gradient bound B:
///   sqrt(min(B|x1-x2|/(mu1+mu2) - mu1 mu2 |x1-x2|^2/(mu1+mu2)^2,
///            B^2/(mu1+mu2)^2)).
double focal_distance_bound(double mu1, double mu2, const Vec& x1, const Vec& x2, double B,
                            const Tolerance& tol = {});

/// focal_distance_bound with the binding term and the focal point.
BoundReport focal_distance_report(double mu1, double mu2, const Vec& x1, const Vec& x2, double B,
                                  const Tolerance& tol = {});

/// 1/2 (sqrt(kappa) + 1/sqrt(kappa)) for smooth summands with minimizers in a
/// unit ball. Requires kappa > 1.
double ball_bound_smooth(double kappa);

/// sqrt(kappa + 1) when one summand is an arbitrary closed convex function.
/// Requires kappa > 1.
double ball_bound_one_nonsmooth(double kappa);

/// 1 + sqrt(kappa), the earlier bound kept for comparison. Requires kappa >= 1.
double ball_bound_baseline(double kappa);

/// Smallest ball containing all points (move-to-front Welzl). The radius is
/// recomputed as the largest distance to the returned center, so the ball
/// always contains the input.
Ball smallest_enclosing_ball(std::span<const Vec> points);

struct ScenarioBounds {
  std::optional<Ball> enclosing;  // of the summand minimizers, for ball bounds
  std::vector<BoundReport> bounds;
  std::vector<std::string> notes;
};

/// Every bound that applies to the scenario. Ball bounds use
/// kappa = max L / min mu over the relevant summands and are rescaled from
/// unit radius to the enclosing radius.
ScenarioBounds scenario_bounds(const Scenario& scenario, const Tolerance& tol = {});

}  // namespace minsum
