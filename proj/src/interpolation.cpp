#include "minsum/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minsum/errors.hpp"

namespace minsum {

ClassParams::ClassParams(double mu, double L) : mu_(mu), L_(L) {
  if (!std::isfinite(mu) || mu < 0.0) throw DomainError("class params: mu must be finite and >= 0");
  if (std::isnan(L) || L <= 0.0) throw DomainError("class params: L must be > 0");
  if (!(mu < L)) throw DomainError("class params: require mu < L");
}

Verdict check_interpolation(std::span<const Triplet> triplets, const ClassParams& params,
                            const Tolerance& tol) {
  if (triplets.empty()) throw DomainError("check_interpolation: no triplets");
  const auto n = triplets.front().x.size();
  double scale = params.magnitude();
  for (const auto& t : triplets) {
    if (t.x.size() != n || t.g.size() != n || n == 0) {
      throw DimensionMismatch("check_interpolation: triplet dimensions differ");
    }
    scale = std::max({scale, max_abs(t.x), max_abs(t.g), std::abs(t.f)});
  }

  const double inv_L = params.inv_L();
  const double mu = params.mu();
  const double shrink = 1.0 - params.mu_over_L();

  double worst = kInf;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    for (std::size_t j = 0; j < triplets.size(); ++j) {
      if (i == j) continue;
      const auto& ti = triplets[i];
      const auto& tj = triplets[j];
      const Vec dx = ti.x - tj.x;
      const Vec dg = ti.g - tj.g;
      const double lhs = shrink * (ti.f - tj.f - tj.g.dot(dx));
      const double rhs =
          0.5 * inv_L * dg.squaredNorm() + 0.5 * mu * dx.squaredNorm() - mu * inv_L * dg.dot(dx);
      worst = std::min(worst, lhs - rhs);
    }
  }
  // A single triplet imposes nothing: unbounded slack.
  if (triplets.size() == 1) return Verdict{State::inside, kInf, {}};
  return make_verdict(worst, tol.eps(scale));
}

double minimizer_condition_margin(const Vec& x, const Vec& g, const Vec& x_star,
                                  const ClassParams& params) {
  require_same_dim(x, g, "minimizer_condition_margin");
  require_same_dim(x, x_star, "minimizer_condition_margin");
  const Vec d = x - x_star;
  const double damp = 1.0 / (1.0 + params.mu_over_L());
  return g.dot(d) - damp * (params.inv_L() * g.squaredNorm() + params.mu() * d.squaredNorm());
}

Ball geometric_ball(const Vec& x, const Vec& x_star, const ClassParams& params) {
  require_same_dim(x, x_star, "geometric_ball");
  if (!params.smooth()) {
    throw DomainError("geometric_ball: L = inf has no ball form; use geometric_halfspace");
  }
  const Vec d = x - x_star;
  const double mu = params.mu();
  const double L = params.L();
  return Ball{0.5 * (L + mu) * d, 0.5 * (L - mu) * d.norm()};
}

HalfSpace geometric_halfspace(const Vec& x, const Vec& x_star, const ClassParams& params) {
  require_same_dim(x, x_star, "geometric_halfspace");
  if (params.smooth()) {
    throw DomainError("geometric_halfspace: only for L = inf");
  }
  const Vec d = x - x_star;
  return HalfSpace{-d, -params.mu() * d.squaredNorm()};
}

GradientSet admissible_gradients(const Vec& x, const Vec& x_star, const ClassParams& params) {
  if (params.smooth()) return geometric_ball(x, x_star, params);
  return geometric_halfspace(x, x_star, params);
}

double interpolation_energy(const Vec& x, const Vec& g, const Vec& x_star,
                            const ClassParams& params) {
  require_same_dim(x, g, "interpolation_energy");
  require_same_dim(x, x_star, "interpolation_energy");
  const Vec d = x - x_star;
  const double inv_L = params.inv_L();
  return 0.5 * inv_L * g.squaredNorm() + 0.5 * params.mu() * d.squaredNorm() -
         params.mu() * inv_L * g.dot(d);
}

WitnessValues witness_values(const Vec& x, const Vec& g, const Vec& x_star,
                             const ClassParams& params, const Tolerance& tol) {
  const double margin = minimizer_condition_margin(x, g, x_star, params);
  const double scale =
      std::max({max_abs(x), max_abs(g), max_abs(x_star), params.magnitude()});
  if (margin < -tol.eps(scale)) {
    throw DomainError("witness_values: minimizer condition violated (margin " +
                      std::to_string(margin) + ")");
  }
  const double E = interpolation_energy(x, g, x_star, params);
  return WitnessValues{E / (1.0 - params.mu_over_L()), 0.0, E};
}

}  // namespace minsum
