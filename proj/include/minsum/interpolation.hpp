// Interpolation conditions for smooth strongly convex functions and the
// two-point condition linking a point, a subgradient and a minimizer.
#pragma once

#include <limits>
#include <span>
#include <variant>

#include "minsum/geometry.hpp"
#include "minsum/tolerance.hpp"

namespace minsum {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Function class F_{mu,L}: mu-strongly convex, L-smooth, 0 <= mu < L <= inf.
class ClassParams {
 public:
  ClassParams(double mu, double L);

  double mu() const { return mu_; }
  double L() const { return L_; }
  bool smooth() const { return L_ != kInf; }

  /// 1/L with 1/inf = 0.
  double inv_L() const { return smooth() ? 1.0 / L_ : 0.0; }

  /// mu/L with a/inf = 0.
  double mu_over_L() const { return mu_ * inv_L(); }

  /// Largest finite parameter, used for tolerance scaling.
  double magnitude() const { return smooth() ? L_ : mu_; }

  bool operator==(const ClassParams&) const = default;

 private:
  double mu_;
  double L_;
};

struct Triplet {
  Vec x;
  Vec g;
  double f = 0.0;
};

/// Function values certifying the two-point interpolation problem
/// {(x; g; f_x), (x*; 0; f_star)}.
struct WitnessValues {
  double f_x = 0.0;
  double f_star = 0.0;
  double E = 0.0;
};

/// Minimum slack of the pairwise interpolation inequalities, each multiplied
/// through by (1 - mu/L). Inside iff every slack is >= 0.
Verdict check_interpolation(std::span<const Triplet> triplets, const ClassParams& params,
                            const Tolerance& tol = {});

/// <g, x - x*> - (1 + mu/L)^{-1} (|g|^2 / L + mu |x - x*|^2).
/// Nonnegative iff some f in F_{mu,L} minimized at x* has g in its
/// subdifferential at x.
double minimizer_condition_margin(const Vec& x, const Vec& g, const Vec& x_star,
                                  const ClassParams& params);

/// For L < inf, the condition above says g lies in the ball with center
/// ((L+mu)/2)(x - x*) and radius ((L-mu)/2)|x - x*|.
Ball geometric_ball(const Vec& x, const Vec& x_star, const ClassParams& params);

/// For L = inf, the condition reads <g, x - x*> >= mu |x - x*|^2.
HalfSpace geometric_halfspace(const Vec& x, const Vec& x_star, const ClassParams& params);

using GradientSet = std::variant<Ball, HalfSpace>;

/// geometric_ball or geometric_halfspace, whichever applies.
GradientSet admissible_gradients(const Vec& x, const Vec& x_star, const ClassParams& params);

/// E(x, g, x*) = |g|^2/(2L) + (mu/2)|x-x*|^2 - (mu/L)<g, x-x*>.
double interpolation_energy(const Vec& x, const Vec& g, const Vec& x_star,
                            const ClassParams& params);

/// f_x = (1 - mu/L)^{-1} E, f_star = 0. Throws DomainError when the
/// minimizer condition fails beyond tolerance.
WitnessValues witness_values(const Vec& x, const Vec& g, const Vec& x_star,
                             const ClassParams& params, const Tolerance& tol = {});

}  // namespace minsum
