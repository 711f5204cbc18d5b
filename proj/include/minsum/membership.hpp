// Exact membership predicates for the set of potential minimizers of a sum
// of convex functions, each summand known only through one minimizer and its
// class parameters (and optionally as an explicit quadratic).
//
// Every predicate returns a signed margin (positive inside) and a tri-state
// verdict under the scale-relative tolerance policy. The predicates are pure
// and may be called concurrently.
#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "minsum/geometry.hpp"
#include "minsum/scenario.hpp"
#include "minsum/tolerance.hpp"

namespace minsum {

enum class Predicate {
  two_smooth,
  smooth_nonsmooth,
  two_nonsmooth_bounded,
  m_smooth,
  m_one_nonsmooth,
  with_known,
  with_known_one_nonsmooth,
};

std::string_view to_string(Predicate p);
std::optional<Predicate> parse_predicate(std::string_view name);

/// Two smooth summands:
///   (L1-mu1)|x-x1| + (L2-mu2)|x-x2| - |(L1+mu1)(x-x1) + (L2+mu2)(x-x2)|.
Verdict member_two_smooth(const Vec& x_star, const Summand& s1, const Summand& s2,
                          const Tolerance& tol = {});

/// s1 smooth, s2 with L = inf:
///   ((L1-mu1)/2)|x-x1||x-x2| - mu2|x-x2|^2 - ((L1+mu1)/2)<x-x1, x-x2>.
Verdict member_smooth_nonsmooth(const Vec& x_star, const Summand& s1, const Summand& s2,
                                const Tolerance& tol = {});

/// mu1 mu2 / (mu1 + mu2) |x1 - x2|: the least gradient bound for which the
/// bounded two-nonsmooth set is nonempty.
double min_bound_B(double mu1, double mu2, const Vec& x1, const Vec& x2);

/// Both summands nonsmooth, subgradient norm at the minimizer bounded by B.
/// Member iff mu1|x-x1| <= B, mu2|x-x2| <= B and one of clauses (i), (ii),
/// (iii) holds. Margins are reported in gradient units: base norms as
/// B - mu_k|x-x_k|, clauses (i)/(ii) divided by |x-x2| resp. |x-x1|, and
/// (iii) as det(M(B^2)) / (2B). `fired` lists every clause that holds.
Verdict member_two_nonsmooth_bounded(const Vec& x_star, const Summand& s1, const Summand& s2,
                                     double B, const Tolerance& tol = {});

/// m smooth summands:
///   sum (L_i-mu_i)|x-x_i| - |sum (L_i+mu_i)(x-x_i)|.
Verdict member_m_smooth(const Vec& x_star, std::span<const Summand> summands,
                        const Tolerance& tol = {});

/// All summands smooth except the last, which has L = inf.
Verdict member_m_one_nonsmooth(const Vec& x_star, std::span<const Summand> summands,
                               const Tolerance& tol = {});

/// Smooth unknown summands plus explicitly known differentiable functions:
///   sum (L_i-mu_i)|x-x_i| - |2 sum_known grad f_k(x) + sum (L_i+mu_i)(x-x_i)|.
Verdict member_with_known(const Vec& x_star, std::span<const KnownFunction> known,
                          std::span<const Summand> unknown, const Tolerance& tol = {});

/// As member_with_known, but the last unknown summand has L = inf.
Verdict member_with_known_one_nonsmooth(const Vec& x_star, std::span<const KnownFunction> known,
                                        std::span<const Summand> unknown,
                                        const Tolerance& tol = {});

/// (L+mu)-weighted average of the minimizers; strictly inside the smooth set
/// when the minimizers are distinct.
Vec focal_point_smooth(std::span<const Summand> summands);

/// mu-weighted average of the minimizers, the minimizer of
/// sum (mu_i/2)|x - x_i|^2.
Vec focal_point_strongly_convex(std::span<const Summand> summands);

/// focal_point_smooth when every L is finite, focal_point_strongly_convex
/// when every L is infinite. Mixed patterns throw UnsupportedScenario.
Vec focal_point(std::span<const Summand> summands);

/// Predicate selected by the smoothness pattern of a validated scenario.
Predicate route(const Scenario& scenario);

Verdict evaluate(const Scenario& scenario, const Vec& x_star, const Tolerance& tol = {});

/// Evaluates a specific predicate; throws UnsupportedScenario when the
/// scenario violates that predicate's preconditions.
Verdict evaluate(const Scenario& scenario, const Vec& x_star, Predicate predicate,
                 const Tolerance& tol = {});

/// Subgradients g_i (one per summand, scenario order) with sum exactly zero,
/// each admissible for its summand at x_star, when x_star is a member;
/// nullopt otherwise. For known summands g_i is the known gradient.
std::optional<std::vector<Vec>> witness_gradients(const Scenario& scenario, const Vec& x_star,
                                                  const Tolerance& tol = {});

}  // namespace minsum
