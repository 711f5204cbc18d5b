#include "minsum/membership.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "minsum/errors.hpp"
#include "minsum/interpolation.hpp"

namespace minsum {

namespace {

constexpr std::array<std::pair<Predicate, std::string_view>, 7> kPredicateNames{{
    {Predicate::two_smooth, "two_smooth"},
    {Predicate::smooth_nonsmooth, "smooth_nonsmooth"},
    {Predicate::two_nonsmooth_bounded, "two_nonsmooth_bounded"},
    {Predicate::m_smooth, "m_smooth"},
    {Predicate::m_one_nonsmooth, "m_one_nonsmooth"},
    {Predicate::with_known, "with_known"},
    {Predicate::with_known_one_nonsmooth, "with_known_one_nonsmooth"},
}};

double summands_scale(const Vec& x_star, std::span<const Summand> summands) {
  double scale = max_abs(x_star);
  for (const auto& s : summands) {
    require_same_dim(x_star, s.x_star, "membership");
    scale = std::max({scale, max_abs(s.x_star), s.params.magnitude()});
  }
  return scale;
}

double known_scale(std::span<const KnownFunction> known, std::span<const Vec> gradients) {
  double scale = 0.0;
  for (std::size_t k = 0; k < known.size(); ++k) {
    scale = std::max({scale, max_abs(known[k].center()), known[k].matrix().cwiseAbs().maxCoeff(),
                      max_abs(gradients[k])});
  }
  return scale;
}

std::vector<Vec> known_gradients(const Vec& x_star, std::span<const KnownFunction> known) {
  std::vector<Vec> out;
  out.reserve(known.size());
  for (const auto& k : known) out.push_back(k.gradient(x_star));
  return out;
}

Vec sum_of(std::span<const Vec> vs, Eigen::Index n) {
  Vec s = Vec::Zero(n);
  for (const auto& v : vs) s += v;
  return s;
}

void require_all_smooth(std::span<const Summand> summands, const char* what) {
  for (const auto& s : summands) {
    if (!s.params.smooth()) {
      throw UnsupportedScenario(std::string(what) + ": requires every L finite");
    }
  }
}

void require_last_nonsmooth(std::span<const Summand> summands, const char* what) {
  if (summands.empty() || summands.back().params.smooth()) {
    throw UnsupportedScenario(std::string(what) + ": last summand must have L = inf");
  }
  require_all_smooth(summands.first(summands.size() - 1), what);
}

// Margin of the smooth family: sum (L-mu)|d_i| - |shift + sum (L+mu) d_i|.
double smooth_family_margin(const Vec& x_star, std::span<const Summand> unknown, const Vec& shift) {
  double radii = 0.0;
  Vec centers = shift;
  for (const auto& s : unknown) {
    const Vec d = x_star - s.x_star;
    radii += (s.params.L() - s.params.mu()) * d.norm();
    centers += (s.params.L() + s.params.mu()) * d;
  }
  return radii - centers.norm();
}

// Margin of the one-nonsmooth family (last unknown has L = inf):
//   sum_{i<m} ((L_i-mu_i)/2)|d_i||d_m|
//     - [mu_m |d_m|^2 + <shift, d_m> + sum_{i<m} ((L_i+mu_i)/2)<d_i, d_m>].
double nonsmooth_family_margin(const Vec& x_star, std::span<const Summand> unknown,
                               const Vec& shift) {
  const Summand& last = unknown.back();
  const Vec dm = x_star - last.x_star;
  const double nm = dm.norm();
  double rhs = 0.0;
  double lhs = last.params.mu() * dm.squaredNorm() + shift.dot(dm);
  for (const auto& s : unknown.first(unknown.size() - 1)) {
    const Vec d = x_star - s.x_star;
    rhs += 0.5 * (s.params.L() - s.params.mu()) * d.norm() * nm;
    lhs += 0.5 * (s.params.L() + s.params.mu()) * d.dot(dm);
  }
  return rhs - lhs;
}

struct ScenarioParts {
  std::vector<KnownFunction> known;
  std::vector<std::size_t> known_index;
  std::vector<Summand> unknown;  // nonsmooth summand, if any, moved last
  std::vector<std::size_t> unknown_index;
};

ScenarioParts split(const Scenario& scenario) {
  ScenarioParts parts;
  std::optional<std::size_t> nonsmooth;
  for (std::size_t i = 0; i < scenario.summands.size(); ++i) {
    const auto& s = scenario.summands[i];
    if (s.is_known()) {
      parts.known.push_back(*s.known);
      parts.known_index.push_back(i);
    } else if (!s.params.smooth() && !nonsmooth) {
      nonsmooth = i;
    } else {
      parts.unknown.push_back(s);
      parts.unknown_index.push_back(i);
    }
  }
  if (nonsmooth) {
    parts.unknown.push_back(scenario.summands[*nonsmooth]);
    parts.unknown_index.push_back(*nonsmooth);
  }
  return parts;
}

void require_pattern(bool ok, Predicate p, const char* why) {
  if (!ok) {
    throw UnsupportedScenario("predicate " + std::string(to_string(p)) + ": " + why);
  }
}

// Both-active subgradient for the bounded two-nonsmooth case: the min-norm g
// in span{d1, d2} with <g, d1> = mu1|d1|^2 and <g, d2> = -mu2|d2|^2.
std::optional<Vec> both_active_gradient(const Vec& d1, const Vec& d2, double mu1, double mu2) {
  Eigen::Matrix2d gram;
  gram << d1.squaredNorm(), d1.dot(d2), d1.dot(d2), d2.squaredNorm();
  const double det = gram.determinant();
  if (!(std::abs(det) > 1e-12 * gram(0, 0) * gram(1, 1))) return std::nullopt;
  const Eigen::Vector2d rhs(mu1 * d1.squaredNorm(), -mu2 * d2.squaredNorm());
  const Eigen::Vector2d coef = gram.inverse() * rhs;
  return Vec(coef(0) * d1 + coef(1) * d2);
}

}  // namespace

std::string_view to_string(Predicate p) {
  for (const auto& [k, name] : kPredicateNames) {
    if (k == p) return name;
  }
  return "unknown";
}

std::optional<Predicate> parse_predicate(std::string_view name) {
  for (const auto& [k, n] : kPredicateNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Verdict member_two_smooth(const Vec& x_star, const Summand& s1, const Summand& s2,
                          const Tolerance& tol) {
  const std::array<Summand, 2> pair{s1, s2};
  require_all_smooth(pair, "member_two_smooth");
  const double scale = summands_scale(x_star, pair);
  const Vec d1 = x_star - s1.x_star;
  const Vec d2 = x_star - s2.x_star;
  const double L1 = s1.params.L(), mu1 = s1.params.mu();
  const double L2 = s2.params.L(), mu2 = s2.params.mu();
  const double margin =
      (L1 - mu1) * d1.norm() + (L2 - mu2) * d2.norm() - ((L1 + mu1) * d1 + (L2 + mu2) * d2).norm();
  return make_verdict(margin, tol.eps(scale));
}

Verdict member_smooth_nonsmooth(const Vec& x_star, const Summand& s1, const Summand& s2,
                                const Tolerance& tol) {
  if (!s1.params.smooth() || s2.params.smooth()) {
    throw UnsupportedScenario("member_smooth_nonsmooth: needs L1 < inf and L2 = inf");
  }
  const std::array<Summand, 2> pair{s1, s2};
  const double scale = summands_scale(x_star, pair);
  const double margin = nonsmooth_family_margin(x_star, pair, Vec::Zero(x_star.size()));
  return make_verdict(margin, tol.eps(scale));
}

double min_bound_B(double mu1, double mu2, const Vec& x1, const Vec& x2) {
  require_same_dim(x1, x2, "min_bound_B");
  if (mu1 < 0.0 || mu2 < 0.0 || !(mu1 + mu2 > 0.0)) {
    throw DomainError("min_bound_B: need mu1, mu2 >= 0 and mu1 + mu2 > 0");
  }
  return mu1 * mu2 / (mu1 + mu2) * (x1 - x2).norm();
}

Verdict member_two_nonsmooth_bounded(const Vec& x_star, const Summand& s1, const Summand& s2,
                                     double B, const Tolerance& tol) {
  if (s1.params.smooth() || s2.params.smooth()) {
    throw UnsupportedScenario("member_two_nonsmooth_bounded: both summands need L = inf");
  }
  if (!std::isfinite(B) || B <= 0.0) throw DomainError("member_two_nonsmooth_bounded: B must be > 0");
  const std::array<Summand, 2> pair{s1, s2};
  const double scale = std::max(summands_scale(x_star, pair), B);
  const double eps = tol.eps(scale);
  const double mu1 = s1.params.mu();
  const double mu2 = s2.params.mu();
  if ((s1.x_star - s2.x_star).norm() <= eps) {
    throw CoincidentPoints("member_two_nonsmooth_bounded: requires x1* != x2*");
  }
  const double b_min = min_bound_B(mu1, mu2, s1.x_star, s2.x_star);
  if (B < b_min - eps) return Verdict{State::outside, B - b_min, {}};

  const Vec d1 = x_star - s1.x_star;
  const Vec d2 = x_star - s2.x_star;
  const double n1 = d1.norm();
  const double n2 = d2.norm();

  ConditionSet fired;
  const double base = std::min(B - mu1 * n1, B - mu2 * n2);
  if (base >= -eps) fired.set(ConditionSet::base_norms);

  // On top of a summand minimizer that summand's subgradient is unconstrained;
  // only the other base norm matters. The limiting clause is recorded.
  if (n1 <= eps || n2 <= eps) {
    fired.set(n1 <= eps ? ConditionSet::clause_ii : ConditionSet::clause_i);
    return make_verdict(base, eps, fired);
  }

  const double inner = d1.dot(d2);
  const double c_i = (-mu1 * inner - mu2 * n2 * n2) / n2;
  const double c_ii = (-mu2 * inner - mu1 * n1 * n1) / n1;
  const double c_iii = det_m(x_star, s1.x_star, s2.x_star, mu1, mu2, B * B, tol) / (2.0 * B);
  if (c_i >= -eps) fired.set(ConditionSet::clause_i);
  if (c_ii >= -eps) fired.set(ConditionSet::clause_ii);
  if (c_iii >= -eps) fired.set(ConditionSet::clause_iii);

  const double margin = std::min(base, std::max({c_i, c_ii, c_iii}));
  return make_verdict(margin, eps, fired);
}

Verdict member_m_smooth(const Vec& x_star, std::span<const Summand> summands,
                        const Tolerance& tol) {
  if (summands.empty()) throw DomainError("member_m_smooth: no summands");
  require_all_smooth(summands, "member_m_smooth");
  const double scale = summands_scale(x_star, summands);
  const double margin = smooth_family_margin(x_star, summands, Vec::Zero(x_star.size()));
  return make_verdict(margin, tol.eps(scale));
}

Verdict member_m_one_nonsmooth(const Vec& x_star, std::span<const Summand> summands,
                               const Tolerance& tol) {
  require_last_nonsmooth(summands, "member_m_one_nonsmooth");
  const double scale = summands_scale(x_star, summands);
  const double margin = nonsmooth_family_margin(x_star, summands, Vec::Zero(x_star.size()));
  return make_verdict(margin, tol.eps(scale));
}

Verdict member_with_known(const Vec& x_star, std::span<const KnownFunction> known,
                          std::span<const Summand> unknown, const Tolerance& tol) {
  require_all_smooth(unknown, "member_with_known");
  const auto grads = known_gradients(x_star, known);
  const double scale =
      std::max(summands_scale(x_star, unknown), known_scale(known, grads));
  const Vec shift = 2.0 * sum_of(grads, x_star.size());
  const double margin = smooth_family_margin(x_star, unknown, shift);
  return make_verdict(margin, tol.eps(scale));
}

Verdict member_with_known_one_nonsmooth(const Vec& x_star, std::span<const KnownFunction> known,
                                        std::span<const Summand> unknown,
                                        const Tolerance& tol) {
  require_last_nonsmooth(unknown, "member_with_known_one_nonsmooth");
  const auto grads = known_gradients(x_star, known);
  const double scale =
      std::max(summands_scale(x_star, unknown), known_scale(known, grads));
  const double margin = nonsmooth_family_margin(x_star, unknown, sum_of(grads, x_star.size()));
  return make_verdict(margin, tol.eps(scale));
}

Vec focal_point_smooth(std::span<const Summand> summands) {
  if (summands.empty()) throw DomainError("focal_point: no summands");
  require_all_smooth(summands, "focal_point_smooth");
  Vec acc = Vec::Zero(summands.front().x_star.size());
  double total = 0.0;
  for (const auto& s : summands) {
    require_same_dim(acc, s.x_star, "focal_point");
    const double w = s.params.L() + s.params.mu();
    acc += w * s.x_star;
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("focal_point: zero total weight");
  return acc / total;
}

Vec focal_point_strongly_convex(std::span<const Summand> summands) {
  if (summands.empty()) throw DomainError("focal_point: no summands");
  Vec acc = Vec::Zero(summands.front().x_star.size());
  double total = 0.0;
  for (const auto& s : summands) {
    require_same_dim(acc, s.x_star, "focal_point");
    acc += s.params.mu() * s.x_star;
    total += s.params.mu();
  }
  if (!(total > 0.0)) throw DomainError("focal_point: zero total weight (all mu = 0)");
  return acc / total;
}

Vec focal_point(std::span<const Summand> summands) {
  const bool all_smooth =
      std::all_of(summands.begin(), summands.end(), [](const Summand& s) { return s.params.smooth(); });
  const bool none_smooth =
      std::none_of(summands.begin(), summands.end(), [](const Summand& s) { return s.params.smooth(); });
  if (all_smooth) return focal_point_smooth(summands);
  if (none_smooth) return focal_point_strongly_convex(summands);
  throw UnsupportedScenario("focal_point: defined for all-smooth or all-nonsmooth summands");
}

Predicate route(const Scenario& scenario) {
  scenario.validate();
  const std::size_t m = scenario.size();
  const std::size_t nonsmooth = scenario.nonsmooth_unknown_count();
  if (scenario.known_count() > 0) {
    if (nonsmooth == 0) return Predicate::with_known;
    if (nonsmooth == 1) return Predicate::with_known_one_nonsmooth;
    throw UnsupportedScenario("known functions with more than one nonsmooth unknown summand");
  }
  if (nonsmooth == 0) return m == 2 ? Predicate::two_smooth : Predicate::m_smooth;
  if (nonsmooth == 1) return m == 2 ? Predicate::smooth_nonsmooth : Predicate::m_one_nonsmooth;
  if (nonsmooth == 2 && m == 2) return Predicate::two_nonsmooth_bounded;
  throw UnsupportedScenario(
      "more than one nonsmooth summand: only the two-summand case with bound_B is characterized");
}

Verdict evaluate(const Scenario& scenario, const Vec& x_star, const Tolerance& tol) {
  return evaluate(scenario, x_star, route(scenario), tol);
}

Verdict evaluate(const Scenario& scenario, const Vec& x_star, Predicate predicate,
                 const Tolerance& tol) {
  scenario.validate();
  if (x_star.size() != scenario.dim()) {
    throw DimensionMismatch("point has dimension " + std::to_string(x_star.size()) +
                            ", scenario has " + std::to_string(scenario.dim()));
  }
  const ScenarioParts parts = split(scenario);
  const std::size_t m = scenario.size();
  const std::size_t nonsmooth = scenario.nonsmooth_unknown_count();
  const bool no_known = parts.known.empty();
  const auto& u = parts.unknown;

  switch (predicate) {
    case Predicate::two_smooth:
      require_pattern(no_known && m == 2 && nonsmooth == 0, predicate,
                      "needs exactly two smooth unknown summands");
      return member_two_smooth(x_star, u[0], u[1], tol);
    case Predicate::smooth_nonsmooth:
      require_pattern(no_known && m == 2 && nonsmooth == 1, predicate,
                      "needs one smooth and one nonsmooth unknown summand");
      return member_smooth_nonsmooth(x_star, u[0], u[1], tol);
    case Predicate::two_nonsmooth_bounded:
      require_pattern(no_known && m == 2 && nonsmooth == 2 && scenario.bound_B.has_value(),
                      predicate, "needs two nonsmooth unknown summands and bound_B");
      // split() keeps the first nonsmooth summand in place only when it is
      // unique; here both are nonsmooth, so restore scenario order.
      return member_two_nonsmooth_bounded(x_star, scenario.summands[0], scenario.summands[1],
                                          *scenario.bound_B, tol);
    case Predicate::m_smooth:
      require_pattern(no_known && nonsmooth == 0, predicate, "needs smooth unknown summands only");
      return member_m_smooth(x_star, u, tol);
    case Predicate::m_one_nonsmooth:
      require_pattern(no_known && nonsmooth == 1, predicate,
                      "needs unknown summands with exactly one L = inf");
      return member_m_one_nonsmooth(x_star, u, tol);
    case Predicate::with_known:
      require_pattern(nonsmooth == 0, predicate, "unknown summands must all be smooth");
      return member_with_known(x_star, parts.known, u, tol);
    case Predicate::with_known_one_nonsmooth:
      require_pattern(nonsmooth == 1, predicate, "needs exactly one nonsmooth unknown summand");
      return member_with_known_one_nonsmooth(x_star, parts.known, u, tol);
  }
  throw UnsupportedScenario("unknown predicate");
}

std::optional<std::vector<Vec>> witness_gradients(const Scenario& scenario, const Vec& x_star,
                                                  const Tolerance& tol) {
  const Predicate predicate = route(scenario);
  if (!evaluate(scenario, x_star, predicate, tol).member()) return std::nullopt;

  const auto n = x_star.size();
  std::vector<Vec> out(scenario.size(), Vec::Zero(n));

  if (predicate == Predicate::two_nonsmooth_bounded) {
    const Summand& s1 = scenario.summands[0];
    const Summand& s2 = scenario.summands[1];
    const double mu1 = s1.params.mu();
    const double mu2 = s2.params.mu();
    const Vec d1 = x_star - s1.x_star;
    const Vec d2 = x_star - s2.x_star;
    const double B = *scenario.bound_B;
    std::vector<Vec> candidates{mu1 * d1, -mu2 * d2};
    if (auto g = both_active_gradient(d1, d2, mu1, mu2)) candidates.push_back(*g);

    // Keep the admissible candidate of least norm.
    const ClassParams& p1 = s1.params;
    const ClassParams& p2 = s2.params;
    const double eps = tol.eps(std::max({max_abs(x_star), max_abs(s1.x_star),
                                         max_abs(s2.x_star), mu1, mu2, B}));
    std::optional<Vec> best;
    for (const auto& g : candidates) {
      const bool ok = minimizer_condition_margin(x_star, g, s1.x_star, p1) >= -eps &&
                      minimizer_condition_margin(x_star, -g, s2.x_star, p2) >= -eps &&
                      g.norm() <= B + eps;
      if (ok && (!best || g.norm() < best->norm())) best = g;
    }
    if (!best) best = candidates.front();
    out[0] = *best;
    out[1] = -*best;
    return out;
  }

  const ScenarioParts parts = split(scenario);
  Vec known_sum = Vec::Zero(n);
  for (std::size_t k = 0; k < parts.known.size(); ++k) {
    out[parts.known_index[k]] = parts.known[k].gradient(x_star);
    known_sum += out[parts.known_index[k]];
  }
  const auto& u = parts.unknown;
  if (u.empty()) return out;

  const bool last_nonsmooth = !u.back().params.smooth();
  std::vector<Vec> g(u.size(), Vec::Zero(n));
  if (!last_nonsmooth) {
    // Shrink every ball toward the common direction of the centers' sum:
    // g_i = c_i - r_i w with w = (sum c_i + K) / sum r_i puts each g_i in
    // its ball exactly when the membership inequality holds.
    Vec center_sum = known_sum;
    double radius_sum = 0.0;
    std::vector<Ball> balls;
    for (const auto& s : u) {
      balls.push_back(geometric_ball(x_star, s.x_star, s.params));
      center_sum += balls.back().center;
      radius_sum += balls.back().radius;
    }
    const Vec w = radius_sum > 0.0 ? Vec(center_sum / radius_sum) : Vec(Vec::Zero(n));
    for (std::size_t i = 0; i < u.size(); ++i) g[i] = balls[i].center - balls[i].radius * w;
  } else {
    // Each smooth g_i minimizes <g_i, d_m> over its ball.
    const Vec dm = x_star - u.back().x_star;
    const double nm = dm.norm();
    const Vec dir = nm > 0.0 ? Vec(dm / nm) : Vec(Vec::Zero(n));
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const Ball b = geometric_ball(x_star, u[i].x_star, u[i].params);
      g[i] = b.center - b.radius * dir;
    }
  }
  // Close the sum exactly on the last unknown summand.
  Vec rest = known_sum;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) rest += g[i];
  g.back() = -rest;
  for (std::size_t i = 0; i < u.size(); ++i) out[parts.unknown_index[i]] = g[i];
  return out;
}

}  // namespace minsum
