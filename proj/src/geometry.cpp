#include "minsum/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minsum/errors.hpp"

namespace minsum {

namespace {

void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + ": non-finite entry");
}

struct NormalizedPair {
  double n1;
  double n2;
  double cos12;
};

NormalizedPair normalized_pair(const Vec& x_star, const Vec& x1, const Vec& x2,
                               const Tolerance& tol) {
  require_same_dim(x_star, x1, "det_m");
  require_same_dim(x_star, x2, "det_m");
  const Vec d1 = x_star - x1;
  const Vec d2 = x_star - x2;
  const double n1 = d1.norm();
  const double n2 = d2.norm();
  const double scale = std::max({max_abs(x_star), max_abs(x1), max_abs(x2)});
  const double eps = tol.eps(scale);
  if (n1 <= eps || n2 <= eps) {
    throw CoincidentPoints("det_m: x* coincides with a summand minimizer");
  }
  const double c = std::clamp(d1.dot(d2) / (n1 * n2), -1.0, 1.0);
  return {n1, n2, c};
}

}  // namespace

Ball make_ball(Vec center, double radius) {
  require_finite(center, "ball center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw DomainError("ball radius must be finite and >= 0");
  }
  return Ball{std::move(center), radius};
}

HalfSpace make_halfspace(Vec normal, double offset) {
  require_finite(normal, "half-space normal");
  if (!std::isfinite(offset)) throw DomainError("half-space offset must be finite");
  if (normal.isZero(0.0) && offset < 0.0) throw DomainError("zero-normal half-space needs offset >= 0");
  return HalfSpace{std::move(normal), offset};
}

void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() == 0 || a.size() != b.size()) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
}

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double balls_intersect_margin(const Ball& b1, const Ball& b2) {
  require_same_dim(b1.center, b2.center, "balls_intersect_margin");
  return (b1.radius + b2.radius) - (b1.center - b2.center).norm();
}

double ball_halfspace_margin(const Ball& b, const HalfSpace& h) {
  require_same_dim(b.center, h.normal, "ball_halfspace_margin");
  return h.offset - (h.normal.dot(b.center) - b.radius * h.normal.norm());
}

bool contains(const Ball& b, const Vec& p, double slack) {
  return (p - b.center).norm() <= b.radius + slack;
}

bool contains(const HalfSpace& h, const Vec& p, double slack) {
  return h.normal.dot(p) <= h.offset + slack * h.normal.norm();
}

Vec project(const Ball& b, const Vec& p) {
  const Vec d = p - b.center;
  const double n = d.norm();
  if (n <= b.radius) return p;
  return b.center + d * (b.radius / n);
}

Vec project(const HalfSpace& h, const Vec& p) {
  const double nn = h.normal.squaredNorm();
  const double excess = h.normal.dot(p) - h.offset;
  if (excess <= 0.0 || nn == 0.0) return p;
  return p - h.normal * (excess / nn);
}

double distance(const Ball& b, const Vec& p) {
  return std::max(0.0, (p - b.center).norm() - b.radius);
}

double distance(const HalfSpace& h, const Vec& p) {
  const double nn = h.normal.norm();
  const double excess = h.normal.dot(p) - h.offset;
  if (excess <= 0.0) return 0.0;
  // Empty set (zero normal, negative offset): report the violated offset.
  if (nn == 0.0) return excess;
  return excess / nn;
}

Eigen::Matrix3d gram_matrix_m(const Vec& x_star, const Vec& x1, const Vec& x2,
                              double mu1, double mu2, double alpha,
                              const Tolerance& tol) {
  const auto [n1, n2, c] = normalized_pair(x_star, x1, x2, tol);
  Eigen::Matrix3d m;
  m << 1.0, c, mu1 * n1,  //
      c, 1.0, -mu2 * n2,  //
      mu1 * n1, -mu2 * n2, alpha;
  return m;
}

double det_m(const Vec& x_star, const Vec& x1, const Vec& x2, double mu1,
             double mu2, double alpha, const Tolerance& tol) {
  if (mu1 < 0.0 || mu2 < 0.0 || alpha < 0.0) {
    throw DomainError("det_m: mu1, mu2, alpha must be >= 0");
  }
  const auto [n1, n2, c] = normalized_pair(x_star, x1, x2, tol);
  const double a = mu1 * n1;
  const double b = -mu2 * n2;
  return alpha * (1.0 - c * c) - a * a - b * b + 2.0 * a * b * c;
}

}  // namespace minsum
