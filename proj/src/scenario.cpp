#include "minsum/scenario.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "minsum/errors.hpp"

namespace minsum {

KnownFunction KnownFunction::quadratic(Mat A, Vec center, const Tolerance& tol) {
  if (A.rows() != A.cols() || A.rows() != center.size() || center.size() == 0) {
    throw DimensionMismatch("known quadratic: matrix must be n x n with n = dim(center)");
  }
  if (!A.allFinite() || !center.allFinite()) {
    throw DomainError("known quadratic: non-finite entry");
  }
  const double scale = A.cwiseAbs().maxCoeff();
  const double eps = tol.eps(scale);
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > eps) {
    throw DomainError("known quadratic: matrix is not symmetric");
  }
  const Mat sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eps) {
    throw DomainError("known quadratic: matrix is not positive semidefinite");
  }
  return KnownFunction(sym, std::move(center));
}

double KnownFunction::value(const Vec& x) const {
  require_same_dim(x, center_, "known function");
  const Vec d = x - center_;
  return 0.5 * d.dot(A_ * d);
}

Vec KnownFunction::gradient(const Vec& x) const {
  require_same_dim(x, center_, "known function");
  return A_ * (x - center_);
}

std::pair<double, double> KnownFunction::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(A_, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

bool KnownFunction::operator==(const KnownFunction& o) const {
  return A_.rows() == o.A_.rows() && A_.cols() == o.A_.cols() && A_ == o.A_ &&
         center_.size() == o.center_.size() && center_ == o.center_;
}

bool Summand::operator==(const Summand& o) const {
  return x_star.size() == o.x_star.size() && x_star == o.x_star && params == o.params &&
         known == o.known;
}

std::size_t Scenario::nonsmooth_unknown_count() const {
  return static_cast<std::size_t>(std::count_if(summands.begin(), summands.end(), [](const Summand& s) {
    return !s.is_known() && !s.params.smooth();
  }));
}

std::size_t Scenario::known_count() const {
  return static_cast<std::size_t>(
      std::count_if(summands.begin(), summands.end(), [](const Summand& s) { return s.is_known(); }));
}

void Scenario::validate() const {
  if (summands.empty()) throw DomainError("scenario: at least one summand required");
  const auto n = dim();
  if (n == 0) throw DimensionMismatch("scenario: empty minimizer vector");
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto& s = summands[i];
    if (s.x_star.size() != n) {
      throw DimensionMismatch("scenario: summand " + std::to_string(i) + " has dimension " +
                              std::to_string(s.x_star.size()) + ", expected " + std::to_string(n));
    }
    if (!s.x_star.allFinite()) throw DomainError("scenario: non-finite minimizer");
    if (s.known && s.known->dim() != n) {
      throw DimensionMismatch("scenario: known function of summand " + std::to_string(i) +
                              " has wrong dimension");
    }
  }
  const std::size_t nonsmooth = nonsmooth_unknown_count();
  if (bound_B) {
    if (!std::isfinite(*bound_B) || *bound_B <= 0.0) {
      throw DomainError("scenario: bound_B must be finite and > 0");
    }
    if (nonsmooth < 2) {
      throw UnsupportedScenario("scenario: bound_B applies only when two summands have L = inf");
    }
  } else if (nonsmooth >= 2) {
    throw UnsupportedScenario(
        "scenario: two or more nonsmooth summands need bound_B; without a gradient bound the "
        "potential-minimizer set is unbounded and its closure is the whole space (n >= 2)");
  }
}

bool Scenario::operator==(const Scenario& o) const {
  return summands == o.summands && bound_B == o.bound_B;
}

}  // namespace minsum
