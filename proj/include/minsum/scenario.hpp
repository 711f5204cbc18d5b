// Problem instances: summands known through a minimizer and a function class,
// optionally fully known quadratics, plus the gradient bound of the
// two-nonsmooth regime.
#pragma once

#include <optional>
#include <vector>

#include "minsum/geometry.hpp"
#include "minsum/interpolation.hpp"

namespace minsum {

/// f(x) = 1/2 (x - center)^T A (x - center) with A symmetric PSD.
class KnownFunction {
 public:
  enum class Kind { quadratic };

  static KnownFunction quadratic(Mat A, Vec center, const Tolerance& tol = {});

  Kind kind() const { return Kind::quadratic; }
  const Mat& matrix() const { return A_; }
  const Vec& center() const { return center_; }
  Eigen::Index dim() const { return center_.size(); }

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  /// Spectral bounds of A (smallest, largest eigenvalue).
  std::pair<double, double> spectrum() const;

  bool operator==(const KnownFunction& o) const;

 private:
  KnownFunction(Mat A, Vec center) : A_(std::move(A)), center_(std::move(center)) {}

  Mat A_;
  Vec center_;
};

struct Summand {
  Vec x_star;
  ClassParams params;
  std::optional<KnownFunction> known;

  bool is_known() const { return known.has_value(); }
  bool operator==(const Summand& o) const;
};

struct Scenario {
  std::vector<Summand> summands;
  std::optional<double> bound_B;

  Eigen::Index dim() const { return summands.empty() ? 0 : summands.front().x_star.size(); }
  std::size_t size() const { return summands.size(); }

  /// Unknown summands with L = inf.
  std::size_t nonsmooth_unknown_count() const;
  std::size_t known_count() const;

  /// Throws DimensionMismatch / DomainError / UnsupportedScenario on a
  /// malformed instance. bound_B must be present exactly when two or more
  /// summands have L = inf.
  void validate() const;

  bool operator==(const Scenario& o) const;
};

}  // namespace minsum
