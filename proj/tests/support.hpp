// Shared helpers for the test binaries: seeded samplers and small fixtures.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "minsum/scenario.hpp"

namespace support {

using minsum::ClassParams;
using minsum::kInf;
using minsum::Mat;
using minsum::Scenario;
using minsum::Summand;
using minsum::Vec;

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out(k++) = x;
  return out;
}

inline Vec e(Eigen::Index n, Eigen::Index k) { return Vec::Unit(n, k); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

  Vec point(Eigen::Index n, double lo, double hi) {
    Vec v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = uniform(lo, hi);
    return v;
  }
  Vec gaussian(Eigen::Index n, double sigma = 1.0) {
    Vec v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = sigma * normal();
    return v;
  }
  // Uniform in the closed unit ball.
  Vec in_unit_ball(Eigen::Index n) {
    Vec v = gaussian(n);
    return v / v.norm() * std::pow(uniform(0.0, 1.0), 1.0 / static_cast<double>(n));
  }
  ClassParams smooth_params() {
    const double mu = uniform(0.0, 2.0);
    return ClassParams(mu, mu + uniform(0.1, 10.0));
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Summand smooth(Vec x, double mu, double L) { return Summand{std::move(x), ClassParams(mu, L), std::nullopt}; }
inline Summand nonsmooth(Vec x, double mu) { return Summand{std::move(x), ClassParams(mu, kInf), std::nullopt}; }

inline Mat rotation2(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

inline Scenario smooth_pair() {
  return Scenario{{smooth(vec({-1, 0}), 1, 5), smooth(vec({1, 0}), 1, 15)}, std::nullopt};
}
inline Scenario mixed_pair() {
  return Scenario{{smooth(vec({-1, 0}), 1, 4), nonsmooth(vec({1, 0}), 3)}, std::nullopt};
}
inline Scenario bounded_pair() { return Scenario{{nonsmooth(vec({-1, 0}), 1.75), nonsmooth(vec({1, 0}), 2)}, 3.0}; }
inline Scenario bounded_pair_mu0() { return Scenario{{nonsmooth(vec({-1, 0}), 1.75), nonsmooth(vec({1, 0}), 0)}, 3.0}; }

inline std::string scenario_dir() { return MINSUM_SCENARIO_DIR; }

// Fresh path inside the system temp directory.
inline std::filesystem::path temp_path(const std::string& name) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() / "minsum_tests";
  std::filesystem::create_directories(dir);
  return dir / (std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
}

inline std::string write_temp(const std::string& name, const std::string& content) {
  const auto p = temp_path(name);
  std::ofstream(p) << content;
  return p.string();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace support
