// Brute-force validators, independent of the closed-form predicates:
//
//  * seeded random quadratic instances whose exact sum minimizer must be a
//    member (necessity direction);
//  * cyclic projections onto the per-summand subgradient sets after the
//    sum-zero elimination (both directions);
//  * the minimum-norm subgradient QP of the bounded two-nonsmooth case,
//    solved by active-set enumeration.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "minsum/interpolation.hpp"
#include "minsum/membership.hpp"
#include "minsum/raster.hpp"
#include "minsum/scenario.hpp"

namespace minsum::oracle {

/// How Hessian eigenvalues are drawn within [mu, L].
enum class SpectrumMode {
  uniform,   // uniform in [mu, L]
  extremal,  // each eigenvalue is mu or L with equal probability
};

struct QuadraticInstance {
  std::vector<KnownFunction> summands;  // one per scenario summand
  Vec exact_minimizer;                  // (sum A_i)^{-1} (sum A_i x_i*)
  double residual = 0.0;                // |gradient of the sum at exact_minimizer|
};

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q.
Mat random_orthogonal(Eigen::Index n, std::mt19937_64& rng);

/// One quadratic per summand, A_i = Q_i D_i Q_i^T centered at x_i*. Summands
/// with L = inf get spectra in [mu, infinite_L_cap]; known summands are
/// copied verbatim. Deterministic in seed. A singular sum (all mu = 0) is
/// resampled with a derived seed.
QuadraticInstance sample_quadratic_instance(const Scenario& scenario, std::uint64_t seed,
                                            SpectrumMode mode = SpectrumMode::uniform,
                                            double infinite_L_cap = 0.0);

/// A constraint either on one block g_j or on the sum of all blocks.
struct Constraint {
  enum class Target { block, sum };
  Target target = Target::block;
  std::size_t block = 0;
  GradientSet set;
};

/// Find g_1..g_k in R^dim satisfying every constraint.
struct FeasibilityProblem {
  Eigen::Index dim = 0;
  std::size_t blocks = 1;
  std::vector<Constraint> constraints;
  int max_iterations = 100000;
  double tol = 1e-8;  // absolute, on the largest set distance
};

enum class FeasibilityStatus {
  feasible,
  infeasible_certified,  // separating hyperplane with positive gap (two sets)
  infeasible_heuristic,  // residual stagnated above 10 tol
  indeterminate,         // iteration cap reached
};

std::string_view to_string(FeasibilityStatus s);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::indeterminate;
  std::vector<Vec> point;  // last iterate, one vector per block
  double residual = 0.0;
  int iterations = 0;
  std::optional<double> certified_gap;  // lower bound on the set distance
};

FeasibilityResult feasibility_by_projection(const FeasibilityProblem& problem);

/// The subgradient system of a (non bounded-nonsmooth) scenario at x_star:
/// one block per unknown summand except the last, whose subgradient is
/// eliminated through the sum-zero condition. Tolerance is relative to the
/// instance's gradient scale.
FeasibilityProblem gradient_feasibility_problem(const Scenario& scenario, const Vec& x_star,
                                                double rel_tol = 1e-8,
                                                int max_iterations = 100000);

/// Recovers per-summand subgradients (scenario order) from a solved problem.
std::vector<Vec> gradients_from_blocks(const Scenario& scenario, const Vec& x_star,
                                       std::span<const Vec> blocks);

struct QpSolution {
  double value = 0.0;  // min |g|^2, +inf when the constraints are inconsistent
  Vec g;
};

/// min |g|^2 s.t. <g, x1 - x*> <= -mu1|x* - x1|^2 and
///               <g, x* - x2> <= -mu2|x* - x2|^2,
/// by enumerating the unconstrained, single-active and both-active cases.
QpSolution qp_min_norm_gradient(const Vec& x_star, const Vec& x1, const Vec& x2, double mu1,
                                double mu2);

using PredicateFn = std::function<Verdict(const Scenario&, const Vec&)>;

struct CrossCheckOptions {
  PredicateFn predicate;        // closed-form route when empty
  Tolerance tol{};
  double projection_tol = 1e-8;
  double band_rel = 1e-5;       // disagreements inside this band are boundary effects
  int max_iterations = 100000;
};

struct CrossCheckRecord {
  Vec point;
  Verdict verdict;
  std::string oracle;       // "projection" or "qp"
  std::string oracle_status;
  double oracle_value = 0.0;  // residual or QP optimum
  bool oracle_member = false;
};

struct CrossCheckReport {
  std::size_t checked = 0;
  std::size_t agreements = 0;
  std::size_t boundary_disagreements = 0;
  std::size_t indeterminate = 0;
  std::size_t heuristic_infeasible = 0;
  std::size_t skipped_degenerate = 0;
  std::vector<CrossCheckRecord> failures;

  bool ok() const { return failures.empty(); }
  void merge(const CrossCheckReport& other);
};

/// Compares the closed-form predicate with the matching oracle at each point.
CrossCheckReport cross_check(const Scenario& scenario, std::span<const Vec> points,
                             const CrossCheckOptions& options = {});

struct NecessityFailure {
  std::uint64_t seed = 0;
  Vec minimizer;
  Verdict verdict;
};

struct NecessityReport {
  std::size_t instances = 0;
  std::size_t discarded = 0;  // violated the gradient bound of the scenario
  double worst_margin = kInf;
  std::vector<NecessityFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Samples `count` quadratic instances (seeds first_seed, first_seed + 1, ...)
/// and checks that each exact minimizer is a member up to band_rel * scale.
/// In the bounded two-nonsmooth regime instances whose subgradient at the
/// minimizer exceeds B are discarded.
NecessityReport necessity_sweep(const Scenario& scenario, std::uint64_t first_seed,
                                std::size_t count, SpectrumMode mode = SpectrumMode::uniform,
                                const Tolerance& tol = {}, double band_rel = 1e-7);

enum class ScenarioFamily {
  two_smooth,
  smooth_nonsmooth,
  two_nonsmooth_bounded,
  m_smooth,
  m_one_nonsmooth,
  with_known,
};

std::optional<ScenarioFamily> parse_family(std::string_view name);
std::string_view to_string(ScenarioFamily f);

/// Random valid scenario of the given family in dimension n; deterministic in
/// seed.
Scenario random_scenario(ScenarioFamily family, std::uint64_t seed, Eigen::Index n = 2);

/// Box around the summand minimizers wide enough to contain the region and
/// some of its exterior.
BoundingBox default_box(const Scenario& scenario);

/// Uniform samples in `box` (2-D) or in the cube spanned by its x-range
/// (other dimensions); deterministic in seed.
std::vector<Vec> sample_points(const BoundingBox& box, Eigen::Index n, std::size_t count,
                               std::uint64_t seed);

/// Random convex combinations of the summand minimizers plus Gaussian noise
/// of standard deviation `spread` times the enclosing radius (at least
/// `spread`); concentrates samples where the region and its boundary are.
std::vector<Vec> sample_points_near(const Scenario& scenario, std::size_t count, std::uint64_t seed,
                                    double spread = 0.5);

/// Largest magnitude among the scenario's inputs and the point.
double scenario_scale(const Scenario& scenario, const Vec& x_star);

}  // namespace minsum::oracle
