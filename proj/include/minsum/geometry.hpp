// Finite-dimensional primitives the membership predicates reduce to: balls,
// half-spaces, their intersection margins and projections, and the 3x3
// Gram-style matrix of the bounded two-nonsmooth case.
#pragma once

#include <Eigen/Core>

#include "minsum/tolerance.hpp"

namespace minsum {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Closed Euclidean ball.
struct Ball {
  Vec center;
  double radius = 0.0;
};

/// {g : <normal, g> <= offset}. A zero normal is the whole space when
/// offset >= 0 and empty otherwise.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;
};

Ball make_ball(Vec center, double radius);
HalfSpace make_halfspace(Vec normal, double offset);

/// Throws DimensionMismatch unless a and b have the same (nonzero) size.
void require_same_dim(const Vec& a, const Vec& b, const char* what);

/// Largest absolute coordinate; 0 for an empty vector.
double max_abs(const Vec& v);

/// (r1 + r2) - |c1 - c2|. Nonnegative iff the balls intersect.
double balls_intersect_margin(const Ball& b1, const Ball& b2);

/// offset - (<normal, center> - radius |normal|). Nonnegative iff the ball
/// meets the half-space.
double ball_halfspace_margin(const Ball& b, const HalfSpace& h);

bool contains(const Ball& b, const Vec& p, double slack = 0.0);
bool contains(const HalfSpace& h, const Vec& p, double slack = 0.0);

Vec project(const Ball& b, const Vec& p);
Vec project(const HalfSpace& h, const Vec& p);

double distance(const Ball& b, const Vec& p);
double distance(const HalfSpace& h, const Vec& p);

/// Matrix with unit diagonal in (1,1),(2,2), normalized inner product of
/// x*-x1 and x*-x2 at (1,2), mu1|x*-x1| at (1,3), -mu2|x*-x2| at (2,3) and
/// alpha at (3,3). Throws CoincidentPoints when x* is within tolerance of x1
/// or x2.
Eigen::Matrix3d gram_matrix_m(const Vec& x_star, const Vec& x1, const Vec& x2,
                              double mu1, double mu2, double alpha,
                              const Tolerance& tol = {});

/// Determinant of gram_matrix_m by closed-form cofactor expansion:
///   alpha (1 - c^2) - a^2 - b^2 + 2abc,  a = M13, b = M23, c = M12.
double det_m(const Vec& x_star, const Vec& x1, const Vec& x2, double mu1,
             double mu2, double alpha, const Tolerance& tol = {});

}  // namespace minsum
