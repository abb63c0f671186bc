#pragma once

#include <utility>

#include "tmoments/errors.hpp"

namespace tmoments::specfun {

struct Hyp2F1Args {
  double a;
  double b;
  double c;
  double z;
};

// Rising factorial (x)_k = x(x+1)...(x+k-1), with (x)_0 = 1.
// Computed as a finite product, never as a Gamma ratio, so nonpositive-integer
// x gives exact results: (-m)_k = 0 for k > m and (-1)^k m!/(m-k)! otherwise.
double pochhammer(double x, int k);

// log Gamma(x) for x > 0 (Lanczos approximation, g = 7, 9 coefficients).
// Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Euler beta function B(p, q) = Gamma(p)Gamma(q)/Gamma(p+q) for p, q > 0,
// computed in log space and exponentiated once.
double beta_fn(double p, double q);

// Gauss hypergeometric function 2F1(a, b, c; z) for real arguments.
// (a, b) are canonicalized (sorted) on entry so the a<->b symmetry holds
// bit-exactly on every evaluation path. Dispatch order:
//   1. terminating series when a or b is a nonpositive integer (any z),
//   2. direct series for |z| < 1,
//   3. Pfaff transform z -> z/(z-1) for z < 0,
//   4. 1/z connection formula for z < -1 when a - b is not an integer.
// Throws std::domain_error when c is a nonpositive integer, EvaluationError
// (listing the attempted paths) when no path converges.
double hyp2f1(double a, double b, double c, double z);
double hyp2f1(const Hyp2F1Args& args);

// Left and right side of Euler's transformation
//   2F1(a, b, c; z) = (1-z)^(c-a-b) 2F1(c-a, c-b, c; z),
// each side evaluated independently. Requires z < 1 and c > a > 0 or
// c > b > 0 so both sides are defined; throws std::domain_error otherwise.
std::pair<double, double> euler_transform_check(const Hyp2F1Args& args);

namespace detail {

bool is_nonpositive_integer(double x);

// log |Gamma(x)| for any non-pole x; sign receives the sign of Gamma(x).
double log_abs_gamma(double x, int& sign);

// Individual evaluation paths, exposed for path-consistency tests.
// Each assumes canonicalized arguments and throws EvaluationError when its
// own series does not converge.
double hyp2f1_series(double a, double b, double c, double z);
double hyp2f1_terminating(double a, double b, double c, double z, int degree);
double hyp2f1_pfaff(double a, double b, double c, double z);
double hyp2f1_connection(double a, double b, double c, double z);

}  // namespace detail

}  // namespace tmoments::specfun
