#pragma once

// Reference implementations used to validate the closed forms. Everything in
// this module is self-contained (standard library only) and shares no code
// with the closed-form modules, so agreement between the two is evidence
// rather than tautology.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace tmoments::oracle {

enum class Side { upper, lower, complete };

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_depth = 60;
};

struct McSpec {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 20240915ull;
};

struct QuadResult {
  double value;
  double error_bound;
};

// Raised when adaptive subdivision hits max_depth before meeting the
// tolerances; carries the best estimate and its error bound.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}
  double estimate;
  double error_bound;
};

// log Gamma(x) for x > 0 from the Stirling series in long double precision
// with upward recurrence below x = 32; several digits beyond double accuracy.
double ref_log_gamma(double x);

// Student t density with integer degrees of freedom.
double t_pdf(int dof, double y);

// E[((Y-m)_+)^j], E[((m-Y)_+)^j] or E[(Y-m)^j] by adaptive Gauss-Kronrod
// (G7, K15) quadrature after mapping each half line onto (0, 1) with
// y = m +/- t/(1-t). Requires j <= n - 1.
double quad_partial_moment(int dof, int order, double center, Side side,
                           const QuadratureSpec& spec = {});
QuadResult quad_partial_moment_detailed(int dof, int order, double center, Side side,
                                        const QuadratureSpec& spec = {});

// Plain Monte Carlo estimate (mean, standard error) of the same functional
// from t = Z / sqrt(W/n) with W a sum of n squared normals; the generator is
// a fixed 64-bit Mersenne twister with an explicit Box-Muller transform, so
// results are bit-reproducible for a given seed. Order n - 1 estimates have
// infinite sampling variance; a warning is emitted for them.
std::pair<double, double> mc_partial_moment(int dof, int order, double center,
                                            Side side, const McSpec& spec = {});

// Lp-quantile solved directly on the quadrature moments by bracketed
// bisection; the reference for the closed-form solver.
double quad_lp_quantile(int dof, int p, double tau, const QuadratureSpec& spec = {});

}  // namespace tmoments::oracle
