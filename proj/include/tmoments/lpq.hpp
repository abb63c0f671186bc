#pragma once

#include <utility>
#include <vector>

#include "tmoments/errors.hpp"
#include "tmoments/tdist.hpp"
#include "tmoments/verify.hpp"

namespace tmoments::lpq {

struct LpQuantileQuery {
  int p;
  double tau;
  double affine_a = 0.0;  // location of X = a + b Y
  double affine_b = 1.0;  // scale, must be > 0
};

struct FocResidual {
  double center;
  double value;
};

// Asymmetric power loss tau * (x_+)^p + (1 - tau) * (x_-)^p.
double loss(int p, double tau, double x);

// First-order-condition residual
//   tau * E[((Y-m)_+)^(p-1)] - (1 - tau) * E[((m-Y)_+)^(p-1)],
// strictly decreasing in m. Requires 2 <= p <= n so the order-(p-1)
// moments exist; throws UnsupportedPowerError otherwise.
FocResidual foc_residual(const tdist::StudentT& dist, int p, double tau, double m);

// The tau-th Lp-quantile of a + b Y for integer 1 <= p <= n. p = 1 inverts
// the cdf by bisection; p >= 2 solves the FOC by bracketed bisection/secant
// iteration. The affine map is applied after solving the standardized root.
double lp_quantile(const tdist::StudentT& dist, const LpQuantileQuery& query);

// Index pairs (j, n-j+1) for j = 1..ceil(n/2) whose Lp-quantiles coincide.
std::vector<std::pair<int, int>> symmetry_pairs(int dof);

// Solves both members of every symmetry pair independently over tau_grid and
// reports max |rho_{n-j+1} - rho_j| / (1 + |rho_j|) against tolerance 1e-9.
verify::VerificationReport verify_theorem4(const tdist::StudentT& dist,
                                           const std::vector<double>& tau_grid);

}  // namespace tmoments::lpq
