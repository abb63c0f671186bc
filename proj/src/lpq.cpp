#include "tmoments/lpq.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

namespace tmoments::lpq {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr double kWidthTol = 1e-12;
constexpr double kPairSymmetryTol = 1e-9;
constexpr int kMaxDoublings = 60;
constexpr int kMaxIterations = 200;

// Root of a strictly decreasing residual inside [lo, hi] with
// r(lo) >= 0 >= r(hi): secant proposals clipped to the bracket, bisection
// otherwise. Stops on |residual| <= kResidualTol or bracket width
// <= kWidthTol * (1 + |m|); the width criterion is what guarantees the root
// itself, since the residual magnitude scales with the moments and cannot
// always reach an absolute threshold in double precision.
double solve_bracketed(const std::function<double(double)>& residual,
                       double lo, double hi, double r_lo, double r_hi) {
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    mid = 0.5 * (lo + hi);
    if (it % 2 == 1 && r_lo != r_hi) {
      const double secant = lo + (hi - lo) * r_lo / (r_lo - r_hi);
      if (secant > lo && secant < hi) mid = secant;
    }
    const double r_mid = residual(mid);
    if (std::fabs(r_mid) <= kResidualTol) return mid;
    if (r_mid > 0.0) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
      r_hi = r_mid;
    }
    if (hi - lo <= kWidthTol * (1.0 + std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

// Expands [center - 1, center + 1] outward (doubling the reach on the side
// whose sign is wrong) until the decreasing residual brackets its root.
double solve_decreasing(const std::function<double(double)>& residual,
                        double center) {
  double lo = center - 1.0;
  double hi = center + 1.0;
  double r_lo = residual(lo);
  double r_hi = residual(hi);
  double reach = 2.0;
  for (int i = 0; r_lo < 0.0; ++i) {
    if (i >= kMaxDoublings) {
      throw std::runtime_error("failed to bracket the root (left expansion)");
    }
    hi = lo;
    r_hi = r_lo;
    lo = center - reach;
    reach *= 2.0;
    r_lo = residual(lo);
  }
  for (int i = 0; r_hi > 0.0; ++i) {
    if (i >= kMaxDoublings) {
      throw std::runtime_error("failed to bracket the root (right expansion)");
    }
    lo = hi;
    r_lo = r_hi;
    hi = center + reach;
    reach *= 2.0;
    r_hi = residual(hi);
  }
  return solve_bracketed(residual, lo, hi, r_lo, r_hi);
}

// Quantile by cdf inversion; the p = 1 case and the bracket seed for p >= 2.
double quantile_p1(const tdist::StudentT& dist, double tau) {
  auto residual = [&](double m) { return tau - dist.cdf(m); };
  return solve_decreasing(residual, 0.0);
}

}  // namespace

double loss(int p, double tau, double x) {
  if (p < 1) throw UnsupportedPowerError("loss requires p >= 1");
  const double plus = x > 0.0 ? x : 0.0;
  const double minus = x < 0.0 ? -x : 0.0;
  return tau * std::pow(plus, p) + (1.0 - tau) * std::pow(minus, p);
}

FocResidual foc_residual(const tdist::StudentT& dist, int p, double tau,
                         double m) {
  if (p < 2 || p > dist.dof()) {
    throw UnsupportedPowerError(
        "foc_residual requires 2 <= p <= dof so the order-(p-1) moments exist");
  }
  const double value = tau * dist.upper_partial_moment(p - 1, m) -
                       (1.0 - tau) * dist.lower_partial_moment(p - 1, m);
  return {m, value};
}

double lp_quantile(const tdist::StudentT& dist, const LpQuantileQuery& query) {
  if (query.p < 1 || query.p > dist.dof()) {
    throw UnsupportedPowerError(
        "lp_quantile requires 1 <= p <= dof so the FOC moments exist");
  }
  if (!(query.tau > 0.0 && query.tau < 1.0)) {
    throw std::domain_error("lp_quantile requires tau in (0, 1)");
  }
  if (!(query.affine_b > 0.0)) {
    throw std::domain_error("lp_quantile requires affine scale b > 0");
  }
  double root;
  if (query.p == 1) {
    root = quantile_p1(dist, query.tau);
  } else {
    const double seed = quantile_p1(dist, query.tau);
    auto residual = [&](double m) {
      return foc_residual(dist, query.p, query.tau, m).value;
    };
    root = solve_decreasing(residual, seed);
  }
  return query.affine_a + query.affine_b * root;
}

std::vector<std::pair<int, int>> symmetry_pairs(int dof) {
  if (dof < 1) throw std::domain_error("symmetry_pairs requires dof >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; 2 * j <= dof + 1; ++j) {
    pairs.emplace_back(j, dof - j + 1);
  }
  return pairs;
}

verify::VerificationReport verify_theorem4(const tdist::StudentT& dist,
                                           const std::vector<double>& tau_grid) {
  double max_dev = 0.0;
  for (const auto& [j, k] : symmetry_pairs(dist.dof())) {
    for (const double tau : tau_grid) {
      const double rho_j = lp_quantile(dist, {j, tau});
      const double rho_k = lp_quantile(dist, {k, tau});
      const double dev = std::fabs(rho_k - rho_j) / (1.0 + std::fabs(rho_j));
      if (dev > max_dev) max_dev = dev;
    }
  }
  std::ostringstream grid;
  grid << "n=" << dist.dof() << ", pairs (j, n-j+1) for j=1.."
       << (dist.dof() + 1) / 2 << ", " << tau_grid.size() << " tau values";
  if (!tau_grid.empty()) {
    grid << " in [" << tau_grid.front() << ", " << tau_grid.back() << "]";
  }
  return {"thm4", grid.str(), max_dev, kPairSymmetryTol, max_dev <= kPairSymmetryTol};
}

}  // namespace tmoments::lpq
