#include "tmoments/oracle.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

namespace tmoments::oracle {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;

// Stirling coefficients B_{2k} / (2k (2k-1)) for k = 1..8.
constexpr std::array<long double, 8> kStirling = {
    1.0L / 12.0L,         -1.0L / 360.0L,       1.0L / 1260.0L,
    -1.0L / 1680.0L,      1.0L / 1188.0L,       -691.0L / 360360.0L,
    1.0L / 156.0L,        -3617.0L / 122400.0L,
};

long double ref_log_gamma_l(long double x) {
  long double shift = 0.0L;
  while (x < 32.0L) {
    shift -= std::log(x);
    x += 1.0L;
  }
  const long double inv2 = 1.0L / (x * x);
  long double series = kStirling[7];
  for (int k = 6; k >= 0; --k) series = kStirling[k] + inv2 * series;
  return shift + (x - 0.5L) * std::log(x) - x + 0.5L * std::log(2.0L * kPiL) +
         series / x;
}

long double log_density_constant(int dof) {
  return ref_log_gamma_l(0.5L * (dof + 1)) - ref_log_gamma_l(0.5L * dof) -
         0.5L * std::log(dof * kPiL);
}

double log_t_pdf(int dof, double y) {
  const double ay = std::fabs(y);
  double log1py;  // log(1 + y^2/n), safe against y^2 overflow
  if (ay > 1e150) {
    log1py = 2.0 * std::log(ay) - std::log(static_cast<double>(dof));
  } else {
    log1py = std::log1p(y * y / dof);
  }
  return static_cast<double>(log_density_constant(dof)) -
         0.5 * (dof + 1) * log1py;
}

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half; the rule
// is symmetric). Nodes are interior, so integrand endpoints are never hit.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& estimate, double& error) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double offset = half * kKronrodNodes[i];
    const double fv = i == 7 ? f(mid) : f(mid - offset) + f(mid + offset);
    kronrod += kKronrodWeights[i] * fv;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fv;
  }
  estimate = kronrod * half;
  error = std::fabs(kronrod - gauss) * half;
}

struct Segment {
  double a, b, estimate, error;
  int depth;
};

// Adaptive subdivision of [0, 1]. The local acceptance budget is distributed
// proportionally to segment length against a first-pass estimate of the
// whole integral.
template <typename F>
QuadResult adaptive_unit(const F& f, const QuadratureSpec& spec,
                         const char* label) {
  double first_estimate, first_error;
  gk15(f, 0.0, 1.0, first_estimate, first_error);
  const double budget =
      std::max(spec.abs_tol, spec.rel_tol * std::fabs(first_estimate));

  std::vector<Segment> work{{0.0, 1.0, first_estimate, first_error, 0}};
  double total = 0.0;
  double bound = 0.0;
  bool depth_exhausted = false;
  while (!work.empty()) {
    const Segment seg = work.back();
    work.pop_back();
    const double local_budget = budget * (seg.b - seg.a);
    if (seg.error <= local_budget || seg.depth >= spec.max_depth) {
      if (seg.error > local_budget) depth_exhausted = true;
      total += seg.estimate;
      bound += seg.error;
      continue;
    }
    const double mid = 0.5 * (seg.a + seg.b);
    Segment left{seg.a, mid, 0.0, 0.0, seg.depth + 1};
    Segment right{mid, seg.b, 0.0, 0.0, seg.depth + 1};
    gk15(f, left.a, left.b, left.estimate, left.error);
    gk15(f, right.a, right.b, right.estimate, right.error);
    work.push_back(left);
    work.push_back(right);
  }
  if (depth_exhausted &&
      bound > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
    throw AccuracyError(std::string(label) +
                            ": subdivision depth exhausted before tolerance",
                        total, bound);
  }
  return {total, bound};
}

// One half-line moment integral: int_0^inf u^j f(center +/- u) du mapped by
// u = t/(1-t), du = (1+u)^2 dt. The integrand behaves like u^(j-n+1) for
// large u, bounded for j <= n - 1.
QuadResult half_line_moment(int dof, int order, double center, bool upper,
                            const QuadratureSpec& spec) {
  const double direction = upper ? 1.0 : -1.0;
  auto integrand = [&](double t) -> double {
    const double u = t / (1.0 - t);
    const double y = center + direction * u;
    // u^order overflows for extreme subdivision near t = 1; fall back to logs.
    if (order > 0 && u > 1e18) {
      return std::exp(order * std::log(u) + log_t_pdf(dof, y) +
                      2.0 * std::log1p(u));
    }
    const double w = (1.0 + u) * (1.0 + u);
    const double density = std::exp(log_t_pdf(dof, y));
    return order == 0 ? density * w : std::pow(u, order) * density * w;
  };
  return adaptive_unit(integrand, spec,
                       upper ? "quad upper partial moment"
                             : "quad lower partial moment");
}

void require_order_exists(int dof, int order) {
  if (dof < 1) throw std::domain_error("degrees of freedom must be >= 1");
  if (order < 0 || order > dof - 1) {
    throw std::domain_error(
        "moment order " + std::to_string(order) + " does not exist for " +
        std::to_string(dof) + " degrees of freedom (need 0 <= order <= dof-1)");
  }
}

}  // namespace

double ref_log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ref_log_gamma requires x > 0");
  }
  return static_cast<double>(ref_log_gamma_l(static_cast<long double>(x)));
}

double t_pdf(int dof, double y) {
  if (dof < 1) throw std::domain_error("degrees of freedom must be >= 1");
  return std::exp(log_t_pdf(dof, y));
}

QuadResult quad_partial_moment_detailed(int dof, int order, double center,
                                        Side side, const QuadratureSpec& spec) {
  require_order_exists(dof, order);
  switch (side) {
    case Side::upper:
      return half_line_moment(dof, order, center, true, spec);
    case Side::lower:
      return half_line_moment(dof, order, center, false, spec);
    case Side::complete: {
      const QuadResult up = half_line_moment(dof, order, center, true, spec);
      const QuadResult lo = half_line_moment(dof, order, center, false, spec);
      const double sign = order % 2 == 0 ? 1.0 : -1.0;
      return {up.value + sign * lo.value, up.error_bound + lo.error_bound};
    }
  }
  throw std::logic_error("unreachable moment side");
}

double quad_partial_moment(int dof, int order, double center, Side side,
                           const QuadratureSpec& spec) {
  return quad_partial_moment_detailed(dof, order, center, side, spec).value;
}

std::pair<double, double> mc_partial_moment(int dof, int order, double center,
                                            Side side, const McSpec& spec) {
  require_order_exists(dof, order);
  if (spec.samples < 10'000) {
    throw std::domain_error("mc_partial_moment requires at least 10^4 samples");
  }
  if (order == dof - 1) {
    std::fprintf(stderr,
                 "mc_partial_moment: order %d estimates for dof %d have "
                 "infinite sampling variance; the standard error is "
                 "unreliable\n",
                 order, dof);
  }

  std::mt19937_64 gen(spec.seed);
  // Uniform in (0, 1] from the top 53 bits, then Box-Muller; both steps are
  // pinned down here so the stream never depends on library internals.
  auto uniform = [&gen]() -> double {
    return 1.0 - static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  bool have_spare = false;
  double spare = 0.0;
  auto normal = [&]() -> double {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare = r * std::sin(phi);
    have_spare = true;
    return r * std::cos(phi);
  };

  double sum = 0.0;
  double sum_sq = 0.0;
  const double n_samples = static_cast<double>(spec.samples);
  for (std::uint64_t i = 0; i < spec.samples; ++i) {
    const double z = normal();
    double w = 0.0;
    for (int k = 0; k < dof; ++k) {
      const double zk = normal();
      w += zk * zk;
    }
    const double t = z / std::sqrt(w / dof);
    const double x = t - center;
    double g = 0.0;
    switch (side) {
      case Side::upper:
        g = x > 0.0 ? std::pow(x, order) : 0.0;
        break;
      case Side::lower:
        g = x < 0.0 ? std::pow(-x, order) : 0.0;
        break;
      case Side::complete:
        g = order == 0 ? 1.0 : std::pow(x, order);
        break;
    }
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / n_samples;
  const double variance =
      std::max(0.0, sum_sq / n_samples - mean * mean) * n_samples /
      (n_samples - 1.0);
  return {mean, std::sqrt(variance / n_samples)};
}

double quad_lp_quantile(int dof, int p, double tau, const QuadratureSpec& spec) {
  if (dof < 1) throw std::domain_error("degrees of freedom must be >= 1");
  if (p < 1 || p > dof) {
    throw std::domain_error("quad_lp_quantile requires 1 <= p <= dof");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::domain_error("quad_lp_quantile requires tau in (0, 1)");
  }
  // tau * upper_(p-1)(m) - (1-tau) * lower_(p-1)(m), strictly decreasing in m.
  auto residual = [&](double m) -> double {
    const double up = quad_partial_moment(dof, p - 1, m, Side::upper, spec);
    const double lo = quad_partial_moment(dof, p - 1, m, Side::lower, spec);
    return tau * up - (1.0 - tau) * lo;
  };
  double lo = -1.0;
  double hi = 1.0;
  double r_lo = residual(lo);
  double r_hi = residual(hi);
  for (int i = 0; r_lo < 0.0 && i < 60; ++i) {
    hi = lo;
    r_hi = r_lo;
    lo *= 2.0;
    r_lo = residual(lo);
  }
  for (int i = 0; r_hi > 0.0 && i < 60; ++i) {
    lo = hi;
    r_lo = r_hi;
    hi *= 2.0;
    r_hi = residual(hi);
  }
  if (r_lo < 0.0 || r_hi > 0.0) {
    throw std::runtime_error("quad_lp_quantile failed to bracket the root");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-11 * (1.0 + std::fabs(mid))) break;
    const double r_mid = residual(mid);
    if (r_mid == 0.0) return mid;
    if (r_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace tmoments::oracle
