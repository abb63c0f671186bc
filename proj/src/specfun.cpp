#include "tmoments/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace tmoments::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesStopRel = 1e-16;
constexpr int kMaxSeriesTerms = 10'000;

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

std::string describe_args(double a, double b, double c, double z) {
  std::ostringstream out;
  out << "hyp2f1(a=" << a << ", b=" << b << ", c=" << c << ", z=" << z << ")";
  return out.str();
}

// Degree of the terminating series when x is a nonpositive integer of
// manageable size, -1 otherwise.
int termination_degree(double x) {
  if (x > 0.0 || x != std::floor(x) || x < -1e6) return -1;
  return static_cast<int>(-x);
}

// Defining series with explicit termination after `degree` applications of
// the term recurrence; with degree < 0 it runs until the relative stopping
// rule or the term cap.
double series_core(double a, double b, double c, double z, int degree) {
  double sum = 1.0;
  double term = 1.0;
  const int cap = degree >= 0 ? degree : kMaxSeriesTerms;
  for (int k = 0; k < cap; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (degree < 0 && std::fabs(term) <= kSeriesStopRel * std::fabs(sum)) {
      return sum;
    }
  }
  if (degree >= 0) return sum;
  throw EvaluationError("series did not converge within " +
                        std::to_string(kMaxSeriesTerms) + " terms");
}

// Terminating check first, then the direct series; used by the transformed
// paths whose derived parameters may themselves be nonpositive integers.
double series_auto(double a, double b, double c, double z) {
  const int da = termination_degree(a);
  const int db = termination_degree(b);
  if (da >= 0 || db >= 0) {
    int degree = da >= 0 && db >= 0 ? std::min(da, db) : std::max(da, db);
    return series_core(a, b, c, z, degree);
  }
  if (std::fabs(z) >= 1.0) {
    throw EvaluationError("series requires |z| < 1");
  }
  return series_core(a, b, c, z, -1);
}

}  // namespace

double pochhammer(double x, int k) {
  if (k < 0) throw std::domain_error("pochhammer requires k >= 0");
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    const double factor = x + i;
    if (factor == 0.0) return 0.0;  // nonpositive-integer x, k > -x
    result *= factor;
  }
  return result;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
  if (x < 0.5) {
    // Reflection; sin(pi x) > 0 on (0, 1/2).
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  const double xm1 = x - 1.0;
  double sum = kLanczos[0];
  for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (xm1 + i);
  const double base = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(base) - base +
         std::log(sum);
}

double beta_fn(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw std::domain_error("beta_fn requires p > 0 and q > 0");
  }
  return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

namespace detail {

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

double log_abs_gamma(double x, int& sign) {
  if (x > 0.0) {
    sign = 1;
    return log_gamma(x);
  }
  if (is_nonpositive_integer(x)) {
    throw std::domain_error("log_abs_gamma: pole at nonpositive integer");
  }
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x)) with Gamma(1 - x) > 0 here.
  const double s = std::sin(kPi * x);
  sign = s > 0.0 ? 1 : -1;
  return std::log(kPi / std::fabs(s)) - log_gamma(1.0 - x);
}

double hyp2f1_series(double a, double b, double c, double z) {
  if (std::fabs(z) >= 1.0) throw EvaluationError("series requires |z| < 1");
  return series_core(a, b, c, z, -1);
}

double hyp2f1_terminating(double a, double b, double c, double z, int degree) {
  return series_core(a, b, c, z, degree);
}

// 2F1(a, b, c; z) = (1-z)^(-a) 2F1(a, c-b, c; z/(z-1)); for z < 0 the
// transformed argument lies in (0, 1).
double hyp2f1_pfaff(double a, double b, double c, double z) {
  const double w = z / (z - 1.0);
  return std::pow(1.0 - z, -a) * series_auto(a, c - b, c, w);
}

// Connection in 1/z for z < -1, standard-sign form:
//   2F1(a,b,c;z) = G(c)G(b-a)/(G(b)G(c-a)) (-z)^(-a) 2F1(a, a-c+1, a-b+1; 1/z)
//               + G(c)G(a-b)/(G(a)G(c-b)) (-z)^(-b) 2F1(b, b-c+1, b-a+1; 1/z).
// Requires a - b not an integer; a term whose denominator Gamma sits on a
// pole vanishes.
double hyp2f1_connection(double a, double b, double c, double z) {
  if (a - b == std::floor(a - b)) {
    throw EvaluationError("connection formula requires a - b not an integer");
  }
  const double w = 1.0 / z;
  const double log_mz = std::log(-z);
  double result = 0.0;
  int sign_num = 1, sign_den = 1, s = 1;
  if (!is_nonpositive_integer(c - a)) {
    double lg = log_abs_gamma(c, s);
    sign_num = s;
    lg += log_abs_gamma(b - a, s);
    sign_num *= s;
    lg -= log_abs_gamma(b, s);
    sign_den = s;
    lg -= log_abs_gamma(c - a, s);
    sign_den *= s;
    const double coeff = sign_num * sign_den * std::exp(lg - a * log_mz);
    result += coeff * series_auto(a, a - c + 1.0, a - b + 1.0, w);
  }
  if (!is_nonpositive_integer(c - b)) {
    double lg = log_abs_gamma(c, s);
    sign_num = s;
    lg += log_abs_gamma(a - b, s);
    sign_num *= s;
    lg -= log_abs_gamma(a, s);
    sign_den = s;
    lg -= log_abs_gamma(c - b, s);
    sign_den *= s;
    const double coeff = sign_num * sign_den * std::exp(lg - b * log_mz);
    result += coeff * series_auto(b, b - c + 1.0, b - a + 1.0, w);
  }
  return result;
}

}  // namespace detail

double hyp2f1(double a, double b, double c, double z) {
  if (b < a) std::swap(a, b);  // bit-exact symmetry in (a, b) on every path
  if (detail::is_nonpositive_integer(c)) {
    throw std::domain_error(describe_args(a, b, c, z) +
                            ": c must not be a nonpositive integer");
  }
  if (z == 0.0) return 1.0;

  const int da = termination_degree(a);
  const int db = termination_degree(b);
  if (da >= 0 || db >= 0) {
    const int degree = da >= 0 && db >= 0 ? std::min(da, db)
                                          : std::max(da, db);
    return detail::hyp2f1_terminating(a, b, c, z, degree);
  }

  std::string attempts;
  if (std::fabs(z) < 1.0) {
    try {
      return detail::hyp2f1_series(a, b, c, z);
    } catch (const EvaluationError&) {
      attempts += " direct series (no convergence in 10000 terms);";
    }
  } else {
    attempts += " direct series (needs |z| < 1);";
  }
  if (z < 0.0) {
    try {
      return detail::hyp2f1_pfaff(a, b, c, z);
    } catch (const EvaluationError&) {
      attempts += " Pfaff transform (no convergence in 10000 terms);";
    }
  } else {
    attempts += " Pfaff transform (needs z < 0);";
  }
  if (z < -1.0 && a - b != std::floor(a - b)) {
    try {
      return detail::hyp2f1_connection(a, b, c, z);
    } catch (const EvaluationError&) {
      attempts += " 1/z connection (inner series failed);";
    }
  } else {
    attempts += " 1/z connection (needs z < -1 and a - b not an integer);";
  }
  attempts.pop_back();
  throw EvaluationError(describe_args(a, b, c, z) +
                        ": no convergent evaluation path; attempted:" +
                        attempts);
}

double hyp2f1(const Hyp2F1Args& args) {
  return hyp2f1(args.a, args.b, args.c, args.z);
}

std::pair<double, double> euler_transform_check(const Hyp2F1Args& args) {
  const bool via_a = args.c > args.a && args.a > 0.0;
  const bool via_b = args.c > args.b && args.b > 0.0;
  if (!via_a && !via_b) {
    throw std::domain_error(
        "euler_transform_check requires c > a > 0 or c > b > 0");
  }
  if (!(args.z < 1.0)) {
    throw std::domain_error("euler_transform_check requires z < 1");
  }
  const double lhs = hyp2f1(args.a, args.b, args.c, args.z);
  const double rhs = std::pow(1.0 - args.z, args.c - args.a - args.b) *
                     hyp2f1(args.c - args.a, args.c - args.b, args.c, args.z);
  return {lhs, rhs};
}

}  // namespace tmoments::specfun
