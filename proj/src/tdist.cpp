#include "tmoments/tdist.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tmoments/specfun.hpp"

namespace tmoments::tdist {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |center| the tail-form prefactor m^(j-n) and its slowly
// converging Pfaff series are replaced by the small-center expansion.
constexpr double kSmallCenter = 0.5;

}  // namespace

StudentT::StudentT(int dof) : n_(dof) {
  if (dof < 1) {
    throw std::domain_error("StudentT requires at least 1 degree of freedom");
  }
  log_norm_ = specfun::log_gamma(0.5 * (n_ + 1)) -
              specfun::log_gamma(0.5 * n_) - 0.5 * std::log(n_ * kPi);
}

void StudentT::require_order(int order) const {
  if (order < 0 || order > n_ - 1) {
    throw MomentExistenceError(
        "moment order " + std::to_string(order) + " does not exist for " +
        std::to_string(n_) + " degrees of freedom (need 0 <= order <= dof-1)");
  }
}

double StudentT::pdf(double y) const {
  return std::exp(log_norm_ - 0.5 * (n_ + 1) * std::log1p(y * y / n_));
}

// Closed trigonometric recursion in theta = arctan(y / sqrt(n)), accurate for
// 0 <= y <= sqrt(n) where no digit cancellation can occur.
double StudentT::cdf_bulk(double y) const {
  const double root = std::sqrt(n_ + y * y);
  const double s = y / root;                  // sin(theta)
  const double c = std::sqrt(static_cast<double>(n_)) / root;  // cos(theta)
  const double theta = std::atan(y / std::sqrt(static_cast<double>(n_)));
  if (n_ % 2 == 1) {
    // F = 1/2 + (theta + sin(theta) * sum_k a_k cos^(2k+1))/pi,
    // a_0 = 1, a_k = a_{k-1} * 2k/(2k+1).
    double sum = 0.0;
    double coeff = 1.0;
    double cpow = c;
    for (int k = 0; 2 * k + 3 <= n_; ++k) {
      if (k > 0) {
        coeff *= (2.0 * k) / (2.0 * k + 1.0);
        cpow *= c * c;
      }
      sum += coeff * cpow;
    }
    return 0.5 + (theta + s * sum) / kPi;
  }
  // F = 1/2 + sin(theta)/2 * sum_k b_k cos^(2k),
  // b_0 = 1, b_k = b_{k-1} * (2k-1)/(2k).
  double sum = 0.0;
  double coeff = 1.0;
  double cpow = 1.0;
  for (int k = 0; 2 * k + 2 <= n_; ++k) {
    if (k > 0) {
      coeff *= (2.0 * k - 1.0) / (2.0 * k);
      cpow *= c * c;
    }
    sum += coeff * cpow;
  }
  return 0.5 + 0.5 * s * sum;
}

// Positive-term series for the survival integral, y >= sqrt(n): with
// v0 = n/(n+y^2) <= 1/2,
//   S(y) = c_n sqrt(n)/2 * v0^(n/2) * sum_k (1/2)_k/k! v0^k / (n/2 + k).
// Every term is positive, so the tail keeps full relative accuracy where the
// recursion form would cancel against 1/2.
double StudentT::tail_series(double y) const {
  const double v0 = n_ / (n_ + y * y);
  const double a = 0.5 * n_;
  double term = 1.0;
  double sum = 1.0 / a;
  for (int k = 1; k < 500; ++k) {
    term *= v0 * (k - 0.5) / k;
    const double add = term / (a + k);
    sum += add;
    if (add <= 1e-17 * sum) break;
  }
  return 0.5 * std::exp(log_norm_ + 0.5 * std::log(static_cast<double>(n_)) +
                        a * std::log(v0)) *
         sum;
}

double StudentT::survival(double y) const {
  if (y < 0.0) return 1.0 - survival(-y);
  if (y * y >= static_cast<double>(n_)) return tail_series(y);
  return 1.0 - cdf_bulk(y);
}

double StudentT::cdf(double y) const {
  if (y < 0.0) return survival(-y);
  return 1.0 - survival(y);
}

double StudentT::raw_moment(int order) const {
  require_order(order);
  if (order == 0) return 1.0;
  if (order % 2 == 1) return 0.0;
  return abs_moment(order);
}

double StudentT::abs_moment(int order) const {
  require_order(order);
  if (order == 0) return 1.0;
  // E|Y|^j = Gamma((j+1)/2) Gamma((n-j)/2) / (sqrt(pi) Gamma(n/2)) * n^(j/2),
  // finite for every 0 <= j <= n-1.
  return std::exp(specfun::log_gamma(0.5 * (order + 1)) +
                  specfun::log_gamma(0.5 * (n_ - order)) -
                  specfun::log_gamma(0.5 * n_) +
                  0.5 * order * std::log(static_cast<double>(n_)) -
                  0.5 * std::log(kPi));
}

double StudentT::central_moment(int order, double center) const {
  require_order(order);
  if (order == 0) return 1.0;
  const double z = -(center * center) / n_;
  if (order % 2 == 0) {
    // E[(Y-m)^j] = n^(j/2) Gamma((j+1)/2) Gamma((n-j)/2)/(sqrt(pi) Gamma(n/2))
    //              * 2F1(-j/2, (n-j)/2, 1/2; -m^2/n), terminating at -j/2.
    const double log_pref = specfun::log_gamma(0.5 * (order + 1)) +
                            specfun::log_gamma(0.5 * (n_ - order)) -
                            specfun::log_gamma(0.5 * n_) +
                            0.5 * order * std::log(static_cast<double>(n_)) -
                            0.5 * std::log(kPi);
    return std::exp(log_pref) *
           specfun::hyp2f1(-0.5 * order, 0.5 * (n_ - order), 0.5, z);
  }
  // E[(Y-m)^j] = -2m n^((j-1)/2) Gamma(j/2+1) Gamma((n-j+1)/2)
  //              / (sqrt(pi) Gamma(n/2))
  //              * 2F1((1-j)/2, (n-j+1)/2, 3/2; -m^2/n), terminating at (1-j)/2.
  const double log_pref = specfun::log_gamma(0.5 * order + 1.0) +
                          specfun::log_gamma(0.5 * (n_ - order + 1)) -
                          specfun::log_gamma(0.5 * n_) +
                          0.5 * (order - 1) * std::log(static_cast<double>(n_)) -
                          0.5 * std::log(kPi);
  return -2.0 * center * std::exp(log_pref) *
         specfun::hyp2f1(0.5 * (1 - order), 0.5 * (n_ - order + 1), 1.5, z);
}

double StudentT::log_tail_constant() const {
  return 0.5 * n_ * std::log(static_cast<double>(n_)) +
         specfun::log_gamma(0.5 * (n_ + 1)) - 0.5 * std::log(kPi) -
         specfun::log_gamma(0.5 * n_);
}

// E[((Y-m)_+)^j] for m >= 1/2:
//   C_n m^(j-n) B(n-j, j+1) 2F1((n-j)/2, (n-j+1)/2, (n+2)/2; -n/m^2)
// with C_n = n^(n/2) Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2)). The prefactor is
// assembled in log space. The 2F1 argument is always negative, so the Pfaff
// map applies and lands at w = n/(n+m^2) in (0,1) where every transformed
// series term is positive; the direct series would cancel catastrophically
// for arguments just above -1 (m^2 slightly above n at large n).
double StudentT::partial_tail_form(int order, double center) const {
  const double log_pref =
      log_tail_constant() + (order - n_) * std::log(center) +
      specfun::log_gamma(static_cast<double>(n_ - order)) +
      specfun::log_gamma(order + 1.0) -
      specfun::log_gamma(static_cast<double>(n_ + 1));
  const double h = specfun::detail::hyp2f1_pfaff(
      0.5 * (n_ - order), 0.5 * (n_ - order + 1), 0.5 * (n_ + 2),
      -n_ / (center * center));
  return std::exp(log_pref) * h;
}

// E[((Y-m)_+)^j] for 0 < m < 1/2: the 1/z connection applied to the tail
// form in closed form, so the m^(j-n) singularity cancels analytically:
//   C_n B(n-j, j+1) [ K1 n^(-(n-j)/2)   2F1((n-j)/2, -j/2, 1/2; -m^2/n)
//                   + K2 m n^(-(n-j+1)/2) 2F1((n-j+1)/2, (1-j)/2, 3/2; -m^2/n) ]
// with K1 = Gamma((n+2)/2) Gamma(1/2) / (Gamma((n-j+1)/2) Gamma((j+2)/2)),
//      K2 = -2 sqrt(pi) Gamma((n+2)/2) / (Gamma((n-j)/2) Gamma((j+1)/2)).
// One hypergeometric series terminates (the even or odd one according to j);
// the other converges in a few terms since m^2/n < 1/4. Both are the same
// polynomials that build the central moments, so this branch is anchored at
// the exact raw moments.
double StudentT::partial_small_center(int order, double center) const {
  const double zin = -(center * center) / n_;
  const double log_n = std::log(static_cast<double>(n_));
  const double common = log_tail_constant() - 0.5 * n_ * log_n +
                        specfun::log_gamma(static_cast<double>(n_ - order)) +
                        specfun::log_gamma(order + 1.0) -
                        specfun::log_gamma(static_cast<double>(n_ + 1)) +
                        specfun::log_gamma(0.5 * (n_ + 2));
  const double t1 =
      std::exp(common + 0.5 * std::log(kPi) -
               specfun::log_gamma(0.5 * (n_ - order + 1)) -
               specfun::log_gamma(0.5 * (order + 2)) + 0.5 * order * log_n) *
      specfun::hyp2f1(0.5 * (n_ - order), -0.5 * order, 0.5, zin);
  const double t2 =
      -2.0 * center *
      std::exp(common + 0.5 * std::log(kPi) -
               specfun::log_gamma(0.5 * (n_ - order)) -
               specfun::log_gamma(0.5 * (order + 1)) +
               0.5 * (order - 1) * log_n) *
      specfun::hyp2f1(0.5 * (n_ - order + 1), 0.5 * (1 - order), 1.5, zin);
  return t1 + t2;
}

double StudentT::upper_partial_moment(int order, double center) const {
  require_order(order);
  if (order == 0) return survival(center);
  if (center >= kSmallCenter) return partial_tail_form(order, center);
  if (center > 0.0) return partial_small_center(order, center);
  if (center == 0.0) return 0.5 * abs_moment(order);
  // center < 0: complement through the complete moment and the reflected
  // upper moment, E[((Y-m)_+)^j] = E[(Y-m)^j] - (-1)^j E[((-m-Y)_+)^j].
  const double sign = order % 2 == 0 ? 1.0 : -1.0;
  return central_moment(order, center) -
         sign * upper_partial_moment(order, -center);
}

double StudentT::lower_partial_moment(int order, double center) const {
  require_order(order);
  return upper_partial_moment(order, -center);
}

double StudentT::moment(const MomentQuery& query) const {
  switch (query.kind) {
    case MomentKind::complete:
      return central_moment(query.order, query.center);
    case MomentKind::upper_partial:
      return upper_partial_moment(query.order, query.center);
    case MomentKind::lower_partial:
      return lower_partial_moment(query.order, query.center);
  }
  throw std::logic_error("unreachable moment kind");
}

InterOrderFactor interorder_factor(int dof, int index, double center) {
  if (dof < 1) {
    throw std::domain_error("interorder_factor requires dof >= 1");
  }
  if (index < 1 || index > dof) {
    throw std::domain_error("interorder_factor requires 1 <= index <= dof");
  }
  const double exponent = 0.5 * (dof - 2 * index + 1);
  return {dof, index, center, exponent,
          std::pow(center * center + dof, exponent)};
}

double central_moment_via_relation(const StudentT& dist, int index,
                                   double center) {
  const int n = dist.dof();
  if (index < 1 || index > n) {
    throw std::domain_error(
        "central_moment_via_relation requires 1 <= index <= dof");
  }
  const InterOrderFactor factor = interorder_factor(n, index, center);
  if (n % 2 == 1) {
    return factor.value * dist.central_moment(index - 1, center);
  }
  return factor.value * (2.0 * dist.upper_partial_moment(index - 1, center) -
                         dist.central_moment(index - 1, center));
}

}  // namespace tmoments::tdist
