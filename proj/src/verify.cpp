#include "tmoments/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tmoments/lpq.hpp"
#include "tmoments/oracle.hpp"
#include "tmoments/specfun.hpp"
#include "tmoments/tdist.hpp"

namespace tmoments::verify {

namespace {

// Relative deviation with an absolute floor of 1: used where either side can
// be an exact zero (central moments at m = 0, quadrature noise around them).
double rel_floor1(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Pure relative deviation: used for strictly positive quantities.
double rel_strict(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

std::string dof_list_string(const std::vector<int>& dofs) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    if (i > 0) out << ",";
    out << dofs[i];
  }
  out << "}";
  return out.str();
}

std::string m_grid_string(const VerifyOptions& options) {
  std::ostringstream out;
  out << "m in [" << options.m_min << ", " << options.m_max << "] step "
      << options.m_step;
  return out.str();
}

VerificationReport make_report(Identity id, const std::string& grid,
                               double max_err, double tol) {
  return {identity_name(id), grid, max_err, tol, max_err <= tol};
}

VerificationReport run_prop1_vs_quadrature(const VerifyOptions& options) {
  const auto ms = m_grid(options.m_min, options.m_max, options.m_step);
  double max_err = 0.0;
  for (const int n : options.dof_list) {
    const tdist::StudentT dist(n);
    for (int j = 0; j <= n - 1; ++j) {
      for (const double m : ms) {
        const double closed = dist.central_moment(j, m);
        const double quad =
            oracle::quad_partial_moment(n, j, m, oracle::Side::complete);
        max_err = std::max(max_err, rel_floor1(closed, quad));
      }
    }
  }
  return make_report(Identity::prop1_vs_quadrature,
                     "n in " + dof_list_string(options.dof_list) +
                         ", j=0..n-1, " + m_grid_string(options),
                     max_err, 1e-9);
}

// Checks E[((Y-m)_s)^(n-j)] == (m^2+n)^((n-2j+1)/2) E[((Y-m)_s)^(j-1)] where
// s picks the positive (side 0) or negative (side 1) part. restrict_sign -1
// keeps m < 0 only, +1 keeps m >= 0 only, 0 keeps the whole grid.
double interorder_max_err(const VerifyOptions& options, int side,
                          int restrict_sign) {
  const auto ms = m_grid(options.m_min, options.m_max, options.m_step);
  double max_err = 0.0;
  for (const int n : options.dof_list) {
    const tdist::StudentT dist(n);
    for (int j = 1; j <= n; ++j) {
      for (const double m : ms) {
        if (restrict_sign > 0 && m < 0.0) continue;
        if (restrict_sign < 0 && m >= 0.0) continue;
        const double factor = tdist::interorder_factor(n, j, m).value;
        const double lhs = side == 0 ? dist.upper_partial_moment(n - j, m)
                                     : dist.lower_partial_moment(n - j, m);
        const double rhs =
            factor * (side == 0 ? dist.upper_partial_moment(j - 1, m)
                                : dist.lower_partial_moment(j - 1, m));
        max_err = std::max(max_err, rel_strict(lhs, rhs));
      }
    }
  }
  return max_err;
}

VerificationReport run_lemma1_pos(const VerifyOptions& options) {
  return make_report(Identity::lemma1_pos,
                     "n in " + dof_list_string(options.dof_list) +
                         ", j=1..n, " + m_grid_string(options) + ", m >= 0",
                     interorder_max_err(options, 0, +1), 1e-10);
}

VerificationReport run_lemma1_neg(const VerifyOptions& options) {
  return make_report(Identity::lemma1_neg,
                     "n in " + dof_list_string(options.dof_list) +
                         ", j=1..n, " + m_grid_string(options) + ", m < 0",
                     interorder_max_err(options, 1, -1), 1e-10);
}

VerificationReport run_thm2(const VerifyOptions& options) {
  const auto ms = m_grid(options.m_min, options.m_max, options.m_step);
  double max_err = 0.0;
  for (const int n : options.dof_list) {
    const tdist::StudentT dist(n);
    for (int j = 1; j <= n; ++j) {
      for (const double m : ms) {
        const double direct = dist.central_moment(n - j, m);
        const double related = tdist::central_moment_via_relation(dist, j, m);
        max_err = std::max(max_err, rel_floor1(direct, related));
      }
    }
  }
  return make_report(Identity::thm2,
                     "n in " + dof_list_string(options.dof_list) +
                         ", j=1..n, " + m_grid_string(options),
                     max_err, 1e-11);
}

VerificationReport run_thm3(const VerifyOptions& options) {
  return make_report(Identity::thm3,
                     "n in " + dof_list_string(options.dof_list) +
                         ", j=1..n, " + m_grid_string(options),
                     interorder_max_err(options, 0, 0), 1e-10);
}

VerificationReport run_cor1(const VerifyOptions& options) {
  return make_report(Identity::cor1,
                     "n in " + dof_list_string(options.dof_list) +
                         ", j=1..n, " + m_grid_string(options),
                     interorder_max_err(options, 1, 0), 1e-10);
}

VerificationReport run_thm4(const VerifyOptions& options) {
  const auto taus = linspace(options.tau_min, options.tau_max, options.tau_steps);
  double max_err = 0.0;
  for (const int n : options.dof_list) {
    const tdist::StudentT dist(n);
    const VerificationReport per_dof = lpq::verify_theorem4(dist, taus);
    max_err = std::max(max_err, per_dof.max_rel_error);
  }
  std::ostringstream grid;
  grid << "n in " << dof_list_string(options.dof_list)
       << ", all symmetry pairs, tau in [" << options.tau_min << ", "
       << options.tau_max << "] (" << options.tau_steps << " points)";
  return make_report(Identity::thm4, grid.str(), max_err, 1e-9);
}

VerificationReport run_euler_eq6(const VerifyOptions& options) {
  (void)options;
  const double a_values[] = {0.25, 0.75, 1.5, 2.5};
  const double b_values[] = {-1.25, 0.5, 1.0, 3.5};
  const double c_offsets[] = {0.5, 1.75};
  double max_err = 0.0;
  for (const double a : a_values) {
    for (const double b : b_values) {
      for (const double dc : c_offsets) {
        const double c = a + dc;
        for (double z = -5.0; z <= 0.9 + 1e-12; z += 0.1) {
          const auto [lhs, rhs] =
              specfun::euler_transform_check({a, b, c, z});
          max_err = std::max(max_err, rel_floor1(lhs, rhs));
        }
      }
    }
  }
  return make_report(Identity::euler_eq6,
                     "a in {0.25,0.75,1.5,2.5}, b in {-1.25,0.5,1,3.5}, "
                     "c=a+{0.5,1.75}, z in [-5, 0.9] step 0.1",
                     max_err, 1e-11);
}

VerificationReport run_connection_eq7(const VerifyOptions& options) {
  (void)options;
  const std::pair<double, double> ab_pairs[] = {
      {0.3, 0.8}, {0.5, 1.8}, {1.2, 2.9}, {0.4, 2.65}};
  const double c_values[] = {0.9, 1.7, 3.2};
  const double z_values[] = {-50.0, -20.0, -10.0, -5.0, -2.5, -1.5};
  double max_err = 0.0;
  for (const auto& [a, b] : ab_pairs) {
    for (const double c : c_values) {
      for (const double z : z_values) {
        const double via_dispatch = specfun::hyp2f1(a, b, c, z);
        const double via_connection =
            specfun::detail::hyp2f1_connection(a, b, c, z);
        max_err = std::max(max_err, rel_floor1(via_dispatch, via_connection));
      }
    }
  }
  return make_report(Identity::connection_eq7,
                     "4 (a,b) pairs with a-b not an integer, c in "
                     "{0.9,1.7,3.2}, z in {-50,-20,-10,-5,-2.5,-1.5}",
                     max_err, 1e-10);
}

VerificationReport run_legendre_dup(const VerifyOptions& options) {
  (void)options;
  double max_err = 0.0;
  const double log2 = std::log(2.0);
  const double half_log_pi = 0.5 * std::log(std::numbers::pi);
  for (int k = 1; k <= 1000; ++k) {
    const double z = 0.05 * k;
    const double lhs = specfun::log_gamma(z) + specfun::log_gamma(z + 0.5);
    const double rhs =
        (1.0 - 2.0 * z) * log2 + half_log_pi + specfun::log_gamma(2.0 * z);
    max_err =
        std::max(max_err, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
  }
  return make_report(Identity::legendre_dup,
                     "z in (0, 50] step 0.05, log-space comparison", max_err,
                     1e-12);
}

}  // namespace

const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> ids = {
      Identity::prop1_vs_quadrature, Identity::lemma1_pos,
      Identity::lemma1_neg,          Identity::thm2,
      Identity::thm3,                Identity::cor1,
      Identity::thm4,                Identity::euler_eq6,
      Identity::connection_eq7,      Identity::legendre_dup};
  return ids;
}

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::prop1_vs_quadrature: return "prop1_vs_quadrature";
    case Identity::lemma1_pos: return "lemma1_pos";
    case Identity::lemma1_neg: return "lemma1_neg";
    case Identity::thm2: return "thm2";
    case Identity::thm3: return "thm3";
    case Identity::cor1: return "cor1";
    case Identity::thm4: return "thm4";
    case Identity::euler_eq6: return "euler_eq6";
    case Identity::connection_eq7: return "connection_eq7";
    case Identity::legendre_dup: return "legendre_dup";
  }
  throw std::logic_error("unreachable identity");
}

Identity identity_from_name(const std::string& name) {
  for (const Identity id : all_identities()) {
    if (identity_name(id) == name) return id;
  }
  throw std::domain_error("unknown identity: " + name);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps <= 1) return {lo};
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    values.push_back(lo + (hi - lo) * k / (steps - 1));
  }
  values.back() = hi;
  return values;
}

std::vector<double> m_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::domain_error("m grid requires step > 0");
  std::vector<double> values;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  values.reserve(static_cast<std::size_t>(count) + 1);
  for (int k = 0; k <= count; ++k) {
    values.push_back(lo + step * k);
  }
  return values;
}

VerificationReport run_identity(Identity id, const VerifyOptions& options) {
  switch (id) {
    case Identity::prop1_vs_quadrature: return run_prop1_vs_quadrature(options);
    case Identity::lemma1_pos: return run_lemma1_pos(options);
    case Identity::lemma1_neg: return run_lemma1_neg(options);
    case Identity::thm2: return run_thm2(options);
    case Identity::thm3: return run_thm3(options);
    case Identity::cor1: return run_cor1(options);
    case Identity::thm4: return run_thm4(options);
    case Identity::euler_eq6: return run_euler_eq6(options);
    case Identity::connection_eq7: return run_connection_eq7(options);
    case Identity::legendre_dup: return run_legendre_dup(options);
  }
  throw std::logic_error("unreachable identity");
}

std::vector<VerificationReport> run_identities(const std::vector<Identity>& ids,
                                               const VerifyOptions& options) {
  std::vector<VerificationReport> reports;
  reports.reserve(ids.size());
  for (const Identity id : ids) {
    reports.push_back(run_identity(id, options));
  }
  return reports;
}

}  // namespace tmoments::verify
