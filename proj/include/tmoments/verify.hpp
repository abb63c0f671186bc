#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tmoments::verify {

enum class Identity {
  prop1_vs_quadrature,  // closed central moments against adaptive quadrature
  lemma1_pos,           // upper-moment relation restricted to m >= 0
  lemma1_neg,           // lower-moment relation restricted to m < 0
  thm2,                 // central-moment inter-order relation, all m
  thm3,                 // upper partial-moment relation, all m
  cor1,                 // lower partial-moment relation, all m
  thm4,                 // Lp-quantile order symmetry rho_{j} = rho_{n-j+1}
  euler_eq6,            // Euler transformation of 2F1
  connection_eq7,       // 1/z connection formula, standard-sign form
  legendre_dup,         // Legendre duplication for log Gamma
};

struct VerificationReport {
  std::string identity;
  std::string grid;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::vector<int> dof_list{2, 3, 4, 5};
  double m_min = -4.0;
  double m_max = 4.0;
  double m_step = 0.5;
  double tau_min = 0.01;
  double tau_max = 0.99;
  int tau_steps = 99;
  std::uint64_t seed = 20240915ull;
};

const std::vector<Identity>& all_identities();
std::string identity_name(Identity id);
Identity identity_from_name(const std::string& name);  // throws std::domain_error

// Evenly spaced grid helpers shared by the verify runners and the CLI.
std::vector<double> linspace(double lo, double hi, int steps);
std::vector<double> m_grid(double lo, double hi, double step);

VerificationReport run_identity(Identity id, const VerifyOptions& options);
std::vector<VerificationReport> run_identities(const std::vector<Identity>& ids,
                                               const VerifyOptions& options);

}  // namespace tmoments::verify
