#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmoments/lpq.hpp"
#include "tmoments/oracle.hpp"
#include "tmoments/output.hpp"
#include "tmoments/tdist.hpp"
#include "tmoments/verify.hpp"

namespace {

using tmoments::output::CurveTable;
using tmoments::output::OutputRecord;

tmoments::tdist::MomentKind parse_kind(const std::string& kind) {
  if (kind == "complete") return tmoments::tdist::MomentKind::complete;
  if (kind == "upper") return tmoments::tdist::MomentKind::upper_partial;
  return tmoments::tdist::MomentKind::lower_partial;
}

struct MomentArgs {
  int n = 0;
  int j = 0;
  double m = 0.0;
  std::string kind = "complete";
  std::string format = "json";
};

int run_moment(const MomentArgs& args) {
  const tmoments::tdist::StudentT dist(args.n);
  const tmoments::tdist::MomentKind kind = parse_kind(args.kind);
  const double value = dist.moment({args.j, args.m, kind});

  OutputRecord record;
  record.command = "moment";
  record.inputs = {{"n", std::to_string(args.n)},
                   {"j", std::to_string(args.j)},
                   {"m", tmoments::output::format_real(args.m)},
                   {"kind", args.kind}};
  record.values = {{"moment", value}};
  if (kind != tmoments::tdist::MomentKind::complete) {
    // Partial moments come with their inter-order companion of order
    // n-1-j: moment = (m^2+n)^((2j-n+1)/2) * companion.
    const int companion_order = args.n - 1 - args.j;
    const auto factor =
        tmoments::tdist::interorder_factor(args.n, args.n - args.j, args.m);
    const double companion =
        kind == tmoments::tdist::MomentKind::upper_partial
            ? dist.upper_partial_moment(companion_order, args.m)
            : dist.lower_partial_moment(companion_order, args.m);
    record.values.push_back({"companion_order_moment", companion});
    record.values.push_back({"interorder_factor", factor.value});
    record.metadata = {
        {"companion_order", std::to_string(companion_order)},
        {"relation", "moment = interorder_factor * companion_order_moment"}};
  }
  std::cout << (args.format == "csv" ? tmoments::output::to_csv(record)
                                     : tmoments::output::to_json(record));
  return 0;
}

struct LpqArgs {
  int n = 0;
  int p = 0;
  double tau = 0.0;
  double affine_a = 0.0;
  double affine_b = 1.0;
  bool pair = false;
  std::string format = "json";
};

int run_lpq(const LpqArgs& args) {
  const tmoments::tdist::StudentT dist(args.n);
  const double value = tmoments::lpq::lp_quantile(
      dist, {args.p, args.tau, args.affine_a, args.affine_b});

  OutputRecord record;
  record.command = "lpq";
  record.inputs = {{"n", std::to_string(args.n)},
                   {"p", std::to_string(args.p)},
                   {"tau", tmoments::output::format_real(args.tau)},
                   {"a", tmoments::output::format_real(args.affine_a)},
                   {"b", tmoments::output::format_real(args.affine_b)}};
  record.values = {{"lp_quantile", value}};
  if (args.pair) {
    const int partner = args.n - args.p + 1;
    const double pair_value = tmoments::lpq::lp_quantile(
        dist, {partner, args.tau, args.affine_a, args.affine_b});
    record.values.push_back({"lp_quantile_pair", pair_value});
    record.metadata = {{"pair_p", std::to_string(partner)}};
  }
  std::cout << (args.format == "csv" ? tmoments::output::to_csv(record)
                                     : tmoments::output::to_json(record));
  return 0;
}

struct CurveFactorArgs {
  int n = 0;
  std::vector<int> j_list;
  double m_min = -4.0;
  double m_max = 4.0;
  int steps = 81;
  std::string out = "-";
  std::string format = "csv";
};

int run_curve_factor(const CurveFactorArgs& args) {
  if (args.n < 1) throw std::domain_error("curve factor requires n >= 1");
  std::vector<int> js = args.j_list;
  if (js.empty()) {
    for (int j = 1; j <= args.n; ++j) js.push_back(j);
  }
  CurveTable table;
  table.x_label = "m";
  table.x = tmoments::verify::linspace(args.m_min, args.m_max, args.steps);
  for (const int j : js) {
    table.column_labels.push_back("j=" + std::to_string(j));
    std::vector<double> column;
    column.reserve(table.x.size());
    for (const double m : table.x) {
      column.push_back(tmoments::tdist::interorder_factor(args.n, j, m).value);
    }
    table.columns.push_back(std::move(column));
  }
  const std::string text =
      args.format == "json" ? tmoments::output::curve_to_json("curve factor", table)
                            : tmoments::output::curve_to_csv(table);
  tmoments::output::write_text(args.out, text);
  return 0;
}

struct CurveLpqArgs {
  int n = 0;
  std::vector<int> p_list;
  double tau_min = 0.01;
  double tau_max = 0.99;
  int tau_steps = 99;
  std::string out = "-";
  std::string format = "csv";
};

int run_curve_lpq(const CurveLpqArgs& args) {
  const tmoments::tdist::StudentT dist(args.n);
  std::vector<int> ps = args.p_list;
  if (ps.empty()) {
    for (int p = 1; p <= args.n; ++p) ps.push_back(p);
  }
  CurveTable table;
  table.x_label = "tau";
  table.x =
      tmoments::verify::linspace(args.tau_min, args.tau_max, args.tau_steps);
  for (const int p : ps) {
    table.column_labels.push_back("p=" + std::to_string(p));
    std::vector<double> column;
    column.reserve(table.x.size());
    for (const double tau : table.x) {
      column.push_back(tmoments::lpq::lp_quantile(dist, {p, tau}));
    }
    table.columns.push_back(std::move(column));
  }
  const std::string text =
      args.format == "json" ? tmoments::output::curve_to_json("curve lpq", table)
                            : tmoments::output::curve_to_csv(table);
  tmoments::output::write_text(args.out, text);
  return 0;
}

struct VerifyArgs {
  std::vector<int> n_list{2, 3, 4, 5};
  std::vector<std::string> identities;
  double m_min = -4.0;
  double m_max = 4.0;
  double m_step = 0.5;
  double tau_min = 0.01;
  double tau_max = 0.99;
  int tau_steps = 99;
  std::uint64_t seed = 20240915ull;
  bool seed_given = false;
  std::string out = "-";
  std::string format = "json";
};

int run_verify(const VerifyArgs& args) {
  tmoments::verify::VerifyOptions options;
  options.dof_list = args.n_list;
  options.m_min = args.m_min;
  options.m_max = args.m_max;
  options.m_step = args.m_step;
  options.tau_min = args.tau_min;
  options.tau_max = args.tau_max;
  options.tau_steps = args.tau_steps;
  options.seed = args.seed;
  if (!args.seed_given) {
    if (const char* env = std::getenv("TMOMENTS_SEED")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0') options.seed = parsed;
    }
  }

  std::vector<tmoments::verify::Identity> ids;
  if (args.identities.empty()) {
    ids = tmoments::verify::all_identities();
  } else {
    for (const auto& name : args.identities) {
      ids.push_back(tmoments::verify::identity_from_name(name));
    }
  }

  const auto reports = tmoments::verify::run_identities(ids, options);
  const std::string text = args.format == "csv"
                               ? tmoments::output::reports_to_csv(reports)
                               : tmoments::output::reports_to_json(reports);
  tmoments::output::write_text(args.out, text);
  for (const auto& report : reports) {
    if (!report.passed) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Closed-form moments, partial moments and Lp-quantiles of the Student t "
      "distribution with integer degrees of freedom"};
  app.require_subcommand(1);

  MomentArgs moment_args;
  auto* moment = app.add_subcommand(
      "moment", "Evaluate a complete or partial moment E[(Y-m)^j]");
  moment->add_option("--n", moment_args.n, "degrees of freedom")->required();
  moment->add_option("--j", moment_args.j, "moment order (0 <= j <= n-1)")
      ->required();
  moment->add_option("--m", moment_args.m, "center / threshold");
  moment->add_option("--kind", moment_args.kind, "moment kind")
      ->check(CLI::IsMember({"complete", "upper", "lower"}));
  moment->add_option("--format", moment_args.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  LpqArgs lpq_args;
  auto* lpq = app.add_subcommand(
      "lpq", "Solve the tau-th Lp-quantile of a + b Y");
  lpq->add_option("--n", lpq_args.n, "degrees of freedom")->required();
  lpq->add_option("--p", lpq_args.p, "loss power (1 <= p <= n)")->required();
  lpq->add_option("--tau", lpq_args.tau, "asymmetry level in (0, 1)")
      ->required();
  lpq->add_option("--a", lpq_args.affine_a, "affine location");
  lpq->add_option("--b", lpq_args.affine_b, "affine scale (> 0)");
  lpq->add_flag("--pair", lpq_args.pair,
                "also solve the order-symmetric quantile p' = n - p + 1");
  lpq->add_option("--format", lpq_args.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* curve = app.add_subcommand("curve", "Tabulate a curve family as CSV");
  curve->require_subcommand(1);

  CurveFactorArgs factor_args;
  auto* curve_factor = curve->add_subcommand(
      "factor", "Inter-order factor (m^2+n)^((n-2j+1)/2) over an m grid");
  curve_factor->add_option("--n", factor_args.n, "degrees of freedom")
      ->required();
  curve_factor
      ->add_option("--j", factor_args.j_list, "relation indices (default 1..n)")
      ->delimiter(',');
  curve_factor->add_option("--m-min", factor_args.m_min, "grid start");
  curve_factor->add_option("--m-max", factor_args.m_max, "grid end");
  curve_factor->add_option("--steps", factor_args.steps, "grid points");
  curve_factor->add_option("--out", factor_args.out,
                           "output path ('-' for stdout)");
  curve_factor->add_option("--format", factor_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  CurveLpqArgs curve_lpq_args;
  auto* curve_lpq = curve->add_subcommand(
      "lpq", "Lp-quantile curves tau -> rho_p(tau)");
  curve_lpq->add_option("--n", curve_lpq_args.n, "degrees of freedom")
      ->required();
  curve_lpq
      ->add_option("--p", curve_lpq_args.p_list, "loss powers (default 1..n)")
      ->delimiter(',');
  curve_lpq->add_option("--tau-min", curve_lpq_args.tau_min, "grid start");
  curve_lpq->add_option("--tau-max", curve_lpq_args.tau_max, "grid end");
  curve_lpq->add_option("--tau-steps", curve_lpq_args.tau_steps, "grid points");
  curve_lpq->add_option("--out", curve_lpq_args.out,
                        "output path ('-' for stdout)");
  curve_lpq->add_option("--format", curve_lpq_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Run identity checks and report max deviations");
  verify->add_option("--n", verify_args.n_list, "degrees of freedom list")
      ->delimiter(',');
  verify
      ->add_option("--identities", verify_args.identities,
                   "identity names (default: all)")
      ->delimiter(',');
  verify->add_option("--m-min", verify_args.m_min, "m grid start");
  verify->add_option("--m-max", verify_args.m_max, "m grid end");
  verify->add_option("--m-step", verify_args.m_step, "m grid step");
  verify->add_option("--tau-min", verify_args.tau_min, "tau grid start");
  verify->add_option("--tau-max", verify_args.tau_max, "tau grid end");
  verify->add_option("--tau-steps", verify_args.tau_steps, "tau grid points");
  auto* seed_opt = verify->add_option(
      "--seed", verify_args.seed,
      "Monte Carlo seed (TMOMENTS_SEED overrides the default)");
  verify->add_option("--out", verify_args.out, "output path ('-' for stdout)");
  verify->add_option("--format", verify_args.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  verify_args.seed_given = seed_opt->count() > 0;

  try {
    if (*moment) return run_moment(moment_args);
    if (*lpq) return run_lpq(lpq_args);
    if (*curve_factor) return run_curve_factor(factor_args);
    if (*curve_lpq) return run_curve_lpq(curve_lpq_args);
    if (*verify) return run_verify(verify_args);
  } catch (const tmoments::output::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
