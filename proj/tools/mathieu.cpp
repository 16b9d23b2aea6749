#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mathieu/matcher.hpp"
#include "mathieu/oracle.hpp"
#include "mathieu/serialize.hpp"
#include "mathieu/verify.hpp"

using namespace mathieu;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double tol = 1e-12;
  std::string format = "json";
  std::string out;

  double lambda = 0;
  double q = 0;
  std::string method = "monodromy";
  int eps_order = 7;

  std::string which;
  std::optional<int> order;

  std::optional<int> m;
  std::string suite;
};

double default_tolerance() {
  const char* env = std::getenv("FLOQUET_TOL");
  if (env == nullptr || *env == '\0') return 1e-12;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0)) throw UsageError(std::string("FLOQUET_TOL must be a positive number, got ") + env);
  return v;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot open " + cfg.out);
  f << text;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (cfg.format == a) return;
  }
  throw UsageError("format " + cfg.format + " is not available for this command");
}

// ---------------------------------------------------------------------------

int cmd_nu(const RunConfig& cfg) {
  require_format(cfg, {"json", "text", "csv"});
  FloquetResult r;
  try {
    if (cfg.method == "monodromy") {
      r = monodromy_nu({cfg.lambda, cfg.q, cfg.tol});
    } else if (cfg.method == "hill") {
      r = hill_nu(cfg.lambda, cfg.q);
    } else {
      r = wkb_nu(cfg.method == "wkb-alpha" ? Cycle::ALPHA : Cycle::BETA, cfg.lambda, cfg.q, cfg.eps_order);
    }
  } catch (const SeriesDiverges& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";

  std::ostringstream os;
  os.precision(16);
  if (cfg.format == "json") {
    os << to_json(r).dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "nu,nu_imag,method,stable,band_edge,est_error\n"
       << r.nu << "," << r.nu_imag << "," << r.method << "," << r.stable << "," << r.band_edge << "," << r.est_error
       << "\n";
  } else {
    os << "nu = " << r.nu;
    if (!r.stable) os << " + " << r.nu_imag << "i (unstable)";
    os << "  +- " << r.est_error << "  [" << r.method << (r.band_edge ? ", band edge" : "") << "]\n";
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_series(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv", "latex", "text"});
  std::string text;
  if (cfg.which == "eigen1") {
    int order = cfg.order.value_or(kSmallQOrder);
    if (order < 2 || order > kSmallQOrder) throw UsageError("eigen1 order must be in 2..8");
    NuRationalSeries s = small_q_series(order);
    if (cfg.format == "json") text = to_json(s).dump(2) + "\n";
    if (cfg.format == "csv") text = to_csv(s);
    if (cfg.format == "latex") text = to_latex(s);
    if (cfg.format == "text") {
      text = "lambda = nu^2\n";
      for (const auto& [j, r] : s.terms) text += "  + [" + r.str() + "] q^" + std::to_string(j) + "\n";
    }
  } else if (cfg.which == "inverse") {
    int order = cfg.order.value_or(kLambdaOrder);
    if (order < 3 || order > 23) throw UsageError("inverse order must be in 3..23");
    InverseSeries s = invert_small_q(small_q_series(order <= kLambdaOrder ? 6 : 8), order);
    if (cfg.format == "json") text = to_json(s).dump(2) + "\n";
    if (cfg.format == "csv") text = to_csv(s);
    if (cfg.format == "latex") text = to_latex(s);
    if (cfg.format == "text") {
      text = "nu = lambda^(1/2)\n";
      for (const auto& [key, c] : s.terms) {
        text += "  + (" + c.str() + ") q^" + std::to_string(key.second) + " lambda^(-" + std::to_string(key.first) +
                "/2)\n";
      }
    }
  } else if (cfg.which == "eigen2") {
    int order = cfg.order.value_or(kLargeQOrder);
    if (order < 0 || order > kLargeQOrder) throw UsageError("eigen2 order must be in 0..7");
    LargeQSeries s = large_q_series(order);
    if (cfg.format == "json") text = to_json(s).dump(2) + "\n";
    if (cfg.format == "csv") text = to_csv(s);
    if (cfg.format == "latex") text = to_latex(s);
    if (cfg.format == "text") {
      text = "lambda =\n";
      for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it) {
        text += "  + (" + it->second.str() + ") q^(" + Rational(it->first, 2).str() + ")\n";
      }
    }
  } else {
    throw UsageError("unknown series: " + cfg.which);
  }
  emit(cfg, text);
  return kExitPass;
}

// D_1 and D_2 come from the closed-form periods; D_3 and D_4 are solved for.
GeneratingOperator operator_of_order(int m) {
  if (m <= 2) return operator_for(m);
  MatchPlan plan = match_plan(m);
  EpsilonSeries target = invert_small_q(small_q_series(plan.order_q), plan.lambda_order).rows();
  return determine_operator(m, target, normalized_alpha_base());
}

int cmd_operators(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv", "latex", "text"});
  std::vector<int> ms;
  if (cfg.m) {
    ms.push_back(*cfg.m);
  } else {
    ms = {1, 2, 3, 4};
  }
  std::string text;
  if (cfg.format == "json" && cfg.m) {
    text = to_json(operator_of_order(*cfg.m)).dump(2) + "\n";
  } else if (cfg.format == "json") {
    json all = json::object();
    for (int m : ms) all[std::to_string(m)] = to_json(operator_of_order(m));
    text = all.dump(2) + "\n";
  } else {
    for (int m : ms) {
      GeneratingOperator op = operator_of_order(m);
      if (cfg.format == "csv") text += (cfg.m ? "" : "# m = " + std::to_string(m) + "\n") + to_csv(op);
      if (cfg.format == "latex") text += to_latex(op);
      if (cfg.format == "text") {
        text += "D_" + std::to_string(m) + " =";
        for (const auto& t : op.terms) {
          text += " + (" + t.coeff.str() + ") w^" + std::to_string(t.wpow) + " d^" + std::to_string(t.dpow);
        }
        text += "\n";
      }
    }
  }
  emit(cfg, text);
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, bool tol_given) {
  require_format(cfg, {"json", "csv", "text"});
  // operators bounds relative error by --tol; crosscheck passes it to the integrator
  double tol = cfg.tol;
  if (cfg.suite == "operators" && !tol_given) tol = 1e-5;
  auto records = run_suite(cfg.suite, tol);

  std::ostringstream os;
  if (cfg.format == "json") {
    json a = json::array();
    for (const auto& r : records) a.push_back(to_json(r));
    os << a.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "id,suite,passed,value,tol\n";
    for (const auto& r : records) os << r.id << "," << r.suite << "," << r.passed << "," << r.value << "," << r.tol << "\n";
  } else {
    for (const auto& r : records) {
      os << (r.passed ? "PASS " : "FAIL ") << r.id << "  value=" << r.value << " tol=" << r.tol << "  " << r.detail
         << "\n";
    }
  }
  emit(cfg, os.str());
  return all_passed(records) ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    cfg.tol = default_tolerance();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Floquet exponents and asymptotic eigenvalue series of the Mathieu equation"};
  app.require_subcommand(1);
  auto* tol_opt = app.add_option("--tol", cfg.tol, "numeric tolerance (default $FLOQUET_TOL or 1e-12)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "latex", "text"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");

  auto* nu = app.add_subcommand("nu", "Floquet exponent at (lambda, q)");
  nu->add_option("--lambda", cfg.lambda)->required();
  nu->add_option("--q", cfg.q)->required()->check(CLI::NonNegativeNumber);
  nu->add_option("--method", cfg.method)->check(CLI::IsMember({"monodromy", "hill", "wkb-alpha", "wkb-beta"}));
  nu->add_option("--eps-order", cfg.eps_order, "highest eps power kept by the wkb methods")
      ->check(CLI::IsMember({1, 3, 5, 7}));

  auto* series = app.add_subcommand("series", "exact series");
  series->add_option("--which", cfg.which)->required()->check(CLI::IsMember({"eigen1", "inverse", "eigen2"}));
  series->add_option("--order", cfg.order, "eigen1: q power, inverse: lambda order, eigen2: twice the last q power");

  auto* ops = app.add_subcommand("operators", "generating operators D_m");
  ops->add_option("--m", cfg.m)->check(CLI::Range(1, 4));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite)->required()->check(CLI::IsMember(suite_names()));

  for (auto* sub : {nu, series, ops, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*nu) return cmd_nu(cfg);
    if (*series) return cmd_series(cfg);
    if (*ops) return cmd_operators(cfg);
    return cmd_verify(cfg, tol_opt->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
