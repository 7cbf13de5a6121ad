#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "conformal_zeta/constants.hpp"
#include "conformal_zeta/errors.hpp"
#include "conformal_zeta/field_io.hpp"
#include "conformal_zeta/functionals.hpp"
#include "conformal_zeta/optimizer.hpp"
#include "conformal_zeta/suite.hpp"
#include "conformal_zeta/test_functions.hpp"
#include "conformal_zeta/zeta.hpp"

namespace {

using nlohmann::json;
using namespace cz;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

struct Globals {
  int grid_N = 256;
  std::string variant = "paper";
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

std::vector<double> parse_alphas(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = spec.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw InvalidArgument("--alphas expects A:B:logM, e.g. 1e-3:0.3:log12");
  }
  std::string count = spec.substr(b + 1);
  if (count.rfind("log", 0) == 0) count = count.substr(3);
  try {
    return log_spaced(std::stod(spec.substr(0, a)), std::stod(spec.substr(a + 1, b - a - 1)), std::stoi(count));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InvalidArgument*>(&e)) throw;
    throw InvalidArgument("--alphas: cannot parse '" + spec + "'");
  }
}

ConformalBackground background(int n, const Globals& g, const std::string& mass_field, GridPtr grid = nullptr) {
  const auto P = dim_params(n, parse_variant(g.variant));
  if (!mass_field.empty()) {
    auto mnor = read_field_for(mass_field, n, grid);
    return ConformalBackground::sphere_with_mass(P, std::move(mnor));
  }
  return ConformalBackground::round_sphere(P, grid ? grid : make_grid(n, g.grid_N));
}

json params_json(const DimensionParams& P) {
  return {{"n", P.n},           {"m", P.m},       {"p", P.p},
          {"a_n", P.a_n},       {"b_n", P.b_n},   {"c_n", P.c_n},
          {"q_n", P.q_n},       {"omega_n", P.omega_n}, {"yamabe_sphere", P.yamabe_sphere},
          {"variant", std::string(to_string(P.variant))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral zeta finite parts, mass functionals and test-function estimates on spheres"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file")->envname("CONFORMAL_ZETA_CONFIG");

  Globals g;
  app.add_option("--grid", g.grid_N, "Gauss-Jacobi grid size")->check(CLI::Range(16, 4096));
  app.add_option("--variant", g.variant, "constant variant")->check(CLI::IsMember({"paper", "calibrated"}));

  int n = 4;
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n, "even dimension >= 4")->required(); };

  auto* constants = app.add_subcommand("constants", "print the dimensional constants");
  add_n(constants);

  auto* zeta = app.add_subcommand("zeta", "residue and finite part of the spectral zeta function at s=1");
  add_n(zeta);
  std::string space = "sphere";
  zeta->add_option("--space", space)->check(CLI::IsMember({"sphere", "projective"}));
  bool with_mass = false;
  zeta->add_flag("--mass", with_mass, "also print the homogeneous mass");

  auto* trace = app.add_subcommand("trace", "trace of the inverse operator for u^{4/(n-2)} g_round");
  add_n(trace);
  std::string profile, mass_field, out;
  trace->add_option("--profile", profile, "field file with u")->required();

  auto* functional = app.add_subcommand("functional", "mass and Yamabe functionals of a conformal factor");
  add_n(functional);
  functional->add_option("--profile", profile)->required();
  functional->add_option("--mass-field", mass_field, "field file with the normalized mass of the background");

  auto* optimize = app.add_subcommand("optimize", "maximize the mass functional");
  add_n(optimize);
  OptimizerConfig ocfg;
  optimize->add_option("--mass-field", mass_field);
  optimize->add_option("--tol", ocfg.tol_residual);
  optimize->add_option("--seed", ocfg.seed);
  optimize->add_option("--max-iters", ocfg.max_iters);
  optimize->add_option("--step", ocfg.step0);
  optimize->add_option("--out", out, "result file (JSON)");

  auto* sweep = app.add_subcommand("sweep", "mass functional of concentrating test functions");
  add_n(sweep);
  std::string alphas = "1e-3:0.3:log12";
  double epsilon = 0.3;
  sweep->add_option("--alphas", alphas, "A:B:logM, M log-spaced values in [A, B]");
  sweep->add_option("--epsilon", epsilon);
  sweep->add_option("--mass-field", mass_field);
  sweep->add_option("--out", out, "CSV file");

  auto* rates = app.add_subcommand("rates", "fit the decay rate of the Lee-Parker integral");
  add_n(rates);
  int k = 0;
  std::string rate_alphas = "1e-3:1e-1:log25";
  double rate_eps = kRateEpsilon;
  rates->add_option("--k", k)->required();
  rates->add_option("--alphas", rate_alphas);
  rates->add_option("--epsilon", rate_eps);

  auto* suite = app.add_subcommand("suite", "run every acceptance check");
  SuiteOptions sopt;
  suite->add_option("--out", out, "report file (JSON)");
  suite->add_option("--seed", sopt.seed);
  suite->add_option("--threads", sopt.threads);
  suite->add_option("--only", sopt.only, "criterion ids to run, e.g. 1,3,4")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const auto variant = parse_variant(g.variant);
    if (*constants) {
      emit(params_json(dim_params(n, variant)));
    } else if (*zeta) {
      const SpectrumQuery q{parse_space(space), n, OperatorKind::subcritical_gjms};
      const auto v = spectral_zeta_at_1(q);
      json j{{"space", space}, {"n", n}, {"residue", v.residue}, {"finite_part", v.finite_part}, {"at", v.at}};
      if (with_mass) {
        const auto m = homogeneous_mass(q, dim_params(n, variant));
        j["variant"] = g.variant;
        j["volume"] = m.volume;
        j["mass"] = m.mass;
        j["normalized_mass"] = m.normalized_mass;
      }
      emit(j);
    } else if (*trace) {
      const auto u = read_field_for(profile, n);
      const auto bg = background(n, g, "", u.grid_ptr());
      emit({{"n", n}, {"variant", g.variant}, {"trace", trace_theorem_c(u, bg)}});
    } else if (*functional) {
      const auto u = read_field_for(profile, n);
      const auto bg = background(n, g, mass_field, u.grid_ptr());
      const auto r = functional_report(u, bg);
      emit({{"n", n},
            {"variant", g.variant},
            {"mass_functional", r.mass_functional},
            {"yamabe_functional", r.yamabe_functional},
            {"trace", r.trace},
            {"volume", r.volume},
            {"sobolev_gap", r.sobolev_gap}});
    } else if (*optimize) {
      const auto bg = background(n, g, mass_field);
      const auto r = maximize_mass_functional(bg, ocfg);
      json j{{"value", r.value},          {"lambda", r.lambda},       {"residual", r.residual},
             {"mass_mean", r.mass_mean},  {"mass_reldev", r.mass_reldev}, {"iterations", r.iterations},
             {"converged", r.converged},  {"message", r.message}};
      if (!out.empty()) {
        json full = j;
        full["u_star"] = field_to_json(r.u_star);
        write_text(out, full.dump(2) + "\n");
      }
      emit(j);
      return r.converged ? kOk : kCheckFailed;
    } else if (*sweep) {
      const auto bg = background(n, g, mass_field);
      const auto rows = functional_sweep(parse_alphas(alphas), epsilon, bg);
      const auto csv = sweep_csv(rows);
      if (out.empty()) {
        std::cout << csv;
      } else {
        write_text(out, csv);
      }
    } else if (*rates) {
      const auto a = parse_alphas(rate_alphas);
      std::vector<double> vals;
      for (double x : a) vals.push_back(lee_parker_integral(x, rate_eps, k, n));
      const auto r = rate_fit(a, vals, n, k);
      emit({{"n", n},
            {"k", k},
            {"epsilon", rate_eps},
            {"exponent_fit", r.exponent_fit},
            {"log_factor_detected", r.log_factor_detected},
            {"r2", r.r2},
            {"predicted", std::string(to_string(r.predicted))},
            {"predicted_exponent", r.predicted_exponent}});
    } else if (*suite) {
      sopt.grid_N = g.grid_N;
      const auto doc = run_suite(sopt);
      const auto j = to_json(doc);
      if (out.empty()) {
        emit(j);
      } else {
        write_text(out, j.dump(2) + "\n");
      }
      std::cerr << summary_lines(doc);
      return doc.overall_pass ? kOk : kCheckFailed;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
