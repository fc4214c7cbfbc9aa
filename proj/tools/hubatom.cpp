// hubatom: verification suite and data export for the interacting-level model.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hubatom/canonical.hpp"
#include "hubatom/config.hpp"
#include "hubatom/errors.hpp"
#include "hubatom/green.hpp"
#include "hubatom/io.hpp"
#include "hubatom/subtlety.hpp"
#include "hubatom/thermo.hpp"
#include "hubatom/verify.hpp"

namespace {

using namespace hubatom;
using ojson = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  bool naive_hs = false;
};

struct SpectralArgs {
  std::string alpha;
  std::string kind = "spectral";
  std::optional<double> eta;
  std::optional<double> e_min;
  std::optional<double> e_max;
  int n_e = 801;
};

struct GreenArgs {
  std::string alpha;
  std::string kind = "lesser";
  std::optional<double> t_max;
  int n_t = 201;
};

struct SubtletyArgs {
  bool spin_only = false;
  bool json = false;
  double beta_j = 1.0;
  double z_re = 1.0, z_im = 0.0, w_re = 1.0, w_im = 0.0;
  double U = 1.0;
  double t = std::numbers::pi;
  double dt = 1e-6;
  int n_max = 40;
};

OutputFormat output_format(const Globals& g) {
  return g.format == "json" ? OutputFormat::json : OutputFormat::csv;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(g.out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + g.out_path + "'");
  out << text;
}

RunConfig load(const Globals& g) {
  if (g.config_path.empty()) throw ConfigError("--config is required for this subcommand");
  auto cfg = load_run_config(g.config_path);
  const auto report = validate(cfg.model, cfg.truncation);
  if (!report.ok()) {
    std::string msg = "invalid model:";
    for (const auto& f : report.failures) msg += "\n  " + f;
    throw ConfigError(msg);
  }
  cfg.output.format = output_format(g);
  cfg.output.path = g.out_path;
  return cfg;
}

int cmd_verify(const Globals& g) {
  const auto cfg = load(g);
  VerifyOptions opts;
  opts.naive_hs = g.naive_hs;
  const auto report = run_verification(cfg, opts);
  emit(g, format_report(report, cfg.output.format));

  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : report.rows) {
    if (r.status == CheckStatus::pass) ++pass;
    else if (r.status == CheckStatus::fail) ++fail;
    else ++skip;
  }
  std::cerr << report.rows.size() << " checks: " << pass << " pass, " << fail << " fail, " << skip
            << " skip\n";
  for (const auto& r : report.rows) {
    if (r.status == CheckStatus::fail) std::cerr << "FAIL " << r.name << ": " << r.note << '\n';
  }
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_thermo(const Globals& g) {
  const auto cfg = load(g);
  const auto& model = cfg.model;
  if (cfg.output.format == OutputFormat::csv) {
    std::ostringstream out;
    write_canonical_csv(out, model, canonical_partitions(model, cfg.truncation));
    emit(g, out.str());
    return kExitPass;
  }
  const auto grand = grand_partition_interacting(model, cfg.truncation);
  ojson j;
  j["xi_U"] = grand.xi_U;
  j["mean_N"] = grand.mean_N;
  ojson occ = ojson::object();
  for (std::size_t a = 0; a < model.levels.size(); ++a) occ[model.levels[a].label] = grand.mean_occupation[a];
  j["occupations"] = occ;
  if (model.U > 0.0 && hs_domain_ok(model)) {
    const auto hs = hs_identity_residual(model, cfg.truncation, cfg.tolerances.quad_rel_tol);
    j["hs_residual"] = hs.residual;
    j["hs_residual_naive"] = hs.naive_residual;
    j["nodes_used"] = hs.nodes_used;
  } else {
    j["hs_residual"] = nullptr;
    j["hs_residual_naive"] = nullptr;
    j["nodes_used"] = nullptr;
  }
  emit(g, j.dump(2) + "\n");
  return kExitPass;
}

int cmd_spectral(const Globals& g, const SpectralArgs& args) {
  const auto cfg = load(g);
  const auto kind = parse_line_kind(args.kind);
  const auto set = line_set(cfg.model, cfg.truncation, args.alpha, kind);
  const bool json = cfg.output.format == OutputFormat::json;

  if (!args.eta) {
    const auto pairs = set.as_pairs();
    if (!json) {
      std::ostringstream out;
      write_lines_csv(out, pairs);
      emit(g, out.str());
      return kExitPass;
    }
    ojson j;
    j["alpha"] = set.alpha;
    j["kind"] = std::string(to_string(kind));
    j["convention"] = set.convention_note;
    j["lines"] = ojson::array();
    for (const auto& [e, w] : pairs) j["lines"].push_back({{"energy", e}, {"weight", w}});
    emit(g, j.dump(2) + "\n");
    return kExitPass;
  }

  const double eta = *args.eta;
  if (!(eta > 0.0)) throw ConfigError("--eta must be positive");
  if (args.n_e < 2) throw ConfigError("--n-e must be at least 2");
  double lo = 0.0, hi = 0.0;
  if (!set.lines.empty()) {
    lo = set.lines.front().energy;
    hi = set.lines.back().energy;
  }
  lo = args.e_min.value_or(lo - 10.0 * eta);
  hi = args.e_max.value_or(hi + 10.0 * eta);
  if (!(hi > lo)) throw ConfigError("energy grid needs e-max > e-min");
  std::vector<double> grid(args.n_e);
  for (int k = 0; k < args.n_e; ++k) grid[k] = lo + (hi - lo) * k / (args.n_e - 1);
  const auto density = broadened_spectrum(set, eta, grid);
  if (!json) {
    std::ostringstream out;
    write_lines_csv(out, density, "density");
    emit(g, out.str());
    return kExitPass;
  }
  ojson j;
  j["alpha"] = set.alpha;
  j["kind"] = std::string(to_string(kind));
  j["eta"] = eta;
  j["energy"] = ojson::array();
  j["density"] = ojson::array();
  for (const auto& [e, d] : density) {
    j["energy"].push_back(e);
    j["density"].push_back(d);
  }
  emit(g, j.dump(2) + "\n");
  return kExitPass;
}

int cmd_green(const Globals& g, const GreenArgs& args) {
  const auto cfg = load(g);
  GreenKind kind;
  if (args.kind == "lesser") {
    kind = GreenKind::lesser;
  } else if (args.kind == "greater") {
    kind = GreenKind::greater;
  } else {
    throw ConfigError("unknown kind '" + args.kind + "'; expected lesser|greater");
  }
  if (args.n_t < 1) throw ConfigError("--n-t must be at least 1");
  const double t_max = args.t_max.value_or(10.0 * cfg.model.beta);
  if (!(t_max >= 0.0)) throw ConfigError("--t-max must be non-negative");
  std::vector<double> times(args.n_t, 0.0);
  for (int k = 1; k < args.n_t; ++k) times[k] = t_max * k / (args.n_t - 1);

  const auto series = green_time_series(cfg.model, cfg.truncation, args.alpha, kind, times);
  if (cfg.output.format == OutputFormat::csv) {
    std::ostringstream out;
    write_series_csv(out, series.times, series.values);
    emit(g, out.str());
    return kExitPass;
  }
  ojson j;
  j["alpha"] = series.alpha;
  j["kind"] = args.kind;
  j["t"] = series.times;
  j["re"] = ojson::array();
  j["im"] = ojson::array();
  for (const auto& v : series.values) {
    j["re"].push_back(v.real());
    j["im"].push_back(v.imag());
  }
  emit(g, j.dump(2) + "\n");
  return kExitPass;
}

int cmd_subtlety(const Globals& g, const SubtletyArgs& args) {
  const bool json = args.json || g.format == "json";
  ojson j;
  std::ostringstream text;
  auto line = [&](const std::string& key, const std::string& value) {
    text << key << ": " << value << '\n';
  };
  auto cplx = [](std::complex<double> c) {
    return format_double(c.real()) + (c.imag() < 0 || std::signbit(c.imag()) ? " - " : " + ") +
           format_double(std::abs(c.imag())) + "i";
  };
  auto cplx_json = [](std::complex<double> c) { return ojson{{"re", c.real()}, {"im", c.imag()}}; };

  if (!args.spin_only) {
    const CoherentAmplitudes amp{{args.z_re, args.z_im}, {args.w_re, args.w_im}};
    const auto direct = coherent_matrix_element_direct(amp, args.U, args.t, args.n_max);
    const auto hs = coherent_matrix_element_hs(amp, args.U, args.t, args.n_max);
    const auto coeffs = short_time_mismatch(amp, args.U, args.dt, args.n_max);
    line("coherent.z", cplx(amp.z));
    line("coherent.w", cplx(amp.w));
    line("coherent.U", format_double(args.U));
    line("coherent.t", format_double(args.t));
    line("coherent.direct", cplx(direct));
    line("coherent.hs", cplx(hs));
    line("coherent.abs_difference", format_double(std::abs(direct - hs)));
    line("short_time.exact_coeff", cplx(coeffs.exact_coeff));
    line("short_time.naive_coeff", cplx(coeffs.naive_coeff));
    line("short_time.finite_difference", cplx(coeffs.finite_difference));
    j["coherent"] = {{"z", cplx_json(amp.z)}, {"w", cplx_json(amp.w)}, {"U", args.U}, {"t", args.t},
                     {"direct", cplx_json(direct)}, {"hs", cplx_json(hs)},
                     {"abs_difference", std::abs(direct - hs)}};
    j["short_time"] = {{"dt", args.dt},
                       {"exact_coeff", cplx_json(coeffs.exact_coeff)},
                       {"naive_coeff", cplx_json(coeffs.naive_coeff)},
                       {"finite_difference", cplx_json(coeffs.finite_difference)}};
  }

  const auto spin = spin_hs_counterexample(args.beta_j);
  line("spin.betaJ", format_double(args.beta_j));
  line("spin.lhs", format_double(spin.lhs));
  line("spin.rhs_closed", format_double(spin.rhs_closed));
  line("spin.rhs_quadrature", format_double(spin.rhs_quadrature));
  j["spin"] = {{"betaJ", args.beta_j},
               {"lhs", spin.lhs},
               {"rhs_closed", spin.rhs_closed},
               {"rhs_quadrature", spin.rhs_quadrature}};

  if (!args.spin_only) {
    TruncationPolicy t;
    t.n_max_per_level = 1;
    const double r = generalized_hs_residual({0.0, 0.0}, {{1.0, 0.5}, {0.5, 1.0}}, 1.0, t, 64);
    line("generalized_hs.coupling", "[[1,0.5],[0.5,1]]");
    line("generalized_hs.residual", format_double(r));
    j["generalized_hs"] = {{"coupling", {{1.0, 0.5}, {0.5, 1.0}}}, {"beta", 1.0}, {"nodes_per_dim", 64},
                           {"residual", r}};
  }

  emit(g, json ? j.dump(2) + "\n" : text.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form and brute-force checks for levels with a total-number interaction"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "model configuration (JSON)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "write output to this file instead of stdout");
  app.add_flag("--naive-hs", g.naive_hs, "report the unshifted HS average in the identity row");

  auto* verify = app.add_subcommand("verify", "run every residual check, exit 1 on any failure");
  auto* thermo = app.add_subcommand("thermo", "canonical table (csv) or grand-canonical summary (json)");

  SpectralArgs sp;
  auto* spectral = app.add_subcommand("spectral", "spectral lines of one level");
  spectral->add_option("--alpha", sp.alpha, "level label")->required();
  spectral->add_option("--kind", sp.kind, "lesser|greater|spectral");
  spectral->add_option("--eta", sp.eta, "Lorentzian half width; emits a broadened curve");
  spectral->add_option("--e-min", sp.e_min, "grid start when broadening");
  spectral->add_option("--e-max", sp.e_max, "grid end when broadening");
  spectral->add_option("--n-e", sp.n_e, "grid points when broadening");

  GreenArgs gr;
  auto* green = app.add_subcommand("green", "time series of G^< or G^>");
  green->add_option("--alpha", gr.alpha, "level label")->required();
  green->add_option("--kind", gr.kind, "lesser|greater");
  green->add_option("--t-max", gr.t_max, "last sample time (default 10 beta)");
  green->add_option("--n-t", gr.n_t, "number of samples");

  SubtletyArgs sub;
  auto* subtlety = app.add_subcommand("subtlety", "coherent-state and spin-1/2 decoupling demonstrations");
  subtlety->add_flag("--spin", sub.spin_only, "only the spin-1/2 traces");
  subtlety->add_flag("--json", sub.json, "JSON output");
  subtlety->add_option("--betaJ", sub.beta_j, "beta J for the spin traces");
  subtlety->add_option("--z-re", sub.z_re);
  subtlety->add_option("--z-im", sub.z_im);
  subtlety->add_option("--w-re", sub.w_re);
  subtlety->add_option("--w-im", sub.w_im);
  subtlety->add_option("--U", sub.U, "interaction for the coherent-state element");
  subtlety->add_option("--t", sub.t, "time for the coherent-state element");
  subtlety->add_option("--dt", sub.dt, "step for the finite-difference slope");
  subtlety->add_option("--n-max", sub.n_max, "series cut-off");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(g);
    if (*thermo) return cmd_thermo(g);
    if (*spectral) return cmd_spectral(g, sp);
    if (*green) return cmd_green(g, gr);
    if (*subtlety) return cmd_subtlety(g, sub);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
