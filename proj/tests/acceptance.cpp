// Acceptance suite: one PASS/FAIL line per criterion over the bundled demo
// configs. Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hubatom/canonical.hpp"
#include "hubatom/config.hpp"
#include "hubatom/green.hpp"
#include "hubatom/oracle.hpp"
#include "hubatom/subtlety.hpp"
#include "hubatom/thermo.hpp"

using namespace hubatom;

namespace {

const char* const kDemos[] = {"fermion1", "fermion2", "fermion3", "fermion4", "boson1", "boson2"};

RunConfig demo(const std::string& name) {
  return load_run_config(std::string(HUBATOM_CONFIG_DIR) + "/" + name + ".json");
}

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Weight mismatch over the union of line energies, relative to the oracle's
// total absolute weight.
double line_mismatch(const SpectralLineSet& mine, const SpectralLineSet& ref) {
  double scale = 0.0;
  for (const auto& l : ref.lines) scale += std::abs(l.weight);
  if (scale == 0.0) scale = 1.0;
  std::vector<double> energies;
  for (const auto* s : {&mine, &ref})
    for (const auto& l : s->lines) energies.push_back(l.energy);
  double worst = 0.0;
  for (double e : energies) {
    auto at = [e](const SpectralLineSet& s) {
      double w = 0.0;
      for (const auto& l : s.lines)
        if (std::abs(l.energy - e) <= 1e-12 * std::max(1.0, std::abs(e))) w += l.weight;
      return w;
    };
    worst = std::max(worst, std::abs(at(mine) - at(ref)) / scale);
  }
  return worst;
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

Outcome criterion_hs_identity() {
  Outcome o;
  double worst = 0.0, worst_ratio = INFINITY;
  for (const char* name : kDemos) {
    const auto cfg = demo(name);
    if (!hs_domain_ok(cfg.model)) continue;
    const auto hs = hs_identity_residual(cfg.model, cfg.truncation, 1e-13);
    worst = std::max(worst, hs.residual);
    if (!(hs.residual < 1e-10)) o.ok = false;
    if (cfg.model.beta * cfg.model.U >= 0.1) {
      const double ratio = hs.naive_residual / hs.residual;
      worst_ratio = std::min(worst_ratio, ratio);
      if (!(hs.naive_residual >= 100.0 * hs.residual)) o.ok = false;
    }
  }
  o.detail = "max residual " + sci(worst) + " (< 1e-10), min naive/modified " + sci(worst_ratio) + " (>= 100)";
  return o;
}

Outcome criterion_one_site() {
  Outcome o;
  const double U = 1.0, beta = 1.0, mu = 0.0;
  const int n_max = 40;
  const auto s = naive_vs_exact_one_site(U, beta, mu, n_max);
  ModelSpec site;
  site.statistics = Statistics::boson;
  site.levels = {{"0", 0.0}};
  site.U = U;
  site.beta = beta;
  site.mu = mu;
  TruncationPolicy t;
  t.n_max_per_level = n_max;
  t.n_max = n_max;
  const double trace = ExactOracle(site, t).grand_partition();
  const double err = rel(s.exact, trace);
  const double gap = std::abs(s.naive - s.exact) / s.exact;
  o.ok = err <= 1e-12 && gap > 0.1;
  o.detail = "exact vs trace " + sci(err) + " (<= 1e-12), naive gap " + sci(gap) + " at betaU=1, mu=0";
  return o;
}

Outcome criterion_oracle() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : kDemos) {
    const auto cfg = demo(name);
    const auto& m = cfg.model;
    const auto& tr = cfg.truncation;
    const ExactOracle ed(m, tr);
    const auto g = grand_partition_interacting(m, tr);
    worst = std::max(worst, std::abs(std::expm1(g.log_xi_U - ed.log_grand_partition())));
    std::vector<double> times(32);
    for (int k = 0; k < 32; ++k) times[k] = 10.0 * m.beta * k / 31.0;
    for (std::size_t a = 0; a < m.size(); ++a) {
      const auto& label = m.levels[a].label;
      worst = std::max(worst, rel(g.mean_occupation[a], ed.occupation(a)));
      for (auto kind : {LineKind::lesser, LineKind::greater, LineKind::spectral}) {
        worst = std::max(worst, line_mismatch(line_set(m, tr, label, kind), ed.spectral_lines(a, kind)));
      }
      const auto less = green_time_series(m, tr, label, GreenKind::lesser, times);
      const auto great = green_time_series(m, tr, label, GreenKind::greater, times);
      const double sl = std::max(lesser_lines(m, tr, label).total_weight(), 1e-300);
      const double sg = greater_lines(m, tr, label).total_weight();
      for (std::size_t k = 0; k < times.size(); ++k) {
        worst = std::max(worst, std::abs(less.values[k] - ed.lesser_time(a, times[k])) / sl);
        worst = std::max(worst, std::abs(great.values[k] - ed.greater_time(a, times[k])) / sg);
      }
    }
  }
  o.ok = worst <= 1e-12;
  o.detail = "max relative deviation " + sci(worst) + " (<= 1e-12)";
  return o;
}

Outcome criterion_sum_rules() {
  Outcome o;
  double worst_w = 0.0, worst_c = 0.0;
  for (const char* name : kDemos) {
    const auto cfg = demo(name);
    const auto t = canonical_partitions(cfg.model, cfg.truncation);
    for (int n = 1; n <= t.n_max; ++n) {
      double sum = 0.0;
      for (std::size_t a = 0; a < t.levels(); ++a) sum += t.W(a, n);
      worst_w = std::max(worst_w, rel(sum, n * t.Z(n)));
    }
    for (const auto& l : cfg.model.levels) {
      const auto nn = fractional_parentage_n(cfg.model, cfg.truncation, l.label);
      const auto pp = fractional_parentage_p(cfg.model, cfg.truncation, l.label);
      const double c = std::accumulate(pp.begin(), pp.end(), 0.0) -
                       cfg.model.sign() * std::accumulate(nn.begin(), nn.end(), 0.0);
      worst_c = std::max(worst_c, std::abs(c - 1.0));
    }
  }
  o.ok = worst_w <= 1e-12 && worst_c <= 1e-12;
  o.detail = "sum W vs N Z " + sci(worst_w) + ", sum p - s sum n - 1 " + sci(worst_c) + " (<= 1e-12)";
  return o;
}

Outcome criterion_kms() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : kDemos) {
    const auto cfg = demo(name);
    for (const auto& l : cfg.model.levels) worst = std::max(worst, kms_check(cfg.model, cfg.truncation, l.label));
  }
  o.ok = worst <= 1e-12;
  o.detail = "max violation " + sci(worst) + " (<= 1e-12)";
  return o;
}

Outcome criterion_contour() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : kDemos) {
    const auto cfg = demo(name);
    const auto t = canonical_partitions(cfg.model, cfg.truncation);
    const int m = minimum_contour_nodes(cfg.model, cfg.truncation);
    for (int n = 0; n <= t.n_max; ++n) {
      const auto c = canonical_partition_contour(cfg.model, cfg.truncation, n, m);
      worst = std::max(worst, std::abs(c.value - t.Z(n)) / std::max(1.0, t.Z(n)));
    }
  }
  o.ok = worst <= 1e-12;
  o.detail = "max |contour - DP| / max(1, Z_N) " + sci(worst) + " (<= 1e-12)";
  return o;
}

Outcome criterion_spin() {
  Outcome o;
  std::ostringstream d;
  for (double bj : {0.1, 1.0, 5.0}) {
    const auto s = spin_hs_counterexample(bj, 32);
    const double lhs_err = rel(s.lhs, 2.0 * std::exp(0.75 * bj));
    const double rhs_err = rel(s.rhs_closed, 2.0 * std::exp(0.25 * bj) * (1.0 + 0.5 * bj));
    const double quad_err = rel(s.rhs_quadrature, s.rhs_closed);
    if (!(lhs_err <= 1e-10 && rhs_err <= 1e-10 && quad_err <= 1e-10 && s.lhs > s.rhs_quadrature &&
          s.lhs > s.rhs_closed)) {
      o.ok = false;
    }
    d << "betaJ=" << bj << ": lhs " << s.lhs << " > rhs " << s.rhs_quadrature << " (quad err "
      << sci(quad_err) << "); ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion_coherent() {
  Outcome o;
  double worst = 0.0;
  const CoherentAmplitudes amps[] = {{1.0, 1.0}, {{0.5, 0.3}, {0.8, -0.2}}, {{-0.7, 0.1}, {0.4, 0.9}}};
  bool nonzero = true, naive_zero = true;
  for (const auto& a : amps) {
    for (double t : {-2.0, 0.1, 1.0, 3.141592653589793}) {
      worst = std::max(worst, std::abs(coherent_matrix_element_direct(a, 1.0, t, 40) -
                                       coherent_matrix_element_hs(a, 1.0, t, 40)));
    }
    const auto c = short_time_mismatch(a, 1.0, 1e-6, 40);
    naive_zero = naive_zero && c.naive_coeff == std::complex<double>(0.0, 0.0);
    nonzero = nonzero && std::abs(c.exact_coeff) > 0.0;
  }
  const auto unit = short_time_mismatch({1.0, 1.0}, 1.0, 1e-6, 40);
  const double coeff_err = std::abs(unit.exact_coeff - std::complex<double>(0.0, -1.0));
  o.ok = worst <= 1e-14 && naive_zero && nonzero && coeff_err <= 1e-12;
  o.detail = "direct vs HS " + sci(worst) + " (<= 1e-14), naive coeff " + (naive_zero ? "0" : "nonzero") +
             ", |exact + i| " + sci(coeff_err) + " (<= 1e-12)";
  return o;
}

Outcome criterion_generalized() {
  Outcome o;
  TruncationPolicy t;
  t.n_max_per_level = 1;
  const double r = generalized_hs_residual({0.0, 0.0}, {{1.0, 0.5}, {0.5, 1.0}}, 1.0, t, 64);
  o.ok = r < 1e-8;
  o.detail = "residual " + sci(r) + " (< 1e-8) with 64^2 nodes";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion_determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "hubatom_acceptance";
  std::filesystem::create_directories(dir);
  std::size_t compared = 0;
  for (const char* name : kDemos) {
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / (std::string(name) + "_" + std::to_string(run) + ".csv");
      std::filesystem::remove(out);
      const std::string cmd = std::string("\"") + HUBATOM_CLI + "\" --config \"" + HUBATOM_CONFIG_DIR + "/" +
                              name + ".json\" --out \"" + out.string() + "\" verify 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) {
        o.ok = false;
        o.detail = std::string("verify failed on ") + name;
        return o;
      }
      reports[run] = slurp(out);
    }
    if (reports[0].empty() || reports[0] != reports[1]) {
      o.ok = false;
      o.detail = std::string("reports differ for ") + name;
      return o;
    }
    compared += reports[0].size();
  }
  o.detail = "6 configs x 2 runs byte-identical (" + std::to_string(compared) + " bytes per run)";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 HS identity (shifted) and naive gap", criterion_hs_identity},
      {"2 one-site exact series vs trace, naive gap", criterion_one_site},
      {"3 oracle equivalence (Xi, <n>, lines, G(t))", criterion_oracle},
      {"4 sum rules", criterion_sum_rules},
      {"5 KMS line identity", criterion_kms},
      {"6 contour vs DP canonical partitions", criterion_contour},
      {"7 spin-1/2 counterexample", criterion_spin},
      {"8 coherent-state element and short-time term", criterion_coherent},
      {"9 generalized HS, 2-level coupling", criterion_generalized},
      {"10 verify determinism", criterion_determinism},
  };
  int failures = 0;
  for (const auto& [title, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << title << "  | " << o.detail << '\n';
  }
  std::cout << (failures ? "acceptance: FAILED " : "acceptance: all 10 criteria passed")
            << (failures ? std::to_string(failures) + " of 10\n" : "\n");
  return failures ? 1 : 0;
}
