#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "sixv/asymptotics.hpp"
#include "sixv/determinant.hpp"
#include "sixv/enumerate.hpp"
#include "sixv/io.hpp"
#include "sixv/montecarlo.hpp"
#include "sixv/verify.hpp"

using namespace sixv;

namespace {

struct Writer {
  const RunConfig& cfg;

  void csv(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    if (!cfg.emit_csv) return;
    const auto path = output_path(cfg, name);
    std::ofstream os(path);
    write_metadata_lines(os, cfg);
    body(os);
    std::cout << "wrote " << path.string() << '\n';
  }

  void json(const std::string& name, nlohmann::ordered_json payload) const {
    if (!cfg.emit_json) return;
    const auto path = output_path(cfg, name);
    nlohmann::ordered_json doc;
    doc["config"] = config_json(cfg);
    doc["result"] = std::move(payload);
    std::ofstream os(path);
    os << doc.dump(2) << '\n';
    std::cout << "wrote " << path.string() << '\n';
  }

  void svg(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    if (!cfg.emit_svg) return;
    const auto path = output_path(cfg, name);
    std::ofstream os(path);
    body(os);
    std::cout << "wrote " << path.string() << '\n';
  }
};

unsigned digits_for(const RunConfig& cfg, int n) {
  return cfg.precision ? cfg.precision : std::max(kDefaultDigits, default_digits(n));
}

int cmd_weights(const RunConfig& cfg) {
  PrecisionScope scope(digits_for(cfg, 1));
  const SpectralParams p = cfg.spectral();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::cout << "column parity   a+            a-            b+            b-            c             "
               "kappa+        kappa-        delta\n";
  for (int k = 1; k <= cfg.n; ++k)
    for (RowParity parity : {RowParity::odd, RowParity::even}) {
      const WeightSet w = build_weights(p, parity, k, cfg.n);
      const char* name = parity == RowParity::odd ? "odd" : "even";
      std::printf("%-6d %-7s", k, name);
      for (const Real* x : {&w.a_plus, &w.a_minus, &w.b_plus, &w.b_minus, &w.c, &w.kappa_plus, &w.kappa_minus,
                            &w.delta})
        std::printf(" %-13s", format_real(*x, 6).c_str());
      std::printf("\n");
      rows.push_back({{"column", k},
                      {"parity", name},
                      {"a_plus", format_real(w.a_plus)},
                      {"a_minus", format_real(w.a_minus)},
                      {"b_plus", format_real(w.b_plus)},
                      {"b_minus", format_real(w.b_minus)},
                      {"c", format_real(w.c)},
                      {"kappa_plus", format_real(w.kappa_plus)},
                      {"kappa_minus", format_real(w.kappa_minus)},
                      {"delta", format_real(w.delta)},
                      {"w", {format_real(w.w[0]), format_real(w.w[1]), format_real(w.w[2])}}});
    }
  Writer out{cfg};
  out.json("weights.json", rows);
  out.csv("weights.csv", [&](std::ostream& os) {
    os << "column,parity,a_plus,a_minus,b_plus,b_minus,c,kappa_plus,kappa_minus,delta\n";
    for (const auto& r : rows)
      os << r["column"].get<int>() << ',' << r["parity"].get<std::string>() << ',' << r["a_plus"].get<std::string>()
         << ',' << r["a_minus"].get<std::string>() << ',' << r["b_plus"].get<std::string>() << ','
         << r["b_minus"].get<std::string>() << ',' << r["c"].get<std::string>() << ','
         << r["kappa_plus"].get<std::string>() << ',' << r["kappa_minus"].get<std::string>() << ','
         << r["delta"].get<std::string>() << '\n';
  });
  return 0;
}

int cmd_enumerate(const RunConfig& cfg) {
  PrecisionScope scope(digits_for(cfg, 1));
  const SpectralParams p = cfg.spectral();
  const EnumMode mode = cfg.mode == "brute" ? EnumMode::brute : EnumMode::transfer;
  Writer out{cfg};
  const std::string what = cfg.what.empty() ? "Z" : cfg.what;
  if (what == "Z") {
    const EnumResult r = enumerate_Z(cfg.n, p, mode);
    std::cout << "N = " << cfg.n << "\nZ = " << format_real(r.Z) << "\nconfigurations = " << r.config_count << '\n';
    out.json("enumerate_Z.json", {{"N", cfg.n}, {"Z", format_real(r.Z)}, {"config_count", r.config_count.str()}});
    out.csv("enumerate_Z.csv", [&](std::ostream& os) {
      os << "N,Z,config_count\n" << cfg.n << ',' << format_real(r.Z) << ',' << r.config_count << '\n';
    });
  } else if (what == "correlations") {
    const CorrelationTable t = enumerate_correlations(cfg.n, p);
    std::cout << "N = " << t.n << "\nZ = " << format_real(t.Z) << "\n r  H                     G\n";
    for (int r = 1; r <= t.n; ++r)
      std::printf("%2d  %-21s %-21s\n", r, format_real(t.H[r - 1], 15).c_str(), format_real(t.G[r - 1], 15).c_str());
    out.json("correlations.json", to_json(t));
    out.csv("correlations.csv", [&](std::ostream& os) { write_csv(os, t); });
  } else if (what == "extended") {
    const ExtendedLattice e = enumerate_extended(cfg.n, cfg.L, p);
    std::cout << "N = " << e.n << ", L = " << e.L << "\nZ_NL (sum) = " << format_real(e.Z_NL)
              << "\nZ_NL (direct) = " << format_real(e.Z_direct) << '\n';
    out.json("extended.json", to_json(e));
    out.csv("extended.csv", [&](std::ostream& os) {
      os << "k,Z_left,Z_right\n";
      for (std::size_t k = 0; k < e.Z_left.size(); ++k)
        os << k + 1 << ',' << format_real(e.Z_left[k]) << ',' << format_real(e.Z_right[k]) << '\n';
    });
  } else {
    throw ConfigError("enumerate: --what must be Z, correlations or extended");
  }
  return 0;
}

int cmd_det(const RunConfig& cfg) {
  Writer out{cfg};
  const std::string what = cfg.what.empty() ? "Z" : cfg.what;
  if (what == "Z") {
    PrecisionScope scope(digits_for(cfg, cfg.n));
    const SpectralParams p = cfg.spectral();
    const HomogeneousZ z = homogeneous_Z_detail(cfg.n, p);
    std::cout << "Z_" << cfg.n << " = " << format_real(z.Z) << "\nroute = " << (z.confluent_route ? "confluent" : "tau")
              << '\n';
    out.json("det_Z.json", {{"N", cfg.n}, {"Z", format_real(z.Z)}, {"route", z.confluent_route ? "confluent" : "tau"},
                            {"prefactor_sign", z.prefactor_sign}, {"tau_sign", z.tau_sign}});
  } else if (what == "partial") {
    PrecisionScope scope(digits_for(cfg, cfg.n));
    const Real z = partial_inhom_Z(cfg.n, cfg.spectral());
    std::cout << "Z_" << cfg.n << "(omega) = " << format_real(z) << '\n';
    out.json("det_partial.json", {{"N", cfg.n}, {"Z", format_real(z)}});
  } else if (what == "tsuchiya") {
    PrecisionScope scope(digits_for(cfg, cfg.n));
    const SpectralParams p = cfg.spectral();
    const auto lambdas = cfg.lambda_list(), mus = cfg.mu_list();
    if (lambdas.empty() || lambdas.size() != mus.size())
      throw ConfigError("det --what tsuchiya needs --lambdas and --mus of equal length");
    const Real z = tsuchiya_Z(lambdas, mus, p.eta, p.xi);
    std::cout << "Z = " << format_real(z) << '\n';
    out.json("det_tsuchiya.json", {{"N", lambdas.size()}, {"Z", format_real(z)}});
  } else if (what == "tau") {
    const int n_max = cfg.n_max ? cfg.n_max : cfg.n;
    PrecisionScope scope(digits_for(cfg, n_max + 1));
    const TauSequence seq = tau_sequence(n_max + 1, cfg.spectral());
    const auto res = toda_residuals(seq);
    for (const auto& r : res)
      std::cout << "N=" << r.N << " tau=" << format_real(seq.tau[r.N], 12) << " toda=" << format_real(r.toda, 3)
                << " toda~=" << format_real(r.toda_tilde, 3) << '\n';
    out.csv("tau.csv", [&](std::ostream& os) { write_tau_csv(os, seq, res); });
  } else if (what == "hN") {
    PrecisionScope scope(cfg.precision ? cfg.precision : std::max(kDefaultDigits, 12u * unsigned(cfg.n)));
    const Real lambda = parse_angle(cfg.lambda), omega = parse_angle(cfg.omega);
    const Real h = hN_determinant(cfg.n, lambda, omega);
    const double rate = static_cast<double>(log(h)) / cfg.n;
    const double limit = h_rate(static_cast<double>(omega), static_cast<double>(lambda));
    std::cout << "h_N = " << format_real(h, 20) << "\nlog(h_N)/N = " << rate << "\nh_rate = " << limit
              << "\ndifference = " << rate - limit << '\n';
    out.json("det_hN.json",
             {{"N", cfg.n}, {"h", format_real(h)}, {"log_rate", rate}, {"h_rate", limit}, {"difference", rate - limit}});
  } else {
    throw ConfigError("det: --what must be Z, partial, tsuchiya, tau or hN");
  }
  return 0;
}

int cmd_curve(const RunConfig& cfg) {
  const double lambda = static_cast<double>(parse_angle(cfg.lambda));
  const ContactPoint cp = contact_point(lambda);
  std::printf("contact point kappa = %.12f (direct %.12f), theta'' = %.6f\n", cp.kappa, cp.kappa_direct, cp.theta_pp);
  std::vector<double> zs;
  for (double w : default_omega_grid(cfg.points, lambda)) zs.push_back(gamma_map(w, lambda));
  const ArcticCurve curve = arctic_curve(zs, lambda);
  if (curve.clipped) std::cerr << "warning: " << curve.clipped << " grid points outside (0, 1) clipped\n";
  std::vector<TangentLine> lines;
  for (double w : default_omega_grid(std::max(cfg.lines, 1), lambda)) lines.push_back(tangent_line(gamma_map(w, lambda), lambda));
  double worst = 0;
  for (const auto& s : curve.samples) worst = std::max(worst, std::abs(std::hypot(s.x - 1, s.y - 1) - 1));
  std::printf("%zu curve samples, max circle deviation %.3e, %zu tangent lines\n", curve.samples.size(), worst,
              lines.size());
  Writer out{cfg};
  out.csv("curve.csv", [&](std::ostream& os) { write_curve_csv(os, curve.samples); });
  out.csv("tangent_lines.csv", [&](std::ostream& os) {
    os << "z,u,chi,slope\n" << std::setprecision(17);
    for (const auto& t : lines) os << t.z << ',' << t.u << ',' << t.chi << ',' << t.slope << '\n';
  });
  nlohmann::ordered_json lj = nlohmann::ordered_json::array();
  for (const auto& t : lines) lj.push_back({{"z", t.z}, {"u", t.u}, {"chi", t.chi}, {"slope", t.slope}});
  out.json("curve.json", {{"contact_point", cp.kappa}, {"theta_pp", cp.theta_pp}, {"max_circle_deviation", worst},
                          {"tangent_lines", lj}});
  out.svg("curve.svg", [&](std::ostream& os) { write_curve_svg(os, cfg, curve.samples, lines); });
  return 0;
}

int cmd_mc(const RunConfig& cfg) {
  const double lambda = static_cast<double>(parse_angle(cfg.lambda));
  const auto w = special_point_weights(cfg.n, lambda);
  MCState st = mc_init(cfg.n, cfg.seed, parse_init_mode(cfg.init), w);
  const MeasureOptions opt{cfg.sweeps, cfg.burn_in, cfg.thinning, cfg.batch};
  const DensityField field = mc_measure(st, w, opt);
  const auto meta = run_metadata(st, opt);
  std::printf("N=%d sweeps=%llu samples=%llu plaquette acceptance %.4f turn acceptance %.4f%s\n", cfg.n,
              (unsigned long long)st.sweeps, (unsigned long long)field.samples, st.plaquette.acceptance(),
              st.turn.acceptance(), field.unreliable() ? " (few batches: statistics unreliable)" : "");
  std::vector<CurveSample> contour;
  nlohmann::ordered_json sens = nlohmann::ordered_json::array();
  for (double eps : {0.02, cfg.epsilon, 0.10}) {
    try {
      const auto c = extract_contour(field, eps);
      const auto cmp = compare_semicircle(c);
      std::printf("epsilon %.2f: sup distance %.4f, contacts (%.3f, %.3f) (%.3f, %.3f) (%.3f, %.3f)\n", eps,
                  cmp.distance, cmp.left.x, cmp.left.y, cmp.top.x, cmp.top.y, cmp.bottom.x, cmp.bottom.y);
      sens.push_back({{"epsilon", eps}, {"distance", cmp.distance}, {"left_gap", cmp.left_gap},
                      {"top_gap", cmp.top_gap}, {"bottom_gap", cmp.bottom_gap}});
      if (eps == cfg.epsilon) contour = c;
    } catch (const DomainError& e) {
      std::printf("epsilon %.2f: %s\n", eps, e.what());
    }
  }
  for (int r = 1; r <= cfg.n && cfg.n <= 12; ++r) std::printf("G(%d) = %.5f +- %.5f\n", r, field.G(r), field.G_stderr(r));
  Writer out{cfg};
  out.csv("density.csv", [&](std::ostream& os) { write_density_csv(os, field); });
  out.csv("contour.csv", [&](std::ostream& os) { write_curve_csv(os, contour); });
  nlohmann::ordered_json result;
  result["run"] = meta;
  result["contour_sensitivity"] = sens;
  out.json("mc.json", result);
  out.svg("density.svg", [&](std::ostream& os) { write_density_svg(os, field, contour, svg_metadata(cfg)); });
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.quick = cfg.quick;
  opt.seed = cfg.seed;
  bool all = true;
  const auto results = run_verify(opt, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    all = all && r.pass;
  });
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  Writer out{cfg};
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : results) j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  out.json("verify.json", j);
  return all ? 0 : 1;
}

std::string describe(const std::string& key) {
  static const std::map<std::string, std::string> text = {
      {"lambda", "spectral parameter, e.g. pi/4 or 0.3"},
      {"mu", "column parameter"},
      {"eta", "crossing parameter"},
      {"xi", "boundary parameter"},
      {"omega", "shift of the leftmost column"},
      {"lambdas", "comma-separated row parameters"},
      {"mus", "comma-separated column parameters, rightmost first"},
      {"N", "lattice size (2N x N)"},
      {"N_max", "largest N for sequences"},
      {"L", "number of extension columns"},
      {"precision", "decimal digits (0 = default)"},
      {"what", "sub-operation"},
      {"mode", "brute or transfer"},
      {"seed", "64-bit random seed"},
      {"sweeps", "measurement sweeps"},
      {"burn_in", "sweeps discarded before measuring"},
      {"thinning", "sweeps between samples"},
      {"batch", "samples per batch for error bars"},
      {"epsilon", "contour threshold"},
      {"init", "reference or exact-dp"},
      {"points", "curve grid size"},
      {"lines", "number of tangent lines"},
      {"out", "output directory"},
      {"emit", "comma-separated formats: csv, json, svg, all"}};
  const auto it = text.find(key);
  return it == text.end() ? std::string() : it->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Six-vertex model with domain-wall boundaries and a reflecting end"};
  app.require_subcommand(1);
  std::string config_file;
  std::map<std::string, std::string> given;
  bool quick = false;

  auto common = [&](CLI::App* sub, std::initializer_list<const char*> keys) {
    sub->add_option("--config", config_file, "flat key = value configuration file");
    for (const char* key : keys) {
      std::string flag = std::string("--") + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      sub->add_option(flag, given[key], describe(key));
    }
  };

  auto* weights = app.add_subcommand("weights", "Boltzmann weights per column and row parity");
  common(weights, {"lambda", "mu", "eta", "xi", "omega", "N", "precision", "out", "emit"});
  auto* enumerate = app.add_subcommand("enumerate", "exact enumeration: Z, correlations or extended lattice");
  common(enumerate, {"lambda", "mu", "eta", "xi", "omega", "N", "L", "mode", "what", "precision", "out", "emit"});
  auto* det = app.add_subcommand("det", "determinant formulas: Z, partial, tsuchiya, tau, hN");
  common(det, {"lambda", "mu", "eta", "xi", "omega", "lambdas", "mus", "N", "N_max", "what", "precision", "out", "emit"});
  auto* hn_flag = det->add_flag("--hN", "shorthand for --what hN");
  auto* tau_flag = det->add_flag("--tau", "shorthand for --what tau");
  auto* tsu_flag = det->add_flag("--tsuchiya", "shorthand for --what tsuchiya");
  auto* curve = app.add_subcommand("curve", "contact point, tangent lines and arctic curve");
  common(curve, {"lambda", "points", "lines", "out", "emit"});
  auto* mc = app.add_subcommand("mc", "Monte Carlo sampling, density field and contour");
  common(mc, {"lambda", "N", "seed", "sweeps", "burn_in", "thinning", "batch", "epsilon", "init", "out", "emit"});
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  common(verify, {"seed", "out", "emit"});
  verify->add_flag("--quick", quick, "reduced sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  RunConfig cfg;
  try {
    if (!config_file.empty()) load_config_file(cfg, config_file);
    cfg.subcommand = active->get_name();
    for (const auto& [key, value] : given) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (active->get_option_no_throw(flag) && active->get_option(flag)->count() > 0) cfg.set(key, value);
    }
    if (quick) cfg.quick = true;
    if (active == det) {
      if (hn_flag->count()) cfg.what = "hN";
      if (tau_flag->count()) cfg.what = "tau";
      if (tsu_flag->count()) cfg.what = "tsuchiya";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return 2;
  }

  try {
    if (active == weights) return cmd_weights(cfg);
    if (active == enumerate) return cmd_enumerate(cfg);
    if (active == det) return cmd_det(cfg);
    if (active == curve) return cmd_curve(cfg);
    if (active == mc) return cmd_mc(cfg);
    if (active == verify) return cmd_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
