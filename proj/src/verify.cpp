#include "sixv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>

#include "sixv/asymptotics.hpp"
#include "sixv/determinant.hpp"
#include "sixv/enumerate.hpp"
#include "sixv/montecarlo.hpp"

namespace sixv {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }
std::string sci(const Real& v) { return format_real(v, 3); }

double uniform(Philox4x32& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

void raise(Real& acc, const Real& v) {
  if (v > acc) acc = v;
}

Real rel_diff(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

SpectralParams random_params(Philox4x32& rng, int draw) {
  for (;;) {
    SpectralParams p;
    switch (draw % 4) {
      case 0: p.eta = pi() / 5; break;
      case 1: p.eta = pi() / 4; break;
      default: p.eta = Real(uniform(rng, 0.2, 0.7));
    }
    const double lambda = uniform(rng, 0.1, 1.0);
    p.lambda = Real(lambda);
    p.mu = draw % 5 == 4 ? Real(0) : Real(uniform(rng, -0.8, 0.8) * lambda);
    p.xi = Real(uniform(rng, lambda + 0.05, std::numbers::pi - lambda - 0.05));
    p.omega = 0;
    try {
      weight_table(p, Geometry{1, 0});
      return p;
    } catch (const DomainError&) {
    }
  }
}

CriterionResult oracle_equivalence(const VerifyOptions& opt) {
  CriterionResult r;
  PrecisionScope scope(60);
  Philox4x32 rng(opt.seed, 1);
  const int n_max = opt.quick ? 3 : 5, draws = opt.quick ? 5 : 20, t_max = opt.quick ? 2 : 3;
  Real worst = 0;
  int cases = 0;
  for (int d = 0; d < draws; ++d) {
    const SpectralParams p = random_params(rng, d);
    for (int n = 1; n <= n_max; ++n) {
      raise(worst, rel_diff(homogeneous_Z(n, p), enumerate_Z(n, p, EnumMode::transfer).Z));
      ++cases;
    }
  }
  Real worst_t = 0;
  int t_cases = 0;
  for (int n = 1; n <= t_max; ++n)
    for (int d = 0; d < 5;) {
      std::vector<Real> lambdas, mus;
      for (int j = 0; j < n; ++j) lambdas.emplace_back(uniform(rng, 0.35, 0.9));
      for (int k = 0; k < n; ++k) mus.emplace_back(uniform(rng, -0.3, 0.3));
      const Real eta = d % 2 ? pi() / 5 : Real(uniform(rng, 0.2, 0.6));
      const Real xi = pi() / 2;
      try {
        const auto table = weight_table(lambdas, mus, eta, xi, Geometry{n, 0});
        raise(worst_t, rel_diff(tsuchiya_Z(lambdas, mus, eta, xi), enumerate_Z(table, EnumMode::transfer).Z));
        ++t_cases;
        ++d;
      } catch (const DomainError&) {
      }
    }
  r.pass = worst < Real("1e-20") && worst_t < Real("1e-20");
  r.detail = "homogeneous " + std::to_string(cases) + " cases max rel " + sci(worst) + "; tsuchiya " +
             std::to_string(t_cases) + " cases max rel " + sci(worst_t) + " (tol 1e-20)";
  return r;
}

CriterionResult n1_closed_form(const VerifyOptions&) {
  CriterionResult r;
  PrecisionScope scope(50);
  Real worst = 0;
  bool counts_ok = true;
  for (double lam : {0.3, 0.5, 0.7})
    for (double mu : {0.0, 0.1, -0.2}) {
      const SpectralParams p{Real(lam), Real(mu), pi() / 4, pi() / 2, Real(0)};
      const EnumResult e = enumerate_Z(1, p, EnumMode::brute);
      counts_ok = counts_ok && e.config_count == 2;
      raise(worst, rel_diff(e.Z, Real(sin(2 * p.lambda) * cos(p.mu))));
    }
  r.pass = counts_ok && worst < Real("1e-40");
  r.detail = std::string("config_count ") + (counts_ok ? "2" : "!= 2") + "; max rel vs sin(2l)cos(mu) " + sci(worst);
  return r;
}

CriterionResult correlation_identities(const VerifyOptions& opt) {
  CriterionResult r;
  PrecisionScope scope(50);
  const int n_max = opt.quick ? 4 : 6;
  Real worst = 0;
  const SpectralParams points[] = {SpectralParams::free_fermion(pi() / 4),
                                   {Real("0.4"), Real("0.1"), pi() / 5, pi() / 2, Real(0)},
                                   {Real("0.55"), Real("-0.15"), Real("0.6"), Real("1.3"), Real(0)}};
  for (const auto& p : points)
    for (int n = 1; n <= n_max; ++n) {
      const CorrelationTable t = enumerate_correlations(n, p);
      raise(worst, abs(t.G[n - 1] - 1));
      Real sum_h = 0;
      for (int k = 0; k < n; ++k) {
        sum_h += t.H[k];
        raise(worst, abs(t.Z * t.H[k] - t.A[k] - t.D[k]) / t.Z);
        raise(worst, abs(t.G[k] - sum_h));
      }
      raise(worst, abs(sum_h - 1));
    }
  r.pass = worst < Real("1e-15");
  r.detail = "N <= " + std::to_string(n_max) + ", 3 parameter points, max residual " + sci(worst) + " (tol 1e-15)";
  return r;
}

Real gamma_real(const Real& lambda, const Real& omega) {
  return cos(lambda - omega) * sin(lambda + omega) / (cos(lambda + omega) * sin(lambda - omega));
}

CriterionResult generating_function(const VerifyOptions& opt) {
  CriterionResult r;
  PrecisionScope scope(60);
  const int n_max = opt.quick ? 4 : 5;
  Real worst = 0;
  const Real lambda = pi() / 4;
  for (int n = 1; n <= n_max; ++n) {
    const CorrelationTable t = enumerate_correlations(n, SpectralParams::free_fermion(lambda));
    for (double w : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
      const Real omega(w);
      raise(worst, rel_diff(hN_determinant(n, lambda, omega), evaluate_h(t, gamma_real(lambda, omega))));
    }
  }
  r.pass = worst < Real("1e-12");
  r.detail = "N <= " + std::to_string(n_max) + ", 6 omegas, max rel " + sci(worst) + " (tol 1e-12)";
  return r;
}

CriterionResult asymptotic_rate(const VerifyOptions&) {
  CriterionResult r;
  r.pass = true;
  const int sizes[] = {8, 16, 24, 32};
  for (double w : {-0.3, -0.1, 0.1, 0.3}) {
    std::vector<double> err;
    for (int n : sizes) {
      PrecisionScope scope(12 * n);
      const Real h = hN_determinant(n, pi() / 4, Real(w));
      err.push_back(std::abs(static_cast<double>(log(h)) / n - h_rate(w)));
    }
    std::string line = "w=" + fmt("%+.1f", w) + " N*err";
    for (std::size_t i = 0; i < err.size(); ++i) {
      line += " " + fmt("%.4f", sizes[i] * err[i]);
      if (i > 0) {
        const double ratio = (sizes[i] * err[i]) / (sizes[i - 1] * err[i - 1]);
        if (!(err[i] < err[i - 1]) || ratio < 0.5 || ratio > 2) r.pass = false;
      }
    }
    r.detail += (r.detail.empty() ? "" : "; ") + line;
  }
  return r;
}

CriterionResult contact(const VerifyOptions&) {
  CriterionResult r;
  double worst = 0;
  for (double lam : {0.4, 0.6, kQuarterPi}) worst = std::max(worst, std::abs(contact_point(lam).kappa - 1));
  r.pass = worst <= 1e-8;
  r.detail = "max |kappa - 1| " + sci(worst) + " over lambda in {0.4, 0.6, pi/4} (tol 1e-8)";
  return r;
}

CriterionResult arctic(const VerifyOptions&) {
  CriterionResult r;
  double circle = 0, closed = 0;
  for (double w : default_omega_grid(100)) {
    const CurveSample p = envelope_point(gamma_map(w));
    const CurveSample a = arc_nw(w);
    circle = std::max(circle, std::abs((p.x - 1) * (p.x - 1) + (p.y - 1) * (p.y - 1) - 1));
    closed = std::max(closed, std::hypot(p.x - a.x, p.y - a.y));
  }
  const CurveSample top = arc_nw(-kQuarterPi), left = arc_nw(0);
  const double ends = std::max(std::hypot(top.x - 1, top.y - 2), std::hypot(left.x, left.y - 1));
  r.pass = circle <= 1e-6 && closed <= 1e-6 && ends <= 1e-15;
  r.detail = "circle residual " + sci(circle) + ", distance to closed form " + sci(closed) + " (tol 1e-6); endpoints " +
             sci(ends);
  return r;
}

CriterionResult tangent_method(const VerifyOptions&) {
  CriterionResult r;
  double saddle = 0;
  for (double z : {0.25, 0.5, 2.0, 4.0}) {
    const SaddleState s = saddle_pair(z, 1.0);
    saddle = std::max({saddle, std::abs(s.chi_residual), std::abs(s.zeta_residual)});
  }
  double tang = 0;
  int lines = 0;
  for (double w : default_omega_grid(20)) {
    const Tangency t = tangency(tangent_line(gamma_map(w)));
    tang = std::max({tang, std::abs(t.distance), std::abs(t.distance_derivative)});
    ++lines;
  }
  r.pass = saddle < 1e-10 && tang < 1e-6;
  r.detail = "saddle residual " + sci(saddle) + " (tol 1e-10); " + std::to_string(lines) +
             " lines, max distance/derivative " + sci(tang) + " (tol 1e-6)";
  return r;
}

CriterionResult extended_assembly(const VerifyOptions& opt) {
  CriterionResult r;
  PrecisionScope scope(60);
  Real worst = 0, right = 0;
  double bmin = 1, bmax = 0;
  const std::vector<int> ns = opt.quick ? std::vector<int>{2} : std::vector<int>{2, 3};
  for (int n : ns)
    for (int L : {1, 2}) {
      const ZnlAssembly a = assemble_Z_NL(n, L);
      raise(worst, a.residual_sum);
      raise(worst, a.residual_regrouped);
      raise(right, a.part_right_residual);
      bmin = std::min(bmin, a.bracket_min);
      bmax = std::max(bmax, a.bracket_max);
    }
  r.pass = worst < Real("1e-12") && right < Real("1e-45") && bmin > 0 && bmax <= 1;
  r.detail = "assembly max rel " + sci(worst) + " (tol 1e-12); part-right " + sci(right) + "; bracket in [" +
             fmt("%.3f", bmin) + ", " + fmt("%.3f", bmax) + "]";
  return r;
}

CriterionResult path_counting(const VerifyOptions&) {
  CriterionResult r;
  std::vector<std::vector<std::uint64_t>> pascal(21, std::vector<std::uint64_t>(21, 0));
  for (int m = 0; m <= 20; ++m) {
    pascal[m][0] = pascal[m][m] = 1;
    for (int k = 1; k < m; ++k) pascal[m][k] = pascal[m - 1][k - 1] + pascal[m - 1][k];
  }
  int mismatches = 0;
  for (int x = 0; x <= 10; ++x)
    for (int y = 0; y <= 10; ++y)
      if (path_count<double>(x, y, 1.0) != double(pascal[x + y][x])) ++mismatches;
  double two_point = 0;
  for (double a : {2.0, std::sqrt(0.5)})
    two_point = std::max(two_point, std::abs(path_count<double>(1, 1, a) - (1 / a + 1 / (a * a * a))) * a);
  r.pass = mismatches == 0 && two_point < 1e-14;
  r.detail = std::to_string(mismatches) + " Vandermonde mismatches over x, y <= 10; P_a(1,1) residual " + sci(two_point);
  return r;
}

CriterionResult toda(const VerifyOptions& opt) {
  CriterionResult r;
  const int n_top = opt.quick ? 6 : 12;
  const unsigned digits = default_digits(n_top + 1);
  PrecisionScope scope(digits);
  const SpectralParams p{Real("0.3"), Real("0.1"), pi() / 5, pi() / 2, Real("0.05")};
  const TauSequence seq = tau_sequence(n_top + 1, p);
  Real worst = 0;
  for (const auto& t : toda_residuals(seq)) {
    raise(worst, t.toda);
    raise(worst, t.toda_tilde);
  }
  const Real tol = pow(Real(10), -int(digits / 2));
  r.pass = worst < tol;
  r.detail = "N <= " + std::to_string(n_top) + " at " + std::to_string(digits) + " digits, max residual " + sci(worst) +
             " (tol " + sci(tol) + ")";
  return r;
}

CriterionResult growth(const VerifyOptions&) {
  CriterionResult r;
  const int n = 20;
  const double lam = 0.35, mu = 0.1;
  PrecisionScope scope(default_digits(n + 1));
  const SpectralParams p{Real(lam), Real(mu), pi() / 4, pi() / 2, Real(0)};
  weight_table(p, Geometry{1, 0});
  const TauSequence seq = tau_sequence(n + 1, p);
  const double ratio = static_cast<double>(seq.tau[n + 1] * seq.tau[n - 1] / (seq.tau[n] * seq.tau[n])) / (n * n);
  const FreeEnergy fe = free_energy_rate(lam, mu, kQuarterPi);
  const double rel = std::abs(std::abs(ratio) / fe.e4f_abs - 1);
  const bool same_sign = (ratio < 0) == (fe.e4f < 0);
  r.pass = rel <= 0.10;
  r.detail = "lambda=0.35 mu=0.1 eta=pi/4 N=20: ratio " + fmt("%.6g", ratio) + ", e4f " + fmt("%.6g", fe.e4f) +
             ", rel " + sci(rel) + " (tol 0.1); signs " + (same_sign ? "agree" : "differ");
  return r;
}

std::vector<double> row_statistics(const LatticeState& s) {
  std::vector<double> out;
  const Geometry& g = s.geometry;
  for (int c = 0; c < g.columns(); ++c) {
    double t = 0;
    for (int level = 0; level <= g.rows(); ++level) t += s.v_edge(level, c);
    out.push_back(t);
  }
  for (int l = 0; l < g.rows(); ++l) {
    double t = 0;
    for (int pos = 0; pos <= g.columns(); ++pos) t += s.h_edge(l, pos);
    out.push_back(t);
  }
  return out;
}

CriterionResult monte_carlo(const VerifyOptions& opt) {
  CriterionResult r;
  bool pass = true;
  std::string detail;

  {
    const int n = 4, samples = 20000;
    const auto w = special_point_weights(n);
    ExactSampler exact(w);
    Philox4x32 rng(opt.seed, 11);
    MCState chain = mc_init(n, opt.seed + 1, InitMode::reference, w);
    for (int i = 0; i < 1000; ++i) mc_sweep(chain, w);
    std::vector<std::vector<double>> a, b;
    for (int i = 0; i < samples; ++i) {
      const auto sa = row_statistics(exact.draw(rng));
      for (int k = 0; k < 20; ++k) mc_sweep(chain, w);
      const auto sb = row_statistics(chain.lattice);
      if (a.empty()) {
        a.resize(sa.size());
        b.resize(sb.size());
      }
      for (std::size_t j = 0; j < sa.size(); ++j) {
        a[j].push_back(sa[j]);
        b[j].push_back(sb[j]);
      }
    }
    double p_min = 1;
    for (std::size_t j = 0; j < a.size(); ++j) p_min = std::min(p_min, ks_two_sample(a[j], b[j]).p_value);
    const double level = 0.01 / double(a.size());
    const bool ok = p_min > level;
    pass = pass && ok;
    detail += "(a) N=4 KS min p " + sci(p_min) + " vs " + sci(level) + (ok ? " ok" : " FAIL");
  }

  {
    const int n = 6;
    const auto w = special_point_weights(n);
    MCState chain = mc_init(n, opt.seed + 2, InitMode::exact_dp, w);
    MeasureOptions mo{200000, 2000, 1, 1000};
    const DensityField f = mc_measure(chain, w, mo);
    PrecisionScope scope(50);
    const CorrelationTable t = enumerate_correlations(n, SpectralParams::free_fermion(pi() / 4));
    double worst = 0;
    for (int k = 1; k <= n; ++k) {
      const double exact = static_cast<double>(t.G[k - 1]);
      const double se = f.G_stderr(k);
      const double diff = std::abs(f.G(k) - exact);
      worst = std::max(worst, diff <= 1e-12 ? 0.0 : diff / se);
    }
    const bool ok = worst <= 3 && !f.unreliable();
    pass = pass && ok;
    detail += "; (b) N=6 max |G_mc - G|/se " + fmt("%.2f", worst) + (ok ? " ok" : " FAIL");
  }

  {
    const int n = 64;
    const auto w = special_point_weights(n);
    MCState chain = mc_init(n, opt.seed + 3, InitMode::reference, w);
    MeasureOptions mo{100000, 20000, 10, 200};
    const DensityField f = mc_measure(chain, w, mo);
    const auto contour = extract_contour(f, 0.05);
    const SemicircleComparison cmp = compare_semicircle(contour);
    const double gap = std::max({cmp.left_gap, cmp.top_gap, cmp.bottom_gap});
    const bool ok = cmp.distance <= 0.05 && gap <= 0.05;
    pass = pass && ok;
    detail += "; (c) N=64 " + std::to_string(chain.sweeps) + " sweeps sup distance " + fmt("%.4f", cmp.distance) +
              ", contact gaps " + fmt("%.4f", cmp.left_gap) + "/" + fmt("%.4f", cmp.top_gap) + "/" +
              fmt("%.4f", cmp.bottom_gap) + (ok ? " ok" : " FAIL");
  }
  r.pass = pass;
  r.detail = detail;
  return r;
}

CriterionResult reproducibility(const VerifyOptions& opt) {
  CriterionResult r;
  VerifyOptions quick = opt;
  quick.quick = true;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CriterionResult> first, second;
  for (int id : criteria_ids(true)) first.push_back(run_criterion(id, quick));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (int id : criteria_ids(true)) second.push_back(run_criterion(id, quick));
  bool all_pass = true, identical = true;
  for (std::size_t i = 0; i < first.size(); ++i) {
    all_pass = all_pass && first[i].pass && second[i].pass;
    identical = identical && first[i].pass == second[i].pass && first[i].detail == second[i].detail;
  }
  r.pass = all_pass && identical && seconds < 300;
  r.detail = "quick suite " + std::string(all_pass ? "passes" : "fails") + " in " + fmt("%.1f", seconds) +
             " s (limit 300); repeat run " + (identical ? "identical" : "differs");
  return r;
}

using Check = CriterionResult (*)(const VerifyOptions&);

struct Entry {
  const char* title;
  Check check;
};

const Entry kEntries[kCriterionCount] = {
    {"determinant and Tsuchiya formulas match enumeration", oracle_equivalence},
    {"N=1 closed form and configuration count", n1_closed_form},
    {"correlation identities", correlation_identities},
    {"h_N determinant matches enumerated generating function", generating_function},
    {"finite-N convergence to the asymptotic rate", asymptotic_rate},
    {"contact point", contact},
    {"arctic curve envelope", arctic},
    {"saddle point and tangency", tangent_method},
    {"extended lattice assembly", extended_assembly},
    {"path counting", path_counting},
    {"Toda bilinear identities", toda},
    {"free-energy growth law", growth},
    {"Monte Carlo", monte_carlo},
    {"quick suite runtime and reproducibility", reproducibility},
};

}  // namespace

std::vector<int> criteria_ids(bool quick) {
  if (quick) return {1, 2, 3, 4, 6, 7, 8, 9, 10, 11};
  std::vector<int> ids;
  for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  return ids;
}

std::string criterion_title(int id) {
  if (id < 1 || id > kCriterionCount) return "unknown";
  return kEntries[id - 1].title;
}

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
  CriterionResult r;
  const auto t0 = std::chrono::steady_clock::now();
  if (id < 1 || id > kCriterionCount) {
    r.detail = "unknown criterion";
  } else {
    try {
      r = kEntries[id - 1].check(opt);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
  }
  r.id = id;
  r.title = criterion_title(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_verify(const VerifyOptions& opt,
                                        const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id : criteria_ids(opt.quick)) {
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[32];
  std::snprintf(head, sizeof head, "[%s] %02d ", r.pass ? "PASS" : "FAIL", r.id);
  return head + r.title + " (" + fmt("%.2f", r.seconds) + " s): " + r.detail;
}

}  // namespace sixv
