#include "sixv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <boost/math/tools/roots.hpp>

#include "sixv/enumerate.hpp"

namespace sixv {

namespace {

template <class F>
double d1(F f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

template <class F>
double d2(F f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

void require_omega(double omega, double lambda) {
  if (!(lambda > 0 && lambda <= kQuarterPi + 1e-15)) throw DomainError("need 0 < lambda <= pi/4");
  if (!(std::abs(omega) < lambda)) throw DomainError("need -lambda < omega < lambda");
}

}  // namespace

double gamma_map(double omega, double lambda) {
  require_omega(omega, lambda);
  return std::cos(lambda - omega) * std::sin(lambda + omega) /
         (std::cos(lambda + omega) * std::sin(lambda - omega));
}

double gamma_derivative(double omega, double lambda) {
  // d/domega log gamma = 1/(sin cos)(l-w) + 1/(sin cos)(l+w) = 2/sin(2l-2w) + 2/sin(2l+2w)
  return gamma_map(omega, lambda) *
         (2 / std::sin(2 * (lambda - omega)) + 2 / std::sin(2 * (lambda + omega)));
}

double gamma_inverse(double z, double lambda) {
  if (!(z > 0) || !std::isfinite(z)) throw DomainError("gamma_inverse: need z > 0");
  if (std::abs(lambda - kQuarterPi) < 1e-15) return 0.5 * std::asin((z - 1) / (z + 1));
  const double target = std::log(z);
  auto f = [&](double w) { return std::log(gamma_map(w, lambda)) - target; };
  double lo = -lambda * (1 - 1e-15), hi = lambda * (1 - 1e-15);
  if (f(lo) > 0 || f(hi) < 0) throw DomainError("gamma_inverse: z outside the representable range");
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

double h_rate(double omega, double lambda) {
  require_omega(omega, lambda);
  const double c = std::cos(omega);
  return std::log(c * c * std::cos(lambda) * std::sin(lambda) /
                  (std::cos(lambda + omega) * std::sin(lambda - omega)));
}

double v_numeric(double z, double lambda, double step) {
  const double w = gamma_inverse(z, lambda);
  auto rate = [&](double x) { return h_rate(x, lambda); };
  auto gam = [&](double x) { return gamma_map(x, lambda); };
  return d1(rate, w, step) / d1(gam, w, step);
}

double v_prime_numeric(double z, double lambda, double step) {
  const double w = gamma_inverse(z, lambda);
  auto rate = [&](double x) { return h_rate(x, lambda); };
  auto gam = [&](double x) { return gamma_map(x, lambda); };
  const double r1 = d1(rate, w, step), r2 = d2(rate, w, step);
  const double g1 = d1(gam, w, step), g2 = d2(gam, w, step);
  return (r2 * g1 - r1 * g2) / (g1 * g1 * g1);
}

double v_closed(double z) {
  const double s = std::sqrt(z);
  return 1 / (s * (1 + s));
}

double v_prime_closed(double z) {
  const double s = std::sqrt(z);
  return -(1 / (2 * s) + 1) / std::pow(s + z, 2);
}

double theta(double z, double y, double lambda) {
  return h_rate(gamma_inverse(z, lambda), lambda) - (1 - y / 2) * std::log(z);
}

double theta_prime(double z, double y, double lambda) {
  return (y - 2) / (2 * z) + v_numeric(z, lambda);
}

ContactPoint contact_point(double lambda) {
  require_omega(0, lambda);
  ContactPoint cp;
  const double v1 = v_numeric(1.0, lambda);
  cp.kappa = 2 - 2 * v1;
  const double w = 0;
  cp.kappa_direct = 2 * (1 - (1 - std::sin(2 * lambda) * std::tan(w)) * std::cos(lambda + w) *
                                 std::sin(lambda - w) / (std::sin(2 * lambda) * std::cos(2 * w)));
  cp.theta_pp = v_prime_numeric(1.0, lambda) + (1 - cp.kappa / 2);
  return cp;
}

SaddleState saddle_pair(double z, double u) {
  if (!(z > 0) || !(u > 0)) throw DomainError("saddle_pair: need z > 0 and u > 0");
  if (z == 1) throw DomainError("saddle_pair: degenerate saddle at z = 1");
  SaddleState s{z, u, 0, 0, z < 1 ? 1 : -1, 0, 0};
  const double r = std::sqrt(z), sg = s.branch;
  s.zeta0 = sg * 2 * u * r / (1 + sg * r);
  s.chi0 = sg * u * r / (1 - z);
  const double two_chi = 2 * s.chi0, gap = two_chi - s.zeta0;
  s.chi_residual = std::log(two_chi * two_chi / (gap * gap)) + std::log(z);
  s.zeta_residual = std::log(2 * gap * (u - s.zeta0) / (s.zeta0 * s.zeta0));
  return s;
}

TangentLine tangent_family(double u, double z, double lambda) {
  const SaddleState s = saddle_pair(z, u);
  TangentLine t;
  t.z = z;
  t.u = u;
  t.chi = s.chi0;
  t.slope = 2 * s.chi0 / u;
  t.envelope_mismatch = s.chi0 - (1 - z * v_numeric(z, lambda));
  return t;
}

TangentLine tangent_line(double z, double lambda) {
  if (!(z > 0 && z < 1)) throw DomainError("tangent_line: need 0 < z < 1");
  if (1 - z < 1e-12) throw DomainError("tangent_line: slope diverges as z -> 1");
  TangentLine t;
  t.z = z;
  t.chi = 1 - z * v_numeric(z, lambda);
  t.slope = 2 * std::sqrt(z) / (1 - z);
  t.u = 2 * t.chi / t.slope;
  t.envelope_mismatch = 0;
  return t;
}

std::string to_string(CurveSource s) {
  switch (s) {
    case CurveSource::analytic: return "analytic";
    case CurveSource::envelope: return "envelope";
    case CurveSource::mc: return "mc";
  }
  return "unknown";
}

CurveSample arc_nw(double omega) {
  return {1 - std::cos(2 * omega), 1 - std::sin(2 * omega), omega, CurveSource::analytic};
}

CurveSample envelope_point(double z, double lambda) {
  const double v = v_numeric(z, lambda), vp = v_prime_numeric(z, lambda);
  const double x = 2 * std::sqrt(z) * (1 - z) * (1 - z) * (v + z * vp) / (1 + z);
  const double y = (2 * (1 + z) + 2 * z * (1 - 3 * z) * v + 4 * z * z * (1 - z) * vp) / (1 + z);
  return {x, y, z, CurveSource::envelope};
}

std::vector<double> chebyshev_grid(int n, double lo, double hi) {
  std::vector<double> g;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int k = 0; k < n; ++k) g.push_back(mid + half * std::cos((2 * k + 1) * std::numbers::pi / (2 * n)));
  std::sort(g.begin(), g.end());
  return g;
}

std::vector<double> default_omega_grid(int n, double lambda) {
  return chebyshev_grid(n, -lambda + 1e-3, -1e-3);
}

ArcticCurve arctic_curve(std::span<const double> z_grid, double lambda, bool include_sw) {
  ArcticCurve c;
  for (double z : z_grid) {
    if (!(z > 0 && z < 1)) {
      ++c.clipped;
      continue;
    }
    c.samples.push_back(envelope_point(z, lambda));
  }
  if (include_sw) {
    const std::size_t nw = c.samples.size();
    for (std::size_t i = nw; i-- > 0;) {
      CurveSample s = c.samples[i];
      s.y = 2 - s.y;
      c.samples.push_back(s);
    }
  }
  return c;
}

Tangency tangency(const TangentLine& line, double lambda) {
  const double w = gamma_inverse(line.z, lambda);
  const CurveSample p = arc_nw(w);
  const double norm = std::sqrt(1 + line.slope * line.slope);
  const double dx = 2 * std::sin(2 * w), dy = -2 * std::cos(2 * w);
  return {w, line(p.x, p.y) / norm, (dy - line.slope * dx) / norm};
}

ZnlAssembly assemble_Z_NL(int n, int L) {
  const auto params = SpectralParams::free_fermion(pi() / 4);
  const ExtendedLattice ext = enumerate_extended(n, L, params);
  const CorrelationTable corr = enumerate_correlations(n, params);
  const Real a = cos(pi() / 4);

  ZnlAssembly r;
  r.n = n;
  r.L = L;
  r.Z_direct = ext.Z_direct;
  r.Z_sum = 0;
  r.part_right_residual = 0;
  const Real a_pow = pow(a, 2 * n - 1);
  for (int k = 1; k <= 2 * n; ++k) {
    const int m = (k + 1) / 2;  // k = 2m or 2m - 1
    const int row = n - m + 1;
    const Real right = (k % 2 == 0 ? corr.A[row - 1] : corr.D[row - 1]) / a_pow;
    r.Z_sum += z_left_closed<Real>(n, L, k, a) * right;
    const Real mismatch = abs(right - ext.Z_right[k - 1]) / abs(ext.Z_right[k - 1]);
    if (mismatch > r.part_right_residual) r.part_right_residual = mismatch;
  }

  r.Z_regrouped = 0;
  r.bracket_min = 1;
  r.bracket_max = 0;
  r.max_log_bracket_per_n = 0;
  for (int m = 1; m <= n; ++m) {
    const int row = n - m + 1;
    const Real H = corr.H[row - 1], D = corr.D[row - 1];
    for (int l = 0; l <= std::min(L, 2 * m - 1); ++l) {
      const Real bracket = 1 - Real(l) / (2 * m - 1) * D / (corr.Z * H);
      r.Z_regrouped += pow(a, -2 * l) * binomial<Real>(L, l) * binomial<Real>(2 * m - 1, l) * H * bracket;
      const double b = static_cast<double>(bracket);
      r.bracket_min = std::min(r.bracket_min, b);
      r.bracket_max = std::max(r.bracket_max, b);
      if (b > 0) r.max_log_bracket_per_n = std::max(r.max_log_bracket_per_n, std::abs(std::log(b)) / n);
    }
  }
  r.Z_regrouped *= pow(a, 2 * n * L) * corr.Z;
  r.residual_sum = abs(r.Z_sum - r.Z_direct) / r.Z_direct;
  r.residual_regrouped = abs(r.Z_regrouped - r.Z_direct) / r.Z_direct;
  return r;
}

FreeEnergy free_energy_rate(double lambda, double mu, double eta) {
  if (!(eta > 0 && eta < std::numbers::pi / 2)) throw DomainError("need 0 < eta < pi/2");
  FreeEnergy fe;
  fe.alpha = std::numbers::pi / eta;
  const double den = std::cos(fe.alpha * mu) - std::cos(fe.alpha * lambda);
  if (den == 0) throw DomainError("free_energy_rate: cos(alpha mu) = cos(alpha lambda)");
  fe.e4f = -fe.alpha * fe.alpha * std::sin(fe.alpha * lambda) * std::sin(fe.alpha * mu) / (den * den);
  fe.e4f_abs = std::abs(fe.e4f);
  fe.sign = fe.e4f > 0 ? 1 : (fe.e4f < 0 ? -1 : 0);
  const double w = std::sin(lambda + mu + 2 * eta) * std::sin(lambda - mu + 2 * eta) *
                   std::sin(lambda + mu) * std::sin(lambda - mu);
  const double base = -std::sin(2 * lambda + 2 * eta) * std::sin(2 * mu);
  fe.F_branch_flag = base < 0;
  const double f = 0.25 * std::log(fe.e4f_abs);
  fe.F = -0.5 * (std::log(w) - 0.5 * std::log(std::abs(base)) + 2 * f);
  return fe;
}

Real liouville_residual(const Real& lambda, const Real& mu, const Real& eta) {
  const Real alpha = pi() / eta;
  auto e4f = [&](const Real& l, const Real& m) {
    const Real den = cos(alpha * m) - cos(alpha * l);
    return Real(-alpha * alpha * sin(alpha * l) * sin(alpha * m) / (den * den));
  };
  auto f = [&](const Real& l, const Real& m) { return Real(log(abs(e4f(l, m))) / 4); };
  const Real h = pow(Real(10), -static_cast<int>(working_digits() / 4));
  const Real mixed = (f(lambda + h, mu + h) - f(lambda + h, mu - h) - f(lambda - h, mu + h) +
                      f(lambda - h, mu - h)) / (4 * h * h);
  const Real e = e4f(lambda, mu);
  return (2 * mixed - e) / abs(e);
}

double g_kernel(double lambda, double omega) {
  const double b2l = std::sin(2 * lambda), b2w = std::sin(2 * omega);
  return 0.25 * b2l * b2l * b2w * b2w / (std::sin(2 * lambda - 2 * omega) * std::sin(2 * lambda + 2 * omega));
}

double predicted_log_ratio(int n, double lambda, double omega) {
  require_omega(omega, lambda);
  const double w = std::cos(lambda + omega) * std::cos(lambda - omega) * std::sin(lambda + omega) *
                   std::sin(lambda - omega);
  const double ab = std::cos(lambda) * std::sin(lambda);
  return std::log(std::cos(omega)) - 2.0 * n * std::log(std::abs(std::sin(omega))) +
         n * std::log(w / (ab * ab)) + n * std::log(g_kernel(lambda, omega));
}

double h_asymptotic_log(int n, double lambda, double omega) {
  require_omega(omega, lambda);
  const double a = std::cos(omega), b = std::sin(omega);
  const double front = (a * a / std::pow(b * b, n) - b * b / std::pow(a * a, n)) / std::cos(2 * omega);
  const double core = std::cos(lambda - omega) * std::sin(lambda + omega) * g_kernel(lambda, omega) /
                      (std::cos(lambda) * std::sin(lambda));
  return std::log(front) + n * std::log(core);
}

void write_curve_csv(std::ostream& os, std::span<const CurveSample> samples) {
  os << "param,x,y,source\n";
  os.precision(17);
  for (const auto& s : samples) os << s.param << ',' << s.x << ',' << s.y << ',' << to_string(s.source) << '\n';
}

}  // namespace sixv
