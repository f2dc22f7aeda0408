#pragma once

// Large-N asymptotics and the tangent construction of the arctic curve at
// eta = pi/4, mu = 0, xi = pi/2 (a = cos, b = sin, c = 1).

#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>

#include "sixv/real.hpp"

namespace sixv {

inline constexpr double kQuarterPi = std::numbers::pi / 4;

/// z = a(lambda - omega) b(lambda + omega) / (a(lambda + omega) b(lambda - omega)).
double gamma_map(double omega, double lambda = kQuarterPi);
double gamma_derivative(double omega, double lambda = kQuarterPi);
/// gamma is increasing on (-lambda, lambda), so the inverse is unique there.
double gamma_inverse(double z, double lambda = kQuarterPi);

/// lim log h_N(gamma(omega)) / N.
double h_rate(double omega, double lambda = kQuarterPi);

/// d/dz of the rate as a function of z, via five-point differences in omega.
double v_numeric(double z, double lambda = kQuarterPi, double step = 1e-4);
double v_prime_numeric(double z, double lambda = kQuarterPi, double step = 1e-4);
/// Closed forms at lambda = pi/4.
double v_closed(double z);
double v_prime_closed(double z);

struct ContactPoint {
  double kappa;         // 2 - 2 z0 v(z0) at z0 = 1
  double kappa_direct;  // closed expression in omega evaluated at omega = 0
  double theta_pp;      // second derivative of the saddle exponent at z0
};

ContactPoint contact_point(double lambda);

/// Saddle exponent theta(z) for contact height y and its z-derivative.
double theta(double z, double y, double lambda = kQuarterPi);
double theta_prime(double z, double y, double lambda = kQuarterPi);

struct SaddleState {
  double z, u;
  double chi0, zeta0;
  int branch;  // +1 for z < 1, -1 for z > 1
  double chi_residual;
  double zeta_residual;
};

/// Throws DomainError at z = 1 (degenerate saddle) or non-positive z, u.
SaddleState saddle_pair(double z, double u);

struct TangentLine {
  double z;
  double u;          // x-intercept is (-u, 0)
  double chi;        // y-intercept is (0, 2 chi)
  double slope;      // 2 chi / u
  double envelope_mismatch;  // chi - (1 - z v(z)); zero on the envelope family

  double operator()(double x, double y) const { return y - slope * x - 2 * chi; }
};

/// Line through (-u, 0) and (0, 2 chi0) with chi0 from the saddle pair.
TangentLine tangent_family(double u, double z, double lambda = kQuarterPi);
/// Member of the envelope family for parameter z in (0, 1): chi = 1 - z v(z),
/// u = chi (1 - z) / sqrt z.
TangentLine tangent_line(double z, double lambda = kQuarterPi);

enum class CurveSource { analytic, envelope, mc };
std::string to_string(CurveSource s);

struct CurveSample {
  double x, y;
  double param;  // omega (analytic), z (envelope) or level index (mc)
  CurveSource source;
};

/// x = 1 - cos 2 omega, y = 1 - sin 2 omega.
CurveSample arc_nw(double omega);

/// Envelope point from the z-parametrization with numerically differentiated v.
CurveSample envelope_point(double z, double lambda = kQuarterPi);

/// Chebyshev nodes in (lo, hi), ascending.
std::vector<double> chebyshev_grid(int n, double lo, double hi);
/// Default omega grid: n Chebyshev points in (-lambda + 1e-3, -1e-3).
std::vector<double> default_omega_grid(int n = 200, double lambda = kQuarterPi);

struct ArcticCurve {
  std::vector<CurveSample> samples;
  int clipped = 0;  // grid points outside (0, 1)
};

/// NW envelope points for each z, followed by their SW mirror images.
ArcticCurve arctic_curve(std::span<const double> z_grid, double lambda = kQuarterPi,
                         bool include_sw = true);

/// Tangency of a line to the analytic curve: signed distance of the arc point
/// at omega to the line, and its omega-derivative.
struct Tangency {
  double omega;
  double distance;
  double distance_derivative;
};
Tangency tangency(const TangentLine& line, double lambda = kQuarterPi);

// Path counting ---------------------------------------------------------------

template <class T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  return T(boost::math::binomial_coefficient<double>(unsigned(n), unsigned(k)));
}

/// sum_l C(x, l) C(y, l) a^-(2l+1)
template <class T>
T path_count(int x, int y, const T& a) {
  T sum(0), inv = T(1) / a, inv2 = inv * inv, term = inv;
  for (int l = 0; l <= std::min(x, y); ++l) {
    sum += binomial<T>(x, l) * binomial<T>(y, l) * term;
    term *= inv2;
  }
  return sum;
}

/// sum_l C(L, l) C(k-1, l) a^{2N(L+1) - 2l - 1}
template <class T>
T z_left_closed(int n, int L, int k, const T& a) {
  T sum(0);
  for (int l = 0; l <= std::min(L, k - 1); ++l) {
    T term = binomial<T>(L, l) * binomial<T>(k - 1, l);
    const int e = 2 * n * (L + 1) - 2 * l - 1;
    T p(1);
    for (int i = 0; i < e; ++i) p *= a;
    sum += term * p;
  }
  return sum;
}

struct ZnlAssembly {
  int n, L;
  Real Z_direct;      // full sweep of the extended lattice
  Real Z_sum;         // sum_k Z_left Z_right with closed-form Z_left
  Real Z_regrouped;   // regrouped by n and l in terms of H, D
  Real residual_sum;
  Real residual_regrouped;
  Real part_right_residual;  // max relative mismatch of Z_right vs A/a^{2N-1}, D/a^{2N-1}
  double bracket_min, bracket_max;
  double max_log_bracket_per_n;  // size of the term dropped in the scaling limit
};

/// At the free-fermion symmetric point (lambda = pi/4). Runs at the current
/// working precision.
ZnlAssembly assemble_Z_NL(int n, int L);

// Free energy -------------------------------------------------------------------

struct FreeEnergy {
  double alpha;
  double e4f;          // signed value of the closed form
  double e4f_abs;
  int sign;            // sign of the closed form
  double F;            // free energy per vertex, computed with |.| under the square root
  bool F_branch_flag;  // -a(2 lambda) b(2 mu) < 0
};

FreeEnergy free_energy_rate(double lambda, double mu, double eta);

/// (2 d_lambda d_mu f - e^{4f}) / |e^{4f}| with f = log|e^{4f}| / 4, by
/// central differences at the working precision.
Real liouville_residual(const Real& lambda, const Real& mu, const Real& eta);

/// g(lambda, omega) = b(2l)^2 b(2w)^2 / (4 b(2l - 2w) b(2l + 2w)).
double g_kernel(double lambda, double omega);

/// Large-N prediction for Z_N(lambda, omega) / Z_N(lambda) at xi = pi/2.
double predicted_log_ratio(int n, double lambda, double omega);

/// Leading large-N form of h_N(gamma(omega)) before dropping (tan omega)^{2N}.
double h_asymptotic_log(int n, double lambda, double omega);

void write_curve_csv(std::ostream& os, std::span<const CurveSample> samples);

}  // namespace sixv
