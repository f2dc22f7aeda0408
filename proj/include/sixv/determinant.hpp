#pragma once

// Determinant representations of the partition function.
//
// Every function here computes at the current working precision (see
// PrecisionScope). Inputs should be formed at that precision too, e.g. by
// calling parse_angle or pi() inside the scope.

#include <iosfwd>
#include <span>
#include <vector>

#include "sixv/jet.hpp"
#include "sixv/model.hpp"

namespace sixv {

using Matrix = std::vector<std::vector<Real>>;

/// Gaussian elimination with full pivoting.
Real determinant(Matrix m);

/// Decimal digits used for jet and determinant work at size N.
unsigned default_digits(int n);

Real psi(const Real& lambda, const Real& mu, const Real& eta);

/// Product a_+ a_- b_+ b_- at (lambda, mu).
Real weight_product(const Real& lambda, const Real& mu, const Real& eta);

/// lambdas[j] = lambda_{j+1}, mus[k] = mu_{k+1}.
Real tsuchiya_Z(std::span<const Real> lambdas, std::span<const Real> mus, const Real& eta,
                const Real& xi);

/// Jet of psi(lambda + s, mu + t) truncated at order p in s and q in t.
Jet2 psi_jet(const Real& lambda, const Real& mu, const Real& eta, int p, int q);

struct TauSequence {
  int n_max = 0;
  unsigned precision = 0;
  Matrix derivatives;          // (n_max+1)^2: d_lambda^i d_mu^j psi
  std::vector<Real> tilde;     // n_max+1: d_lambda^i psi(lambda, mu + omega)
  std::vector<Real> tau;       // tau[N] for N = 0..n_max, tau[0] = 1
  std::vector<Real> tau_tilde; // same indexing; tau_tilde[0] = 1
  std::vector<Real> C;         // C[N] = (prod_{j<N} j!)^2

  /// Determinant of the derivative matrix restricted to the given rows and
  /// columns. A column index equal to -1 selects the tilde column.
  Real minor(std::span<const int> rows, std::span<const int> cols) const;
};

/// tau_1..tau_{n_max} and their tilde counterparts. Derivatives are kept one
/// order beyond n_max so Toda identities can be checked up to N = n_max - 1.
TauSequence tau_sequence(int n_max, const SpectralParams& params);

Real tau_N(int n, const Real& lambda, const Real& mu, const Real& eta);

struct TodaResidual {
  int N;
  Real toda;        // relative residual of the bilinear identity for tau
  Real toda_tilde;  // and for tau tilde
};

std::vector<TodaResidual> toda_residuals(const TauSequence& seq);

struct HomogeneousZ {
  Real Z;
  int prefactor_sign;  // sign of [-a(2 lambda) b(2 mu)]^{N(N-1)/2}
  int tau_sign;
  bool confluent_route;
};

/// Homogeneous partition function from the tau_N representation. Where that
/// representation is 0/0 (a(2 lambda) b(2 mu) near zero, e.g. mu = 0) the
/// confluent route is used instead. Throws if the result is not positive.
HomogeneousZ homogeneous_Z_detail(int n, const SpectralParams& params);
Real homogeneous_Z(int n, const SpectralParams& params);

/// Confluent limit in r = sin^2(lambda + eta) and s = sin^2 mu, where psi is
/// the reciprocal of a polynomial. Valid for every lambda and mu.
Real homogeneous_Z_confluent(int n, const SpectralParams& params);

/// All parameters homogeneous except mu_N = mu + omega (leftmost column).
/// Uses the ratio against homogeneous_Z with S_N = tau~_N / tau_N, falling
/// back to the confluent route where the tau representation degenerates.
Real partial_inhom_Z(int n, const SpectralParams& params);
Real partial_inhom_Z_ratio(int n, const SpectralParams& params);

/// Confluent limit in (r, s) with the last column at s_N = sin^2(mu + omega).
/// No regime check; also evaluates formal continuations.
Real partial_inhom_Z_confluent(int n, const SpectralParams& params);

/// S_N = tau~_N / tau_N.
Real S_ratio(int n, const SpectralParams& params);

/// gamma-image of the generating function h_N at eta = pi/4, mu = 0,
/// xi = pi/2, built from Z_N(lambda, omega), Z_N(lambda, pi/2 - omega) and
/// Z_N(lambda).
Real hN_determinant(int n, const Real& lambda, const Real& omega);

void write_tau_csv(std::ostream& os, const TauSequence& seq, std::span<const TodaResidual> residuals);

}  // namespace sixv
