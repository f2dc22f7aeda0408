#include "sixv/determinant.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace sixv {

namespace {

int sign_of(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Real ipow(const Real& x, long k) {
  Real r = 1;
  Real b = x;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

Real factorial(int n) {
  Real f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_regime(const SpectralParams& p, int n) {
  for (RowParity parity : {RowParity::odd, RowParity::even}) {
    (void)build_weights(p, parity, 1, n);
    if (n > 1) (void)build_weights(p, parity, n, n);
  }
}

// psi as a function of r = sin^2(lambda + eta) and s = sin^2(mu):
// a_+ a_- b_+ b_- = r^2 - r (1 - cos 2eta + 2 s cos 2eta) + (sin^2 eta - s)^2.
Jet2 psi_rs_jet(const Real& r, const Real& s, const Real& eta, int p, int q) {
  const Real c2 = cos(2 * eta), se = pow(sin(eta), 2);
  Jet2 d(p, q);
  d(0, 0) = r * r - r * (1 - c2 + 2 * s * c2) + (se - s) * (se - s);
  if (p > 0) d(1, 0) = 2 * r - (1 - c2 + 2 * s * c2);
  if (p > 1) d(2, 0) = 1;
  if (q > 0) {
    d(0, 1) = -2 * r * c2 - 2 * (se - s);
    if (p > 0) d(1, 1) = -2 * c2;
  }
  if (q > 1) d(0, 2) = 1;
  return d.reciprocal() * weight_c(eta);
}

bool tau_route_degenerate(const SpectralParams& p) {
  return abs(weight_a(2 * p.lambda, p.eta) * weight_b(2 * p.mu)) < Real("1e-3");
}

}  // namespace

Real determinant(Matrix m) {
  const std::size_t n = m.size();
  Real det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    Real best = 0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const Real a = abs(m[i][j]);
        if (a > best) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (best == 0) return Real(0);
    if (pr != k) {
      std::swap(m[pr], m[k]);
      det = -det;
    }
    if (pc != k) {
      for (auto& row : m) std::swap(row[pc], row[k]);
      det = -det;
    }
    const Real& pivot = m[k][k];
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = m[i][k] / pivot;
      if (f == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

unsigned default_digits(int n) { return static_cast<unsigned>(std::max(50, 12 * n)); }

Real weight_product(const Real& lambda, const Real& mu, const Real& eta) {
  return weight_a(lambda + mu, eta) * weight_a(lambda - mu, eta) * weight_b(lambda + mu) *
         weight_b(lambda - mu);
}

Real psi(const Real& lambda, const Real& mu, const Real& eta) {
  return weight_c(eta) / weight_product(lambda, mu, eta);
}

Real tsuchiya_Z(std::span<const Real> lambdas, std::span<const Real> mus, const Real& eta,
                const Real& xi) {
  const std::size_t n = lambdas.size();
  if (mus.size() != n || n == 0) throw DomainError("tsuchiya_Z needs N lambdas and N mus");
  Real num = 1, den = 1;
  Matrix m(n, std::vector<Real>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      num *= weight_product(lambdas[j], mus[k], eta);
      m[j][k] = psi(lambdas[j], mus[k], eta);
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k)
      den *= weight_a(lambdas[j] + lambdas[k], eta) * weight_b(lambdas[j] - lambdas[k]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) den *= weight_b(mus[a] + mus[b]) * weight_b(mus[a] - mus[b]);
  if (den == 0)
    throw DomainError("singular prefactor: coinciding spectral parameters, use homogeneous_Z");
  Real turns = 1;
  for (std::size_t j = 0; j < n; ++j) turns *= weight_b(2 * lambdas[j]) * kappa_minus(mus[j], xi);
  return num / den * turns * determinant(std::move(m));
}

Jet2 psi_jet(const Real& lambda, const Real& mu, const Real& eta, int p, int q) {
  const Jet2 prod = Jet2::sin_affine(p, q, lambda + mu + 2 * eta, 1) *
                    Jet2::sin_affine(p, q, lambda - mu + 2 * eta, -1) *
                    Jet2::sin_affine(p, q, lambda + mu, 1) * Jet2::sin_affine(p, q, lambda - mu, -1);
  return prod.reciprocal() * weight_c(eta);
}

Real TauSequence::minor(std::span<const int> rows, std::span<const int> cols) const {
  Matrix m(rows.size(), std::vector<Real>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m[i][j] = cols[j] < 0 ? tilde[rows[i]] : derivatives[rows[i]][cols[j]];
  return determinant(std::move(m));
}

TauSequence tau_sequence(int n_max, const SpectralParams& p) {
  if (n_max < 1) throw DomainError("tau sequence needs N >= 1");
  TauSequence seq;
  seq.n_max = n_max;
  seq.precision = working_digits();
  const int order = n_max;
  const Jet2 jet = psi_jet(p.lambda, p.mu, p.eta, order, order);
  const Jet2 tjet = psi_jet(p.lambda, p.mu + p.omega, p.eta, order, 0);
  seq.derivatives.assign(order + 1, std::vector<Real>(order + 1));
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; j <= order; ++j) seq.derivatives[i][j] = jet.derivative(i, j);
    seq.tilde.push_back(tjet.derivative(i, 0));
  }
  seq.tau.push_back(Real(1));
  seq.tau_tilde.push_back(Real(1));
  seq.C.push_back(Real(1));
  Real prod = 1;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    seq.tau.push_back(seq.minor(idx, idx));
    std::vector<int> cols = idx;
    cols.back() = -1;
    seq.tau_tilde.push_back(seq.minor(idx, cols));
    prod *= factorial(n - 1);
    seq.C.push_back(prod * prod);
  }
  return seq;
}

Real tau_N(int n, const Real& lambda, const Real& mu, const Real& eta) {
  const Jet2 jet = psi_jet(lambda, mu, eta, n - 1, n - 1);
  Matrix m(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = jet.derivative(i, j);
  return determinant(std::move(m));
}

std::vector<TodaResidual> toda_residuals(const TauSequence& seq) {
  std::vector<TodaResidual> out;
  for (int N = 1; N < seq.n_max; ++N) {
    std::vector<int> base(N), shifted(N);
    std::iota(base.begin(), base.end(), 0);
    shifted = base;
    shifted.back() = N;
    std::vector<int> tbase = base;
    tbase.back() = -1;

    const Real tau = seq.tau[N];
    const Real d_lm = seq.minor(shifted, shifted);
    const Real d_l = seq.minor(shifted, base);
    const Real d_m = seq.minor(base, shifted);
    const Real lhs = seq.tau[N + 1] * seq.tau[N - 1];
    const Real rhs = tau * d_lm - d_l * d_m;
    const Real scale = std::max({abs(lhs), abs(tau * d_lm), abs(d_l * d_m)});

    const Real tt = seq.tau_tilde[N];
    const Real d_l_tilde = seq.minor(shifted, tbase);
    const Real lhs_t = seq.tau_tilde[N + 1] * seq.tau[N - 1];
    const Real rhs_t = tau * d_l_tilde - d_l * tt;
    const Real scale_t = std::max({abs(lhs_t), abs(tau * d_l_tilde), abs(d_l * tt)});

    auto relative = [](const Real& diff, const Real& sc) { return sc == 0 ? Real(0) : Real(diff / sc); };
    out.push_back({N, relative(abs(lhs - rhs), scale), relative(abs(lhs_t - rhs_t), scale_t)});
  }
  return out;
}

HomogeneousZ homogeneous_Z_detail(int n, const SpectralParams& p) {
  if (n < 1) throw DomainError("N must be positive");
  require_regime(p, n);
  HomogeneousZ r;
  if (tau_route_degenerate(p)) {
    r.Z = homogeneous_Z_confluent(n, p);
    r.prefactor_sign = 1;
    r.tau_sign = 1;
    r.confluent_route = true;
  } else {
    const long m = long(n) * (n - 1) / 2;
    const Real base = -weight_a(2 * p.lambda, p.eta) * weight_b(2 * p.mu);
    const Real tau = tau_N(n, p.lambda, p.mu, p.eta);
    Real C = 1;
    for (int j = 0; j < n; ++j) C *= factorial(j);
    C *= C;
    r.prefactor_sign = (sign_of(base) < 0 && (m % 2)) ? -1 : 1;
    r.tau_sign = sign_of(tau);
    const Real magnitude = ipow(abs(base), m);
    r.Z = ipow(weight_product(p.lambda, p.mu, p.eta), long(n) * n) *
          ipow(weight_b(2 * p.lambda) * kappa_minus(p.mu, p.xi), n) * tau /
          (C * magnitude * r.prefactor_sign);
    r.confluent_route = false;
  }
  if (!(r.Z > 0))
    throw DomainError("homogeneous_Z: non-positive partition function (prefactor sign " +
                      std::to_string(r.prefactor_sign) + ", tau sign " + std::to_string(r.tau_sign) + ")");
  return r;
}

Real homogeneous_Z(int n, const SpectralParams& p) { return homogeneous_Z_detail(n, p).Z; }

Real homogeneous_Z_confluent(int n, const SpectralParams& p) {
  const Real r = pow(sin(p.lambda + p.eta), 2), s0 = pow(sin(p.mu), 2);
  const Jet2 jet = psi_rs_jet(r, s0, p.eta, n - 1, n - 1);
  Matrix m(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = jet(i, j);
  const long half = long(n) * (n - 1) / 2;
  const Real Z = ipow(weight_product(p.lambda, p.mu, p.eta), long(n) * n) *
                 ipow(weight_b(2 * p.lambda) * kappa_minus(p.mu, p.xi), n) * determinant(std::move(m));
  return (half % 2) ? Real(-Z) : Z;
}

Real partial_inhom_Z_confluent(int n, const SpectralParams& p) {
  const Real mu_n = p.mu + p.omega;
  const Real r = pow(sin(p.lambda + p.eta), 2);
  const Real s0 = pow(sin(p.mu), 2), sn = pow(sin(mu_n), 2);
  if (n > 1 && sn == s0) throw DomainError("partial_inhom_Z: sin^2(mu + omega) = sin^2(mu)");
  const Jet2 jet = psi_rs_jet(r, s0, p.eta, n - 1, std::max(n - 2, 0));
  const Jet2 last = psi_rs_jet(r, sn, p.eta, n - 1, 0);
  Matrix m(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) m[i][j] = jet(i, j);
    m[i][n - 1] = last(i, 0);
  }
  const long half = long(n) * (n - 1) / 2;
  const Real Z = ipow(weight_product(p.lambda, p.mu, p.eta), long(n) * (n - 1)) *
                 ipow(weight_product(p.lambda, mu_n, p.eta), n) * ipow(weight_b(2 * p.lambda), n) *
                 ipow(kappa_minus(p.mu, p.xi), n - 1) * kappa_minus(mu_n, p.xi) *
                 determinant(std::move(m)) / ipow(sn - s0, n - 1);
  return (half % 2) ? Real(-Z) : Z;
}

Real S_ratio(int n, const SpectralParams& p) {
  const Jet2 jet = psi_jet(p.lambda, p.mu, p.eta, n - 1, n - 1);
  const Jet2 tjet = psi_jet(p.lambda, p.mu + p.omega, p.eta, n - 1, 0);
  Matrix m(n, std::vector<Real>(n)), mt;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = jet.derivative(i, j);
  mt = m;
  for (int i = 0; i < n; ++i) mt[i][n - 1] = tjet.derivative(i, 0);
  return determinant(std::move(mt)) / determinant(std::move(m));
}

Real partial_inhom_Z_ratio(int n, const SpectralParams& p) {
  SpectralParams hom = p;
  hom.omega = 0;
  const Real mu_n = p.mu + p.omega;
  const Real ratio = factorial(n - 1) / ipow(weight_b(p.omega), n - 1) *
                     kappa_minus(mu_n, p.xi) / kappa_minus(p.mu, p.xi) *
                     ipow(weight_b(2 * p.mu) / weight_b(2 * p.mu + p.omega), n - 1) *
                     ipow(weight_product(p.lambda, mu_n, p.eta) / weight_product(p.lambda, p.mu, p.eta), n) *
                     S_ratio(n, p);
  return homogeneous_Z(n, hom) * ratio;
}

Real partial_inhom_Z(int n, const SpectralParams& p) {
  if (n < 1) throw DomainError("N must be positive");
  require_regime(p, n);
  if (p.omega == 0) return homogeneous_Z(n, p);
  return tau_route_degenerate(p) ? partial_inhom_Z_confluent(n, p) : partial_inhom_Z_ratio(n, p);
}

Real hN_determinant(int n, const Real& lambda, const Real& omega) {
  if (n < 1) throw DomainError("N must be positive");
  const Real quarter = pi() / 4;
  if (!(lambda > 0 && lambda <= quarter)) throw DomainError("hN_determinant: need 0 < lambda <= pi/4");
  if (!(abs(omega) < lambda)) throw DomainError("hN_determinant: need |omega| < lambda");
  if (omega == 0) return Real(1);
  const Real c2 = cos(2 * omega);
  if (c2 == 0) throw DomainError("hN_determinant: singular combination at omega = pi/4");

  SpectralParams p = SpectralParams::free_fermion(lambda, omega);
  const Real z_hom = homogeneous_Z_confluent(n, p);
  const Real z_omega = partial_inhom_Z_confluent(n, p);
  p.omega = pi() / 2 - omega;
  const Real z_reflected = partial_inhom_Z_confluent(n, p);
  const Real x = cos(lambda + omega) * sin(lambda - omega) / (cos(lambda) * sin(lambda));
  return (cos(omega) * z_omega - sin(omega) * z_reflected) / (c2 * z_hom) / ipow(x, n - 1);
}

void write_tau_csv(std::ostream& os, const TauSequence& seq, std::span<const TodaResidual> residuals) {
  os << "N,precision,tau,log_abs_tau,tau_tilde,toda_residual,toda_tilde_residual\n";
  for (int n = 1; n <= seq.n_max; ++n) {
    os << n << ',' << seq.precision << ',' << format_real(seq.tau[n]) << ','
       << format_real(log(abs(seq.tau[n]))) << ',' << format_real(seq.tau_tilde[n]) << ',';
    auto it = std::find_if(residuals.begin(), residuals.end(), [&](const TodaResidual& r) { return r.N == n; });
    if (it != residuals.end()) os << format_real(it->toda, 6) << ',' << format_real(it->toda_tilde, 6);
    else os << ',';
    os << '\n';
  }
}

}  // namespace sixv
