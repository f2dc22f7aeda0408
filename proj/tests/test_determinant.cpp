#include <boost/math/special_functions/factorials.hpp>

#include "doctest.h"
#include "sixv/determinant.hpp"
#include "sixv/enumerate.hpp"

using namespace sixv;

namespace {

Real rel(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

}  // namespace

TEST_SUITE("determinant") {

TEST_CASE("pivoted elimination") {
  PrecisionScope scope(50);
  CHECK(determinant({{Real(0), Real(2)}, {Real(3), Real(4)}}) == -6);
  Matrix hilbert(4, std::vector<Real>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) hilbert[i][j] = Real(1) / (i + j + 1);
  CHECK(rel(determinant(hilbert), Real(1) / 6048000) < Real("1e-45"));
  CHECK(determinant({{Real(1), Real(2)}, {Real(2), Real(4)}}) == 0);
}

TEST_CASE("jet arithmetic") {
  PrecisionScope scope(50);
  const Real alpha("0.3");
  const Jet2 s = Jet2::sin_affine(4, 4, alpha);
  CHECK(abs(s.derivative(0, 0) - sin(alpha)) < Real("1e-45"));
  CHECK(abs(s.derivative(1, 0) - cos(alpha)) < Real("1e-45"));
  CHECK(abs(s.derivative(2, 1) + cos(alpha)) < Real("1e-45"));
  CHECK(abs(s.derivative(2, 1) - s.derivative(1, 2)) < Real("1e-45"));
  const Jet2 c = Jet2::cos_affine(4, 4, alpha);
  const Jet2 one = s * s + c * c;
  CHECK(abs(one(0, 0) - 1) < Real("1e-45"));
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j)
      if (i + j > 0) CHECK(abs(one(i, j)) < Real("1e-45"));
  const Jet2 r = c.reciprocal() * c;
  CHECK(abs(r(0, 0) - 1) < Real("1e-45"));
  CHECK(abs(r(3, 2)) < Real("1e-45"));
}

TEST_CASE("first tau equals psi") {
  PrecisionScope scope(50);
  const Real l("0.5"), m("0.1"), e = pi() / 5;
  CHECK(rel(tau_N(1, l, m, e), psi(l, m, e)) < Real("1e-45"));
  CHECK(rel(psi(l, m, e), sin(2 * e) / weight_product(l, m, e)) < Real("1e-45"));
  const SpectralParams p{l, m, e, pi() / 2, Real("0.05")};
  const TauSequence seq = tau_sequence(3, p);
  CHECK(rel(seq.tau[1], psi(l, m, e)) < Real("1e-45"));
  CHECK(rel(seq.tau_tilde[1], psi(l, m + Real("0.05"), e)) < Real("1e-45"));
}

TEST_CASE("single-site closed form") {
  PrecisionScope scope(50);
  const SpectralParams p{Real("0.45"), Real("0.12"), pi() / 5, Real("1.3"), Real(0)};
  const Real expect = sin(2 * p.lambda) * kappa_minus(p.mu, p.xi) * sin(2 * p.eta);
  CHECK(rel(homogeneous_Z(1, p), expect) < Real("1e-40"));
  const Real l[] = {p.lambda}, m[] = {p.mu};
  CHECK(rel(tsuchiya_Z(l, m, p.eta, p.xi), expect) < Real("1e-40"));
}

TEST_CASE("tsuchiya determinant") {
  PrecisionScope scope(50);
  const std::vector<Real> lambdas{Real("0.55"), Real("0.7")}, mus{Real("0.1"), Real("-0.05")};
  const Real eta = pi() / 5, xi = pi() / 2;
  const Real z = tsuchiya_Z(lambdas, mus, eta, xi);
  const std::vector<Real> swapped{lambdas[1], lambdas[0]};
  CHECK(rel(tsuchiya_Z(swapped, mus, eta, xi), z) < Real("1e-40"));
  const auto table = weight_table(lambdas, mus, eta, xi, Geometry{2, 0});
  CHECK(rel(enumerate_Z(table, EnumMode::brute).Z, z) < Real("1e-40"));
  const std::vector<Real> equal{Real("0.6"), Real("0.6")};
  CHECK_THROWS_AS(tsuchiya_Z(equal, mus, eta, xi), DomainError);
}

TEST_CASE("homogeneous determinant matches enumeration") {
  PrecisionScope scope(default_digits(4));
  const SpectralParams points[] = {{pi() / 4, Real("0.1"), pi() / 4, pi() / 2, Real(0)},
                                   {Real("0.5"), Real("0.1"), pi() / 5, pi() / 3, Real(0)},
                                   SpectralParams::free_fermion(Real("0.6"))};
  for (const auto& p : points)
    for (int n = 1; n <= 4; ++n) {
      const HomogeneousZ h = homogeneous_Z_detail(n, p);
      CHECK(h.Z > 0);
      CHECK(rel(h.Z, enumerate_Z(n, p, EnumMode::transfer).Z) < Real("1e-20"));
      CHECK(rel(homogeneous_Z_confluent(n, p), h.Z) < Real("1e-20"));
    }
}

TEST_CASE("precision policy") {
  CHECK(default_digits(1) == 50);
  CHECK(default_digits(10) == 120);
}

TEST_CASE("tau is stable under doubled precision") {
  for (int n : {8, 16, 24}) {
    Real low;
    {
      PrecisionScope scope(default_digits(n));
      low = tau_N(n, Real("0.5"), Real("0.1"), pi() / 5);
    }
    PrecisionScope scope(2 * default_digits(n));
    const Real high = tau_N(n, Real("0.5"), Real("0.1"), pi() / 5);
    CHECK(rel(low, high) < Real("1e-10"));
  }
}

TEST_CASE("tau vanishes where the prefactor does") {
  PrecisionScope scope(default_digits(5));
  CHECK(abs(tau_N(5, pi() / 4, Real("0.1"), pi() / 4)) < Real("1e-80"));
  const SpectralParams p{pi() / 4, Real("0.1"), pi() / 4, pi() / 2, Real(0)};
  CHECK(homogeneous_Z_detail(5, p).confluent_route);
}

TEST_CASE("toda residuals") {
  PrecisionScope scope(default_digits(8));
  const TauSequence seq = tau_sequence(8, {Real("0.3"), Real("0.1"), pi() / 5, pi() / 2, Real("0.05")});
  const auto res = toda_residuals(seq);
  REQUIRE_FALSE(res.empty());
  const Real tol = pow(Real(10), -Real(working_digits()) / 2);
  for (const auto& r : res) {
    CHECK(abs(r.toda) < tol);
    CHECK(abs(r.toda_tilde) < tol);
  }
}

TEST_CASE("partially inhomogeneous partition function") {
  PrecisionScope scope(default_digits(4));
  const Real omega("0.07");
  const SpectralParams p{Real("0.5"), Real("0.1"), pi() / 5, pi() / 3, omega};
  for (int n = 1; n <= 4; ++n) {
    std::vector<Real> lambdas(n, p.lambda), mus(n, p.mu);
    mus[n - 1] = p.mu + omega;
    const auto table = weight_table(lambdas, mus, p.eta, p.xi, Geometry{n, 0});
    const Real oracle = enumerate_Z(table, EnumMode::transfer).Z;
    CHECK(rel(partial_inhom_Z(n, p), oracle) < Real("1e-20"));
    CHECK(rel(partial_inhom_Z_confluent(n, p), oracle) < Real("1e-20"));
  }
}

TEST_CASE("small-omega behaviour") {
  PrecisionScope scope(default_digits(3));
  SpectralParams p{Real("0.5"), Real("0.1"), pi() / 5, pi() / 3, Real("1e-6")};
  const Real s = S_ratio(3, p);
  const Real law = pow(p.omega, 2) / 2;
  CHECK(abs(s / law - 1) < Real("1e-4"));
  p.omega = Real("1e-12");
  CHECK(abs(partial_inhom_Z(3, p) / homogeneous_Z(3, p) - 1) < Real("1e-9"));
}

TEST_CASE("h_N from the determinant route") {
  PrecisionScope scope(default_digits(5));
  CHECK(abs(hN_determinant(3, pi() / 4, Real(0)) - 1) < Real("1e-30"));
  CHECK_THROWS_AS(hN_determinant(3, pi() / 4, pi() / 4), DomainError);
}

}
