#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sixv/asymptotics.hpp"
#include "sixv/determinant.hpp"

using namespace sixv;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("gamma map") {
  CHECK(gamma_map(0) == Approx(1).epsilon(1e-15));
  const double s = std::sqrt(2.0) / 2;
  CHECK(gamma_map(-kPi / 8) == Approx((1 - s) / (1 + s)).epsilon(1e-14));
  CHECK(gamma_map(-kPi / 8) == Approx(0.171573).epsilon(1e-6));
  CHECK(gamma_map(-kPi / 4 + 1e-9) < 1e-8);
  CHECK(gamma_map(kPi / 4 - 1e-9) > 1e8);
  for (double w : {-0.5, -0.1, 0.2, 0.6}) {
    CHECK(gamma_map(w) == Approx((1 + std::sin(2 * w)) / (1 - std::sin(2 * w))).epsilon(1e-13));
    CHECK(gamma_inverse(gamma_map(w)) == Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("gamma inverse on a general lambda") {
  for (double w : {-0.3, -0.05, 0.1, 0.35})
    CHECK(gamma_inverse(gamma_map(w, 0.4), 0.4) == Approx(w).epsilon(1e-11));
}

TEST_CASE("rate of h") {
  CHECK(h_rate(0) == Approx(0).epsilon(1e-15));
  CHECK(h_rate(0, 0.5) == Approx(0).epsilon(1e-15));
  CHECK(h_rate(-kPi / 8) == Approx(-std::log(2.0)).epsilon(1e-14));
  for (double w : {-0.4, 0.3})
    CHECK(h_rate(w) == Approx(std::log(std::cos(w) * std::cos(w) / (1 - std::sin(2 * w)))).epsilon(1e-13));
}

TEST_CASE("v from differences and closed form") {
  CHECK(v_closed(1) == Approx(0.5).epsilon(1e-15));
  CHECK(v_closed(4) == Approx(1.0 / 6).epsilon(1e-15));
  CHECK(std::abs(v_numeric(1) - 0.5) < 1e-8);
  CHECK(std::abs(v_numeric(4) - 1.0 / 6) < 1e-8);
  for (double w : chebyshev_grid(20, -kPi / 4 + 0.05, kPi / 4 - 0.05)) {
    const double z = gamma_map(w);
    CHECK(std::abs(v_numeric(z) - v_closed(z)) < 1e-8 * std::max(1.0, v_closed(z)));
    CHECK(std::abs(v_prime_numeric(z) - v_prime_closed(z)) < 1e-5 * std::max(1.0, std::abs(v_prime_closed(z))));
  }
}

TEST_CASE("contact point") {
  for (double l : {0.4, 0.5, 0.6, kPi / 4}) {
    const ContactPoint c = contact_point(l);
    CHECK(std::abs(c.kappa - 1) < 1e-8);
    CHECK(std::abs(c.kappa_direct - 1) < 1e-12);
  }
  CHECK(std::abs(arc_nw(-1e-9).y - 1) < 1e-8);
}

TEST_CASE("saddle pair") {
  const SaddleState s = saddle_pair(0.25, 1);
  CHECK(s.chi0 == Approx(2.0 / 3).epsilon(1e-14));
  CHECK(s.zeta0 == Approx(2.0 / 3).epsilon(1e-14));
  CHECK(s.branch == 1);
  const double chi = s.chi0, zeta = s.zeta0;
  CHECK(std::abs(std::log(2 * (2 * chi - zeta) * (1 - zeta) / (zeta * zeta))) < 1e-14);
  CHECK(std::abs(2 * std::log(2 * chi / (2 * chi - zeta)) + std::log(0.25)) < 1e-14);
  for (double z : {0.1, 0.5, 2.0, 4.0, 9.0}) {
    const SaddleState t = saddle_pair(z, 1.3);
    CHECK(t.chi0 > 0);
    CHECK(t.zeta0 > 0);
    CHECK(t.branch == (z < 1 ? 1 : -1));
    CHECK(std::abs(t.chi_residual) < 1e-10);
    CHECK(std::abs(t.zeta_residual) < 1e-10);
  }
  CHECK_THROWS_AS(saddle_pair(1, 1), DomainError);
  CHECK_THROWS_AS(saddle_pair(0.5, 0), DomainError);
}

TEST_CASE("tangent lines") {
  const TangentLine t = tangent_line(0.25);
  CHECK(t.slope == Approx(4.0 / 3).epsilon(1e-8));
  CHECK(t(-t.u, 0) == Approx(0).scale(1).epsilon(1e-12));
  CHECK(t(0, 2 * t.chi) == Approx(0).scale(1).epsilon(1e-12));
  CHECK(std::abs(t.envelope_mismatch) < 1e-10);
  CHECK(2 * tangent_line(1 - 1e-6).chi == Approx(1).epsilon(1e-5));
  for (double z : {0.05, 0.25, 0.5, 0.9}) {
    const Tangency tg = tangency(tangent_line(z));
    CHECK(std::abs(tg.distance) < 1e-6);
    CHECK(std::abs(tg.distance_derivative) < 1e-6);
  }
  const TangentLine f = tangent_family(1.2, 0.3);
  CHECK(f(-1.2, 0) == Approx(0).scale(1).epsilon(1e-12));
  CHECK(f.chi == Approx(saddle_pair(0.3, 1.2).chi0).epsilon(1e-14));
}

TEST_CASE("arctic curve") {
  const CurveSample top = arc_nw(-kPi / 4), mid = arc_nw(-kPi / 8), left = arc_nw(0);
  CHECK(top.x == Approx(1).epsilon(1e-15));
  CHECK(top.y == Approx(2).epsilon(1e-15));
  CHECK(left.x == Approx(0).scale(1).epsilon(1e-15));
  CHECK(left.y == Approx(1).epsilon(1e-15));
  CHECK(mid.x == Approx(1 - std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(mid.y == Approx(1 + std::sqrt(2.0) / 2).epsilon(1e-14));

  std::vector<double> zs;
  for (double w : default_omega_grid(100)) zs.push_back(gamma_map(w));
  const ArcticCurve curve = arctic_curve(zs);
  REQUIRE(curve.samples.size() == 200);
  CHECK(curve.clipped == 0);
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const CurveSample& p = curve.samples[i];
    CHECK(std::abs((p.x - 1) * (p.x - 1) + (p.y - 1) * (p.y - 1) - 1) < 1e-6);
    if (i < 100) {
      const CurveSample a = arc_nw(gamma_inverse(p.param));
      CHECK(std::hypot(p.x - a.x, p.y - a.y) < 1e-6);
      CHECK(p.y >= 1);
    } else {
      CHECK(p.y <= 1);
    }
  }
  CHECK(curve.samples[0].x == Approx(curve.samples[199].x));
  CHECK(curve.samples[0].y == Approx(2 - curve.samples[199].y));
}

TEST_CASE("grids") {
  const auto g = chebyshev_grid(50, -1, 2);
  REQUIRE(g.size() == 50);
  CHECK(g.front() > -1);
  CHECK(g.back() < 2);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  const auto w = default_omega_grid();
  CHECK(w.size() == 200);
  CHECK(w.front() > -kPi / 4 + 1e-3 - 1e-15);
  CHECK(w.back() < -1e-3 + 1e-15);
}

TEST_CASE("path counting") {
  CHECK(path_count<double>(2, 2, 1.0) == 6);
  for (int x = 0; x <= 10; ++x)
    for (int y = 0; y <= 10; ++y)
      CHECK(path_count<double>(x, y, 1.0) == Approx(boost::math::binomial_coefficient<double>(x + y, x)));
  for (double a : {0.3, 0.8, 1.7}) CHECK(path_count<double>(1, 1, a) == Approx(1 / a + 1 / (a * a * a)));
  const double r2 = std::sqrt(2.0);
  CHECK(path_count<double>(2, 3, 1 / r2) == Approx(25 * r2).epsilon(1e-13));
  CHECK(z_left_closed<double>(1, 0, 1, 2.0) == Approx(2.0));
  CHECK(z_left_closed<double>(2, 1, 2, 1.0) == Approx(2.0));
}

TEST_CASE("extended-lattice assembly") {
  PrecisionScope scope(50);
  for (int L = 0; L <= 2; ++L) {
    const ZnlAssembly z = assemble_Z_NL(2, L);
    CHECK(z.residual_sum < Real("1e-40"));
    CHECK(z.residual_regrouped < Real("1e-40"));
    CHECK(z.part_right_residual < Real("1e-40"));
    CHECK(z.bracket_min > 0);
    CHECK(z.bracket_max <= 1 + 1e-15);
  }
}

TEST_CASE("free energy") {
  const FreeEnergy f = free_energy_rate(0.35, 0.1, kPi / 4);
  CHECK(f.alpha == Approx(4));
  const double a = 4, expect = -a * a * std::sin(a * 0.35) * std::sin(a * 0.1) /
                               std::pow(std::cos(a * 0.1) - std::cos(a * 0.35), 2);
  CHECK(f.e4f == Approx(expect).epsilon(1e-13));
  CHECK(f.e4f_abs == Approx(std::abs(expect)).epsilon(1e-13));
  CHECK(f.sign == (expect > 0 ? 1 : -1));
  CHECK_THROWS_AS(free_energy_rate(0.3, 0.3, kPi / 4), DomainError);
  PrecisionScope scope(50);
  for (double l : {0.3, 0.5})
    for (double m : {0.05, 0.15})
      CHECK(abs(liouville_residual(Real(l), Real(m), pi() / 4)) < Real("1e-8"));
  CHECK(abs(liouville_residual(Real("0.4"), Real("0.1"), pi() / 5)) < Real("1e-8"));
}

TEST_CASE("g kernel") {
  for (double w : {-0.6, -0.2, 0.1, 0.5})
    CHECK(g_kernel(kPi / 4, w) == Approx(0.25 * std::pow(std::tan(2 * w), 2)).epsilon(1e-13));
}

TEST_CASE("finite-N rate approaches the limit") {
  const double omega = 0.1;
  double prev = 1e9;
  for (int n : {8, 16, 24}) {
    PrecisionScope scope(default_digits(n));
    const double h = static_cast<double>(hN_determinant(n, pi() / 4, Real(omega)));
    const double err = std::abs(std::log(h) / n - h_rate(omega));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("predicted ratio improves with N") {
  const double lambda = 0.5, omega = 0.1;
  double prev = 1e9;
  for (int n : {4, 8, 12}) {
    PrecisionScope scope(default_digits(n));
    const SpectralParams p{Real(lambda), Real(0), pi() / 4, pi() / 2, Real(omega)};
    const double exact = static_cast<double>(log(partial_inhom_Z(n, p) / homogeneous_Z(n, p)));
    const double err = std::abs(exact / n - predicted_log_ratio(n, lambda, omega) / n);
    CHECK(err < prev);
    prev = err;
  }
}

}
