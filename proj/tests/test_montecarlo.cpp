#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "sixv/enumerate.hpp"
#include "sixv/montecarlo.hpp"

using namespace sixv;

namespace {

using Key = std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>;

Key key_of(const LatticeState& s) {
  std::vector<std::uint8_t> t;
  for (Turn x : s.turns) t.push_back(static_cast<std::uint8_t>(x));
  auto hv = s.h;
  hv.insert(hv.end(), s.v.begin(), s.v.end());
  return {hv, t};
}

/// Boltzmann probabilities of every state at the special point.
std::map<Key, double> exact_distribution(int n, double lambda = std::numbers::pi / 4) {
  PrecisionScope scope(30);
  const WeightTable<Real> w = special_point_weights(n, lambda).convert<Real>();
  std::map<Key, double> p;
  double z = 0;
  for_each_state(Geometry{n, 0}, [&](const LatticeState& s) {
    const double ws = static_cast<double>(state_weight(s, w));
    p[key_of(s)] = ws;
    z += ws;
  });
  for (auto& [k, v] : p) v /= z;
  return p;
}

ChiSquareResult goodness(const std::map<Key, double>& p, const std::map<Key, double>& counts, double total) {
  std::vector<double> obs, exp;
  for (const auto& [k, prob] : p) {
    const auto it = counts.find(k);
    obs.push_back(it == counts.end() ? 0.0 : it->second);
    exp.push_back(prob * total);
  }
  return chi_square_test(obs, exp);
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("philox known answers") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("philox streams are reproducible and distinct") {
  Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differ_c = differ_c || x != c();
    differ_d = differ_d || x != d();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  CHECK(a.draws() == 100);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = a.uniform();
    CHECK_FALSE((u < 0 || u >= 1));
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("init modes") {
  CHECK(parse_init_mode("exact-dp") == InitMode::exact_dp);
  CHECK(parse_init_mode(to_string(InitMode::reference)) == InitMode::reference);
  CHECK_THROWS(parse_init_mode("random"));
  for (int n : {1, 2, 5, 17, 64}) {
    const MCState s = mc_init(n, 7, InitMode::reference);
    CHECK(validate_state(s.lattice).empty());
    CHECK(to_paths(s.lattice).paths.size() == std::size_t(n));
  }
  for (int n = 1; n <= kExactSamplerMaxN; n += 3) CHECK(validate_state(mc_init(n, 3, InitMode::exact_dp).lattice).empty());
  CHECK_THROWS_AS(mc_init(kExactSamplerMaxN + 1, 1, InitMode::exact_dp), CapacityError);
}

TEST_CASE("exact sampler matches Boltzmann probabilities") {
  const int n = 3, draws = 100000;
  const auto p = exact_distribution(n);
  const ExactSampler sampler(special_point_weights(n));
  PrecisionScope scope(30);
  const double z = static_cast<double>(
      enumerate_Z(special_point_weights(n).convert<Real>(), EnumMode::transfer).Z);
  CHECK(sampler.partition() == doctest::Approx(z).epsilon(1e-12));
  Philox4x32 rng(11);
  std::map<Key, double> counts;
  for (int i = 0; i < draws; ++i) counts[key_of(sampler.draw(rng))] += 1;
  CHECK(counts.size() == p.size());
  const ChiSquareResult chi = goodness(p, counts, draws);
  CHECK(chi.p_value > 0.01);
}

TEST_CASE("accepted moves keep the state valid") {
  const auto w = special_point_weights(5);
  MCState s = mc_init(5, 5, InitMode::reference, w);
  for (int sweep = 0; sweep < 50; ++sweep) {
    for (int l = 0; l + 1 < 10; ++l)
      for (int c = 0; c + 1 < 5; ++c) {
        try_plaquette(s, w, l, c);
        REQUIRE(validate_state(s.lattice).empty());
      }
    for (int j = 0; j < 5; ++j) {
      try_turn(s, w, j);
      REQUIRE(validate_state(s.lattice).empty());
    }
  }
  CHECK(s.plaquette.accepted > 0);
  CHECK(s.turn.accepted > 0);
  CHECK(s.plaquette.accepted <= s.plaquette.flippable);
  CHECK(s.plaquette.flippable <= s.plaquette.proposed);
}

TEST_CASE("equal weights accept every flippable move") {
  const Geometry g{3, 0};
  const auto w = WeightTable<double>::uniform(g, 1, 1, 1, 1, 1);
  MCState s = mc_init(3, 2, InitMode::reference, w);
  for (int i = 0; i < 200; ++i) mc_sweep(s, w);
  CHECK(s.plaquette.accepted == s.plaquette.flippable);
  CHECK(s.turn.accepted == s.turn.flippable);
  CHECK(s.turn.accepted > 0);
}

TEST_CASE("move ratios satisfy detailed balance") {
  const auto w = special_point_weights(3, 0.6);
  PrecisionScope scope(30);
  const auto wr = w.convert<Real>();
  for_each_state(Geometry{3, 0}, [&](const LatticeState& s) {
    const double ws = static_cast<double>(state_weight(s, wr));
    for (int l = 0; l + 1 < 6; ++l)
      for (int c = 0; c + 1 < 3; ++c) {
        const double r = plaquette_ratio(s, w, l, c);
        if (r == 0) continue;
        MCState m{s, Philox4x32(0), 0, {}, {}};
        const auto ones = WeightTable<double>::uniform(s.geometry, 1, 1, 1, 1, 1);
        REQUIRE(try_plaquette(m, ones, l, c));
        REQUIRE(validate_state(m.lattice).empty());
        CHECK(r == doctest::Approx(static_cast<double>(state_weight(m.lattice, wr)) / ws).epsilon(1e-12));
        CHECK(plaquette_ratio(m.lattice, w, l, c) == doctest::Approx(1 / r).epsilon(1e-12));
      }
    for (int j = 0; j < 3; ++j) {
      const double r = turn_ratio(s, w, j);
      if (r == 0) continue;
      MCState m{s, Philox4x32(0), 0, {}, {}};
      REQUIRE(try_turn(m, WeightTable<double>::uniform(s.geometry, 1, 1, 1, 1, 1), j));
      REQUIRE(validate_state(m.lattice).empty());
      CHECK(r == doctest::Approx(static_cast<double>(state_weight(m.lattice, wr)) / ws).epsilon(1e-12));
    }
  });
}

TEST_CASE("chain visits every state with Boltzmann frequencies") {
  const int n = 3;
  const auto w = special_point_weights(n, 0.6);
  const auto p = exact_distribution(n, 0.6);
  MCState s = mc_init(n, 99, InitMode::reference, w);
  for (int i = 0; i < 1000; ++i) mc_sweep(s, w);
  std::map<Key, double> counts;
  const int samples = 40000;
  for (int i = 0; i < samples; ++i) {
    for (int k = 0; k < 5; ++k) mc_sweep(s, w);
    counts[key_of(s.lattice)] += 1;
  }
  CHECK(counts.size() == p.size());
  CHECK(goodness(p, counts, samples).p_value > 0.001);
}

TEST_CASE("density field") {
  const int n = 4;
  const auto w = special_point_weights(n);
  MCState a = mc_init(n, 1, InitMode::exact_dp, w), b = mc_init(n, 2, InitMode::exact_dp, w);
  const MeasureOptions opt{2000, 100, 2, 100};
  DensityField fa = mc_measure(a, w, opt), fb = mc_measure(b, w, opt);
  CHECK(fa.samples == 1000);
  CHECK(fa.batches == 10);
  CHECK_FALSE(fa.unreliable());
  for (int i = 0; i <= 2 * n; ++i)
    for (int c = 0; c < n; ++c) {
      CHECK(fa.density(i, c) >= 0);
      CHECK(fa.density(i, c) <= 1);
    }
  CHECK(fa.density(0, 0) == 0);
  CHECK(fa.density(2 * n, n - 1) == 1);
  const double da = fa.density(3, 1), db = fb.density(3, 1);
  fa.merge(fb);
  CHECK(fa.samples == 2000);
  CHECK(fa.density(3, 1) == doctest::Approx((da + db) / 2));
  DensityField tiny(Geometry{n, 0}, 50);
  tiny.add(a.lattice);
  CHECK(tiny.unreliable());
  CHECK(std::isinf(tiny.stderr_of(1, 1)));
}

TEST_CASE("G estimate against enumeration at N=4") {
  const int n = 4;
  const auto w = special_point_weights(n);
  PrecisionScope scope(30);
  const CorrelationTable t = enumerate_correlations(w.convert<Real>());
  MCState s = mc_init(n, 2024, InitMode::exact_dp, w);
  const DensityField f = mc_measure(s, w, {60000, 0, 1, 500});
  for (int r = 1; r <= n; ++r)
    CHECK(std::abs(f.G(r) - static_cast<double>(t.G[r - 1])) <= 3 * f.G_stderr(r) + 1e-12);
}

TEST_CASE("runs are bit-reproducible") {
  const auto w = special_point_weights(6);
  MCState a = mc_init(6, 77, InitMode::reference, w), b = mc_init(6, 77, InitMode::reference, w);
  const MeasureOptions opt{300, 20, 3, 10};
  const DensityField fa = mc_measure(a, w, opt), fb = mc_measure(b, w, opt);
  CHECK(fa.sum == fb.sum);
  CHECK(a.lattice == b.lattice);
  std::ostringstream ca, cb;
  write_density_csv(ca, fa);
  write_density_csv(cb, fb);
  CHECK(ca.str() == cb.str());
  const auto meta = run_metadata(a, opt);
  CHECK(meta["seed"] == 77);
  CHECK(meta["sweeps"] == 300);
  CHECK(a.sweeps == 320);
}

TEST_CASE("contour of an exact disk field") {
  const int n = 200;
  std::vector<double> field((2 * n + 1) * n);
  for (int i = 0; i <= 2 * n; ++i)
    for (int c = 0; c < n; ++c) {
      const double x = (c + 0.5) / n, y = 2.0 - double(i) / n;
      const bool inside = (x - 1) * (x - 1) + (y - 1) * (y - 1) < 1;
      field[i * n + c] = inside ? 0.5 : (y > 1 ? 0.0 : 1.0);
    }
  const auto contour = extract_contour(field, n, 0.05);
  CHECK_FALSE(contour.empty());
  const SemicircleComparison cmp = compare_semicircle(contour);
  CHECK(cmp.distance < 1.0 / n);
  CHECK(cmp.left_gap < 0.02);
  CHECK(cmp.top_gap < 0.02);
  CHECK(cmp.bottom_gap < 0.02);

  std::vector<CurveSample> arc;
  for (double w : default_omega_grid(100)) {
    const CurveSample p = arc_nw(w);
    arc.push_back(p);
    arc.push_back({p.x, 2 - p.y, w, CurveSource::analytic});
  }
  CHECK(compare_semicircle(arc).distance < 1e-14);

  std::vector<double> frozen((2 * n + 1) * n, 0.0);
  CHECK_THROWS(compare_semicircle(extract_contour(frozen, n, 0.05)));
}

TEST_CASE("kolmogorov-smirnov") {
  const KsResult same = ks_two_sample({1, 2, 3, 4}, {1, 2, 3, 4});
  CHECK(same.statistic == 0);
  CHECK(same.p_value == doctest::Approx(1));
  const KsResult apart = ks_two_sample({1, 2, 3}, {4, 5, 6});
  CHECK(apart.statistic == 1);
  Philox4x32 rng(5);
  std::vector<double> a, b, c;
  for (int i = 0; i < 2000; ++i) {
    a.push_back(rng.uniform());
    b.push_back(rng.uniform());
    c.push_back(rng.uniform() * 0.9);
  }
  CHECK(ks_two_sample(a, b).p_value > 0.01);
  CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("chi-square") {
  const std::vector<double> e{100, 200, 300, 400};
  const ChiSquareResult exact = chi_square_test(e, e);
  CHECK(exact.statistic == 0);
  CHECK(exact.dof == 3);
  CHECK(exact.p_value == doctest::Approx(1));
  const std::vector<double> o{110, 190, 300, 400};
  CHECK(chi_square_test(o, e).statistic == doctest::Approx(1.5));
  const ChiSquareResult pooled = chi_square_test(std::vector<double>{1, 2, 97}, std::vector<double>{2, 2, 96});
  CHECK(pooled.dof == 1);
}

}
