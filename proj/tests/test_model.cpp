#include <cmath>
#include <map>

#include "doctest.h"
#include "sixv/enumerate.hpp"
#include "sixv/model.hpp"

using namespace sixv;

namespace {

std::vector<LatticeState> all_states(int n) {
  std::vector<LatticeState> out;
  for_each_state(Geometry{n, 0}, [&](const LatticeState& s) { out.push_back(s); });
  return out;
}

double d(const Real& x) { return static_cast<double>(x); }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("weights at the symmetric free-fermion point") {
  PrecisionScope scope(50);
  const SpectralParams p{pi() / 4, Real(0), pi() / 4, pi() / 2, Real(0)};
  for (auto parity : {RowParity::odd, RowParity::even}) {
    const WeightSet w = build_weights(p, parity, 1, 1);
    CHECK(abs(w.a_plus - sqrt(Real(2)) / 2) < Real("1e-45"));
    CHECK(abs(w.b_minus - sqrt(Real(2)) / 2) < Real("1e-45"));
    CHECK(abs(w.c - 1) < Real("1e-45"));
    CHECK(abs(w.delta) < Real("1e-45"));
  }
}

TEST_CASE("delta equals cos 2 eta") {
  PrecisionScope scope(50);
  for (double eta : {0.3, 0.6, 1.2}) {
    const SpectralParams p{Real("0.2"), Real("0.05"), Real(eta), Real("1.4"), Real(0)};
    const WeightSet w = build_weights(p, RowParity::odd, 1, 1);
    CHECK(abs(w.delta - cos(2 * Real(eta))) < Real("1e-40"));
  }
}

TEST_CASE("row parity selects mirrored weights") {
  PrecisionScope scope(50);
  const SpectralParams p{Real("0.5"), Real("0.1"), pi() / 5, pi() / 3, Real(0)};
  const WeightSet odd = build_weights(p, RowParity::odd, 1, 1);
  const WeightSet even = build_weights(p, RowParity::even, 1, 1);
  CHECK(odd.w[0] == odd.b_plus);
  CHECK(odd.w[1] == odd.a_plus);
  CHECK(even.w[0] == even.a_minus);
  CHECK(even.w[1] == even.b_minus);
  CHECK(abs(odd.a_plus - sin(p.lambda + p.mu + 2 * p.eta)) < Real("1e-45"));
  CHECK(abs(odd.b_minus - sin(p.lambda - p.mu)) < Real("1e-45"));
}

TEST_CASE("turn weights at xi = pi/2") {
  PrecisionScope scope(50);
  const Real lambda("0.3");
  CHECK(abs(kappa_plus(lambda, pi() / 2) - cos(lambda)) < Real("1e-45"));
  CHECK(abs(kappa_minus(lambda, pi() / 2) - cos(lambda)) < Real("1e-45"));
}

TEST_CASE("out-of-regime weights are rejected") {
  PrecisionScope scope(50);
  const SpectralParams p{Real("-0.2"), Real(0), pi() / 4, pi() / 2, Real(0)};
  CHECK_THROWS_AS(weight_table(p, Geometry{2, 0}), DomainError);
  const SpectralParams eta_bad{Real("0.3"), Real(0), Real("1.7"), pi() / 2, Real(0)};
  CHECK_THROWS_AS(build_weights(eta_bad, RowParity::odd, 1, 1), DomainError);
}

TEST_CASE("vertex classification") {
  CHECK(classify_vertex(false, false, false, false) == VertexType::w1);
  CHECK(classify_vertex(true, true, true, true) == VertexType::w1);
  CHECK(classify_vertex(true, false, true, false) == VertexType::w2);
  CHECK(classify_vertex(false, true, false, true) == VertexType::w2);
  CHECK(classify_vertex(true, false, false, true) == VertexType::w3);
  CHECK(classify_vertex(false, true, true, false) == VertexType::w3);
  CHECK(classify_vertex(true, true, true, false) == VertexType::invalid);
  CHECK(classify_vertex(true, false, false, false) == VertexType::invalid);
}

TEST_CASE("vertex types are invariant under arrow reversal") {
  for (int m = 0; m < 16; ++m) {
    const bool l = m & 1, b = m & 2, r = m & 4, t = m & 8;
    CHECK(classify_vertex(l, b, r, t) == classify_vertex(!l, !b, !r, !t));
  }
}

TEST_CASE("N=1 brute force over every arrow assignment") {
  const Geometry g{1, 0};
  int valid = 0;
  for (int bits = 0; bits < 256; ++bits) {
    LatticeState s(g);
    int k = 0;
    for (auto& e : s.h) e = (bits >> k++) & 1;
    for (auto& e : s.v) e = (bits >> k++) & 1;
    s.turns[0] = (bits >> k) & 1 ? Turn::kappa_minus : Turn::kappa_plus;
    if (validate_state(s).empty()) ++valid;
  }
  CHECK(valid == 2);
  CHECK(all_states(1).size() == 2);
}

TEST_CASE("violations carry the offending vertex") {
  LatticeState s = all_states(2).front();
  s.v_edge(2, 1) ^= 1;
  const auto violations = validate_state(s);
  REQUIRE_FALSE(violations.empty());
  bool located = false;
  for (const auto& v : violations)
    if (v.kind == Violation::Kind::ice_rule && v.col == 1 && (v.row == 1 || v.row == 2)) located = true;
  CHECK(located);
}

TEST_CASE("N=1 weights sum to sin 2 lambda cos mu") {
  PrecisionScope scope(50);
  const SpectralParams p{pi() / 4, Real(0), pi() / 4, pi() / 2, Real(0)};
  Real sum = 0;
  for (const auto& s : all_states(1)) sum += state_weight(s, p);
  CHECK(abs(sum - 1) < Real("1e-45"));
  const SpectralParams q{Real("0.4"), Real("0.15"), pi() / 4, pi() / 2, Real(0)};
  sum = 0;
  for (const auto& s : all_states(1)) sum += state_weight(s, q);
  CHECK(abs(sum - sin(2 * q.lambda) * cos(q.mu)) < Real("1e-45"));
}

TEST_CASE("unit weights give unit state weight") {
  PrecisionScope scope(30);
  const auto table = WeightTable<Real>::uniform(Geometry{3, 0}, 1, 1, 1, 1, 1);
  for (const auto& s : all_states(3)) CHECK(state_weight(s, table) == 1);
}

TEST_CASE("invalid states cannot be weighed") {
  PrecisionScope scope(30);
  LatticeState s = all_states(1).front();
  s.h_edge(0, 0) = 1;
  CHECK_THROWS(state_weight(s, SpectralParams::free_fermion(pi() / 4)));
}

TEST_CASE("one c-vertex in the first column") {
  for (int n = 1; n <= 4; ++n)
    for_each_state(Geometry{n, 0}, [&](const LatticeState& s) {
      int c_vertices = 0;
      for (int l = 0; l < s.geometry.rows(); ++l) c_vertices += s.vertex(l, 0) == VertexType::w3;
      CHECK(c_vertices == 1);
    });
}

TEST_CASE("path picture") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : all_states(n)) {
      const PathPicture pic = to_paths(s);
      REQUIRE(pic.paths.size() == std::size_t(n));
      std::map<std::tuple<bool, int, int>, int> used;
      std::size_t thick = 0;
      for (auto e : s.h) thick += e;
      for (auto e : s.v) thick += e;
      std::size_t edges = 0;
      for (const auto& path : pic.paths) {
        REQUIRE_FALSE(path.edges.empty());
        const EdgeRef first = path.edges.front(), last = path.edges.back();
        CHECK_FALSE(first.horizontal);
        CHECK(first.i == s.geometry.rows());
        CHECK(last.horizontal);
        CHECK(last.j == s.geometry.columns());
        for (const auto& e : path.edges) {
          CHECK(++used[{e.horizontal, e.i, e.j}] == 1);
          CHECK((e.horizontal ? s.h_edge(e.i, e.j) : s.v_edge(e.i, e.j)) == 1);
        }
        edges += path.edges.size();
      }
      CHECK(edges == thick);
      CHECK(from_paths(pic) == s);
    }
}

TEST_CASE("each double row receives one path end") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : all_states(n)) {
      const int cols = s.geometry.columns();
      for (int j = 0; j < n; ++j) CHECK(s.h_edge(2 * j, cols) + s.h_edge(2 * j + 1, cols) == 1);
      for (int level = 0; level <= s.geometry.rows(); ++level) {
        int crossing = 0, exited = 0;
        for (int c = 0; c < cols; ++c) crossing += s.v_edge(level, c);
        for (int l = level; l < s.geometry.rows(); ++l) exited += s.h_edge(l, cols);
        CHECK(crossing + exited == n);
      }
    }
}

TEST_CASE("json round trip") {
  for (const auto& s : all_states(2)) CHECK(state_from_json(to_json(s)) == s);
}

TEST_CASE("parse_angle forms") {
  PrecisionScope scope(50);
  CHECK(abs(parse_angle("pi/4") - pi() / 4) < Real("1e-49"));
  CHECK(abs(parse_angle("-3pi/8") + 3 * pi() / 8) < Real("1e-49"));
  CHECK(abs(parse_angle("2*pi/5") - 2 * pi() / 5) < Real("1e-49"));
  CHECK(d(parse_angle("0.25")) == 0.25);
  CHECK(d(parse_angle("1e-3")) == 1e-3);
  CHECK_THROWS_AS(parse_angle("pie"), DomainError);
}

}
