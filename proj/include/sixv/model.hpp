#pragma once

// Six-vertex model on a 2N x N lattice with domain-wall boundaries and one
// reflecting end.
//
// Conventions used throughout the library:
//  * rows l = 0..2N-1 are counted from the top; double row j = l/2 carries
//    spectral parameter lambda_{j+1}. Row 2j (top line) uses lambda+mu
//    weights, row 2j+1 (bottom line) uses lambda-mu weights.
//  * columns c = 0..M-1 are counted from the left; column c carries
//    mu_k with k = M - c (mu_1 is the rightmost column).
//  * an edge bit is set when the arrow is reversed from the canonical
//    right/up direction, i.e. it points left or down. A set bit is a
//    "thick" edge of the path picture.
//  * the turn of double row j is kappa_plus when the top-line right edge is
//    thick and kappa_minus when the bottom-line right edge is thick.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "sixv/real.hpp"

namespace sixv {

struct SpectralParams {
  Real lambda;
  Real mu;
  Real eta;
  Real xi;
  Real omega = 0;  // shift of the leftmost column: mu_N = mu + omega

  /// eta = pi/4, mu = 0, xi = pi/2: a = cos, b = sin, c = 1.
  static SpectralParams free_fermion(const Real& lambda, const Real& omega = Real(0));
};

Real weight_a(const Real& x, const Real& eta);  // sin(x + 2 eta)
Real weight_b(const Real& x);                   // sin(x)
Real weight_c(const Real& eta);                 // sin(2 eta)
Real kappa_plus(const Real& lambda, const Real& xi);
Real kappa_minus(const Real& lambda, const Real& xi);

enum class RowParity { odd, even };  // 1-based, counted from the top

struct WeightSet {
  Real a_plus, a_minus, b_plus, b_minus, c;
  Real kappa_plus, kappa_minus;
  Real delta;
  std::array<Real, 3> w;  // (w1, w2, w3) for the requested row parity
};

/// column is 1-based from the right; column n receives the omega shift.
WeightSet build_weights(const SpectralParams& params, RowParity parity, int column, int n);

enum class VertexType : std::uint8_t { invalid = 0, w1 = 1, w2 = 2, w3 = 3 };

/// Vertex classification from the four incident edge bits.
VertexType classify_vertex(bool left, bool bottom, bool right, bool top);

/// Lattice shape. extension > 0 adds columns on the left (the extended
/// lattice of the tangent construction): bottom edges are thick under the
/// new leftmost column and under the last n-1 columns, thin elsewhere.
struct Geometry {
  int n = 1;
  int extension = 0;

  int rows() const { return 2 * n; }
  int columns() const { return n + extension; }
  bool bottom_thick(int column) const;
  bool operator==(const Geometry&) const = default;
};

enum class Turn : std::uint8_t { kappa_plus = 0, kappa_minus = 1 };

struct LatticeState {
  Geometry geometry;
  std::vector<std::uint8_t> h;  // rows x (columns + 1)
  std::vector<std::uint8_t> v;  // (rows + 1) x columns
  std::vector<Turn> turns;      // n

  explicit LatticeState(Geometry g = {});

  std::uint8_t& h_edge(int row, int pos) { return h[row * (geometry.columns() + 1) + pos]; }
  std::uint8_t h_edge(int row, int pos) const { return h[row * (geometry.columns() + 1) + pos]; }
  std::uint8_t& v_edge(int level, int col) { return v[level * geometry.columns() + col]; }
  std::uint8_t v_edge(int level, int col) const { return v[level * geometry.columns() + col]; }

  VertexType vertex(int row, int col) const;
  bool operator==(const LatticeState&) const = default;
};

struct Violation {
  enum class Kind { shape, ice_rule, left_boundary, top_boundary, bottom_boundary, turn };
  Kind kind;
  int row;
  int col;
  std::string message;
};

std::vector<Violation> validate_state(const LatticeState& state);

/// Per-site Boltzmann weights for one lattice.
template <class Scalar>
struct WeightTable {
  Geometry geometry;
  std::vector<std::array<Scalar, 3>> vertex;  // rows x columns, (w1, w2, w3)
  std::vector<std::array<Scalar, 2>> turn;    // n, (kappa_plus, kappa_minus)

  const std::array<Scalar, 3>& at(int row, int col) const {
    return vertex[row * geometry.columns() + col];
  }
  const Scalar& weight(int row, int col, VertexType t) const {
    return at(row, col)[static_cast<int>(t) - 1];
  }
  const Scalar& turn_weight(int j, Turn t) const { return turn[j][static_cast<int>(t)]; }

  static WeightTable uniform(Geometry g, const Scalar& w1, const Scalar& w2, const Scalar& w3,
                             const Scalar& kp, const Scalar& km) {
    WeightTable t{g, {}, {}};
    t.vertex.assign(static_cast<std::size_t>(g.rows() * g.columns()), {w1, w2, w3});
    t.turn.assign(static_cast<std::size_t>(g.n), {kp, km});
    return t;
  }

  template <class Other>
  WeightTable<Other> convert() const {
    WeightTable<Other> out{geometry, {}, {}};
    for (const auto& w : vertex)
      out.vertex.push_back({static_cast<Other>(w[0]), static_cast<Other>(w[1]),
                            static_cast<Other>(w[2])});
    for (const auto& k : turn) out.turn.push_back({static_cast<Other>(k[0]), static_cast<Other>(k[1])});
    return out;
  }
};

enum class RegimeCheck { strict, lenient };

/// Homogeneous lattice (omega applied to the leftmost original column).
WeightTable<Real> weight_table(const SpectralParams& params, const Geometry& geometry,
                               RegimeCheck check = RegimeCheck::strict);

/// Fully inhomogeneous lattice. lambdas[j] = lambda_{j+1}; mus[k] = mu_{k+1}
/// with mu_1 the rightmost column. Lenient mode accepts non-positive weights
/// (formal continuations).
WeightTable<Real> weight_table(std::span<const Real> lambdas, std::span<const Real> mus,
                               const Real& eta, const Real& xi, const Geometry& geometry,
                               RegimeCheck check = RegimeCheck::strict);

Real state_weight(const LatticeState& state, const WeightTable<Real>& table);
Real state_weight(const LatticeState& state, const SpectralParams& params);

// Path picture ------------------------------------------------------------

struct EdgeRef {
  bool horizontal;
  int i;  // row (horizontal) or level (vertical)
  int j;  // position (horizontal) or column (vertical)
  bool operator==(const EdgeRef&) const = default;
};

struct LatticePath {
  std::vector<EdgeRef> edges;  // bottom entry edge first, turn edge last
};

struct PathPicture {
  Geometry geometry;
  std::vector<LatticePath> paths;
};

/// Traces the thick edges into paths. At a vertex with all four edges thick
/// the path from below leaves right and the path from the left leaves up.
PathPicture to_paths(const LatticeState& state);
LatticeState from_paths(const PathPicture& picture);

// Serialization -------------------------------------------------------------

nlohmann::json to_json(const LatticeState& state);
LatticeState state_from_json(const nlohmann::json& j);

}  // namespace sixv
