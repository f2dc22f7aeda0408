#include "sixv/model.hpp"

#include <sstream>

namespace sixv {

SpectralParams SpectralParams::free_fermion(const Real& lambda, const Real& omega) {
  return {lambda, Real(0), pi() / 4, pi() / 2, omega};
}

Real weight_a(const Real& x, const Real& eta) { return sin(x + 2 * eta); }
Real weight_b(const Real& x) { return sin(x); }
Real weight_c(const Real& eta) { return sin(2 * eta); }
Real kappa_plus(const Real& lambda, const Real& xi) { return sin(xi + lambda) / sin(xi); }
Real kappa_minus(const Real& lambda, const Real& xi) { return sin(xi - lambda) / sin(xi); }

namespace {

void require_positive(const Real& value, const char* name, const std::string& where) {
  if (!(value > 0)) {
    std::ostringstream os;
    os << "out of regime: " << name << " = " << format_real(value, 12) << " <= 0" << where;
    throw DomainError(os.str());
  }
}

struct SiteWeights {
  Real a_plus, a_minus, b_plus, b_minus, c, kp, km;
};

SiteWeights site_weights(const Real& lambda, const Real& mu, const Real& eta, const Real& xi) {
  return {weight_a(lambda + mu, eta), weight_a(lambda - mu, eta), weight_b(lambda + mu),
          weight_b(lambda - mu),      weight_c(eta),              kappa_plus(lambda, xi),
          kappa_minus(lambda, xi)};
}

void check_site(const SiteWeights& s, const std::string& where) {
  require_positive(s.a_plus, "a_+", where);
  require_positive(s.a_minus, "a_-", where);
  require_positive(s.b_plus, "b_+", where);
  require_positive(s.b_minus, "b_-", where);
  require_positive(s.c, "c", where);
  require_positive(s.kp, "kappa_+", where);
  require_positive(s.km, "kappa_-", where);
}

// Fig. 1 arrow pictures. Directions: +1 = right/up, -1 = left/down.
struct ArrowVertex {
  int left, right, top, bottom;
  VertexType type;
};

constexpr std::array<ArrowVertex, 6> kFigureOne{{
    {+1, +1, +1, +1, VertexType::w1},
    {-1, -1, -1, -1, VertexType::w1},
    {+1, +1, -1, -1, VertexType::w2},
    {-1, -1, +1, +1, VertexType::w2},
    {+1, -1, +1, -1, VertexType::w3},
    {-1, +1, -1, +1, VertexType::w3},
}};

constexpr std::array<VertexType, 16> make_vertex_table() {
  std::array<VertexType, 16> t{};
  for (const auto& a : kFigureOne) {
    const int l = a.left < 0, b = a.bottom < 0, r = a.right < 0, tp = a.top < 0;
    t[l | (b << 1) | (r << 2) | (tp << 3)] = a.type;
  }
  return t;
}

constexpr auto kVertexTable = make_vertex_table();

}  // namespace

WeightSet build_weights(const SpectralParams& p, RowParity parity, int column, int n) {
  if (!(p.eta > 0 && p.eta < pi() / 2)) throw DomainError("out of regime: need 0 < eta < pi/2");
  if (column < 1 || column > n) throw DomainError("column index out of range");
  const Real mu = column == n ? Real(p.mu + p.omega) : p.mu;
  const SiteWeights s = site_weights(p.lambda, mu, p.eta, p.xi);
  check_site(s, " (column " + std::to_string(column) + ")");

  WeightSet ws{s.a_plus, s.a_minus, s.b_plus, s.b_minus, s.c, s.kp, s.km, Real(0), {}};
  ws.delta = (s.a_minus * s.a_minus + s.b_minus * s.b_minus - s.c * s.c) / (2 * s.a_minus * s.b_minus);
  if (parity == RowParity::even)
    ws.w = {s.a_minus, s.b_minus, s.c};
  else
    ws.w = {s.b_plus, s.a_plus, s.c};
  return ws;
}

VertexType classify_vertex(bool left, bool bottom, bool right, bool top) {
  return kVertexTable[int(left) | (int(bottom) << 1) | (int(right) << 2) | (int(top) << 3)];
}

bool Geometry::bottom_thick(int column) const {
  if (extension == 0) return true;
  return column == 0 || column > extension;
}

LatticeState::LatticeState(Geometry g)
    : geometry(g),
      h(static_cast<std::size_t>(g.rows() * (g.columns() + 1)), 0),
      v(static_cast<std::size_t>((g.rows() + 1) * g.columns()), 0),
      turns(static_cast<std::size_t>(g.n), Turn::kappa_plus) {}

VertexType LatticeState::vertex(int row, int col) const {
  return classify_vertex(h_edge(row, col), v_edge(row + 1, col), h_edge(row, col + 1),
                         v_edge(row, col));
}

std::vector<Violation> validate_state(const LatticeState& s) {
  std::vector<Violation> out;
  const Geometry& g = s.geometry;
  const int rows = g.rows(), cols = g.columns();
  if (g.n < 1 || g.extension < 0 || s.h.size() != std::size_t(rows * (cols + 1)) ||
      s.v.size() != std::size_t((rows + 1) * cols) || s.turns.size() != std::size_t(g.n)) {
    out.push_back({Violation::Kind::shape, -1, -1, "array dimensions inconsistent with N"});
    return out;
  }
  for (int l = 0; l < rows; ++l)
    if (s.h_edge(l, 0)) out.push_back({Violation::Kind::left_boundary, l, 0, "left edge must point right"});
  for (int c = 0; c < cols; ++c) {
    if (s.v_edge(0, c)) out.push_back({Violation::Kind::top_boundary, 0, c, "top edge must point up"});
    if (bool(s.v_edge(rows, c)) != g.bottom_thick(c))
      out.push_back({Violation::Kind::bottom_boundary, rows, c,
                     g.bottom_thick(c) ? "bottom edge must point down" : "bottom edge must point up"});
  }
  for (int l = 0; l < rows; ++l)
    for (int c = 0; c < cols; ++c)
      if (s.vertex(l, c) == VertexType::invalid)
        out.push_back({Violation::Kind::ice_rule, l, c, "ice rule violated"});
  for (int j = 0; j < g.n; ++j) {
    const bool top = s.h_edge(2 * j, cols), bottom = s.h_edge(2 * j + 1, cols);
    const bool ok = s.turns[j] == Turn::kappa_plus ? (top && !bottom) : (!top && bottom);
    if (!ok) out.push_back({Violation::Kind::turn, 2 * j, cols, "turn flow inconsistent with its state"});
  }
  return out;
}

WeightTable<Real> weight_table(const SpectralParams& p, const Geometry& g, RegimeCheck check) {
  const int cols = g.columns();
  std::vector<Real> lambdas(static_cast<std::size_t>(g.n), p.lambda);
  std::vector<Real> mus(static_cast<std::size_t>(cols), p.mu);
  // The omega shift sits on the leftmost column of the original lattice.
  if (p.omega != 0) mus[static_cast<std::size_t>(g.n - 1)] += p.omega;
  if (!(p.eta > 0 && p.eta < pi() / 2)) throw DomainError("out of regime: need 0 < eta < pi/2");
  return weight_table(lambdas, mus, p.eta, p.xi, g, check);
}

WeightTable<Real> weight_table(std::span<const Real> lambdas, std::span<const Real> mus,
                               const Real& eta, const Real& xi, const Geometry& g, RegimeCheck check) {
  const int cols = g.columns();
  if (lambdas.size() != std::size_t(g.n) || mus.size() != std::size_t(cols))
    throw DomainError("spectral parameter count does not match the lattice");
  WeightTable<Real> t{g, {}, {}};
  t.vertex.resize(static_cast<std::size_t>(g.rows() * cols));
  t.turn.resize(static_cast<std::size_t>(g.n));
  for (int j = 0; j < g.n; ++j) {
    for (int c = 0; c < cols; ++c) {
      const int k = cols - c;
      const SiteWeights s = site_weights(lambdas[j], mus[k - 1], eta, xi);
      if (check == RegimeCheck::strict)
        check_site(s, " (double row " + std::to_string(j + 1) + ", column " + std::to_string(k) + ")");
      t.vertex[(2 * j) * cols + c] = {s.b_plus, s.a_plus, s.c};
      t.vertex[(2 * j + 1) * cols + c] = {s.a_minus, s.b_minus, s.c};
    }
    t.turn[j] = {kappa_plus(lambdas[j], xi), kappa_minus(lambdas[j], xi)};
    if (check == RegimeCheck::strict) {
      require_positive(t.turn[j][0], "kappa_+", "");
      require_positive(t.turn[j][1], "kappa_-", "");
    }
  }
  return t;
}

Real state_weight(const LatticeState& s, const WeightTable<Real>& table) {
  if (!validate_state(s).empty()) throw DomainError("state_weight: invalid lattice state");
  if (!(s.geometry == table.geometry)) throw DomainError("state_weight: geometry mismatch");
  Real w = 1;
  const Geometry& g = s.geometry;
  for (int l = 0; l < g.rows(); ++l)
    for (int c = 0; c < g.columns(); ++c) w *= table.weight(l, c, s.vertex(l, c));
  for (int j = 0; j < g.n; ++j) w *= table.turn_weight(j, s.turns[j]);
  return w;
}

Real state_weight(const LatticeState& s, const SpectralParams& params) {
  return state_weight(s, weight_table(params, s.geometry));
}

PathPicture to_paths(const LatticeState& s) {
  if (!validate_state(s).empty()) throw DomainError("to_paths: invalid lattice state");
  const Geometry& g = s.geometry;
  const int rows = g.rows(), cols = g.columns();
  PathPicture pic{g, {}};
  for (int c = 0; c < cols; ++c) {
    if (!s.v_edge(rows, c)) continue;
    LatticePath path;
    path.edges.push_back({false, rows, c});
    int l = rows - 1, col = c;
    bool from_bottom = true;
    while (true) {
      const bool right = s.h_edge(l, col + 1), top = s.v_edge(l, col);
      const bool all = right && top;
      const bool go_right = all ? from_bottom : right;
      if (go_right) {
        path.edges.push_back({true, l, col + 1});
        if (col + 1 == cols) break;
        ++col;
        from_bottom = false;
      } else {
        path.edges.push_back({false, l, col});
        --l;
        from_bottom = true;
      }
    }
    pic.paths.push_back(std::move(path));
  }
  return pic;
}

LatticeState from_paths(const PathPicture& pic) {
  LatticeState s(pic.geometry);
  for (const auto& path : pic.paths)
    for (const auto& e : path.edges) {
      auto& bit = e.horizontal ? s.h_edge(e.i, e.j) : s.v_edge(e.i, e.j);
      if (bit) throw DomainError("from_paths: paths share an edge");
      bit = 1;
    }
  const int cols = pic.geometry.columns();
  for (int j = 0; j < pic.geometry.n; ++j)
    s.turns[j] = s.h_edge(2 * j + 1, cols) ? Turn::kappa_minus : Turn::kappa_plus;
  return s;
}

nlohmann::json to_json(const LatticeState& s) {
  nlohmann::json j;
  j["N"] = s.geometry.n;
  if (s.geometry.extension) j["L"] = s.geometry.extension;
  j["h_edges"] = s.h;
  j["v_edges"] = s.v;
  std::vector<int> turns;
  for (Turn t : s.turns) turns.push_back(static_cast<int>(t));
  j["turns"] = turns;
  return j;
}

LatticeState state_from_json(const nlohmann::json& j) {
  Geometry g{j.at("N").get<int>(), j.value("L", 0)};
  LatticeState s(g);
  auto h = j.at("h_edges").get<std::vector<int>>();
  auto v = j.at("v_edges").get<std::vector<int>>();
  auto t = j.at("turns").get<std::vector<int>>();
  if (h.size() != s.h.size() || v.size() != s.v.size() || t.size() != s.turns.size())
    throw DomainError("state JSON: array sizes do not match N");
  for (std::size_t i = 0; i < h.size(); ++i) s.h[i] = static_cast<std::uint8_t>(h[i] != 0);
  for (std::size_t i = 0; i < v.size(); ++i) s.v[i] = static_cast<std::uint8_t>(v[i] != 0);
  for (std::size_t i = 0; i < t.size(); ++i) s.turns[i] = t[i] ? Turn::kappa_minus : Turn::kappa_plus;
  return s;
}

}  // namespace sixv
