#include "sixv/enumerate.hpp"

#include <ostream>
#include <string>

#include "sixv/transfer.hpp"

namespace sixv {

namespace {

void check_capacity(int n, EnumMode mode) {
  if (n < 1) throw DomainError("N must be positive");
  const int limit = mode == EnumMode::brute ? kBruteMaxN : kTransferMaxN;
  if (n > limit)
    throw CapacityError(std::string(mode == EnumMode::brute ? "brute" : "transfer") +
                        " enumeration supports N <= " + std::to_string(limit));
}

struct Dfs {
  const Geometry& g;
  const std::function<void(const LatticeState&)>& visit;
  LatticeState s;

  void run(int site) {
    const int rows = g.rows(), cols = g.columns();
    if (site == rows * cols) {
      for (int j = 0; j < g.n; ++j) {
        const bool top = s.h_edge(2 * j, cols), bottom = s.h_edge(2 * j + 1, cols);
        if (top == bottom) return;
        s.turns[j] = top ? Turn::kappa_plus : Turn::kappa_minus;
      }
      visit(s);
      return;
    }
    const int l = site / cols, c = site % cols;
    for (int right = 0; right <= 1; ++right) {
      const int bottom = right + s.v_edge(l, c) - s.h_edge(l, c);
      if (bottom < 0 || bottom > 1) continue;
      if (l == rows - 1 && bool(bottom) != g.bottom_thick(c)) continue;
      s.h_edge(l, c + 1) = static_cast<std::uint8_t>(right);
      s.v_edge(l + 1, c) = static_cast<std::uint8_t>(bottom);
      run(site + 1);
    }
    s.h_edge(l, c + 1) = 0;
    s.v_edge(l + 1, c) = 0;
  }
};

Real profile_value(const Profile<Real>& p, ProfileKey key) {
  auto it = p.find(key);
  return it == p.end() ? Real(0) : it->second;
}

}  // namespace

void for_each_state(const Geometry& g, const std::function<void(const LatticeState&)>& visit) {
  Dfs dfs{g, visit, LatticeState(g)};
  for (int c = 0; c < g.columns(); ++c) dfs.s.v_edge(g.rows(), c) = g.bottom_thick(c);
  dfs.run(0);
}

EnumResult enumerate_Z(int n, const SpectralParams& params, EnumMode mode) {
  check_capacity(n, mode);
  return enumerate_Z(weight_table(params, Geometry{n, 0}), mode);
}

EnumResult enumerate_Z(const WeightTable<Real>& table, EnumMode mode) {
  const Geometry& g = table.geometry;
  check_capacity(g.n, mode);
  if (mode == EnumMode::brute) {
    EnumResult r{Real(0), Count(0)};
    for_each_state(g, [&](const LatticeState& s) {
      r.Z += state_weight(s, table);
      ++r.config_count;
    });
    return r;
  }
  const auto ones = WeightTable<Count>::uniform(g, 1, 1, 1, 1, 1);
  return {transfer_partition(table), transfer_partition(ones)};
}

CorrelationTable enumerate_correlations(int n, const SpectralParams& params) {
  check_capacity(n, EnumMode::transfer);
  return enumerate_correlations(weight_table(params, Geometry{n, 0}));
}

CorrelationTable enumerate_correlations(const WeightTable<Real>& table) {
  const Geometry& g = table.geometry;
  const int n = g.n;
  check_capacity(n, EnumMode::transfer);
  if (g.extension != 0) throw DomainError("correlations are defined on the original lattice");

  const auto backward = backward_sweep(table);
  const Profile<Real>& v1 = backward[1];
  Profile<Real> start;
  start.emplace(ProfileKey(0), Real(1));

  CorrelationTable t;
  t.n = n;
  t.Z = contract(forward_column(start, table, 0), v1);
  for (int r = 1; r <= n; ++r) {
    ColumnMark a{0, -1, false, 2 * r - 2, VertexType::w3};
    ColumnMark d{0, -1, false, 2 * r - 1, VertexType::w3};
    ColumnMark edge{0, 2 * r, true};
    t.A.push_back(contract(forward_column(start, table, 0, &a), v1));
    t.D.push_back(contract(forward_column(start, table, 0, &d), v1));
    t.G.push_back(contract(forward_column(start, table, 0, &edge), v1) / t.Z);
    t.H.push_back((t.A.back() + t.D.back()) / t.Z);
  }
  t.h_coeffs = t.H;
  return t;
}

Real evaluate_h(const CorrelationTable& table, const Real& z) {
  Real acc = 0;
  for (auto it = table.h_coeffs.rbegin(); it != table.h_coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Real left_domain_paths(const WeightTable<Real>& table, int k) {
  const Geometry& g = table.geometry;
  const int rows = g.rows(), width = g.extension + 1;
  if (k < 1 || k > rows) throw DomainError("crossing row index out of range");
  const int exit_row = rows - k;

  Real base = 1;
  for (int l = 0; l < rows; ++l)
    for (int c = 0; c < width; ++c) base *= table.weight(l, c, VertexType::w1);
  auto ratio = [&](int l, int c, VertexType t) {
    return table.weight(l, c, t) / table.weight(l, c, VertexType::w1);
  };

  // from_below[l][c] / from_left[l][c]: path weight arriving at vertex (l, c).
  std::vector<std::vector<Real>> below(rows, std::vector<Real>(width, Real(0)));
  std::vector<std::vector<Real>> left(rows, std::vector<Real>(width, Real(0)));
  below[rows - 1][0] = 1;
  Real total = 0;
  for (int l = rows - 1; l >= exit_row; --l)
    for (int c = 0; c < width; ++c) {
      const Real& fb = below[l][c];
      const Real& fl = left[l][c];
      if (fb == 0 && fl == 0) continue;
      // leave up
      if (l > exit_row) {
        below[l - 1][c] += fb * ratio(l, c, VertexType::w2) + fl * ratio(l, c, VertexType::w3);
      }
      // leave right
      const Real out = fb * ratio(l, c, VertexType::w3) + fl * ratio(l, c, VertexType::w2);
      if (c + 1 < width) left[l][c + 1] += out;
      else if (l == exit_row) total += out;
    }
  return base * total;
}

ExtendedLattice enumerate_extended(int n, int L, const SpectralParams& params) {
  if (n < 1 || L < 0) throw DomainError("N must be positive and L non-negative");
  if (n > kExtendedMaxN || L > kExtendedMaxL)
    throw CapacityError("extended enumeration supports N <= 5, L <= 4");
  const Geometry g{n, L};
  const auto table = weight_table(params, g);
  const auto backward = backward_sweep(table);

  ExtendedLattice e;
  e.n = n;
  e.L = L;
  e.Z_NL = 0;
  const Profile<Real>& cut = backward[L + 1];
  for (int k = 1; k <= g.rows(); ++k) {
    e.Z_left.push_back(left_domain_paths(table, k));
    e.Z_right.push_back(profile_value(cut, unit_profile(g.rows() - k)));
    e.Z_NL += e.Z_left.back() * e.Z_right.back();
  }
  e.Z_direct = transfer_partition(table);
  return e;
}

namespace {

std::vector<std::string> strings(const std::vector<Real>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(format_real(x));
  return out;
}

}  // namespace

nlohmann::json to_json(const CorrelationTable& t) {
  return {{"N", t.n},          {"Z", format_real(t.Z)}, {"H", strings(t.H)},
          {"G", strings(t.G)}, {"A", strings(t.A)},     {"D", strings(t.D)},
          {"h_coeffs", strings(t.h_coeffs)}};
}

nlohmann::json to_json(const ExtendedLattice& e) {
  return {{"N", e.n},
          {"L", e.L},
          {"Z_left", strings(e.Z_left)},
          {"Z_right", strings(e.Z_right)},
          {"Z_NL", format_real(e.Z_NL)},
          {"Z_direct", format_real(e.Z_direct)}};
}

void write_csv(std::ostream& os, const CorrelationTable& t) {
  os << "# N = " << t.n << "\n# Z = " << format_real(t.Z) << "\n";
  os << "r,H,G,A,D\n";
  for (int r = 0; r < t.n; ++r)
    os << r + 1 << ',' << format_real(t.H[r]) << ',' << format_real(t.G[r]) << ','
       << format_real(t.A[r]) << ',' << format_real(t.D[r]) << '\n';
}

}  // namespace sixv
