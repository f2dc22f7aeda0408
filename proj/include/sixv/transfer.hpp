#pragma once

// Column transfer sweeps over horizontal-edge profiles.
//
// A profile key holds one bit per row (bit l = horizontal edge of row l at the
// current cut) plus, inside a column, a carry bit at position `rows` for the
// vertical edge being passed between vertices. Forward sweeps run left to
// right and process each column bottom-up; backward sweeps run right to left
// and process each column top-down.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sixv/model.hpp"

namespace sixv {

using ProfileKey = std::uint32_t;

template <class Scalar>
using Profile = std::unordered_map<ProfileKey, Scalar>;

/// Restricts a single column sweep. level >= 0 pins the vertical edge at that
/// level; vertex_row >= 0 pins the vertex type at that row.
struct ColumnMark {
  int column = -1;
  int level = -1;
  bool thick = false;
  int vertex_row = -1;
  VertexType type = VertexType::invalid;
};

inline ProfileKey unit_profile(int row) { return ProfileKey(1) << row; }

namespace detail {

template <class Scalar>
void accumulate(Profile<Scalar>& out, ProfileKey key, const Scalar& w) {
  auto [it, inserted] = out.try_emplace(key, w);
  if (!inserted) it->second += w;
}

inline bool mark_applies(const ColumnMark* m, int col) { return m && m->column == col; }

}  // namespace detail

/// Forward map through one vertex of column `col` at row `row`. Keys carry
/// the bottom edge of `row` at bit `rows` and leave with its top edge there.
template <class Scalar>
Profile<Scalar> forward_vertex(const Profile<Scalar>& in, const WeightTable<Scalar>& w, int col,
                               int row, const ColumnMark* mark = nullptr) {
  const int rows = w.geometry.rows();
  const ProfileKey carry_bit = ProfileKey(1) << rows;
  const ProfileKey row_bit = ProfileKey(1) << row;
  const bool marked = detail::mark_applies(mark, col);
  Profile<Scalar> out;
  out.reserve(in.size() * 2);
  for (const auto& [key, value] : in) {
    const bool left = key & row_bit, bottom = key & carry_bit;
    const ProfileKey base = key & ~(row_bit | carry_bit);
    auto emit = [&](bool right, bool top) {
      if (marked && mark->level == row && top != mark->thick) return;
      const VertexType t = classify_vertex(left, bottom, right, top);
      if (marked && mark->vertex_row == row && t != mark->type) return;
      const ProfileKey next = base | (right ? row_bit : 0) | (top ? carry_bit : 0);
      detail::accumulate(out, next, Scalar(value * w.weight(row, col, t)));
    };
    const int flux = int(left) + int(bottom);
    if (flux == 0) emit(false, false);
    else if (flux == 2) emit(true, true);
    else {
      emit(true, false);
      emit(false, true);
    }
  }
  return out;
}

/// Enters column `col`: attaches the fixed bottom edge as the carry.
template <class Scalar>
Profile<Scalar> enter_column(const Profile<Scalar>& in, const Geometry& g, int col,
                             const ColumnMark* mark = nullptr) {
  if (detail::mark_applies(mark, col) && mark->level == g.rows() && mark->thick != g.bottom_thick(col))
    return {};
  const ProfileKey carry = g.bottom_thick(col) ? ProfileKey(1) << g.rows() : 0;
  Profile<Scalar> out;
  out.reserve(in.size());
  for (const auto& [key, value] : in) out.emplace(key | carry, value);
  return out;
}

/// Leaves column `col`: the top edge must be thin.
template <class Scalar>
Profile<Scalar> leave_column(const Profile<Scalar>& in, const Geometry& g) {
  const ProfileKey carry = ProfileKey(1) << g.rows();
  Profile<Scalar> out;
  out.reserve(in.size());
  for (const auto& [key, value] : in)
    if (!(key & carry)) out.emplace(key, value);
  return out;
}

template <class Scalar>
Profile<Scalar> forward_column(const Profile<Scalar>& in, const WeightTable<Scalar>& w, int col,
                               const ColumnMark* mark = nullptr) {
  const Geometry& g = w.geometry;
  Profile<Scalar> cur = enter_column(in, g, col, mark);
  for (int l = g.rows() - 1; l >= 0; --l) cur = forward_vertex(cur, w, col, l, mark);
  return leave_column(cur, g);
}

template <class Scalar>
Profile<Scalar> backward_column(const Profile<Scalar>& in, const WeightTable<Scalar>& w, int col) {
  const Geometry& g = w.geometry;
  const int rows = g.rows();
  const ProfileKey carry_bit = ProfileKey(1) << rows;
  Profile<Scalar> cur = in;
  for (int l = 0; l < rows; ++l) {
    const ProfileKey row_bit = ProfileKey(1) << l;
    Profile<Scalar> out;
    out.reserve(cur.size() * 2);
    for (const auto& [key, value] : cur) {
      const bool right = key & row_bit, top = key & carry_bit;
      const ProfileKey base = key & ~(row_bit | carry_bit);
      auto emit = [&](bool left, bool bottom) {
        const VertexType t = classify_vertex(left, bottom, right, top);
        const ProfileKey prev = base | (left ? row_bit : 0) | (bottom ? carry_bit : 0);
        detail::accumulate(out, prev, Scalar(value * w.weight(l, col, t)));
      };
      const int flux = int(right) + int(top);
      if (flux == 0) emit(false, false);
      else if (flux == 2) emit(true, true);
      else {
        emit(true, false);
        emit(false, true);
      }
    }
    cur = std::move(out);
  }
  const bool need = g.bottom_thick(col);
  Profile<Scalar> out;
  out.reserve(cur.size());
  for (const auto& [key, value] : cur)
    if (bool(key & carry_bit) == need) out.emplace(key & ~carry_bit, value);
  return out;
}

/// Turn weights at the right boundary for every admissible final profile.
template <class Scalar>
Profile<Scalar> turn_closure(const WeightTable<Scalar>& w) {
  const int n = w.geometry.n;
  Profile<Scalar> out;
  for (ProfileKey choice = 0; choice < (ProfileKey(1) << n); ++choice) {
    ProfileKey key = 0;
    Scalar weight(1);
    for (int j = 0; j < n; ++j) {
      const bool minus = choice & (ProfileKey(1) << j);
      key |= unit_profile(minus ? 2 * j + 1 : 2 * j);
      weight *= w.turn_weight(j, minus ? Turn::kappa_minus : Turn::kappa_plus);
    }
    out.emplace(key, weight);
  }
  return out;
}

/// Profiles at cuts 0..columns (index = number of columns already crossed).
template <class Scalar>
std::vector<Profile<Scalar>> forward_sweep(const WeightTable<Scalar>& w,
                                           std::span<const ColumnMark> marks = {}) {
  const int cols = w.geometry.columns();
  std::vector<Profile<Scalar>> cuts(static_cast<std::size_t>(cols + 1));
  cuts[0].emplace(ProfileKey(0), Scalar(1));
  for (int c = 0; c < cols; ++c) {
    const ColumnMark* mark = nullptr;
    for (const auto& m : marks)
      if (m.column == c) mark = &m;
    cuts[c + 1] = forward_column(cuts[c], w, c, mark);
  }
  return cuts;
}

/// Completion weights at cuts 0..columns, including the turn weights.
template <class Scalar>
std::vector<Profile<Scalar>> backward_sweep(const WeightTable<Scalar>& w) {
  const int cols = w.geometry.columns();
  std::vector<Profile<Scalar>> cuts(static_cast<std::size_t>(cols + 1));
  cuts[cols] = turn_closure(w);
  for (int c = cols - 1; c >= 0; --c) cuts[c] = backward_column(cuts[c + 1], w, c);
  return cuts;
}

template <class Scalar>
Scalar contract(const Profile<Scalar>& forward, const Profile<Scalar>& backward) {
  Scalar total(0);
  for (const auto& [key, value] : forward) {
    auto it = backward.find(key);
    if (it != backward.end()) total += value * it->second;
  }
  return total;
}

template <class Scalar>
Scalar transfer_partition(const WeightTable<Scalar>& w, std::span<const ColumnMark> marks = {}) {
  const auto cuts = forward_sweep(w, marks);
  return contract(cuts.back(), turn_closure(w));
}

}  // namespace sixv
