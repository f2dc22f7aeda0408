#include "sixv/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>

#include <boost/math/distributions/chi_squared.hpp>

#include "sixv/transfer.hpp"

namespace sixv {

// Philox ----------------------------------------------------------------------

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u, kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u, kPhiloxW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = std::uint64_t(a) * b;
  hi = std::uint32_t(p >> 32);
  lo = std::uint32_t(p);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), key_{std::uint32_t(seed), std::uint32_t(seed >> 32)} {
  counter_[2] = std::uint32_t(stream);
  counter_[3] = std::uint32_t(stream >> 32);
}

Philox4x32::Block Philox4x32::generate(Block ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

Philox4x32::result_type Philox4x32::operator()() {
  if (index_ == 4) {
    buffer_ = generate(counter_, key_);
    if (++counter_[0] == 0) ++counter_[1];
    index_ = 0;
  }
  ++draws_;
  return buffer_[index_++];
}

double Philox4x32::uniform() {
  const std::uint64_t hi = (*this)() >> 5, lo = (*this)() >> 6;
  return double((hi << 26) | lo) * 0x1.0p-53;
}

std::string to_string(InitMode m) { return m == InitMode::exact_dp ? "exact-dp" : "reference"; }

InitMode parse_init_mode(const std::string& s) {
  if (s == "exact-dp" || s == "exact_dp") return InitMode::exact_dp;
  if (s == "reference") return InitMode::reference;
  throw DomainError("unknown init mode: " + s);
}

// Exact sampler ----------------------------------------------------------------

struct ExactSampler::Impl {
  WeightTable<double> w;
  // inner[c][l]: completion weights after the backward pass has crossed rows
  // 0..l-1 of column c.
  std::vector<std::vector<Profile<double>>> inner;
  double Z = 0;
};

ExactSampler::ExactSampler(const WeightTable<double>& weights) : impl_(std::make_unique<Impl>()) {
  const Geometry& g = weights.geometry;
  if (g.n > kExactSamplerMaxN) throw CapacityError("exact sampler supports N <= 10");
  impl_->w = weights;
  const int cols = g.columns(), rows = g.rows();
  const ProfileKey carry_bit = ProfileKey(1) << rows;
  impl_->inner.resize(cols);
  Profile<double> next = turn_closure(weights);
  for (int c = cols - 1; c >= 0; --c) {
    auto& chain = impl_->inner[c];
    chain.resize(rows + 1);
    chain[0] = next;
    for (int l = 0; l < rows; ++l) {
      const ProfileKey row_bit = ProfileKey(1) << l;
      Profile<double> out;
      for (const auto& [key, value] : chain[l]) {
        const bool right = key & row_bit, top = key & carry_bit;
        const ProfileKey base = key & ~(row_bit | carry_bit);
        auto emit = [&](bool left, bool bottom) {
          const VertexType t = classify_vertex(left, bottom, right, top);
          detail::accumulate(out, base | (left ? row_bit : 0) | (bottom ? carry_bit : 0),
                             value * weights.weight(l, c, t));
        };
        const int flux = int(right) + int(top);
        if (flux == 0) emit(false, false);
        else if (flux == 2) emit(true, true);
        else {
          emit(true, false);
          emit(false, true);
        }
      }
      chain[l + 1] = std::move(out);
    }
    next.clear();
    for (const auto& [key, value] : chain[rows])
      if (bool(key & carry_bit) == g.bottom_thick(c)) next.emplace(key & ~carry_bit, value);
  }
  auto it = next.find(0);
  impl_->Z = it == next.end() ? 0.0 : it->second;
  if (!(impl_->Z > 0)) throw DomainError("exact sampler: partition function is not positive");
}

ExactSampler::~ExactSampler() = default;
ExactSampler::ExactSampler(ExactSampler&&) noexcept = default;
ExactSampler& ExactSampler::operator=(ExactSampler&&) noexcept = default;

double ExactSampler::partition() const { return impl_->Z; }

LatticeState ExactSampler::draw(Philox4x32& rng) const {
  const WeightTable<double>& w = impl_->w;
  const Geometry& g = w.geometry;
  const int cols = g.columns(), rows = g.rows();
  const ProfileKey carry_bit = ProfileKey(1) << rows;
  LatticeState s(g);
  ProfileKey key = 0;
  auto lookup = [](const Profile<double>& p, ProfileKey k) {
    auto it = p.find(k);
    return it == p.end() ? 0.0 : it->second;
  };
  for (int c = 0; c < cols; ++c) {
    const auto& chain = impl_->inner[c];
    for (int l = 0; l < rows; ++l) s.h_edge(l, c) = (key >> l) & 1;
    if (g.bottom_thick(c)) key |= carry_bit;
    s.v_edge(rows, c) = g.bottom_thick(c);
    for (int l = rows - 1; l >= 0; --l) {
      const ProfileKey row_bit = ProfileKey(1) << l;
      const bool left = key & row_bit, bottom = key & carry_bit;
      const ProfileKey base = key & ~(row_bit | carry_bit);
      std::array<std::pair<ProfileKey, double>, 2> opts{};
      int n_opts = 0;
      auto add = [&](bool right, bool top) {
        const ProfileKey k = base | (right ? row_bit : 0) | (top ? carry_bit : 0);
        const double wt = w.weight(l, c, classify_vertex(left, bottom, right, top)) * lookup(chain[l], k);
        opts[n_opts++] = {k, wt};
      };
      const int flux = int(left) + int(bottom);
      if (flux == 0) add(false, false);
      else if (flux == 2) add(true, true);
      else {
        add(true, false);
        add(false, true);
      }
      int pick = 0;
      if (n_opts == 2) {
        const double total = opts[0].second + opts[1].second;
        pick = rng.uniform() * total < opts[0].second ? 0 : 1;
      }
      key = opts[pick].first;
      s.v_edge(l, c) = (key & carry_bit) ? 1 : 0;
    }
    key &= ~carry_bit;
  }
  for (int l = 0; l < rows; ++l) s.h_edge(l, cols) = (key >> l) & 1;
  for (int j = 0; j < g.n; ++j) s.turns[j] = s.h_edge(2 * j, cols) ? Turn::kappa_plus : Turn::kappa_minus;
  return s;
}

// Initialization -------------------------------------------------------------------

WeightTable<double> special_point_weights(int n, double lambda) {
  const auto table = weight_table(SpectralParams::free_fermion(Real(lambda)), Geometry{n, 0});
  return table.convert<double>();
}

namespace {

LatticeState reference_state(int n) {
  const Geometry g{n, 0};
  LatticeState s(g);
  // path of column c climbs to row 2c and runs right to the boundary
  for (int c = 0; c < n; ++c) {
    for (int level = 2 * c + 1; level <= 2 * n; ++level) s.v_edge(level, c) = 1;
    for (int pos = c + 1; pos <= n; ++pos) s.h_edge(2 * c, pos) = 1;
    s.turns[c] = Turn::kappa_plus;
  }
  return s;
}

}  // namespace

MCState mc_init(int n, std::uint64_t seed, InitMode mode, const WeightTable<double>& weights) {
  if (n < 1) throw DomainError("mc_init: need N >= 1");
  if (weights.geometry != Geometry{n, 0}) throw DomainError("mc_init: weight table shape mismatch");
  MCState st{LatticeState(Geometry{n, 0}), Philox4x32(seed), 0, {}, {}};
  if (mode == InitMode::exact_dp) {
    if (n > kExactSamplerMaxN) throw CapacityError("exact-dp initialization supports N <= 10");
    ExactSampler sampler(weights);
    st.lattice = sampler.draw(st.rng);
  } else {
    st.lattice = reference_state(n);
  }
  if (!validate_state(st.lattice).empty()) throw std::logic_error("mc_init produced an invalid state");
  return st;
}

MCState mc_init(int n, std::uint64_t seed, InitMode mode) {
  return mc_init(n, seed, mode, special_point_weights(n));
}

// Moves -------------------------------------------------------------------------

namespace {

double vertex_weight(const WeightTable<double>& w, int row, int col, bool l, bool b, bool r, bool t) {
  const VertexType type = classify_vertex(l, b, r, t);
  return type == VertexType::invalid ? 0.0 : w.weight(row, col, type);
}

}  // namespace

double plaquette_ratio(const LatticeState& s, const WeightTable<double>& w, int l, int c) {
  const bool top = s.h_edge(l, c + 1), bot = s.h_edge(l + 1, c + 1);
  const bool lft = s.v_edge(l + 1, c), rgt = s.v_edge(l + 1, c + 1);
  const bool ntop = !top, nbot = !bot, nlft = !lft, nrgt = !rgt;
  const double new_w = vertex_weight(w, l, c, s.h_edge(l, c), nlft, ntop, s.v_edge(l, c)) *
                       vertex_weight(w, l, c + 1, ntop, nrgt, s.h_edge(l, c + 2), s.v_edge(l, c + 1)) *
                       vertex_weight(w, l + 1, c, s.h_edge(l + 1, c), s.v_edge(l + 2, c), nbot, nlft) *
                       vertex_weight(w, l + 1, c + 1, nbot, s.v_edge(l + 2, c + 1), s.h_edge(l + 1, c + 2), nrgt);
  if (new_w == 0) return 0;
  const double old_w = vertex_weight(w, l, c, s.h_edge(l, c), lft, top, s.v_edge(l, c)) *
                       vertex_weight(w, l, c + 1, top, rgt, s.h_edge(l, c + 2), s.v_edge(l, c + 1)) *
                       vertex_weight(w, l + 1, c, s.h_edge(l + 1, c), s.v_edge(l + 2, c), bot, lft) *
                       vertex_weight(w, l + 1, c + 1, bot, s.v_edge(l + 2, c + 1), s.h_edge(l + 1, c + 2), rgt);
  return new_w / old_w;
}

double turn_ratio(const LatticeState& s, const WeightTable<double>& w, int j) {
  const int m = s.geometry.columns() - 1, cols = m + 1;
  const int l = 2 * j;
  const bool up = s.h_edge(l, cols), down = s.h_edge(l + 1, cols), mid = s.v_edge(l + 1, m);
  const bool nup = !up, ndown = !down, nmid = !mid;
  const Turn old_turn = up ? Turn::kappa_plus : Turn::kappa_minus;
  const Turn new_turn = nup ? Turn::kappa_plus : Turn::kappa_minus;
  const double new_w = vertex_weight(w, l, m, s.h_edge(l, m), nmid, nup, s.v_edge(l, m)) *
                       vertex_weight(w, l + 1, m, s.h_edge(l + 1, m), s.v_edge(l + 2, m), ndown, nmid) *
                       w.turn_weight(j, new_turn);
  if (new_w == 0) return 0;
  const double old_w = vertex_weight(w, l, m, s.h_edge(l, m), mid, up, s.v_edge(l, m)) *
                       vertex_weight(w, l + 1, m, s.h_edge(l + 1, m), s.v_edge(l + 2, m), down, mid) *
                       w.turn_weight(j, old_turn);
  return new_w / old_w;
}

namespace {

bool metropolis(Philox4x32& rng, double ratio) { return ratio >= 1 || rng.uniform() < ratio; }

}  // namespace

bool try_plaquette(MCState& st, const WeightTable<double>& w, int l, int c) {
  ++st.plaquette.proposed;
  const double ratio = plaquette_ratio(st.lattice, w, l, c);
  if (ratio == 0) return false;
  ++st.plaquette.flippable;
  if (!metropolis(st.rng, ratio)) return false;
  LatticeState& s = st.lattice;
  s.h_edge(l, c + 1) ^= 1;
  s.h_edge(l + 1, c + 1) ^= 1;
  s.v_edge(l + 1, c) ^= 1;
  s.v_edge(l + 1, c + 1) ^= 1;
  ++st.plaquette.accepted;
  return true;
}

bool try_turn(MCState& st, const WeightTable<double>& w, int j) {
  ++st.turn.proposed;
  const double ratio = turn_ratio(st.lattice, w, j);
  if (ratio == 0) return false;
  ++st.turn.flippable;
  if (!metropolis(st.rng, ratio)) return false;
  LatticeState& s = st.lattice;
  const int cols = s.geometry.columns();
  s.h_edge(2 * j, cols) ^= 1;
  s.h_edge(2 * j + 1, cols) ^= 1;
  s.v_edge(2 * j + 1, cols - 1) ^= 1;
  s.turns[j] = s.h_edge(2 * j, cols) ? Turn::kappa_plus : Turn::kappa_minus;
  ++st.turn.accepted;
  return true;
}

void mc_sweep(MCState& st, const WeightTable<double>& w) {
  const Geometry& g = st.lattice.geometry;
  for (int l = 0; l + 1 < g.rows(); ++l)
    for (int c = 0; c + 1 < g.columns(); ++c) try_plaquette(st, w, l, c);
  for (int j = 0; j < g.n; ++j) try_turn(st, w, j);
  ++st.sweeps;
}

// Measurement -----------------------------------------------------------------------

DensityField::DensityField(Geometry g, int batch)
    : n(g.n), levels(g.rows() + 1), columns(g.columns()), batch_size(std::max(1, batch)) {
  const std::size_t cells = std::size_t(levels) * columns;
  sum.assign(cells, 0.0);
  batch_sum.assign(cells, 0.0);
  batch_mean_sum.assign(cells, 0.0);
  batch_mean_sumsq.assign(cells, 0.0);
}

void DensityField::add(const LatticeState& s) {
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    sum[i] += s.v[i];
    batch_sum[i] += s.v[i];
  }
  ++samples;
  if (samples % std::uint64_t(batch_size) == 0) {
    for (std::size_t i = 0; i < batch_sum.size(); ++i) {
      const double m = batch_sum[i] / batch_size;
      batch_mean_sum[i] += m;
      batch_mean_sumsq[i] += m * m;
      batch_sum[i] = 0;
    }
    ++batches;
  }
}

void DensityField::merge(const DensityField& o) {
  if (o.levels != levels || o.columns != columns || o.batch_size != batch_size)
    throw DomainError("DensityField::merge: shape mismatch");
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] += o.sum[i];
    batch_mean_sum[i] += o.batch_mean_sum[i];
    batch_mean_sumsq[i] += o.batch_mean_sumsq[i];
  }
  samples += o.samples;
  batches += o.batches;
}

double DensityField::density(int level, int col) const {
  return samples ? sum[std::size_t(level) * columns + col] / double(samples) : 0.0;
}

double DensityField::stderr_of(int level, int col) const {
  if (batches < 2) return std::numeric_limits<double>::infinity();
  const std::size_t i = std::size_t(level) * columns + col;
  const double mean = batch_mean_sum[i] / batches;
  const double var = std::max(0.0, (batch_mean_sumsq[i] / batches - mean * mean) * batches / (batches - 1));
  return std::sqrt(var / batches);
}

DensityField mc_measure(MCState& st, const WeightTable<double>& w, const MeasureOptions& opt) {
  if (opt.thinning == 0) throw DomainError("mc_measure: thinning must be positive");
  for (std::uint64_t i = 0; i < opt.burn_in; ++i) mc_sweep(st, w);
  DensityField field(st.lattice.geometry, opt.batch_size);
  for (std::uint64_t i = 1; i <= opt.sweeps; ++i) {
    mc_sweep(st, w);
    if (i % opt.thinning == 0) field.add(st.lattice);
  }
  return field;
}

// Contour -----------------------------------------------------------------------------

std::vector<CurveSample> extract_contour(std::span<const double> density, int n, double eps) {
  if (!(eps > 0 && eps < 0.5)) throw DomainError("extract_contour: need 0 < epsilon < 0.5");
  const int levels = 2 * n + 1;
  if (density.size() != std::size_t(levels) * n) throw DomainError("extract_contour: field shape mismatch");
  std::vector<CurveSample> out;
  for (int i = 0; i < levels; ++i)
    for (int c = 0; c < n; ++c) {
      const double d = density[std::size_t(i) * n + c];
      if (d > eps && d < 1 - eps) {
        out.push_back({(c + 0.5) / n, 2.0 - double(i) / n, double(i), CurveSource::mc});
        break;
      }
    }
  if (out.empty()) throw DomainError("extract_contour: empty contour");
  return out;
}

std::vector<CurveSample> extract_contour(const DensityField& field, double eps) {
  std::vector<double> d(std::size_t(field.levels) * field.columns);
  for (int i = 0; i < field.levels; ++i)
    for (int c = 0; c < field.columns; ++c) d[std::size_t(i) * field.columns + c] = field.density(i, c);
  return extract_contour(d, field.n, eps);
}

namespace {

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

struct Circle {
  double cx, cy, r;
};

/// Algebraic least-squares circle x^2 + y^2 + D x + E y + F = 0.
std::optional<Circle> fit_circle(std::span<const CurveSample> pts) {
  if (pts.size() < 3) return std::nullopt;
  double m[3][3] = {}, rhs[3] = {};
  for (const auto& p : pts) {
    const double row[3] = {p.x, p.y, 1}, target = -(p.x * p.x + p.y * p.y);
    for (int i = 0; i < 3; ++i) {
      rhs[i] += row[i] * target;
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
    }
  }
  const double d = det3(m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]);
  if (std::abs(d) < 1e-300) return std::nullopt;
  const double D = det3(rhs[0], m[0][1], m[0][2], rhs[1], m[1][1], m[1][2], rhs[2], m[2][1], m[2][2]) / d;
  const double E = det3(m[0][0], rhs[0], m[0][2], m[1][0], rhs[1], m[1][2], m[2][0], rhs[2], m[2][2]) / d;
  const double F = det3(m[0][0], m[0][1], rhs[0], m[1][0], m[1][1], rhs[1], m[2][0], m[2][1], rhs[2]) / d;
  const double r2 = (D * D + E * E) / 4 - F;
  if (!(r2 > 0)) return std::nullopt;
  return Circle{-D / 2, -E / 2, std::sqrt(r2)};
}

}  // namespace

SemicircleComparison compare_semicircle(std::span<const CurveSample> samples, double window) {
  if (samples.empty()) throw DomainError("compare_semicircle: empty contour");
  SemicircleComparison r{};
  CurveSample left = samples[0], top = samples[0], bottom = samples[0];
  for (const auto& p : samples) {
    if (p.x <= 1) r.distance = std::max(r.distance, std::abs(std::hypot(p.x - 1, p.y - 1) - 1));
    if (p.x < left.x) left = p;
    if (p.y > top.y) top = p;
    if (p.y < bottom.y) bottom = p;
  }
  std::vector<CurveSample> lp, tp, bp;
  for (const auto& p : samples) {
    if (p.x <= window) lp.push_back(p);
    if (p.y >= 2 - window) tp.push_back(p);
    if (p.y <= window) bp.push_back(p);
  }
  auto contact = [](std::span<const CurveSample> pts, const CurveSample& extreme, int dx, int dy) {
    const auto c = fit_circle(pts);
    if (!c) return CurveSample{extreme.x, extreme.y, 0, CurveSource::mc};
    return CurveSample{std::clamp(c->cx + dx * c->r, 0.0, 1.0), std::clamp(c->cy + dy * c->r, 0.0, 2.0), 0,
                       CurveSource::mc};
  };
  r.left = contact(lp, left, -1, 0);
  r.top = contact(tp, top, 0, 1);
  r.bottom = contact(bp, bottom, 0, -1);
  r.left_gap = std::hypot(r.left.x, r.left.y - 1);
  r.top_gap = std::hypot(r.top.x - 1, r.top.y - 2);
  r.bottom_gap = std::hypot(r.bottom.x - 1, r.bottom.y);
  return r;
}

// Statistical tests ------------------------------------------------------------------

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  const double lam = (en + 0.12 + 0.11 / en) * d;
  double p = 0;
  if (lam < 1e-3) p = 1;
  else {
    for (int k = 1; k <= 100; ++k) {
      const double term = 2 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
      p += term;
      if (std::abs(term) < 1e-12) break;
    }
    p = std::clamp(p, 0.0, 1.0);
  }
  return {d, p};
}

ChiSquareResult chi_square_test(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw DomainError("chi_square_test: size mismatch");
  double stat = 0, pooled_o = 0, pooled_e = 0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < 5) {
      pooled_o += observed[i];
      pooled_e += expected[i];
      continue;
    }
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    ++cells;
  }
  if (pooled_e > 0) {
    stat += (pooled_o - pooled_e) * (pooled_o - pooled_e) / pooled_e;
    ++cells;
  }
  const int dof = cells - 1;
  if (dof < 1) throw DomainError("chi_square_test: not enough cells");
  const boost::math::chi_squared dist(dof);
  return {stat, dof, boost::math::cdf(boost::math::complement(dist, stat))};
}

// Output ---------------------------------------------------------------------------------

nlohmann::json run_metadata(const MCState& st, const MeasureOptions& opt) {
  auto stats = [](const MoveStats& m) {
    return nlohmann::json{{"proposed", m.proposed}, {"flippable", m.flippable}, {"accepted", m.accepted},
                          {"acceptance", m.acceptance()}};
  };
  return {{"rng", "philox4x32-10"},
          {"seed", st.rng.seed()},
          {"N", st.lattice.geometry.n},
          {"sweeps", opt.sweeps},
          {"burn_in", opt.burn_in},
          {"thinning", opt.thinning},
          {"batch_size", opt.batch_size},
          {"total_sweeps", st.sweeps},
          {"moves", {{"plaquette", stats(st.plaquette)}, {"turn", stats(st.turn)}}}};
}

void write_density_csv(std::ostream& os, const DensityField& f) {
  os << "i,j,density,stderr\n";
  for (int i = 0; i < f.levels; ++i)
    for (int c = 0; c < f.columns; ++c) {
      const double se = f.stderr_of(i, c);
      os << i << ',' << c << ',' << std::setprecision(10) << f.density(i, c) << ',';
      if (std::isfinite(se)) os << std::setprecision(6) << se;
      else os << "nan";
      os << '\n';
    }
}

void write_density_svg(std::ostream& os, const DensityField& f, std::span<const CurveSample> contour,
                       const std::string& metadata) {
  const double scale = 300.0, pad = 20.0;
  const double cell = scale / f.n;
  os << std::fixed << std::setprecision(3);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << scale + 2 * pad
     << "\" height=\"" << 2 * scale + 2 * pad << "\">\n";
  if (!metadata.empty()) os << "<metadata>\n" << metadata << "</metadata>\n";
  for (int i = 0; i < f.levels; ++i)
    for (int c = 0; c < f.columns; ++c) {
      const int g = int(std::lround(255 * (1 - f.density(i, c))));
      const double y = pad + (i - 0.5) * cell;
      os << "<rect x=\"" << pad + c * cell << "\" y=\"" << std::max(pad, y) << "\" width=\"" << cell
         << "\" height=\"" << std::min(cell, pad + 2 * scale - std::max(pad, y)) << "\" fill=\"rgb(" << g << ','
         << g << ',' << g << ")\"/>\n";
    }
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << scale << "\" height=\"" << 2 * scale
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto px = [&](double x) { return pad + x * scale; };
  auto py = [&](double y) { return pad + (2 - y) * scale; };
  os << "<path d=\"M " << px(1) << ' ' << py(2) << " A " << scale << ' ' << scale << " 0 0 0 " << px(1) << ' '
     << py(0) << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  if (!contour.empty()) {
    os << "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : contour) os << px(p.x) << ',' << py(p.y) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace sixv
