#pragma once

// Markov chain Monte Carlo and exact sampling of reflecting-end states.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sixv/asymptotics.hpp"
#include "sixv/model.hpp"

namespace sixv {

/// Philox4x32-10 counter-based generator. Each 128-bit counter value yields
/// four 32-bit outputs; the 64-bit seed is the key.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static Block generate(Block counter, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }
  result_type operator()();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 private:
  std::uint64_t seed_;
  Key key_;
  Block counter_{};
  Block buffer_{};
  int index_ = 4;
  std::uint64_t draws_ = 0;
};

enum class InitMode { exact_dp, reference };
std::string to_string(InitMode m);
InitMode parse_init_mode(const std::string& s);

struct MoveStats {
  std::uint64_t proposed = 0;
  std::uint64_t flippable = 0;
  std::uint64_t accepted = 0;
  double acceptance() const { return proposed ? double(accepted) / double(proposed) : 0.0; }
};

struct MCState {
  LatticeState lattice;
  Philox4x32 rng;
  std::uint64_t sweeps = 0;
  MoveStats plaquette, turn;
};

/// Draws states from the exact Boltzmann distribution by backward sampling
/// through the column transfer maps.
class ExactSampler {
 public:
  explicit ExactSampler(const WeightTable<double>& weights);
  ~ExactSampler();
  ExactSampler(ExactSampler&&) noexcept;
  ExactSampler& operator=(ExactSampler&&) noexcept;

  LatticeState draw(Philox4x32& rng) const;
  double partition() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline constexpr int kExactSamplerMaxN = 10;

/// Weights at eta = pi/4, mu = 0, xi = pi/2 for the given lambda, in double.
WeightTable<double> special_point_weights(int n, double lambda = kQuarterPi);

/// exact_dp needs n <= kExactSamplerMaxN; reference builds the state in which
/// every path climbs its own column and turns right at the top available row.
MCState mc_init(int n, std::uint64_t seed, InitMode mode, const WeightTable<double>& weights);
MCState mc_init(int n, std::uint64_t seed, InitMode mode);

/// One Metropolis pass over every interior face and every turn face.
void mc_sweep(MCState& state, const WeightTable<double>& weights);

/// Single-move entry points; return true when the move was accepted.
/// face (row, col) has its top-left vertex at (row, col).
bool try_plaquette(MCState& state, const WeightTable<double>& weights, int row, int col);
bool try_turn(MCState& state, const WeightTable<double>& weights, int pair);

/// Metropolis ratio of the plaquette move, or 0 when the face is not flippable.
double plaquette_ratio(const LatticeState& s, const WeightTable<double>& w, int row, int col);
double turn_ratio(const LatticeState& s, const WeightTable<double>& w, int pair);

/// Thick (down-arrow) frequency of every vertical edge, levels 0..2N by
/// columns 0..N-1, with batch-means standard errors.
struct DensityField {
  int n = 0;
  int levels = 0;
  int columns = 0;
  std::uint64_t samples = 0;
  int batch_size = 1;
  std::vector<double> sum;         // per cell
  std::vector<double> batch_sum;   // per cell, current batch
  std::vector<double> batch_mean_sum, batch_mean_sumsq;
  int batches = 0;

  DensityField() = default;
  DensityField(Geometry g, int batch_size);

  void add(const LatticeState& s);
  /// Combines an independent accumulation of the same shape.
  void merge(const DensityField& other);

  double density(int level, int col) const;
  double stderr_of(int level, int col) const;
  /// Fewer than 10 completed batches.
  bool unreliable() const { return batches < 10; }
  /// G^(r) estimate: edge at level 2r of the leftmost column.
  double G(int r) const { return density(2 * r, 0); }
  double G_stderr(int r) const { return stderr_of(2 * r, 0); }
};

struct MeasureOptions {
  std::uint64_t sweeps = 1000;
  std::uint64_t burn_in = 100;
  std::uint64_t thinning = 1;
  int batch_size = 50;
};

DensityField mc_measure(MCState& state, const WeightTable<double>& weights, const MeasureOptions& opt);

/// Leftmost boundary of the region with density in (eps, 1 - eps) on each
/// level, rescaled to x = (c + 1/2) / N, y = 2 - level / N.
std::vector<CurveSample> extract_contour(const DensityField& field, double epsilon = 0.05);

/// Same boundary for an arbitrary field given as a level-major array.
std::vector<CurveSample> extract_contour(std::span<const double> density, int n, double epsilon);

struct SemicircleComparison {
  double distance;  // max | |p - (1,1)| - 1 | over contour points with x <= 1
  /// Contact points with the left, top and bottom sides: extreme point of a
  /// least-squares circle through the contour points within `window` of that
  /// side.
  CurveSample left, top, bottom;
  double left_gap, top_gap, bottom_gap;  // distances to (0,1), (1,2), (1,0)
};

SemicircleComparison compare_semicircle(std::span<const CurveSample> samples, double window = 0.25);

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
  double statistic;
  double p_value;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson chi-square goodness of fit; cells with expected count < 5 are pooled.
struct ChiSquareResult {
  double statistic;
  int dof;
  double p_value;
};
ChiSquareResult chi_square_test(std::span<const double> observed, std::span<const double> expected);

nlohmann::json run_metadata(const MCState& state, const MeasureOptions& opt);
void write_density_csv(std::ostream& os, const DensityField& field);
/// `metadata` is copied verbatim into a <metadata> element when non-empty.
void write_density_svg(std::ostream& os, const DensityField& field,
                       std::span<const CurveSample> contour = {}, const std::string& metadata = {});

}  // namespace sixv
