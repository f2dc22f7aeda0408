#pragma once

// Run configuration and file emission shared by the command-line tools.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sixv/asymptotics.hpp"
#include "sixv/model.hpp"

namespace sixv {

/// Malformed configuration: unknown key or unparsable value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;

  // angles, kept as given so `pi/4` is parsed at the working precision
  std::string lambda = "pi/4";
  std::string mu = "0";
  std::string eta = "pi/4";
  std::string xi = "pi/2";
  std::string omega = "0";
  std::string lambdas;  // comma-separated, inhomogeneous runs
  std::string mus;

  int n = 4;
  int n_max = 0;  // 0: same as n
  int L = 0;
  unsigned precision = 0;  // decimal digits, 0: module default

  std::string what;  // sub-operation, e.g. tau / hN / correlations
  std::string mode = "transfer";

  std::uint64_t seed = 1;
  std::uint64_t sweeps = 10000;
  std::uint64_t burn_in = 1000;
  std::uint64_t thinning = 10;
  int batch = 100;
  double epsilon = 0.05;
  std::string init = "reference";

  int points = 200;
  int lines = 12;
  bool quick = false;

  std::string out_dir = ".";
  bool emit_csv = false;
  bool emit_json = false;
  bool emit_svg = false;

  /// Sets one field from its textual form. Throws ConfigError.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  /// Every key in a fixed order with its current value.
  std::vector<std::pair<std::string, std::string>> entries() const;

  /// Angles parsed at the working precision.
  SpectralParams spectral() const;
  std::vector<Real> lambda_list() const;
  std::vector<Real> mu_list() const;
};

std::vector<std::string> config_keys();

/// Flat `key = value` lines; `#` starts a comment. Throws ConfigError.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

nlohmann::ordered_json config_json(const RunConfig& cfg);
/// `# key = value` lines.
void write_metadata_lines(std::ostream& os, const RunConfig& cfg);
/// `key = value` lines with XML special characters escaped, for SVG metadata.
std::string svg_metadata(const RunConfig& cfg);

/// Plots the [0,1] x [0,2] rectangle, the analytic semicircle, the given
/// tangent lines clipped to the rectangle and an optional contour overlay.
void write_curve_svg(std::ostream& os, const RunConfig& cfg, std::span<const CurveSample> curve,
                     std::span<const TangentLine> lines, std::span<const CurveSample> contour = {});

/// Writes `name` into cfg.out_dir, creating the directory when needed.
std::filesystem::path output_path(const RunConfig& cfg, const std::string& name);

}  // namespace sixv
