#include "sixv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sixv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = trim(value);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("invalid value for " + key + ": '" + value + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::string v = trim(value);
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid value for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid value for " + key + ": '" + value + "'");
}

std::string check_angle(const std::string& key, const std::string& value) {
  try {
    parse_angle(value);
  } catch (const DomainError&) {
    throw ConfigError("invalid angle for " + key + ": '" + value + "'");
  }
  return trim(value);
}

std::string check_angle_list(const std::string& key, const std::string& value) {
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) check_angle(key, item);
  return trim(value);
}

std::vector<Real> parse_list(const std::string& text) {
  std::vector<Real> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
  return out;
}

std::string emit_string(const RunConfig& c) {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(c.emit_csv, "csv");
  add(c.emit_json, "json");
  add(c.emit_svg, "svg");
  return s.empty() ? "none" : s;
}

std::string shortest(double d) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, r.ptr);
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : RunConfig{}.entries()) keys.push_back(k);
  return keys;
}

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "subcommand") subcommand = trim(value);
  else if (key == "lambda") lambda = check_angle(key, value);
  else if (key == "mu") mu = check_angle(key, value);
  else if (key == "eta") eta = check_angle(key, value);
  else if (key == "xi") xi = check_angle(key, value);
  else if (key == "omega") omega = check_angle(key, value);
  else if (key == "lambdas") lambdas = check_angle_list(key, value);
  else if (key == "mus") mus = check_angle_list(key, value);
  else if (key == "N" || key == "n") n = parse_number<int>(key, value);
  else if (key == "N_max" || key == "n_max") n_max = parse_number<int>(key, value);
  else if (key == "L") L = parse_number<int>(key, value);
  else if (key == "precision") precision = parse_number<unsigned>(key, value);
  else if (key == "what") what = trim(value);
  else if (key == "mode") {
    mode = trim(value);
    if (mode != "brute" && mode != "transfer") throw ConfigError("mode must be brute or transfer");
  } else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "sweeps") sweeps = parse_number<std::uint64_t>(key, value);
  else if (key == "burn_in") burn_in = parse_number<std::uint64_t>(key, value);
  else if (key == "thinning") thinning = parse_number<std::uint64_t>(key, value);
  else if (key == "batch") batch = parse_number<int>(key, value);
  else if (key == "epsilon") epsilon = parse_double(key, value);
  else if (key == "init") {
    init = trim(value);
    if (init != "reference" && init != "exact-dp") throw ConfigError("init must be reference or exact-dp");
  } else if (key == "points") points = parse_number<int>(key, value);
  else if (key == "lines") lines = parse_number<int>(key, value);
  else if (key == "quick") quick = parse_bool(key, value);
  else if (key == "out") out_dir = trim(value);
  else if (key == "emit") {
    emit_csv = emit_json = emit_svg = false;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "csv") emit_csv = true;
      else if (item == "json") emit_json = true;
      else if (item == "svg") emit_svg = true;
      else if (item == "all") emit_csv = emit_json = emit_svg = true;
      else if (item != "none" && !item.empty()) throw ConfigError("unknown emit format '" + item + "'");
    }
  } else {
    throw ConfigError("unknown configuration key '" + raw_key + "'");
  }
}

std::string RunConfig::get(const std::string& key) const {
  for (const auto& [k, v] : entries())
    if (k == key) return v;
  throw ConfigError("unknown configuration key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  return {{"subcommand", subcommand},
          {"lambda", lambda},
          {"mu", mu},
          {"eta", eta},
          {"xi", xi},
          {"omega", omega},
          {"lambdas", lambdas},
          {"mus", mus},
          {"N", std::to_string(n)},
          {"N_max", std::to_string(n_max)},
          {"L", std::to_string(L)},
          {"precision", std::to_string(precision)},
          {"what", what},
          {"mode", mode},
          {"seed", std::to_string(seed)},
          {"sweeps", std::to_string(sweeps)},
          {"burn_in", std::to_string(burn_in)},
          {"thinning", std::to_string(thinning)},
          {"batch", std::to_string(batch)},
          {"epsilon", shortest(epsilon)},
          {"init", init},
          {"points", std::to_string(points)},
          {"lines", std::to_string(lines)},
          {"quick", quick ? "true" : "false"},
          {"out", out_dir},
          {"emit", emit_string(*this)}};
}

SpectralParams RunConfig::spectral() const {
  return {parse_angle(lambda), parse_angle(mu), parse_angle(eta), parse_angle(xi), parse_angle(omega)};
}

std::vector<Real> RunConfig::lambda_list() const { return parse_list(lambdas); }
std::vector<Real> RunConfig::mu_list() const { return parse_list(mus); }

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  for (const auto& [k, v] : parse_config_text(buf.str())) cfg.set(k, v);
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

void write_metadata_lines(std::ostream& os, const RunConfig& cfg) {
  for (const auto& [k, v] : cfg.entries()) os << "# " << k << " = " << v << '\n';
}

std::string svg_metadata(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.entries())
    for (char ch : k + " = " + v + "\n") {
      if (ch == '<') out += "&lt;";
      else if (ch == '>') out += "&gt;";
      else if (ch == '&') out += "&amp;";
      else out += ch;
    }
  return out;
}

namespace {

/// Clips y = m x + q to [0,1] x [0,2]; false when the line misses it.
bool clip_line(const TangentLine& t, double& x0, double& y0, double& x1, double& y1) {
  const double m = t.slope, q = 2 * t.chi;
  double lo = 0, hi = 1;
  if (m > 0) {
    lo = std::max(lo, (0 - q) / m);
    hi = std::min(hi, (2 - q) / m);
  } else if (m < 0) {
    lo = std::max(lo, (2 - q) / m);
    hi = std::min(hi, (0 - q) / m);
  } else if (q < 0 || q > 2) {
    return false;
  }
  if (lo >= hi) return false;
  x0 = lo;
  y0 = m * lo + q;
  x1 = hi;
  y1 = m * hi + q;
  return true;
}

}  // namespace

void write_curve_svg(std::ostream& os, const RunConfig& cfg, std::span<const CurveSample> curve,
                     std::span<const TangentLine> lines, std::span<const CurveSample> contour) {
  const double scale = 300.0, pad = 20.0;
  auto px = [&](double x) { return pad + x * scale; };
  auto py = [&](double y) { return pad + (2 - y) * scale; };
  os << std::fixed << std::setprecision(3);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << scale + 2 * pad << "\" height=\""
     << 2 * scale + 2 * pad << "\">\n<metadata>\n"
     << svg_metadata(cfg) << "</metadata>\n";
  os << "<rect x=\"" << px(0) << "\" y=\"" << py(2) << "\" width=\"" << scale << "\" height=\"" << 2 * scale
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<path class=\"semicircle\" d=\"M " << px(1) << ' ' << py(2) << " A " << scale << ' ' << scale << " 0 0 0 "
     << px(1) << ' ' << py(0) << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  for (const auto& t : lines) {
    double x0, y0, x1, y1;
    if (!clip_line(t, x0, y0, x1, y1)) continue;
    os << "<line class=\"tangent\" x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1) << "\" y2=\""
       << py(y1) << "\" stroke=\"gray\" stroke-width=\"0.8\"/>\n";
  }
  auto polyline = [&](std::span<const CurveSample> pts, const char* cls, const char* color) {
    if (pts.empty()) return;
    os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) os << px(p.x) << ',' << py(p.y) << ' ';
    os << "\"/>\n";
  };
  polyline(curve, "envelope", "black");
  polyline(contour, "contour", "blue");
  os << "</svg>\n";
}

std::filesystem::path output_path(const RunConfig& cfg, const std::string& name) {
  const std::filesystem::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace sixv
