#include "app.hpp"

#include "cosserat/reduced.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cosserat::app {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::pair<std::string, std::string>> build_defaults() {
  std::vector<std::pair<std::string, std::string>> d;
  const MaterialParams p;
  for (std::string_view key : kMaterialKeys) d.emplace_back(key, format_double(p.at(key)));
  d.insert(d.end(), {
                        {"grid.n", "1024"},
                        {"grid.z_min", "-20"},
                        {"grid.z_max", "20"},
                        {"dt", "auto"},
                        {"t_end", "10"},
                        {"bc", "dirichlet"},
                        {"soliton.v", "0.5"},
                        {"soliton.delta", "0"},
                        {"soliton.branch", "kink"},
                        {"output.path", "out"},
                        {"output.stride", "100"},
                        {"init", "soliton"},
                        {"init.file", ""},
                        {"plane_wave.mode", "slow"},
                        {"plane_wave.amplitude", "0.01"},
                        {"plane_wave.wavelengths", "1"},
                        {"periodic.phi_jump", "auto"},
                        {"periodic.psi_jump", "auto"},
                        {"check.l2_max", "off"},
                        {"times", "0"},
                        {"sweep.v_min", "0"},
                        {"sweep.v_max", "auto"},
                        {"sweep.count", "101"},
                    });
  return d;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& Settings::defaults() {
  static const auto d = build_defaults();
  return d;
}

Settings::Settings() {
  for (const auto& [k, v] : defaults()) values_[k] = v;
}

void Settings::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second = value;
}

void Settings::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Settings::merge_text(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    try {
      set_assignment(t);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void Settings::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path.string());
}

const std::string& Settings::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  return it->second;
}

double Settings::number(const std::string& key) const {
  const std::string& s = str(key);
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + s + "'");
  return x;
}

long Settings::integer(const std::string& key) const {
  const std::string& s = str(key);
  long x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + s + "'");
  return x;
}

std::vector<double> Settings::number_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    double x = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw ConfigError("key '" + key + "': bad list entry '" + t + "'");
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError("key '" + key + "' is empty");
  return out;
}

MaterialParams Settings::material() const {
  MaterialParams p;
  for (std::string_view key : kMaterialKeys) p.at(key) = number(std::string(key));
  return p;
}

namespace {

BoundaryMode parse_bc(const std::string& s) {
  if (s == "dirichlet") return BoundaryMode::dirichlet;
  if (s == "periodic") return BoundaryMode::periodic;
  throw ConfigError("bc must be 'dirichlet' or 'periodic', got '" + s + "'");
}

dynamics::WaveMode parse_mode(const std::string& s) {
  if (s == "slow") return dynamics::WaveMode::slow;
  if (s == "fast") return dynamics::WaveMode::fast;
  throw ConfigError("plane_wave.mode must be 'slow' or 'fast', got '" + s + "'");
}

}  // namespace

Grid1 Settings::grid() const {
  const long n = integer("grid.n");
  if (n < Grid1::kMinPoints || n > 100'000'000) throw ConfigError("grid.n out of range");
  Grid1 g{static_cast<int>(n), number("grid.z_min"), number("grid.z_max"), parse_bc(str("bc"))};
  g.validate();
  return g;
}

dynamics::SimConfig sim_config(const Settings& s) {
  dynamics::SimConfig c;
  c.material = s.material();
  c.grid = s.grid();
  if (!s.is_auto("dt")) c.dt = s.number("dt");
  c.t_end = s.number("t_end");
  const long stride = s.integer("output.stride");
  if (stride < 1) throw ConfigError("output.stride must be >= 1");
  c.output_stride = static_cast<int>(stride);

  const std::string& init = s.str("init");
  if (init == "soliton") {
    c.initial = dynamics::SolitonSpec{s.number("soliton.v"), s.number("soliton.delta"),
                                      reduced::parse_branch(s.str("soliton.branch"))};
  } else if (init == "plane_wave") {
    const long w = s.integer("plane_wave.wavelengths");
    c.initial = dynamics::PlaneWaveSpec{parse_mode(s.str("plane_wave.mode")),
                                        s.number("plane_wave.amplitude"), static_cast<int>(w)};
  } else if (init == "file") {
    if (s.str("init.file").empty()) throw ConfigError("init=file needs init.file");
    const auto blocks = read_snapshots(std::filesystem::path(s.str("init.file")));
    if (blocks.empty()) throw ConfigError("init.file has no snapshot blocks");
    const SnapshotBlock& b = blocks.back();
    const std::size_t n = b.z.size();
    double phi_jump = 0.0;
    double psi_jump = 0.0;
    if (c.grid.mode == BoundaryMode::periodic && n >= 2) {
      constexpr double two_pi = 2.0 * std::numbers::pi;
      phi_jump = s.is_auto("periodic.phi_jump")
                     ? two_pi * std::round((b.phi[n - 1] - b.phi[0]) / two_pi)
                     : s.number("periodic.phi_jump");
      // Linear extrapolation of psi one cell past the last sample.
      psi_jump = s.is_auto("periodic.psi_jump") ? 2.0 * b.psi[n - 1] - b.psi[n - 2] - b.psi[0]
                                                : s.number("periodic.psi_jump");
    }
    ReducedState st = state_from_block(b, c.grid.mode, phi_jump, psi_jump);
    c.grid = st.grid;
    c.initial = std::move(st);
  } else {
    throw ConfigError("init must be 'soliton', 'plane_wave' or 'file', got '" + init + "'");
  }
  return c;
}

}  // namespace cosserat::app
