#include "app.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace cosserat::app {

void write_snapshot_block(std::ostream& os, const ReducedState& state, bool first) {
  if (first)
    os << kSnapshotHeader << '\n';
  else
    os << '\n';
  const std::string t = format_double(state.t);
  for (int i = 0; i < state.grid.n; ++i) {
    os << t << ',' << format_double(state.grid.z(i)) << ',' << format_double(state.phi[i]) << ','
       << format_double(state.psi[i]) << ',' << format_double(state.phi_t[i]) << ','
       << format_double(state.psi_t[i]) << '\n';
  }
}

namespace {

double parse_field(std::string_view s, int lineno) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("snapshot line " + std::to_string(lineno) + ": bad number '" +
                      std::string(s) + "'");
  return x;
}

}  // namespace

std::vector<SnapshotBlock> read_snapshots(std::istream& is) {
  std::vector<SnapshotBlock> blocks;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  bool open = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line != kSnapshotHeader)
        throw ConfigError("snapshot file must start with '" + std::string(kSnapshotHeader) + "'");
      header_seen = true;
      continue;
    }
    if (line.empty()) {
      open = false;
      continue;
    }
    double v[6];
    std::string_view rest(line);
    for (int c = 0; c < 6; ++c) {
      const auto comma = rest.find(',');
      if ((c < 5) != (comma != std::string_view::npos))
        throw ConfigError("snapshot line " + std::to_string(lineno) + ": expected 6 columns");
      v[c] = parse_field(rest.substr(0, comma), lineno);
      rest = c < 5 ? rest.substr(comma + 1) : std::string_view{};
    }
    if (!open) {
      blocks.push_back({});
      blocks.back().t = v[0];
      open = true;
    }
    SnapshotBlock& b = blocks.back();
    if (v[0] != b.t)
      throw ConfigError("snapshot line " + std::to_string(lineno) + ": time changes inside a block");
    b.z.push_back(v[1]);
    b.phi.push_back(v[2]);
    b.psi.push_back(v[3]);
    b.phi_t.push_back(v[4]);
    b.psi_t.push_back(v[5]);
  }
  if (!header_seen) throw ConfigError("snapshot file is empty");
  return blocks;
}

std::vector<SnapshotBlock> read_snapshots(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read snapshot file " + path.string());
  return read_snapshots(in);
}

ReducedState state_from_block(const SnapshotBlock& b, BoundaryMode mode, double phi_jump,
                              double psi_jump) {
  const std::size_t n = b.z.size();
  if (n < static_cast<std::size_t>(Grid1::kMinPoints))
    throw ConfigError("snapshot block has fewer than 5 points");
  const double dz = (b.z.back() - b.z.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(b.z[i] - b.z[i - 1] - dz) > 1e-9 * std::max(1.0, std::abs(dz)))
      throw ConfigError("snapshot z column is not uniformly spaced");
  }
  Grid1 g{static_cast<int>(n), b.z.front(), b.z.back(), mode};
  if (mode == BoundaryMode::periodic) g.z_max = b.z.back() + dz;
  ReducedState st = ReducedState::zeros(g);
  st.phi = b.phi;
  st.psi = b.psi;
  st.phi_t = b.phi_t;
  st.psi_t = b.psi_t;
  st.t = b.t;
  if (mode == BoundaryMode::dirichlet) {
    st.boundary = {b.phi.front(), b.phi.back(), b.psi.front(), b.psi.back(), 0.0, 0.0};
  } else {
    st.boundary.phi_jump = phi_jump;
    st.boundary.psi_jump = psi_jump;
  }
  st.validate();
  return st;
}

void write_diagnostics_row(std::ostream& os, const dynamics::DiagnosticsRow& row) {
  os << format_double(row.t) << ',' << format_double(row.energy) << ','
     << format_double(row.l2_phi) << ',' << format_double(row.l2_psi) << '\n';
}

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error("sha256 initialisation failed");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

RunManifest make_manifest(const Settings& s, std::string command,
                          const std::vector<std::filesystem::path>& inputs) {
  RunManifest m;
  m.tool_version = COSSERAT_VERSION;
  m.command = std::move(command);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.timestamp = stamp;
  m.settings = s.values();
  for (const auto& p : inputs) m.input_digests.emplace_back(p.string(), sha256_hex(p));
  return m;
}

void write_manifest(std::ostream& os, const RunManifest& m) {
  os << "# cosserat " << m.tool_version << '\n';
  os << "# command: " << m.command << '\n';
  os << "# timestamp: " << m.timestamp << '\n';
  for (const auto& [path, digest] : m.input_digests)
    os << "# sha256 " << digest << "  " << path << '\n';
  for (const auto& [key, def] : Settings::defaults()) os << key << '=' << m.settings.at(key) << '\n';
}

std::filesystem::path output_dir(const Settings& s) {
  if (const char* env = std::getenv("COSSERAT_OUTPUT_DIR"); env && *env) return env;
  return s.str("output.path");
}

}  // namespace cosserat::app
