#pragma once

#include "cosserat/dynamics.hpp"
#include "cosserat/params.hpp"
#include "cosserat/reduced_state.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cosserat::app {

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Flat key=value configuration with every key pre-filled with its default.
/// Unknown keys are rejected.
class Settings {
 public:
  Settings();

  /// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
  /// `origin` names the source in error messages.
  void merge_text(std::string_view text, std::string_view origin = "<text>");
  void merge_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  /// "key=value" form used by --set.
  void set_assignment(std::string_view assignment);

  const std::string& str(const std::string& key) const;
  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  bool is_auto(const std::string& key) const { return str(key) == "auto"; }
  std::vector<double> number_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  /// Keys in declaration order.
  static const std::vector<std::pair<std::string, std::string>>& defaults();

  MaterialParams material() const;
  Grid1 grid() const;

 private:
  std::map<std::string, std::string> values_;
};

/// SimConfig from the settings; `init=file` reads the last block of
/// `init.file`.
dynamics::SimConfig sim_config(const Settings& s);

// ---- snapshot files -------------------------------------------------------

inline constexpr std::string_view kSnapshotHeader = "t,z,phi,psi,phi_t,psi_t";
inline constexpr std::string_view kDiagnosticsHeader = "t,energy,l2_phi,l2_psi";

/// Writes one snapshot block. The header goes before the first block only;
/// later blocks are preceded by a blank line.
void write_snapshot_block(std::ostream& os, const ReducedState& state, bool first);

struct SnapshotBlock {
  double t = 0.0;
  std::vector<double> z, phi, psi, phi_t, psi_t;
};

/// Parses a snapshot file. Throws ConfigError on malformed input.
std::vector<SnapshotBlock> read_snapshots(std::istream& is);
std::vector<SnapshotBlock> read_snapshots(const std::filesystem::path& path);

/// State on a grid inferred from the z column (uniform spacing required).
/// Periodic grids take z_max = last z + dz. Dirichlet boundary values are the
/// end samples; periodic jumps are passed in.
ReducedState state_from_block(const SnapshotBlock& block, BoundaryMode mode, double phi_jump,
                              double psi_jump);

void write_diagnostics_row(std::ostream& os, const dynamics::DiagnosticsRow& row);

// ---- run manifest ---------------------------------------------------------

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string timestamp;  ///< UTC, ISO 8601
  std::map<std::string, std::string> settings;
  std::vector<std::pair<std::string, std::string>> input_digests;  ///< path, sha256 hex
};

RunManifest make_manifest(const Settings& s, std::string command,
                          const std::vector<std::filesystem::path>& inputs);

/// Comment lines for version, command, timestamp and digests, then the
/// resolved settings as key=value, so the file is itself a valid config.
void write_manifest(std::ostream& os, const RunManifest& m);

std::string sha256_hex(const std::filesystem::path& path);

// ---- subcommands ----------------------------------------------------------

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::string fault_param;
  double fault_factor = 1.1;
  bool flip_m21 = false;
};

struct TorusOptions {
  std::optional<std::filesystem::path> snapshot;
  int block = -1;  ///< -1: last block
  int stride = 1;
};

struct SimulateOptions {
  std::vector<std::filesystem::path> inputs;  ///< config files, for the manifest digests
};

/// Return value is the process exit status.
int cmd_soliton(const Settings& s, bool derivatives, std::ostream& out, std::ostream& err);
int cmd_simulate(const Settings& s, const SimulateOptions& opt, std::ostream& out,
                 std::ostream& err);
int cmd_dispersion(const Settings& s, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_export_torus(const Settings& s, const TorusOptions& opt, std::ostream& out,
                     std::ostream& err);

/// Output directory: $COSSERAT_OUTPUT_DIR if set and non-empty, else output.path.
std::filesystem::path output_dir(const Settings& s);

}  // namespace cosserat::app
