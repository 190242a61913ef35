#include "doctest.h"

#include "app/app.hpp"

#include "cosserat/reduced.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace cosserat;
using namespace cosserat::app;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cosserat_app_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      std::vector<double> row;
      for (const auto& c : split(line)) row.push_back(c == "nan" ? std::nan("") : std::stod(c));
      csv.rows.push_back(row);
    }
  }
  return csv;
}

std::string comment_value(const Csv& csv, const std::string& key) {
  const std::string prefix = "# " + key + "=";
  for (const auto& c : csv.comments)
    if (c.rfind(prefix, 0) == 0) return c.substr(prefix.size());
  return {};
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace

TEST_SUITE("settings") {
  TEST_CASE("defaults") {
    const Settings s;
    CHECK(s.material() == MaterialParams{});
    CHECK(s.integer("grid.n") == 1024);
    CHECK(s.is_auto("dt"));
    CHECK(s.str("bc") == "dirichlet");
    CHECK(s.values().size() == Settings::defaults().size());
  }

  TEST_CASE("parsing, comments and override order") {
    Settings s;
    s.merge_text("# material\nmu = 2.5   # trailing comment\n\n  lambda=0.5\nbc = periodic\n");
    CHECK(s.number("mu") == 2.5);
    CHECK(s.material().lambda == 0.5);
    CHECK(s.grid().mode == BoundaryMode::periodic);
    s.merge_text("mu = 3");
    s.set_assignment("mu=4");
    CHECK(s.number("mu") == 4.0);
    s.set("times", "0, 1.5,3");
    CHECK(s.number_list("times") == std::vector<double>{0.0, 1.5, 3.0});
  }

  TEST_CASE("errors") {
    Settings s;
    CHECK_THROWS_AS(s.set("nosuchkey", "1"), ConfigError);
    CHECK_THROWS_AS(s.merge_text("mu 3"), ConfigError);
    CHECK_THROWS_AS(s.set_assignment("mu"), ConfigError);
    s.set("mu", "abc");
    CHECK_THROWS_AS(s.number("mu"), ConfigError);
    s.set("grid.n", "12.5");
    CHECK_THROWS_AS(s.integer("grid.n"), ConfigError);
    CHECK_THROWS_AS(s.merge_file("/nonexistent/cosserat.cfg"), ConfigError);
  }

  TEST_CASE("grid spec") {
    Settings s;
    s.merge_text("grid.n=64\ngrid.z_min=-3\ngrid.z_max=5\n");
    const Grid1 g = s.grid();
    CHECK(g.n == 64);
    CHECK(g.z_min == -3.0);
    CHECK(g.z_max == 5.0);
    CHECK(g.mode == BoundaryMode::dirichlet);
  }

  TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
      const double x = d(rng) * std::pow(10.0, static_cast<int>(d(rng)) % 30);
      CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::nan("")) == "nan");
  }
}

TEST_SUITE("files") {
  TEST_CASE("snapshot blocks round-trip") {
    const auto s = reduced::make_soliton(0.5, MaterialParams{}, reduced::Branch::kink);
    ReducedState a = dynamics::init_from_soliton(Grid1{33, -8, 8, BoundaryMode::dirichlet}, s);
    ReducedState b = a;
    b.t = 0.25;
    for (auto& x : b.phi_t) x *= -1.0 / 3.0;
    std::stringstream ss;
    write_snapshot_block(ss, a, true);
    write_snapshot_block(ss, b, false);
    const auto blocks = read_snapshots(ss);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].t == 0.0);
    CHECK(blocks[1].t == 0.25);
    CHECK(blocks[0].phi == a.phi);
    CHECK(blocks[1].phi_t == b.phi_t);
    CHECK(blocks[1].psi == b.psi);
    const ReducedState back = state_from_block(blocks[0], BoundaryMode::dirichlet, 0, 0);
    CHECK(back.grid.n == 33);
    CHECK(back.grid.z_max == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(back.boundary.phi_right == a.phi.back());
  }

  TEST_CASE("malformed snapshot files are rejected") {
    auto bad = [](const std::string& text) {
      std::istringstream is(text);
      CHECK_THROWS_AS(read_snapshots(is), ConfigError);
    };
    bad("t,z,phi\n0,0,0\n");
    bad(std::string(kSnapshotHeader) + "\n0,0,0,0,0\n");
    bad(std::string(kSnapshotHeader) + "\n0,0,x,0,0,0\n");
    bad(std::string(kSnapshotHeader) + "\n0,0,0,0,0,0\n1,0.5,0,0,0,0\n");
  }

  TEST_CASE("manifest reads back as a config") {
    const fs::path dir = scratch("manifest");
    const fs::path cfg = dir / "run.cfg";
    {
      std::ofstream(cfg) << "mu = 1.25\nsoliton.v = 0.4\n";
    }
    Settings s;
    s.merge_file(cfg);
    std::stringstream ss;
    write_manifest(ss, make_manifest(s, "simulate", {cfg}));
    const std::string text = ss.str();
    CHECK(text.find("# command: simulate") != std::string::npos);
    CHECK(text.find(sha256_hex(cfg)) != std::string::npos);
    Settings again;
    again.merge_text(text);
    CHECK(again.values() == s.values());
  }

  TEST_CASE("sha256 of a known input") {
    const fs::path f = scratch("sha") / "abc.txt";
    std::ofstream(f) << "abc";
    CHECK(sha256_hex(f) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}

TEST_SUITE("commands") {
  TEST_CASE("soliton table") {
    Settings s;
    s.merge_text("grid.n=81\ngrid.z_min=-10\ngrid.z_max=10\ntimes=0,2\n");
    std::ostringstream out, err;
    REQUIRE(cmd_soliton(s, true, out, err) == 0);
    const Csv csv = parse_csv(out.str());
    CHECK(csv.header.size() == 8);
    CHECK(csv.rows.size() == 162);
    const double k = std::stod(comment_value(csv, "k"));
    CHECK(k == reduced::wave_number(0.5, MaterialParams{}, reduced::Branch::kink));
    CHECK(std::stod(comment_value(csv, "k_minus")) == -k);
    for (std::size_t i = 1; i < 81; ++i) CHECK(csv.rows[i][2] > csv.rows[i - 1][2]);
    CHECK(comment_value(csv, "admissible_speed_windows").find(';') != std::string::npos);

    Settings anti = s;
    anti.set("soliton.branch", "antikink");
    std::ostringstream out2;
    REQUIRE(cmd_soliton(anti, false, out2, err) == 0);
    const Csv mirrored = parse_csv(out2.str());
    for (std::size_t i = 0; i < 81; ++i)
      CHECK(csv.rows[i][2] + mirrored.rows[i][2] == doctest::Approx(2 * kPi).epsilon(1e-14));
  }

  TEST_CASE("soliton outside the admissible speeds") {
    Settings s;
    s.set("soliton.v", "1.2");
    std::ostringstream out, err;
    CHECK(cmd_soliton(s, false, out, err) == 2);
    CHECK(err.str().find("admissible_speed_windows=[0,") != std::string::npos);
  }

  TEST_CASE("dispersion sweep") {
    Settings s;
    s.set("sweep.count", "301");
    std::ostringstream out, err;
    REQUIRE(cmd_dispersion(s, out, err) == 0);
    const Csv csv = parse_csv(out.str());
    REQUIRE(csv.rows.size() == 303);
    int valid = 0;
    for (std::size_t i = 0; i < 301; ++i) {
      const auto& r = csv.rows[i];
      if (r[5] == 1.0) {
        ++valid;
        CHECK(std::abs(r[6]) < 1e-12);
        CHECK(r[3] * r[3] == doctest::Approx(r[2]).epsilon(1e-12));
      }
    }
    CHECK(valid > 100);
    for (std::size_t i = 301; i < 303; ++i) {
      CHECK(csv.rows[i][0] == 0.0);
      CHECK(csv.rows[i][3] == 0.0);
      CHECK(csv.rows[i][5] == 1.0);
    }
  }

  TEST_CASE("simulate writes its outputs") {
    const fs::path dir = scratch("simulate");
    Settings s;
    s.merge_text("grid.n=256\nt_end=1\noutput.stride=20\n");
    s.set("output.path", dir.string());
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(s, {}, out, err) == 0);
    const auto kv = key_values(out.str());
    CHECK(std::stod(kv.at("t_final")) == 1.0);
    CHECK(std::stod(kv.at("energy_relative_drift")) < 1e-6);
    CHECK(std::stod(kv.at("l2_phi")) < 5e-2);
    const auto blocks = read_snapshots(dir / "snapshots.csv");
    CHECK(static_cast<long>(blocks.size()) == std::stol(kv.at("snapshots")));
    CHECK(fs::exists(dir / "diagnostics.csv"));
    Settings replay;
    replay.merge_file(dir / "manifest.txt");
    CHECK(replay.values() == s.values());

    s.set("check.l2_max", "1e-12");
    std::ostringstream out2, err2;
    CHECK(cmd_simulate(s, {}, out2, err2) == 1);
    CHECK(err2.str().find("check.l2_max") != std::string::npos);
  }

  TEST_CASE("simulate with t_end = 0 and the output directory override") {
    const fs::path dir = scratch("override");
    Settings s;
    s.merge_text("grid.n=64\nt_end=0\noutput.path=/nonexistent/should/not/be/used\n");
    ::setenv("COSSERAT_OUTPUT_DIR", dir.string().c_str(), 1);
    std::ostringstream out, err;
    const int status = cmd_simulate(s, {}, out, err);
    ::unsetenv("COSSERAT_OUTPUT_DIR");
    REQUIRE(status == 0);
    CHECK(read_snapshots(dir / "snapshots.csv").size() == 1);
    CHECK(std::stod(key_values(out.str()).at("l2_phi")) < 1e-10);
  }

  TEST_CASE("simulate restarted from a snapshot file") {
    const fs::path dir = scratch("restart");
    Settings s;
    s.merge_text("grid.n=128\nt_end=0.5\nbc=periodic\n");
    s.set("output.path", (dir / "a").string());
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(s, {}, out, err) == 0);
    Settings r = s;
    r.set("init", "file");
    r.set("init.file", (dir / "a" / "snapshots.csv").string());
    r.set("output.path", (dir / "b").string());
    std::ostringstream out2;
    REQUIRE(cmd_simulate(r, {}, out2, err) == 0);
    const auto first = read_snapshots(dir / "a" / "snapshots.csv");
    const auto second = read_snapshots(dir / "b" / "snapshots.csv");
    CHECK(second.front().phi == first.back().phi);
    CHECK(second.back().t == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("torus export") {
    Settings s;
    s.merge_text("grid.n=201\n");
    std::ostringstream out, err;
    REQUIRE(cmd_export_torus(s, TorusOptions{std::nullopt, -1, 1}, out, err) == 0);
    const Csv csv = parse_csv(out.str());
    REQUIRE(csv.rows.size() == 201);
    CHECK(csv.header == std::vector<std::string>{"z", "phi", "psi", "position"});
    CHECK(csv.rows.front()[1] < 1e-6);
    CHECK(csv.rows.back()[1] == doctest::Approx(2 * kPi).epsilon(1e-6));
    for (const auto& r : csv.rows) CHECK(r[3] == doctest::Approx(r[0] + r[2]).epsilon(1e-15));
    // Negative psi amplitude: material points behind the kink are pulled back.
    CHECK(csv.rows.back()[3] < csv.rows.back()[0]);

    std::ostringstream thin;
    REQUIRE(cmd_export_torus(s, TorusOptions{std::nullopt, -1, 10}, thin, err) == 0);
    CHECK(parse_csv(thin.str()).rows.size() == 21);
    CHECK_THROWS_AS(cmd_export_torus(s, TorusOptions{std::nullopt, -1, 0}, thin, err), ConfigError);
  }

  TEST_CASE("verify exit codes") {
    std::ostringstream out, err;
    CHECK(cmd_verify(VerifyOptions{}, out, err) == 0);
    CHECK(err.str() == "11/11 checks passed\n");
    VerifyOptions bad;
    bad.fault_param = "mu";
    std::ostringstream out2, err2;
    CHECK(cmd_verify(bad, out2, err2) == 1);
    bad.fault_param = "nosuchkey";
    CHECK_THROWS_AS(cmd_verify(bad, out2, err2), DomainError);
  }
}
