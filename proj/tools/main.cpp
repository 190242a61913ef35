#include "app/app.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using cosserat::app::Settings;

struct CommonOptions {
  std::vector<std::string> configs;
  std::vector<std::string> assignments;
  std::vector<std::pair<std::string, std::string>> flags;  // key, value as typed
};

// --config and --set, plus shorthand flags that map onto configuration keys.
void add_common(CLI::App* cmd, CommonOptions& o, std::map<std::string, std::string>& shorthand,
                const std::vector<std::pair<std::string, std::string>>& keys) {
  cmd->add_option("-c,--config", o.configs, "key=value configuration file(s), applied in order");
  cmd->add_option("-s,--set", o.assignments, "override one key, e.g. --set grid.n=2048");
  for (const auto& [flag, key] : keys)
    cmd->add_option("--" + flag, shorthand[key], "sets " + key);
}

Settings resolve(const CommonOptions& o, const std::map<std::string, std::string>& shorthand) {
  Settings s;
  for (const auto& path : o.configs) s.merge_file(path);
  for (const auto& a : o.assignments) s.set_assignment(a);
  for (const auto& [key, value] : shorthand)
    if (!value.empty()) s.set(key, value);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longitudinal Cosserat solitons: closed-form solutions, reduced dynamics and checks"};
  app.set_version_flag("--version", std::string(COSSERAT_VERSION));
  app.require_subcommand(1);

  CommonOptions sol_o, sim_o, disp_o, torus_o;
  std::map<std::string, std::string> sol_f, sim_f, disp_f, torus_f;

  auto* sol = app.add_subcommand("soliton", "tabulate the closed-form soliton pair");
  add_common(sol, sol_o, sol_f,
             {{"v", "soliton.v"}, {"branch", "soliton.branch"}, {"delta", "soliton.delta"},
              {"n", "grid.n"}, {"z-min", "grid.z_min"}, {"z-max", "grid.z_max"},
              {"times", "times"}});
  bool derivatives = false;
  sol->add_flag("--derivatives", derivatives, "also print phi_z, phi_t, psi_z, psi_t");

  auto* sim = app.add_subcommand("simulate", "integrate the reduced system");
  add_common(sim, sim_o, sim_f,
             {{"v", "soliton.v"}, {"branch", "soliton.branch"}, {"n", "grid.n"},
              {"t-end", "t_end"}, {"dt", "dt"}, {"bc", "bc"}, {"init", "init"},
              {"output", "output.path"}, {"stride", "output.stride"}});

  auto* disp = app.add_subcommand("dispersion", "wave number over a speed sweep");
  add_common(disp, disp_o, disp_f,
             {{"v-min", "sweep.v_min"}, {"v-max", "sweep.v_max"}, {"count", "sweep.count"}});

  auto* ver = app.add_subcommand("verify", "run the numerical checks (JSON lines on stdout)");
  cosserat::app::VerifyOptions vopt;
  std::string fault;
  ver->add_option("--seed", vopt.seed, "random seed");
  ver->add_option("--fault", fault, "scale one material constant, e.g. --fault mu=1.1");
  ver->add_flag("--flip-m21", vopt.flip_m21, "negate the psi amplitude of the soliton");

  auto* torus = app.add_subcommand("export-torus", "ring positions and rotations for plotting");
  add_common(torus, torus_o, torus_f,
             {{"v", "soliton.v"}, {"branch", "soliton.branch"}, {"n", "grid.n"},
              {"times", "times"}});
  cosserat::app::TorusOptions topt;
  std::string snapshot;
  torus->add_option("--snapshot", snapshot, "snapshot CSV (default: closed-form soliton)");
  torus->add_option("--block", topt.block, "snapshot block index, negative counts from the end");
  torus->add_option("--stride", topt.stride, "emit every stride-th point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sol) return cosserat::app::cmd_soliton(resolve(sol_o, sol_f), derivatives, std::cout,
                                                std::cerr);
    if (*sim) {
      cosserat::app::SimulateOptions opt;
      for (const auto& c : sim_o.configs) opt.inputs.emplace_back(c);
      return cosserat::app::cmd_simulate(resolve(sim_o, sim_f), opt, std::cout, std::cerr);
    }
    if (*disp) return cosserat::app::cmd_dispersion(resolve(disp_o, disp_f), std::cout, std::cerr);
    if (*ver) {
      if (!fault.empty()) {
        const auto eq = fault.find('=');
        vopt.fault_param = fault.substr(0, eq);
        if (eq != std::string::npos) vopt.fault_factor = std::stod(fault.substr(eq + 1));
      }
      return cosserat::app::cmd_verify(vopt, std::cout, std::cerr);
    }
    if (*torus) {
      if (!snapshot.empty()) topt.snapshot = snapshot;
      return cosserat::app::cmd_export_torus(resolve(torus_o, torus_f), topt, std::cout,
                                             std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
