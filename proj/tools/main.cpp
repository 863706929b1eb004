// Command-line front end: run (one trajectory), convergence (order sweep),
// reproduce (published-order comparison).  Exit codes: 0 success, 2 bad
// configuration, 3 numerical/fit failure, 4 I/O failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dynbc/dynbc.hpp"

namespace {

struct FlagValues {
  std::string config_path;
  std::string preset;
  std::string scheme;
  double theta = -1.0;
  bool theta_set = false;
  std::size_t nx = 0;
  double tmax = 0.0;
  bool tmax_set = false;
  std::vector<int> tau_dyadic;
  std::vector<std::size_t> fit_window;
  std::string out;
};

void add_common_flags(CLI::App* cmd, FlagValues& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--preset", f.preset, "built-in problem: example1 or example2");
  cmd->add_option("--scheme", f.scheme, "lie, strang, weighted or naive");
  cmd->add_option("--theta", f.theta, "weight for the weighted scheme")
      ->each([&f](const std::string&) { f.theta_set = true; });
  cmd->add_option("--nx", f.nx, "grid resolution (power of two)");
  cmd->add_option("--tmax", f.tmax, "final time")
      ->each([&f](const std::string&) { f.tmax_set = true; });
  cmd->add_option("--tau-dyadic", f.tau_dyadic, "dyadic step range k_min k_max")
      ->expected(2);
  cmd->add_option("--fit-window", f.fit_window, "inclusive fit window indices i_min i_max")
      ->expected(2);
  cmd->add_option("--out", f.out, "output path");
}

dynbc::RunConfig build_config(const FlagValues& f) {
  dynbc::ConfigValues values;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path, std::ios::binary);
    if (!in) throw dynbc::IoError("cannot read config file: " + f.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    values = dynbc::parse_config_text(text.str());
  }
  if (!f.preset.empty()) values.problem = f.preset;
  if (!f.scheme.empty()) values.scheme = f.scheme;
  if (f.theta_set) values.theta = f.theta;
  if (f.nx != 0) values.nx = f.nx;
  if (f.tmax_set) values.tmax = f.tmax;
  if (!f.tau_dyadic.empty()) {
    values.tau_dyadic = {f.tau_dyadic[0], f.tau_dyadic[1]};
    values.tau_values.reset();
  }
  if (!f.fit_window.empty()) values.fit_window = {f.fit_window[0], f.fit_window[1]};
  if (!f.out.empty()) values.out = f.out;
  return dynbc::resolve_config(values);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Splitting schemes for heat flow with dynamical boundary conditions"};
  app.require_subcommand(1);

  FlagValues run_flags, conv_flags;
  CLI::App* cmd_run = app.add_subcommand("run", "integrate one trajectory and write it as CSV");
  add_common_flags(cmd_run, run_flags);
  std::size_t nt_flag = 0;
  cmd_run->add_option("--nt", nt_flag, "number of time steps");

  CLI::App* cmd_conv =
      app.add_subcommand("convergence", "sweep step sizes and fit the observed order");
  add_common_flags(cmd_conv, conv_flags);

  CLI::App* cmd_repr =
      app.add_subcommand("reproduce", "compare observed orders with the published tables");
  std::string which;
  std::size_t repr_nx = 0;
  std::string repr_out;
  cmd_repr->add_option("which", which, "table1 or table2")->required();
  cmd_repr->add_option("--nx", repr_nx, "grid resolution override");
  cmd_repr->add_option("--out", repr_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_run->parsed()) {
      dynbc::RunConfig cfg = build_config(run_flags);
      if (nt_flag != 0) {
        if (nt_flag < 1) throw dynbc::ConfigError("--nt must be >= 1");
        cfg.nt_run = nt_flag;
      }
      return dynbc::cmd_run(cfg);
    }
    if (cmd_conv->parsed()) {
      return dynbc::cmd_convergence(build_config(conv_flags));
    }
    std::optional<std::size_t> nx_override;
    if (repr_nx != 0) nx_override = repr_nx;
    return dynbc::cmd_reproduce(which, nx_override, repr_out);
  } catch (const dynbc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dynbc::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dynbc::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const dynbc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
