#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satcov/errors.hpp"
#include "satcov/runner.hpp"

namespace {

struct Cli {
  std::string config;
  std::string figure;
  satcov::RunOptions opt;
};

void add_common(CLI::App* cmd, Cli& cli, bool with_theorem, bool with_mode) {
  cmd->add_option("--config", cli.config, "scenario file (INI key = value)")
      ->required();
  if (with_theorem)
    cmd->add_option("--theorem", cli.opt.theorem, "bound family: 1 or 2 (default 2)")
        ->check(CLI::IsMember({1, 2}));
  if (with_mode)
    cmd->add_option("--mode", cli.opt.mode, "serving rule: cluster or nearest")
        ->check(CLI::IsMember({"cluster", "nearest"}));
  cmd->add_option_function<std::uint64_t>(
      "--trials", [&cli](std::uint64_t v) { cli.opt.trials = v; },
      "override trial count");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&cli](std::uint64_t v) { cli.opt.seed = v; }, "override RNG seed");
  cmd->add_option("--out", cli.opt.out_dir, "output directory (default from scenario)");
}

void print_paths(const std::vector<std::string>& paths) {
  for (const std::string& p : paths) std::printf("%s\n", p.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "satcov: coverage analysis for clustered LEO satellite downlinks.\n"
      "CSV schemas (17 significant digits):\n"
      "  analyze        gamma_db,lower,upper,heuristic,theorem,order_used\n"
      "  simulate       gamma_db,estimate,ci95,n_trials,mode\n"
      "  validate-gamma region,m,ks_distance,mean_z,var_z\n"
      "  sensitivity    kind,region,value,at_boundary\n"
      "  simulate --dump samples.csv: trial,d_power,i_power,sir\n"
      "Env: SATCOV_THREADS caps workers (0 = auto). Exit: 0 ok, 2 config, 3 numeric."};
  app.require_subcommand(1);

  Cli cli;
  CLI::App* analyze =
      app.add_subcommand("analyze", "analytic coverage bounds and heuristic over the "
                                    "threshold grid");
  add_common(analyze, cli, true, false);
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo coverage curve with Wilson CIs");
  add_common(simulate, cli, false, true);
  simulate->add_flag("--dump", cli.opt.dump_samples,
                     "also write raw per-trial samples.csv");
  CLI::App* validate = app.add_subcommand(
      "validate-gamma", "KS distance and moment z-scores of the gamma fit per region "
                        "and m in {1,2,3}");
  add_common(validate, cli, false, false);
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "write a figure dataset (CSV) and its gnuplot script");
  reproduce->add_option("figure", cli.figure, "fig2..fig9 or table1")->required();
  add_common(reproduce, cli, false, false);
  CLI::App* sens = app.add_subcommand(
      "sensitivity", "closed-form gamma-parameter derivatives for the scenario");
  add_common(sens, cli, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const satcov::Scenario sc = satcov::load_scenario(cli.config);
    if (analyze->parsed()) print_paths(satcov::run_analyze(sc, cli.opt));
    if (simulate->parsed()) print_paths(satcov::run_simulate(sc, cli.opt));
    if (validate->parsed()) print_paths(satcov::run_validate_gamma(sc, cli.opt));
    if (reproduce->parsed()) print_paths(satcov::run_reproduce(sc, cli.figure, cli.opt));
    if (sens->parsed()) print_paths(satcov::run_sensitivity(sc, cli.opt));
    return 0;
  } catch (const satcov::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const satcov::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
