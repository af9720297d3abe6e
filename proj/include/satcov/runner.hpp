#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satcov/scenario.hpp"

namespace satcov {

struct RunOptions {
  int theorem = 2;               // bound family for analyze / reproduce
  std::string mode = "cluster";  // simulate serve mode
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out_dir;           // empty -> scenario's output_dir
  bool dump_samples = false;
};

// Each runner writes its CSV (and plot script where applicable) under the
// output directory and returns the paths written. A [sweep] section produces
// one file per sweep value, same schema, value baked into the name.

// columns: gamma_db,lower,upper,heuristic,theorem,order_used
std::vector<std::string> run_analyze(const Scenario& sc, const RunOptions& opt);

// columns: gamma_db,estimate,ci95,n_trials,mode
std::vector<std::string> run_simulate(const Scenario& sc, const RunOptions& opt);

// columns: region,m,ks_distance,mean_z,var_z for m in {1,2,3} x both regions
std::vector<std::string> run_validate_gamma(const Scenario& sc, const RunOptions& opt);

// columns: kind,region,value,at_boundary
std::vector<std::string> run_sensitivity(const Scenario& sc, const RunOptions& opt);

// figure_id in {fig2..fig9, table1}; writes <id>.csv and <id>.gnuplot
std::vector<std::string> run_reproduce(const Scenario& sc, const std::string& figure_id,
                                       const RunOptions& opt);

}  // namespace satcov
