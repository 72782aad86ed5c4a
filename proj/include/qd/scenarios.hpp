#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qd/correlations.hpp"
#include "qd/tomography.hpp"

namespace qd {

using ordered_json = nlohmann::ordered_json;

// Full parameter set for every scenario runner. Grids left empty fall back
// to the documented defaults when a runner needs them.
struct ScenarioConfig {
  uint64_t seed = 7;
  std::string out_dir = "out";
  double rank_tolerance = 1e-7;
  long shots = 1000;
  int copies = 70;
  int bins = 20;
  int instances = 1000;
  std::vector<double> damping_grid;          // fig2; default 11 uniform in [0,1]
  std::vector<double> werner_grid;           // fig5; default 21 uniform in [0,1]
  std::vector<long> shots_grid = {100, 250, 500, 1000};  // supp-noise
  OptimizerOptions optimizer;
  std::string prepare_name;                  // state subcommand
  double prepare_p = 0.0;
  std::string state_file;
};

// Strict parser: unknown keys are rejected so a typo cannot silently fall
// back to a default physics parameter.
ScenarioConfig config_from_json(const nlohmann::json& j);
ordered_json config_to_json(const ScenarioConfig& cfg);

// A machine-readable scenario result: metadata (conventions + resolved
// config, enough to reproduce the run bit-identically), named tables, and
// serialized operators. Cells hold numbers, strings, or null.
class Report {
public:
  Report(std::string scenario, const ScenarioConfig& cfg);

  void add_table(const std::string& name,
                 const std::vector<std::string>& columns);
  void add_row(const std::string& name, std::vector<ordered_json> cells);
  void add_operator(const std::string& name, const Eigen::MatrixXcd& m);

  const ordered_json& doc() const { return doc_; }
  ordered_json& doc_mutable() { return doc_; }
  std::string json_text() const;

  // Writes <scenario>.json plus one <scenario>.<table>.tsv per table.
  void write(const std::filesystem::path& out_dir) const;

private:
  std::string scenario_;
  ordered_json doc_;
};

Report run_fig2(const ScenarioConfig& cfg);
Report run_fig3(const ScenarioConfig& cfg);
Report run_fig4(const ScenarioConfig& cfg);
Report run_fig5(const ScenarioConfig& cfg);
Report run_supp_noise(const ScenarioConfig& cfg);
Report run_state(const ScenarioConfig& cfg);
Report run_rank_table(const ScenarioConfig& cfg);

// 4x4 complex matrix from the plain-text state format: 16 lines of
// "re im", row-major. Validated as a DensityOperator.
DensityOperator load_state_file(const std::filesystem::path& path);

std::vector<double> default_damping_grid();
std::vector<double> default_werner_grid();

}  // namespace qd
