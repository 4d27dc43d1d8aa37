#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pensionsim/engine.hpp"
#include "pensionsim/scenario.hpp"

namespace pensionsim {

/// Parameters a sweep axis may vary.
enum class SweepParam { RetirementAge, MaxAgeMean, PensionTaxPct, FixedFee };

SweepParam parse_sweep_param(std::string_view name);
std::string_view sweep_param_name(SweepParam param);

struct SweepAxis {
  SweepParam param = SweepParam::RetirementAge;
  std::vector<double> values;
};

/// A full experiment: base scenario plus two parameter axes, `replications`
/// seeded runs per grid cell.
struct SweepConfig {
  ScenarioSpec base;
  int ticks = 500;
  int replications = 5;
  std::uint64_t master_seed = 0;
  std::optional<SweepAxis> axis_x;
  std::optional<SweepAxis> axis_y;
  std::string out_dir;  // default output directory; CLI may override
};

/// Reads the JSON config document. Relative map/knot paths resolve against
/// base_dir. Unknown top-level keys are rejected. Throws std::runtime_error
/// with a description on malformed input.
SweepConfig load_config_text(std::string_view json_text,
                             const std::filesystem::path& base_dir);
SweepConfig load_config_file(const std::filesystem::path& path);

/// The base scenario with one axis value applied:
///   retirement_age, pension_tax_pct — integral values into the policy
///   fixed_fee                       — value into the policy
///   max_age_mean                    — replaces the maximum-age distribution
///     with U(mean-20, mean+20) under the uniform letter or
///     N(mean, 6.7) clamped to [mean-20, mean+20] under the normal letter,
///     in both cases lifted to at least retirement_age + 1.
/// max_age_mean is applied after the other axis so the lift sees the swept
/// retirement age. Throws on invalid values (including an empty range after
/// the lift).
ScenarioSpec scenario_for_cell(const SweepConfig& config, double x_value,
                               double y_value);

/// Grid cell (xi, yi) replicate r maps to linear cell index xi * |axis_y| + yi
/// and stream seed derive_seed(master, cell, r).
struct SweepTask {
  int xi = 0;
  int yi = 0;
  int rep = 0;
  int cell_index = 0;
  std::uint64_t seed = 0;
};

std::vector<SweepTask> sweep_tasks(const SweepConfig& config);

/// All pre-run checks: both axes present and non-empty, every cell's scenario
/// valid (clip checks included), replications >= 1, and no two tasks sharing
/// a derived seed. Throws std::runtime_error describing the first failure.
void validate_sweep(const SweepConfig& config);

struct SweepRun {
  SweepTask task;
  double x_value = 0.0;
  double y_value = 0.0;
  ScenarioSpec scenario;
  RunResult result;
};

/// Runs ordered by (xi, yi, rep) regardless of execution interleaving.
struct SweepResult {
  SweepConfig config;
  std::vector<SweepRun> runs;
};

/// Executes the full grid with `jobs` worker threads (clamped to >= 1).
/// Output is identical for any job count.
SweepResult run_sweep(const SweepConfig& config, int jobs);

/// Mean of each headline indicator over the final window (the last
/// min(100, ticks) steps). Indicators absent for the whole window stay
/// absent.
struct CellAggregate {
  double x_value = 0.0;
  double y_value = 0.0;
  int rep = 0;
  double population = 0.0;
  std::optional<double> gini;
  std::optional<double> fund_per_retiree;
  std::optional<double> gdp_per_capita;
};

CellAggregate aggregate_run(const SweepRun& run);
std::vector<CellAggregate> aggregate_sweep(const SweepResult& result);

}  // namespace pensionsim
