#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "pensionsim/engine.hpp"
#include "pensionsim/sweep.hpp"

namespace pensionsim {

/// Per-step CSV. Columns, in order: tick, population, working_count,
/// retired_count, unbred_count, gdp, gdp_per_capita, gini, fund_balance,
/// fund_per_retiree, mean_vision, mean_metabolism, d1..d10. Absent values
/// are empty cells. One row per step plus the header.
std::string timeseries_csv(const RunResult& result);

/// Per-run metadata and ledger totals as pretty-printed JSON (keys sorted,
/// trailing newline). Axis info is included when provided.
struct AxisInfo {
  std::string x_param;
  double x_value = 0.0;
  std::string y_param;
  double y_value = 0.0;
};
std::string run_summary_json(const RunResult& result, const ScenarioSpec& scenario,
                             const std::optional<AxisInfo>& axis);

/// Sweep-level table: x, y, rep, then final-window means of population,
/// gini, fund_per_retiree and gdp_per_capita. Absent means are empty cells.
std::string aggregate_csv(const SweepResult& result);

/// Creates the directory (parents included) and verifies it is writable by
/// writing and removing a probe file. Throws std::runtime_error otherwise.
void preflight_out_dir(const std::filesystem::path& dir);

/// timeseries_<cell>_<rep>.csv and summary_<cell>_<rep>.json under dir.
void write_run_files(const std::filesystem::path& dir, int cell_index, int rep,
                     const RunResult& result, const ScenarioSpec& scenario,
                     const std::optional<AxisInfo>& axis);

/// All per-run files plus aggregate.csv. Runs the directory pre-flight first.
void write_sweep_outputs(const std::filesystem::path& dir, const SweepResult& result);

/// Numeric formatting used in all CSV output: integers render as integers,
/// doubles with up to 12 significant digits.
std::string format_number(double value);
std::string format_number(std::int64_t value);

}  // namespace pensionsim
