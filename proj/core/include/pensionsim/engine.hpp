#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pensionsim/landscape.hpp"
#include "pensionsim/metrics.hpp"
#include "pensionsim/pension.hpp"
#include "pensionsim/population.hpp"
#include "pensionsim/productivity.hpp"
#include "pensionsim/rng.hpp"
#include "pensionsim/scenario.hpp"

namespace pensionsim {

struct Diagnostics {
  std::uint64_t births = 0;
  std::uint64_t deaths_starvation = 0;
  std::uint64_t deaths_old_age = 0;
  std::uint64_t skipped_births = 0;

  bool operator==(const Diagnostics&) const = default;
};

/// Complete state of one run. Agents are stored in creation order (ids are
/// monotone), which is also the iteration order everywhere except movement.
struct SimState {
  ScenarioSpec scenario;
  int tick = 0;
  Landscape landscape;
  std::vector<Agent> agents;  // living agents, working and retired
  Occupancy occupancy;        // working agents only
  PensionFund fund;
  ProductivityCurve curve;
  Rng rng;
  Diagnostics diagnostics;
  std::uint64_t next_agent_id = 0;
};

/// Builds the initial state: landscape from the scenario (procedural or the
/// provided template), the first generation spawned, empty fund, tick 0.
SimState init_run(const ScenarioSpec& scenario, std::uint64_t seed);

/// Advances one step. Phases run in a fixed order:
///   1. shuffle the movement order of working agents
///   2. each working agent moves, harvests, earns income (scaled by the
///      productivity factor when decay is on) and pays its contribution
///   3. each retiree consumes: pool first, savings for the remainder
///   4. each working agent consumes its metabolism; with social services on,
///      broke workers draw a welfare top-up
///   5. starvation deaths (wealth <= 0), working or retired
///   6. aging, then old-age deaths (age > max_age)
///   7. retirement transitions (age >= retirement_age) — retirees leave the
///      grid so their cells free up
///   8. breeding (age == age-to-reproduce, not yet bred, not retired); with
///      breed_before_retirement set, this phase runs before phase 7
///   9. sugar growback
///  10. indicators
/// Each agent moves and harvests at most once per step. Ledger checks run
/// every step; structural checks run per phase when deep_validation is set.
TickMetrics tick(SimState& state);

/// End-of-step indicator snapshot; incomes are this step's per-worker
/// effective incomes (GDP is their sum).
TickMetrics tick_indicators(const SimState& state, std::span<const double> incomes);

struct RunSummary {
  std::uint64_t seed = 0;
  int ticks = 0;
  std::int64_t final_population = 0;
  std::int64_t final_working = 0;
  std::int64_t final_retired = 0;
  double fund_balance = 0.0;
  double contributions_total = 0.0;
  double pensions_paid_total = 0.0;
  double welfare_paid_total = 0.0;
  Diagnostics diagnostics;
};

struct RunResult {
  std::vector<TickMetrics> series;
  RunSummary summary;
};

/// init_run + `ticks` steps. A run whose population hits zero keeps stepping
/// and emits zeroed metrics for the remaining ticks.
RunResult run(const ScenarioSpec& scenario, int ticks, std::uint64_t seed);

}  // namespace pensionsim
