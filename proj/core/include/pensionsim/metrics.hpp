#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pensionsim {

/// Macro indicators computed at the end of each step. Fields with degenerate
/// denominators (per-capita values on an empty population, fund-per-retiree
/// with no retirees) are absent rather than zero or sentinel.
struct TickMetrics {
  int tick = 0;
  std::int64_t population = 0;
  std::int64_t working_count = 0;
  std::int64_t retired_count = 0;
  std::int64_t unbred_count = 0;  // living agents that have not bred yet
  double gdp = 0.0;               // total effective income this step, pre-levy
  std::optional<double> gdp_per_capita;
  std::optional<double> gini;
  double fund_balance = 0.0;
  std::optional<double> fund_per_retiree;
  std::optional<double> mean_vision;
  std::optional<double> mean_metabolism;
  std::optional<std::array<double, 10>> decile_shares;  // ascending deciles

  bool operator==(const TickMetrics&) const = default;
};

/// Cumulative (population share, wealth share) points from (0,0) to (1,1).
/// Lies on or below the diagonal; equals the diagonal when all wealths match
/// or the total is zero.
struct LorenzCurve {
  std::vector<std::pair<double, double>> points;
};

/// Gini coefficient of a non-negative wealth vector, computed with the
/// O(n log n) sorted identity; equal to the mean absolute pairwise difference
/// over twice the mean. Zero for empty input or zero total wealth. Throws
/// std::invalid_argument on negative wealth.
double gini(std::span<const double> wealths);

/// Lorenz curve of a non-negative wealth vector (ascending sort). Throws on
/// negative wealth.
LorenzCurve lorenz(std::span<const double> wealths);

/// Wealth shares of the ten ascending deciles. Ranks are split so decile d
/// covers sorted ranks (d-1)n/10 .. dn/10 (sizes differ by at most one);
/// equal wealths are kept in input order. A zero total yields count shares
/// so the result still sums to 1. Requires at least one entry.
std::array<double, 10> deciles(std::span<const double> wealths);

}  // namespace pensionsim
