#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pensionsim/landscape.hpp"
#include "pensionsim/pension.hpp"
#include "pensionsim/rng.hpp"

namespace pensionsim {

enum class DistKind { Uniform, Normal };

/// The short-form scenario triple: social services on/off, productivity decay
/// on/off, and whether trait distributions are uniform or normal.
struct ScenarioTriple {
  bool social_services = false;
  bool productivity_decay = false;
  DistKind dist_kind = DistKind::Uniform;

  bool operator==(const ScenarioTriple&) const = default;
};

/// Parses "S(<ss>,<pd>,<d>)" where <ss>/<pd> are ON|OFF|1|0 and <d> is U|N,
/// case-insensitive, spaces allowed. Throws std::runtime_error with the
/// character position and the expected tokens on malformed input.
ScenarioTriple parse_scenario(std::string_view text);

/// Canonical rendering, e.g. "S(ON,OFF,U)". parse(render(t)) == t.
std::string render_scenario(const ScenarioTriple& triple);

/// Everything a single run needs, distributions included.
///
/// The dist-kind letter governs vision, metabolism and age-to-reproduce only;
/// children-per-agent and maximum age keep their own distributions. The
/// normal parameterizations put mu +- 3 sigma on the uniform ranges.
struct ScenarioSpec {
  PolicyParams policy;
  DistKind dist_kind = DistKind::Uniform;

  DistributionSpec vision_dist = DistributionSpec::uniform_int(1, 6);
  DistributionSpec metabolism_dist = DistributionSpec::uniform_int(1, 4);
  DistributionSpec age_to_reproduce_dist = DistributionSpec::uniform_int(15, 50);
  DistributionSpec children_dist = DistributionSpec::uniform_int(0, 3);
  DistributionSpec max_age_dist = DistributionSpec::uniform_int(60, 100);
  DistributionSpec wealth_dist = DistributionSpec::uniform_int(5, 25);

  int initial_population = 400;
  int landscape_width = 50;
  int landscape_height = 50;

  /// Parsed map to use instead of the procedural terrain (copied per run).
  std::shared_ptr<const Landscape> landscape_template;

  /// Custom productivity knots; empty means the built-in table.
  std::vector<std::pair<double, double>> productivity_knots;

  /// When true, an agent under productivity decay leaves the uncollected
  /// fraction of a harvest on the cell instead of wasting it.
  bool leftover_stays = false;

  /// When true, an agent hitting breeding age and retirement age on the same
  /// step breeds first. Default is to retire first.
  bool breed_before_retirement = false;

  /// Extra structural checks after every phase of every step (slow; meant
  /// for tests).
  bool deep_validation = false;

  /// Defaults for the given triple: policy flags copied over and the three
  /// trait distributions set per the letter —
  ///   U: vision U(1,6), metabolism U(1,4), age-to-reproduce U(15,50)
  ///   N: vision N(3.5,0.8)->[1,6], metabolism N(2.5,0.5)->[1,4],
  ///      age-to-reproduce N(32.5,5.8)->[15,50], all rounded to integers.
  static ScenarioSpec from_triple(const ScenarioTriple& triple);

  ScenarioTriple triple() const {
    return {policy.social_services, policy.productivity_decay, dist_kind};
  }

  /// Validates policy and all distribution specs; throws std::invalid_argument.
  void validate() const;
};

}  // namespace pensionsim
