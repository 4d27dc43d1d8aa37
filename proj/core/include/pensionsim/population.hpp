#pragma once

#include <cstdint>
#include <vector>

#include "pensionsim/landscape.hpp"
#include "pensionsim/rng.hpp"
#include "pensionsim/scenario.hpp"

namespace pensionsim {

struct Agent {
  std::uint64_t id = 0;
  Position pos;           // meaningful only while working
  int vision = 1;         // 1..6, fixed for life
  int metabolism = 1;     // 1..4, fixed for life
  double wealth = 0.0;
  int age = 0;
  int max_age = 0;
  int n_children_target = 0;
  int age_to_reproduce = 0;
  bool has_bred = false;
  bool retired = false;
};

/// Which working agent sits on which cell. Exactly the working (non-retired,
/// living) agents appear here, at most one per cell.
class Occupancy {
 public:
  static constexpr std::int64_t kEmpty = -1;

  Occupancy(int width, int height);

  bool occupied(Position p) const { return ids_[index(p)] != kEmpty; }
  std::int64_t occupant(Position p) const { return ids_[index(p)]; }
  std::size_t count() const { return count_; }

  void place(std::uint64_t id, Position p);
  void remove(Position p);
  void move(Position from, Position to);

  int width() const { return width_; }
  int height() const { return height_; }

  bool operator==(const Occupancy&) const = default;

 private:
  std::size_t index(Position p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(p.x);
  }

  int width_;
  int height_;
  std::size_t count_ = 0;
  std::vector<std::int64_t> ids_;
};

struct SpawnResult {
  std::vector<Agent> agents;
  Occupancy occupancy;
};

/// Creates the first generation: n agents on distinct uniformly random cells,
/// traits per the scenario distributions, age 0, ids 0..n-1. Per-agent draw
/// order is vision, metabolism, age-to-reproduce, wealth, max-age, children.
/// Throws std::invalid_argument when n exceeds the cell count.
SpawnResult spawn_initial(int n, const ScenarioSpec& scenario,
                          const Landscape& landscape, Rng& rng);

/// The movement rule: among the visible cells plus the current one, keep
/// those unoccupied (the agent's own cell counts as free for itself), take
/// the highest sugar level, break ties by smallest wrapped lattice distance,
/// and break remaining ties uniformly at random. Staying put is always legal.
Position choose_move(const Agent& agent, const Landscape& landscape,
                     const Occupancy& occupancy, Rng& rng);

/// One breeding event. The parent's target count k of children are created
/// at once: each inherits the parent's vision and metabolism, receives
/// wealth_before / (2k) (the parent keeps half), starts at age 0 with freshly
/// sampled max-age, age-to-reproduce and children count (draw order in that
/// order, then the placement tie-break), and is placed on the nearest
/// unoccupied cell to the parent (wrapped lattice distance, uniform
/// tie-break). A child with no free cell anywhere is not created and counts
/// into skipped_births. Children are registered in the occupancy; ids come
/// from next_id. Sets parent.has_bred.
std::vector<Agent> reproduce(Agent& parent, const ScenarioSpec& scenario,
                             Occupancy& occupancy, const Landscape& landscape,
                             Rng& rng, std::uint64_t& next_id,
                             std::uint64_t& skipped_births);

enum class VitalStatus { Alive, DeadStarvation, DeadOldAge };

struct VitalCheck {
  VitalStatus status = VitalStatus::Alive;
  bool retires_now = false;
};

/// Pure status evaluation: starvation at wealth <= 0, old age at
/// age > max_age (starvation takes precedence), and a pending retirement
/// transition at age >= retirement_age for agents not yet retired.
VitalCheck check_vital(const Agent& agent, int retirement_age);

}  // namespace pensionsim
