#include "pensionsim/population.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pensionsim {

Occupancy::Occupancy(int width, int height) : width_(width), height_(height) {
  ids_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
              kEmpty);
}

void Occupancy::place(std::uint64_t id, Position p) {
  std::int64_t& slot = ids_[index(p)];
  if (slot != kEmpty) throw std::logic_error("Occupancy::place: cell already occupied");
  slot = static_cast<std::int64_t>(id);
  ++count_;
}

void Occupancy::remove(Position p) {
  std::int64_t& slot = ids_[index(p)];
  if (slot == kEmpty) throw std::logic_error("Occupancy::remove: cell already empty");
  slot = kEmpty;
  --count_;
}

void Occupancy::move(Position from, Position to) {
  if (from == to) return;
  std::int64_t& src = ids_[index(from)];
  std::int64_t& dst = ids_[index(to)];
  if (src == kEmpty) throw std::logic_error("Occupancy::move: source empty");
  if (dst != kEmpty) throw std::logic_error("Occupancy::move: destination occupied");
  dst = src;
  src = kEmpty;
}

namespace {

void sample_traits(Agent& agent, const ScenarioSpec& scenario, Rng& rng) {
  agent.max_age = static_cast<int>(rng.sample(scenario.max_age_dist));
  agent.age_to_reproduce = static_cast<int>(rng.sample(scenario.age_to_reproduce_dist));
  agent.n_children_target = static_cast<int>(rng.sample(scenario.children_dist));
}

}  // namespace

SpawnResult spawn_initial(int n, const ScenarioSpec& scenario,
                          const Landscape& landscape, Rng& rng) {
  const std::size_t cell_count = landscape.cell_count();
  if (n < 0 || static_cast<std::size_t>(n) > cell_count) {
    throw std::invalid_argument("spawn_initial: population " + std::to_string(n) +
                                " exceeds cell count " + std::to_string(cell_count));
  }

  // Distinct uniform positions: shuffle the cell index space and take n.
  std::vector<std::uint32_t> order(cell_count);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);

  SpawnResult out{{}, Occupancy(landscape.width(), landscape.height())};
  out.agents.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Agent a;
    a.id = static_cast<std::uint64_t>(i);
    const std::uint32_t cell = order[static_cast<std::size_t>(i)];
    a.pos = {static_cast<int>(cell % static_cast<std::uint32_t>(landscape.width())),
             static_cast<int>(cell / static_cast<std::uint32_t>(landscape.width()))};
    a.vision = static_cast<int>(rng.sample(scenario.vision_dist));
    a.metabolism = static_cast<int>(rng.sample(scenario.metabolism_dist));
    a.age_to_reproduce = static_cast<int>(rng.sample(scenario.age_to_reproduce_dist));
    a.wealth = rng.sample(scenario.wealth_dist);
    a.max_age = static_cast<int>(rng.sample(scenario.max_age_dist));
    a.n_children_target = static_cast<int>(rng.sample(scenario.children_dist));
    out.occupancy.place(a.id, a.pos);
    out.agents.push_back(a);
  }
  return out;
}

Position choose_move(const Agent& agent, const Landscape& landscape,
                     const Occupancy& occupancy, Rng& rng) {
  std::vector<Position> candidates;
  candidates.push_back(agent.pos);  // staying put is always available
  for (Position p : landscape.visible_positions(agent.pos, agent.vision)) {
    if (!occupancy.occupied(p)) candidates.push_back(p);
  }

  double best_level = -1.0;
  int best_dist = 0;
  std::vector<Position> best;
  for (Position p : candidates) {
    const double level = landscape.at(p).level;
    const int dist = landscape.lattice_distance(agent.pos, p);
    if (level > best_level || (level == best_level && dist < best_dist)) {
      best_level = level;
      best_dist = dist;
      best.clear();
      best.push_back(p);
    } else if (level == best_level && dist == best_dist) {
      best.push_back(p);
    }
  }
  if (best.size() == 1) return best.front();
  return best[rng.pick_index(best.size())];
}

namespace {

/// Unoccupied cells nearest to `from` (positive wrapped lattice distance),
/// in row-major order.
std::vector<Position> nearest_free_cells(const Landscape& landscape,
                                         const Occupancy& occupancy,
                                         Position from) {
  std::vector<Position> best;
  int best_dist = -1;
  for (int y = 0; y < landscape.height(); ++y) {
    for (int x = 0; x < landscape.width(); ++x) {
      const Position p{x, y};
      if (occupancy.occupied(p)) continue;
      const int dist = landscape.lattice_distance(from, p);
      if (dist == 0) continue;
      if (best_dist < 0 || dist < best_dist) {
        best_dist = dist;
        best.clear();
        best.push_back(p);
      } else if (dist == best_dist) {
        best.push_back(p);
      }
    }
  }
  return best;
}

}  // namespace

std::vector<Agent> reproduce(Agent& parent, const ScenarioSpec& scenario,
                             Occupancy& occupancy, const Landscape& landscape,
                             Rng& rng, std::uint64_t& next_id,
                             std::uint64_t& skipped_births) {
  if (parent.retired || parent.has_bred || parent.age != parent.age_to_reproduce) {
    throw std::logic_error("reproduce: parent not eligible");
  }
  parent.has_bred = true;

  const int k = parent.n_children_target;
  std::vector<Agent> children;
  if (k <= 0) return children;

  const double wealth_before = parent.wealth;
  const double endowment = wealth_before / (2.0 * k);
  children.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    Agent child;
    child.vision = parent.vision;
    child.metabolism = parent.metabolism;
    child.wealth = endowment;
    sample_traits(child, scenario, rng);

    std::vector<Position> spots = nearest_free_cells(landscape, occupancy, parent.pos);
    if (spots.empty()) {
      // No room anywhere: the child is not created and its share stays with
      // the parent, keeping wealth conserved.
      ++skipped_births;
      continue;
    }
    child.pos = spots.size() == 1 ? spots.front() : spots[rng.pick_index(spots.size())];
    child.id = next_id++;
    occupancy.place(child.id, child.pos);
    parent.wealth -= endowment;
    children.push_back(child);
  }
  return children;
}

VitalCheck check_vital(const Agent& agent, int retirement_age) {
  VitalCheck out;
  if (agent.wealth <= 0.0) {
    out.status = VitalStatus::DeadStarvation;
  } else if (agent.age > agent.max_age) {
    out.status = VitalStatus::DeadOldAge;
  }
  out.retires_now = !agent.retired && agent.age >= retirement_age;
  return out;
}

}  // namespace pensionsim
