#include "pensionsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace pensionsim {

namespace {

constexpr double kLedgerTol = 1e-9;

Landscape build_landscape(const ScenarioSpec& scenario) {
  if (scenario.landscape_template) return *scenario.landscape_template;
  return Landscape::generate_default(scenario.landscape_width,
                                     scenario.landscape_height);
}

ProductivityCurve build_curve(const ScenarioSpec& scenario) {
  if (!scenario.productivity_knots.empty()) {
    return ProductivityCurve(scenario.productivity_knots);
  }
  return ProductivityCurve::default_curve();
}

/// Per-step flow record for the wealth ledger and the once-per-step action
/// flags. Flows are kept as applied to agent wealth.
struct AgentFlows {
  double start_wealth = 0.0;
  double income = 0.0;
  double contribution = 0.0;
  double consumed = 0.0;  // metabolism from savings
  double welfare = 0.0;
  double inheritance_out = 0.0;
  bool moved = false;
  bool harvested = false;
  bool born_this_tick = false;
};

class TickContext {
 public:
  explicit TickContext(SimState& state) : state_(state) {
    flows_.reserve(state.agents.size());
    for (const Agent& a : state.agents) {
      flows_[a.id].start_wealth = a.wealth;
    }
  }

  AgentFlows& flows(std::uint64_t id) { return flows_[id]; }

  void record_birth(const Agent& child, double endowment, AgentFlows& parent) {
    AgentFlows& f = flows_[child.id];
    f.born_this_tick = true;
    f.start_wealth = endowment;
    parent.inheritance_out += endowment;
  }

  /// wealth == start + income - contribution - consumed + welfare
  ///           - inheritance_out, for every living agent.
  void check_wealth_ledger() const {
    for (const Agent& a : state_.agents) {
      const auto it = flows_.find(a.id);
      if (it == flows_.end()) throw std::logic_error("ledger: unknown agent");
      const AgentFlows& f = it->second;
      const double expected = f.start_wealth + f.income - f.contribution -
                              f.consumed + f.welfare - f.inheritance_out;
      if (std::abs(a.wealth - expected) > kLedgerTol) {
        throw std::logic_error("ledger: wealth drift for agent " +
                               std::to_string(a.id));
      }
    }
  }

 private:
  SimState& state_;
  std::unordered_map<std::uint64_t, AgentFlows> flows_;
};

void check_structure(const SimState& state) {
  std::size_t working = 0;
  for (const Agent& a : state.agents) {
    if (a.retired) continue;
    ++working;
    if (state.occupancy.occupant(a.pos) != static_cast<std::int64_t>(a.id)) {
      throw std::logic_error("occupancy: working agent not at its cell");
    }
  }
  if (working != state.occupancy.count()) {
    throw std::logic_error("occupancy: count mismatch");
  }
  for (int y = 0; y < state.landscape.height(); ++y) {
    for (int x = 0; x < state.landscape.width(); ++x) {
      const Cell& c = state.landscape.at({x, y});
      if (c.level < 0.0 || c.level > c.capacity + kLedgerTol) {
        throw std::logic_error("landscape: level outside [0, capacity]");
      }
    }
  }
}

void check_fund(const PensionFund& fund) {
  if (!fund.ledger_consistent()) throw std::logic_error("fund: ledger broken");
  const double drift = fund.balance() - (fund.contributions_total() -
                                         fund.pensions_paid_total() -
                                         fund.welfare_paid_total());
  if (std::abs(drift) > kLedgerTol || fund.balance() < 0.0) {
    throw std::logic_error("fund: balance identity drift");
  }
}

}  // namespace

SimState init_run(const ScenarioSpec& scenario, std::uint64_t seed) {
  scenario.validate();
  SimState state{scenario,
                 0,
                 build_landscape(scenario),
                 {},
                 Occupancy(1, 1),
                 PensionFund{},
                 build_curve(scenario),
                 Rng(seed),
                 Diagnostics{},
                 0};
  SpawnResult spawned = spawn_initial(scenario.initial_population, scenario,
                                      state.landscape, state.rng);
  state.agents = std::move(spawned.agents);
  state.occupancy = std::move(spawned.occupancy);
  state.next_agent_id = static_cast<std::uint64_t>(scenario.initial_population);
  check_structure(state);
  return state;
}

TickMetrics tick(SimState& state) {
  const ScenarioSpec& sc = state.scenario;
  const PolicyParams& policy = sc.policy;
  const bool deep = sc.deep_validation;
  TickContext ctx(state);
  auto phase_check = [&] {
    if (deep) check_structure(state);
  };

  // Phase 1: movement order.
  std::vector<std::size_t> move_order;
  move_order.reserve(state.agents.size());
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    if (!state.agents[i].retired) move_order.push_back(i);
  }
  state.rng.shuffle(move_order);
  phase_check();

  // Phase 2: move, harvest, earn, contribute.
  std::vector<double> incomes;
  incomes.reserve(move_order.size());
  for (std::size_t idx : move_order) {
    Agent& a = state.agents[idx];
    AgentFlows& f = ctx.flows(a.id);
    if (f.moved || f.harvested) throw std::logic_error("agent acted twice in one step");
    f.moved = f.harvested = true;

    const Position target = choose_move(a, state.landscape, state.occupancy, state.rng);
    state.occupancy.move(a.pos, target);
    a.pos = target;

    const double available = state.landscape.harvest(a.pos);
    const double factor = policy.productivity_decay ? state.curve.at(a.age) : 1.0;
    const double income = available * factor;
    if (sc.leftover_stays && income < available) {
      state.landscape.at(a.pos).level = available - income;
    }
    a.wealth += income;
    f.income += income;
    incomes.push_back(income);

    const double paid = state.fund.collect_contribution(income, a.wealth, policy);
    a.wealth -= paid;
    f.contribution += paid;
  }
  phase_check();

  // Phase 3: retiree consumption, pool first.
  for (Agent& a : state.agents) {
    if (!a.retired) continue;
    const auto payout = state.fund.pay_pension(a.metabolism);
    a.wealth -= payout.from_savings;
    ctx.flows(a.id).consumed += payout.from_savings;
  }
  phase_check();

  // Phase 4: worker consumption and welfare.
  for (Agent& a : state.agents) {
    if (a.retired) continue;
    a.wealth -= a.metabolism;
    AgentFlows& f = ctx.flows(a.id);
    f.consumed += a.metabolism;
    if (policy.social_services && a.wealth <= 0.0) {
      const double granted = state.fund.welfare_top_up(a.wealth, a.metabolism);
      a.wealth += granted;
      f.welfare += granted;
    }
  }
  phase_check();

  // Phase 5: starvation.
  for (const Agent& a : state.agents) {
    if (check_vital(a, policy.retirement_age).status == VitalStatus::DeadStarvation) {
      ++state.diagnostics.deaths_starvation;
      if (!a.retired) state.occupancy.remove(a.pos);
    }
  }
  std::erase_if(state.agents, [](const Agent& a) { return a.wealth <= 0.0; });
  phase_check();

  // Phase 6: aging and old-age deaths.
  for (Agent& a : state.agents) ++a.age;
  for (const Agent& a : state.agents) {
    if (check_vital(a, policy.retirement_age).status == VitalStatus::DeadOldAge) {
      ++state.diagnostics.deaths_old_age;
      if (!a.retired) state.occupancy.remove(a.pos);
    }
  }
  std::erase_if(state.agents, [](const Agent& a) { return a.age > a.max_age; });
  phase_check();

  auto retire_transitions = [&] {
    for (Agent& a : state.agents) {
      if (a.retired) continue;
      if (check_vital(a, policy.retirement_age).retires_now) {
        state.occupancy.remove(a.pos);
        a.retired = true;
      }
    }
    phase_check();
  };

  auto breed = [&] {
    const std::size_t count_before = state.agents.size();
    for (std::size_t i = 0; i < count_before; ++i) {
      Agent& parent = state.agents[i];
      if (parent.retired || parent.has_bred || parent.age != parent.age_to_reproduce) {
        continue;
      }
      AgentFlows& parent_flows = ctx.flows(parent.id);
      std::vector<Agent> children =
          reproduce(parent, sc, state.occupancy, state.landscape, state.rng,
                    state.next_agent_id, state.diagnostics.skipped_births);
      for (Agent& child : children) {
        ++state.diagnostics.births;
        ctx.record_birth(child, child.wealth, parent_flows);
        state.agents.push_back(std::move(child));
      }
    }
    phase_check();
  };

  // Phases 7 and 8: retirement wins simultaneous transitions by default.
  if (sc.breed_before_retirement) {
    breed();
    retire_transitions();
  } else {
    retire_transitions();
    breed();
  }

  // Phase 9: growback.
  state.landscape.grow_back();
  phase_check();

  // Phase 10: indicators and ledgers.
  ++state.tick;
  ctx.check_wealth_ledger();
  check_fund(state.fund);
  check_structure(state);
  return tick_indicators(state, incomes);
}

TickMetrics tick_indicators(const SimState& state, std::span<const double> incomes) {
  TickMetrics m;
  m.tick = state.tick;
  m.population = static_cast<std::int64_t>(state.agents.size());
  m.fund_balance = state.fund.balance();

  std::vector<double> wealths;
  wealths.reserve(state.agents.size());
  double vision_sum = 0.0;
  double metabolism_sum = 0.0;
  for (const Agent& a : state.agents) {
    if (a.retired) {
      ++m.retired_count;
    } else {
      ++m.working_count;
    }
    if (!a.has_bred) ++m.unbred_count;
    wealths.push_back(a.wealth);
    vision_sum += a.vision;
    metabolism_sum += a.metabolism;
  }

  for (double v : incomes) m.gdp += v;

  if (m.population > 0) {
    const double pop = static_cast<double>(m.population);
    m.gdp_per_capita = m.gdp / pop;
    m.gini = gini(wealths);
    m.mean_vision = vision_sum / pop;
    m.mean_metabolism = metabolism_sum / pop;
    m.decile_shares = deciles(wealths);
  }
  if (m.retired_count > 0) {
    m.fund_per_retiree = m.fund_balance / static_cast<double>(m.retired_count);
  }
  return m;
}

RunResult run(const ScenarioSpec& scenario, int ticks, std::uint64_t seed) {
  if (ticks < 1) throw std::invalid_argument("run: ticks must be >= 1");
  SimState state = init_run(scenario, seed);

  RunResult result;
  result.series.reserve(static_cast<std::size_t>(ticks));
  for (int t = 0; t < ticks; ++t) result.series.push_back(tick(state));

  RunSummary& s = result.summary;
  s.seed = seed;
  s.ticks = ticks;
  s.final_population = static_cast<std::int64_t>(state.agents.size());
  for (const Agent& a : state.agents) {
    if (a.retired) {
      ++s.final_retired;
    } else {
      ++s.final_working;
    }
  }
  s.fund_balance = state.fund.balance();
  s.contributions_total = state.fund.contributions_total();
  s.pensions_paid_total = state.fund.pensions_paid_total();
  s.welfare_paid_total = state.fund.welfare_paid_total();
  s.diagnostics = state.diagnostics;
  return result;
}

}  // namespace pensionsim
