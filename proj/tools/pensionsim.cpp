// Command-line front end: single runs, parameter sweeps, map utilities and
// config validation. All outputs are deterministic for a fixed config and
// master seed, whatever the job count.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "pensionsim/engine.hpp"
#include "pensionsim/landscape.hpp"
#include "pensionsim/output.hpp"
#include "pensionsim/scenario.hpp"
#include "pensionsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace pensionsim;

namespace {

int default_jobs() {
  if (const char* env = std::getenv("PENSIONSIM_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_run(const std::string& scenario_text, int ticks, std::uint64_t seed,
            const std::string& config_path, const std::string& out_dir,
            bool scenario_given, bool ticks_given, bool seed_given) {
  ScenarioSpec scenario;
  int run_ticks = ticks;
  std::uint64_t run_seed = seed;

  if (!config_path.empty()) {
    const SweepConfig cfg = load_config_file(config_path);
    scenario = cfg.base;
    if (!ticks_given) run_ticks = cfg.ticks;
    if (!seed_given) run_seed = cfg.master_seed;
    if (scenario_given) {
      const ScenarioTriple triple = parse_scenario(scenario_text);
      // Re-derive the trait distributions for the requested letter, keeping
      // the config's policy and structural settings.
      ScenarioSpec fresh = ScenarioSpec::from_triple(triple);
      fresh.policy.retirement_age = scenario.policy.retirement_age;
      fresh.policy.pension_tax_pct = scenario.policy.pension_tax_pct;
      fresh.policy.fixed_fee = scenario.policy.fixed_fee;
      fresh.policy.fixed_fee_mode = scenario.policy.fixed_fee_mode;
      fresh.children_dist = scenario.children_dist;
      fresh.max_age_dist = scenario.max_age_dist;
      fresh.wealth_dist = scenario.wealth_dist;
      fresh.initial_population = scenario.initial_population;
      fresh.landscape_width = scenario.landscape_width;
      fresh.landscape_height = scenario.landscape_height;
      fresh.landscape_template = scenario.landscape_template;
      fresh.productivity_knots = scenario.productivity_knots;
      fresh.leftover_stays = scenario.leftover_stays;
      fresh.breed_before_retirement = scenario.breed_before_retirement;
      scenario = fresh;
    }
  } else {
    scenario = ScenarioSpec::from_triple(parse_scenario(scenario_text));
  }

  preflight_out_dir(out_dir);
  const RunResult result = run(scenario, run_ticks, run_seed);
  write_run_files(out_dir, 0, 0, result, scenario, std::nullopt);
  std::cout << "run complete: " << run_ticks << " ticks, seed " << run_seed
            << ", final population " << result.summary.final_population << "\n"
            << "wrote " << (fs::path(out_dir) / "timeseries_0_0.csv").string()
            << " and summary_0_0.json\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int jobs) {
  SweepConfig cfg = load_config_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (cfg.out_dir.empty()) {
    throw std::runtime_error("no output directory: pass --out or set out_dir in the config");
  }
  preflight_out_dir(cfg.out_dir);

  const SweepResult result = run_sweep(cfg, jobs);
  write_sweep_outputs(cfg.out_dir, result);
  std::cout << "sweep complete: " << result.runs.size() << " runs ("
            << cfg.axis_x->values.size() << "x" << cfg.axis_y->values.size()
            << " cells, " << cfg.replications << " replications) -> "
            << cfg.out_dir << "\n";
  return 0;
}

int cmd_map(const std::string& emit_path, const std::string& check_path) {
  if (!emit_path.empty()) {
    const Landscape land = Landscape::generate_default(50, 50);
    std::ofstream out(emit_path, std::ios::binary);
    if (!out || !(out << land.to_map_text())) {
      throw std::runtime_error("cannot write map file: " + emit_path);
    }
    std::cout << "wrote 50x50 map to " << emit_path << "\n";
    return 0;
  }
  const Landscape land = Landscape::from_map_text(read_file(check_path));
  std::cout << "ok: " << land.width() << "x" << land.height() << " map\n";
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const SweepConfig cfg = load_config_file(config_path);
  if (cfg.axis_x && cfg.axis_y) {
    validate_sweep(cfg);
    const auto tasks = sweep_tasks(cfg);
    std::cout << "config ok: " << cfg.axis_x->values.size() << "x"
              << cfg.axis_y->values.size() << " grid, " << cfg.replications
              << " replications, " << tasks.size()
              << " runs, no seed collisions\n";
  } else {
    std::cout << "config ok: single-run configuration (no sweep axes)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based sugar-economy simulator with retirement and a pension fund"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute a single seeded run");
  std::string run_scenario = "S(OFF,OFF,U)";
  int run_ticks = 500;
  std::uint64_t run_seed = 0;
  std::string run_config;
  std::string run_out;
  auto* scenario_opt = run_cmd->add_option("--scenario", run_scenario,
                                           "Scenario triple, e.g. \"S(ON,OFF,U)\"");
  auto* ticks_opt = run_cmd->add_option("--ticks", run_ticks, "Number of steps");
  auto* seed_opt = run_cmd->add_option("--seed", run_seed, "Stream seed");
  run_cmd->add_option("--config", run_config, "JSON config supplying base settings");
  run_cmd->add_option("--out", run_out, "Output directory")->required();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Execute a two-axis parameter sweep");
  std::string sweep_config;
  std::string sweep_out;
  int jobs = default_jobs();
  sweep_cmd->add_option("--config", sweep_config, "JSON sweep config")->required();
  sweep_cmd->add_option("--out", sweep_out, "Output directory (overrides config)");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads (default: PENSIONSIM_JOBS or hardware)");

  // map
  auto* map_cmd = app.add_subcommand("map", "Emit or check a terrain map file");
  std::string map_emit;
  std::string map_check;
  auto* emit_opt = map_cmd->add_option("--emit", map_emit, "Write the default 50x50 map here");
  auto* check_opt = map_cmd->add_option("--check", map_check, "Parse and validate this map file");
  emit_opt->excludes(check_opt);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running");
  std::string validate_config;
  validate_cmd->add_option("--config", validate_config, "JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*run_cmd) {
      return cmd_run(run_scenario, run_ticks, run_seed, run_config, run_out,
                     scenario_opt->count() > 0, ticks_opt->count() > 0,
                     seed_opt->count() > 0);
    }
    if (*sweep_cmd) return cmd_sweep(sweep_config, sweep_out, jobs);
    if (*map_cmd) {
      if (map_emit.empty() && map_check.empty()) {
        std::cerr << "map: pass --emit FILE or --check FILE\n";
        return 2;
      }
      return cmd_map(map_emit, map_check);
    }
    if (*validate_cmd) return cmd_validate(validate_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
