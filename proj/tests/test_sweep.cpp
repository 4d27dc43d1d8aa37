#include "pensionsim/sweep.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "pensionsim/output.hpp"

using namespace pensionsim;
namespace fs = std::filesystem;

namespace {

const char* kSmallSweep = R"({
  "scenario": "S(OFF,OFF,U)",
  "ticks": 60,
  "replications": 2,
  "master_seed": 99,
  "initial_population": 120,
  "axis_x": {"param": "fixed_fee", "values": [0, 0.5]},
  "axis_y": {"param": "pension_tax_pct", "values": [0, 20]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pensionsim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing fills defaults and axes") {
  const SweepConfig cfg = load_config_text(kSmallSweep, ".");
  CHECK(cfg.ticks == 60);
  CHECK(cfg.replications == 2);
  CHECK(cfg.master_seed == 99);
  CHECK(cfg.base.initial_population == 120);
  REQUIRE(cfg.axis_x.has_value());
  REQUIRE(cfg.axis_y.has_value());
  CHECK(cfg.axis_x->param == SweepParam::FixedFee);
  CHECK(cfg.axis_y->param == SweepParam::PensionTaxPct);
  CHECK(cfg.axis_x->values == std::vector<double>{0, 0.5});
}

TEST_CASE("config parsing rejects junk") {
  CHECK_THROWS_WITH_AS(load_config_text(R"({"tick_count": 5})", "."),
                       doctest::Contains("unknown key"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      load_config_text(R"({"axis_x": {"param": "wombat", "values": [1]}})", "."),
      doctest::Contains("unknown sweep parameter"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      load_config_text(R"({"axis_x": {"param": "fixed_fee", "values": []}})", "."),
      doctest::Contains("non-empty"), std::runtime_error);
  CHECK_THROWS(load_config_text("not json at all", "."));
  CHECK_THROWS(load_config_text(R"({"ticks": 0})", "."));
  CHECK_THROWS(load_config_text(R"({"replications": 0})", "."));
  CHECK_THROWS(load_config_text(R"({"policy": {"pension_tax_pct": 200}})", "."));
}

TEST_CASE("config can override distributions") {
  const SweepConfig cfg = load_config_text(R"({
    "distributions": {
      "children": {"kind": "uniform_int", "lo": 1, "hi": 2},
      "vision": {"kind": "clamped_normal", "mu": 4.0, "sigma": 1.0,
                  "lo": 1, "hi": 6, "round": "nearest-int"}
    }
  })", ".");
  CHECK(cfg.base.children_dist == DistributionSpec::uniform_int(1, 2));
  CHECK(cfg.base.vision_dist == DistributionSpec::clamped_normal(4.0, 1.0, 1, 6, true));
}

TEST_CASE("axis values land in the right policy slots") {
  const SweepConfig cfg = load_config_text(kSmallSweep, ".");
  const ScenarioSpec cell = scenario_for_cell(cfg, 0.5, 20);
  CHECK(cell.policy.fixed_fee == 0.5);
  CHECK(cell.policy.pension_tax_pct == 20);
  CHECK(cell.policy.retirement_age == cfg.base.policy.retirement_age);
}

TEST_CASE("max_age_mean reshapes the maximum-age distribution") {
  SweepConfig cfg = load_config_text(kSmallSweep, ".");
  cfg.axis_x = SweepAxis{SweepParam::MaxAgeMean, {70}};
  cfg.axis_y = SweepAxis{SweepParam::RetirementAge, {60}};

  SUBCASE("uniform letter: shifted bounds, lifted above retirement") {
    const ScenarioSpec cell = scenario_for_cell(cfg, 70, 60);
    CHECK(cell.max_age_dist == DistributionSpec::uniform_int(61, 90));
  }

  SUBCASE("normal letter: clamped normal around the mean") {
    cfg.base.dist_kind = DistKind::Normal;
    const ScenarioSpec cell = scenario_for_cell(cfg, 70, 60);
    CHECK(cell.max_age_dist == DistributionSpec::clamped_normal(70, 6.7, 61, 90, true));
  }

  SUBCASE("lift applies the swept retirement age, not the base one") {
    const ScenarioSpec cell = scenario_for_cell(cfg, 70, 75);
    CHECK(cell.max_age_dist == DistributionSpec::uniform_int(76, 90));
  }

  SUBCASE("an empty range after the lift is a config error") {
    CHECK_THROWS_WITH_AS(scenario_for_cell(cfg, 60, 90), doctest::Contains("empty age range"),
                         std::runtime_error);
  }
}

TEST_CASE("a 5x5 grid with 5 replications yields 125 distinct seeds") {
  SweepConfig cfg = load_config_text(kSmallSweep, ".");
  cfg.axis_x = SweepAxis{SweepParam::FixedFee, {0, 0.25, 0.5, 1, 2}};
  cfg.axis_y = SweepAxis{SweepParam::PensionTaxPct, {0, 5, 10, 15, 20}};
  cfg.replications = 5;
  const auto tasks = sweep_tasks(cfg);
  CHECK(tasks.size() == 125);
  std::set<std::uint64_t> seeds;
  for (const auto& t : tasks) seeds.insert(t.seed);
  CHECK(seeds.size() == 125);
  CHECK_NOTHROW(validate_sweep(cfg));
}

TEST_CASE("sweep results arrive ordered by cell and replication") {
  const SweepConfig cfg = load_config_text(kSmallSweep, ".");
  const SweepResult result = run_sweep(cfg, 2);
  REQUIRE(result.runs.size() == 8);
  std::size_t i = 0;
  for (int xi = 0; xi < 2; ++xi) {
    for (int yi = 0; yi < 2; ++yi) {
      for (int rep = 0; rep < 2; ++rep) {
        const SweepRun& r = result.runs[i++];
        CHECK(r.task.xi == xi);
        CHECK(r.task.yi == yi);
        CHECK(r.task.rep == rep);
        CHECK(r.task.cell_index == xi * 2 + yi);
        CHECK(r.result.series.size() == 60);
      }
    }
  }
}

TEST_CASE("job count does not change a single byte of output") {
  const SweepConfig cfg = load_config_text(kSmallSweep, ".");
  const fs::path dir1 = fresh_dir("jobs1");
  const fs::path dir4 = fresh_dir("jobs4");
  write_sweep_outputs(dir1, run_sweep(cfg, 1));
  write_sweep_outputs(dir4, run_sweep(cfg, 4));

  std::set<std::string> names1, names4;
  for (const auto& e : fs::directory_iterator(dir1)) names1.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(dir4)) names4.insert(e.path().filename().string());
  REQUIRE(names1 == names4);
  CHECK(names1.size() == 8 * 2 + 1);  // per-run csv+json plus aggregate.csv
  for (const std::string& name : names1) {
    CHECK(slurp(dir1 / name) == slurp(dir4 / name));
  }
}

TEST_CASE("a 1x1 grid with one replication degenerates to a single run") {
  SweepConfig cfg = load_config_text(kSmallSweep, ".");
  cfg.axis_x = SweepAxis{SweepParam::FixedFee, {0}};
  cfg.axis_y = SweepAxis{SweepParam::PensionTaxPct, {0}};
  cfg.replications = 1;

  const SweepResult swept = run_sweep(cfg, 1);
  REQUIRE(swept.runs.size() == 1);
  const RunResult direct = run(scenario_for_cell(cfg, 0, 0), cfg.ticks,
                               derive_seed(cfg.master_seed, 0, 0));
  CHECK(timeseries_csv(swept.runs[0].result) == timeseries_csv(direct));
}

TEST_CASE("timeseries files have one row per tick plus the header") {
  const SweepConfig cfg = load_config_text(kSmallSweep, ".");
  const fs::path dir = fresh_dir("rowcount");
  write_sweep_outputs(dir, run_sweep(cfg, 2));

  const std::string csv = slurp(dir / "timeseries_0_0.csv");
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == 60 + 1);

  const std::string agg = slurp(dir / "aggregate.csv");
  CHECK(static_cast<std::size_t>(std::count(agg.begin(), agg.end(), '\n')) == 8 + 1);
}

TEST_CASE("fund-per-retiree cells stay empty before the first retirement") {
  const SweepConfig cfg = load_config_text(kSmallSweep, ".");
  const SweepResult result = run_sweep(cfg, 2);
  const std::string csv = timeseries_csv(result.runs[0].result);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);  // tick 1, nobody can be retired yet
  // fund_per_retiree is column 10 of 22; expect ",," around it.
  std::size_t commas = 0, start = 0;
  for (std::size_t i = 0; i < line.size() && commas < 9; ++i) {
    if (line[i] == ',') {
      ++commas;
      start = i + 1;
    }
  }
  REQUIRE(commas == 9);
  CHECK(line[start] == ',');  // empty cell
}

TEST_CASE("aggregate means honor absent indicators") {
  SweepConfig cfg = load_config_text(kSmallSweep, ".");
  cfg.ticks = 30;  // nobody retires within the window
  const SweepResult result = run_sweep(cfg, 2);
  const CellAggregate agg = aggregate_run(result.runs.front());
  CHECK_FALSE(agg.fund_per_retiree.has_value());
  CHECK(agg.population > 0.0);
  CHECK(agg.gini.has_value());
}

TEST_CASE("unwritable output directories fail the pre-flight") {
  CHECK_THROWS(preflight_out_dir("/proc/definitely/not/writable"));
}
