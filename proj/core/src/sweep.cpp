#include "pensionsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace pensionsim {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw std::runtime_error("config error: " + what);
}

long long integral_or_throw(double v, const std::string& what) {
  if (v != std::floor(v)) config_error(what + " must be an integer, got " + std::to_string(v));
  return static_cast<long long>(v);
}

DistributionSpec parse_distribution(const json& j, const std::string& where) {
  if (!j.is_object()) config_error(where + ": expected an object");
  const std::string kind = j.value("kind", "");
  if (kind == "uniform_int") {
    return DistributionSpec::uniform_int(j.at("lo").get<long long>(),
                                         j.at("hi").get<long long>());
  }
  if (kind == "clamped_normal") {
    const std::string rounding = j.value("round", "none");
    if (rounding != "none" && rounding != "nearest-int") {
      config_error(where + ": round must be 'none' or 'nearest-int'");
    }
    return DistributionSpec::clamped_normal(
        j.at("mu").get<double>(), j.at("sigma").get<double>(),
        j.at("lo").get<double>(), j.at("hi").get<double>(),
        rounding == "nearest-int");
  }
  config_error(where + ": kind must be 'uniform_int' or 'clamped_normal'");
}

SweepAxis parse_axis(const json& j, const std::string& where) {
  if (!j.is_object()) config_error(where + ": expected an object");
  SweepAxis axis;
  axis.param = parse_sweep_param(j.at("param").get<std::string>());
  axis.values = j.at("values").get<std::vector<double>>();
  if (axis.values.empty()) config_error(where + ": values must be non-empty");
  return axis;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "retirement_age") return SweepParam::RetirementAge;
  if (name == "max_age_mean") return SweepParam::MaxAgeMean;
  if (name == "pension_tax_pct") return SweepParam::PensionTaxPct;
  if (name == "fixed_fee") return SweepParam::FixedFee;
  config_error("unknown sweep parameter '" + std::string(name) +
               "' (expected retirement_age, max_age_mean, pension_tax_pct or fixed_fee)");
}

std::string_view sweep_param_name(SweepParam param) {
  switch (param) {
    case SweepParam::RetirementAge: return "retirement_age";
    case SweepParam::MaxAgeMean: return "max_age_mean";
    case SweepParam::PensionTaxPct: return "pension_tax_pct";
    case SweepParam::FixedFee: return "fixed_fee";
  }
  return "?";
}

SweepConfig load_config_text(std::string_view json_text,
                             const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be an object");

  static const std::set<std::string> known = {
      "scenario",      "ticks",
      "replications",  "master_seed",
      "axis_x",        "axis_y",
      "policy",        "initial_population",
      "landscape",     "distributions",
      "productivity",  "breed_before_retirement",
      "out_dir"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) config_error("unknown key '" + key + "'");
  }

  SweepConfig cfg;
  cfg.base = ScenarioSpec::from_triple(
      parse_scenario(j.value("scenario", "S(OFF,OFF,U)")));
  cfg.ticks = j.value("ticks", 500);
  if (cfg.ticks < 1) config_error("ticks must be >= 1");
  cfg.replications = j.value("replications", 5);
  if (cfg.replications < 1) config_error("replications must be >= 1");
  cfg.master_seed = j.value("master_seed", std::uint64_t{0});
  cfg.out_dir = j.value("out_dir", "");

  if (j.contains("policy")) {
    const json& p = j.at("policy");
    PolicyParams& pol = cfg.base.policy;
    pol.retirement_age = p.value("retirement_age", pol.retirement_age);
    pol.pension_tax_pct = p.value("pension_tax_pct", pol.pension_tax_pct);
    pol.fixed_fee = p.value("fixed_fee", pol.fixed_fee);
    if (p.contains("fixed_fee_mode")) {
      const std::string mode = p.at("fixed_fee_mode").get<std::string>();
      if (mode == "flat") {
        pol.fixed_fee_mode = FeeMode::Flat;
      } else if (mode == "proportional") {
        pol.fixed_fee_mode = FeeMode::Proportional;
      } else {
        config_error("policy.fixed_fee_mode must be 'flat' or 'proportional'");
      }
    }
    pol.validate();
  }

  cfg.base.initial_population = j.value("initial_population", cfg.base.initial_population);

  if (j.contains("landscape")) {
    const json& l = j.at("landscape");
    if (l.contains("map_file")) {
      std::filesystem::path map_path = l.at("map_file").get<std::string>();
      if (map_path.is_relative()) map_path = base_dir / map_path;
      cfg.base.landscape_template = std::make_shared<const Landscape>(
          Landscape::from_map_text(read_file(map_path)));
    } else {
      cfg.base.landscape_width = l.value("width", cfg.base.landscape_width);
      cfg.base.landscape_height = l.value("height", cfg.base.landscape_height);
    }
  }

  if (j.contains("distributions")) {
    const json& d = j.at("distributions");
    auto maybe = [&](const char* key, DistributionSpec& slot) {
      if (d.contains(key)) {
        slot = parse_distribution(d.at(key), std::string("distributions.") + key);
      }
    };
    maybe("vision", cfg.base.vision_dist);
    maybe("metabolism", cfg.base.metabolism_dist);
    maybe("age_to_reproduce", cfg.base.age_to_reproduce_dist);
    maybe("children", cfg.base.children_dist);
    maybe("max_age", cfg.base.max_age_dist);
    maybe("wealth", cfg.base.wealth_dist);
  }

  if (j.contains("productivity")) {
    const json& p = j.at("productivity");
    if (p.contains("knots_file")) {
      std::filesystem::path knot_path = p.at("knots_file").get<std::string>();
      if (knot_path.is_relative()) knot_path = base_dir / knot_path;
      cfg.base.productivity_knots =
          ProductivityCurve::from_knot_text(read_file(knot_path)).knots();
    }
    cfg.base.leftover_stays = p.value("leftover_stays", cfg.base.leftover_stays);
  }

  cfg.base.breed_before_retirement =
      j.value("breed_before_retirement", cfg.base.breed_before_retirement);

  if (j.contains("axis_x")) cfg.axis_x = parse_axis(j.at("axis_x"), "axis_x");
  if (j.contains("axis_y")) cfg.axis_y = parse_axis(j.at("axis_y"), "axis_y");

  cfg.base.validate();
  return cfg;
}

SweepConfig load_config_file(const std::filesystem::path& path) {
  return load_config_text(read_file(path), path.parent_path());
}

namespace {

void apply_param(ScenarioSpec& s, SweepParam param, double value) {
  switch (param) {
    case SweepParam::RetirementAge:
      s.policy.retirement_age = static_cast<int>(
          integral_or_throw(value, "retirement_age axis value"));
      break;
    case SweepParam::PensionTaxPct:
      s.policy.pension_tax_pct = static_cast<int>(
          integral_or_throw(value, "pension_tax_pct axis value"));
      break;
    case SweepParam::FixedFee:
      if (value < 0.0) config_error("fixed_fee axis value must be >= 0");
      s.policy.fixed_fee = value;
      break;
    case SweepParam::MaxAgeMean: {
      const double lifted_lo =
          std::max(value - 20.0, static_cast<double>(s.policy.retirement_age + 1));
      const double hi = value + 20.0;
      if (lifted_lo > hi) {
        config_error("max_age_mean " + std::to_string(value) +
                     " leaves an empty age range once lifted above retirement_age " +
                     std::to_string(s.policy.retirement_age));
      }
      if (s.dist_kind == DistKind::Uniform) {
        s.max_age_dist = DistributionSpec::uniform_int(std::llround(lifted_lo),
                                                       std::llround(hi));
      } else {
        s.max_age_dist =
            DistributionSpec::clamped_normal(value, 6.7, lifted_lo, hi, true);
      }
      break;
    }
  }
}

}  // namespace

ScenarioSpec scenario_for_cell(const SweepConfig& config, double x_value,
                               double y_value) {
  if (!config.axis_x || !config.axis_y) config_error("sweep requires axis_x and axis_y");
  ScenarioSpec s = config.base;
  // Policy axes first so a max_age_mean lift sees the swept retirement age.
  struct Pending {
    SweepParam param;
    double value;
  };
  std::vector<Pending> order = {{config.axis_x->param, x_value},
                                {config.axis_y->param, y_value}};
  std::stable_sort(order.begin(), order.end(), [](const Pending& a, const Pending& b) {
    return (a.param != SweepParam::MaxAgeMean) > (b.param != SweepParam::MaxAgeMean);
  });
  for (const Pending& p : order) apply_param(s, p.param, p.value);
  s.policy.validate();
  s.validate();
  return s;
}

std::vector<SweepTask> sweep_tasks(const SweepConfig& config) {
  if (!config.axis_x || !config.axis_y) config_error("sweep requires axis_x and axis_y");
  const int nx = static_cast<int>(config.axis_x->values.size());
  const int ny = static_cast<int>(config.axis_y->values.size());
  std::vector<SweepTask> tasks;
  tasks.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
                static_cast<std::size_t>(config.replications));
  for (int xi = 0; xi < nx; ++xi) {
    for (int yi = 0; yi < ny; ++yi) {
      const int cell = xi * ny + yi;
      for (int rep = 0; rep < config.replications; ++rep) {
        tasks.push_back({xi, yi, rep, cell,
                         derive_seed(config.master_seed,
                                     static_cast<std::uint64_t>(cell),
                                     static_cast<std::uint64_t>(rep))});
      }
    }
  }
  return tasks;
}

void validate_sweep(const SweepConfig& config) {
  if (!config.axis_x || !config.axis_y) config_error("sweep requires axis_x and axis_y");
  if (config.axis_x->values.empty() || config.axis_y->values.empty()) {
    config_error("axis value lists must be non-empty");
  }
  if (config.replications < 1) config_error("replications must be >= 1");
  if (config.ticks < 1) config_error("ticks must be >= 1");

  for (double x : config.axis_x->values) {
    for (double y : config.axis_y->values) {
      (void)scenario_for_cell(config, x, y);  // throws on bad combinations
    }
  }

  std::vector<SweepTask> tasks = sweep_tasks(config);
  std::vector<std::uint64_t> seeds;
  seeds.reserve(tasks.size());
  for (const SweepTask& t : tasks) seeds.push_back(t.seed);
  std::sort(seeds.begin(), seeds.end());
  const auto dup = std::adjacent_find(seeds.begin(), seeds.end());
  if (dup != seeds.end()) {
    config_error("derived seed collision detected (seed " + std::to_string(*dup) +
                 "); change master_seed");
  }
}

SweepResult run_sweep(const SweepConfig& config, int jobs) {
  validate_sweep(config);

  const std::vector<SweepTask> tasks = sweep_tasks(config);
  SweepResult result;
  result.config = config;
  result.runs.resize(tasks.size());

  const int workers = std::max(
      1, std::min(jobs, static_cast<int>(tasks.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const SweepTask& t = tasks[i];
        SweepRun& slot = result.runs[i];
        slot.task = t;
        slot.x_value = config.axis_x->values[static_cast<std::size_t>(t.xi)];
        slot.y_value = config.axis_y->values[static_cast<std::size_t>(t.yi)];
        slot.scenario = scenario_for_cell(config, slot.x_value, slot.y_value);
        slot.result = run(slot.scenario, config.ticks, t.seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

CellAggregate aggregate_run(const SweepRun& run) {
  CellAggregate agg;
  agg.x_value = run.x_value;
  agg.y_value = run.y_value;
  agg.rep = run.task.rep;

  const auto& series = run.result.series;
  const std::size_t window = std::min<std::size_t>(100, series.size());
  const std::size_t start = series.size() - window;

  double pop_sum = 0.0;
  double gini_sum = 0.0, fpr_sum = 0.0, gdpc_sum = 0.0;
  std::size_t gini_n = 0, fpr_n = 0, gdpc_n = 0;
  for (std::size_t i = start; i < series.size(); ++i) {
    const TickMetrics& m = series[i];
    pop_sum += static_cast<double>(m.population);
    if (m.gini) {
      gini_sum += *m.gini;
      ++gini_n;
    }
    if (m.fund_per_retiree) {
      fpr_sum += *m.fund_per_retiree;
      ++fpr_n;
    }
    if (m.gdp_per_capita) {
      gdpc_sum += *m.gdp_per_capita;
      ++gdpc_n;
    }
  }
  agg.population = window == 0 ? 0.0 : pop_sum / static_cast<double>(window);
  if (gini_n > 0) agg.gini = gini_sum / static_cast<double>(gini_n);
  if (fpr_n > 0) agg.fund_per_retiree = fpr_sum / static_cast<double>(fpr_n);
  if (gdpc_n > 0) agg.gdp_per_capita = gdpc_sum / static_cast<double>(gdpc_n);
  return agg;
}

std::vector<CellAggregate> aggregate_sweep(const SweepResult& result) {
  std::vector<CellAggregate> out;
  out.reserve(result.runs.size());
  for (const SweepRun& r : result.runs) out.push_back(aggregate_run(r));
  return out;
}

}  // namespace pensionsim
