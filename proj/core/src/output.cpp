#include "pensionsim/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace pensionsim {

namespace {

using nlohmann::json;

void append_optional(std::string& row, const std::optional<double>& v) {
  row += ',';
  if (v) row += format_number(*v);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_number(std::int64_t value) {
  return std::to_string(value);
}

std::string timeseries_csv(const RunResult& result) {
  std::string out =
      "tick,population,working_count,retired_count,unbred_count,gdp,"
      "gdp_per_capita,gini,fund_balance,fund_per_retiree,mean_vision,"
      "mean_metabolism,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10\n";
  for (const TickMetrics& m : result.series) {
    std::string row = format_number(static_cast<std::int64_t>(m.tick));
    row += ',';
    row += format_number(m.population);
    row += ',';
    row += format_number(m.working_count);
    row += ',';
    row += format_number(m.retired_count);
    row += ',';
    row += format_number(m.unbred_count);
    row += ',';
    row += format_number(m.gdp);
    append_optional(row, m.gdp_per_capita);
    append_optional(row, m.gini);
    row += ',';
    row += format_number(m.fund_balance);
    append_optional(row, m.fund_per_retiree);
    append_optional(row, m.mean_vision);
    append_optional(row, m.mean_metabolism);
    for (int d = 0; d < 10; ++d) {
      row += ',';
      if (m.decile_shares) row += format_number((*m.decile_shares)[static_cast<std::size_t>(d)]);
    }
    row += '\n';
    out += row;
  }
  return out;
}

std::string run_summary_json(const RunResult& result, const ScenarioSpec& scenario,
                             const std::optional<AxisInfo>& axis) {
  const RunSummary& s = result.summary;
  json j;
  j["seed"] = s.seed;
  j["ticks"] = s.ticks;
  j["scenario"] = render_scenario(scenario.triple());
  j["policy"] = {
      {"retirement_age", scenario.policy.retirement_age},
      {"pension_tax_pct", scenario.policy.pension_tax_pct},
      {"fixed_fee", scenario.policy.fixed_fee},
      {"fixed_fee_mode",
       scenario.policy.fixed_fee_mode == FeeMode::Flat ? "flat" : "proportional"},
      {"social_services", scenario.policy.social_services},
      {"productivity_decay", scenario.policy.productivity_decay},
  };
  j["final_population"] = s.final_population;
  j["final_working"] = s.final_working;
  j["final_retired"] = s.final_retired;
  j["fund"] = {
      {"balance", s.fund_balance},
      {"contributions_total", s.contributions_total},
      {"pensions_paid_total", s.pensions_paid_total},
      {"welfare_paid_total", s.welfare_paid_total},
  };
  j["births"] = s.diagnostics.births;
  j["deaths_starvation"] = s.diagnostics.deaths_starvation;
  j["deaths_old_age"] = s.diagnostics.deaths_old_age;
  j["skipped_births"] = s.diagnostics.skipped_births;
  if (axis) {
    j["axis"] = {
        {"x_param", axis->x_param},
        {"x_value", axis->x_value},
        {"y_param", axis->y_param},
        {"y_value", axis->y_value},
    };
  }
  return j.dump(2) + "\n";
}

std::string aggregate_csv(const SweepResult& result) {
  std::string out = "x,y,rep,population,gini,fund_per_retiree,gdp_per_capita\n";
  for (const CellAggregate& a : aggregate_sweep(result)) {
    std::string row = format_number(a.x_value);
    row += ',';
    row += format_number(a.y_value);
    row += ',';
    row += format_number(static_cast<std::int64_t>(a.rep));
    row += ',';
    row += format_number(a.population);
    append_optional(row, a.gini);
    append_optional(row, a.fund_per_retiree);
    append_optional(row, a.gdp_per_capita);
    row += '\n';
    out += row;
  }
  return out;
}

void preflight_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
  const std::filesystem::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe, std::ios::binary);
    if (!out || !(out << "ok")) {
      throw std::runtime_error("output directory not writable: " + dir.string());
    }
  }
  std::filesystem::remove(probe, ec);
}

void write_run_files(const std::filesystem::path& dir, int cell_index, int rep,
                     const RunResult& result, const ScenarioSpec& scenario,
                     const std::optional<AxisInfo>& axis) {
  const std::string tag = std::to_string(cell_index) + "_" + std::to_string(rep);
  write_text_file(dir / ("timeseries_" + tag + ".csv"), timeseries_csv(result));
  write_text_file(dir / ("summary_" + tag + ".json"),
                  run_summary_json(result, scenario, axis));
}

void write_sweep_outputs(const std::filesystem::path& dir, const SweepResult& result) {
  preflight_out_dir(dir);
  for (const SweepRun& r : result.runs) {
    AxisInfo axis;
    axis.x_param = std::string(sweep_param_name(result.config.axis_x->param));
    axis.x_value = r.x_value;
    axis.y_param = std::string(sweep_param_name(result.config.axis_y->param));
    axis.y_value = r.y_value;
    write_run_files(dir, r.task.cell_index, r.task.rep, r.result, r.scenario, axis);
  }
  write_text_file(dir / "aggregate.csv", aggregate_csv(result));
}

}  // namespace pensionsim
