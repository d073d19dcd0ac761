// Copyright 2026 The ricmig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "ricmig/calibration.hpp"
#include "ricmig/errors.hpp"
#include "ricmig/io.hpp"
#include "ricmig/orchestrator.hpp"
#include "ricmig/problem.hpp"
#include "ricmig/solvers.hpp"

namespace ricmig::cli {

namespace {

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const DegenerateFitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

Calibration load_calibration(const CommonOptions& opt) {
  return opt.calibration.empty() ? Calibration::defaults() : Calibration::from_file(opt.calibration);
}

ScenarioFile load_scenario(const std::string& path, const CommonOptions& opt) {
  ScenarioFile sc = read_scenario(path);
  if (opt.strategy) {
    const auto s = parse_strategy(*opt.strategy);
    if (!s) throw ParseError("--strategy: expected sdl, sm-mr or sm-md");
    sc.params.strategy = *s;
  }
  return sc;
}

SolveLimits limits_of(const CommonOptions& opt) {
  SolveLimits lim;
  lim.time_limit_s = opt.time_limit_s;
  lim.gap_target = opt.gap;
  return lim;
}

std::filesystem::path output_dir(const CommonOptions& opt) {
  std::filesystem::path dir(opt.out);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

int cmd_plan(const std::string& scenario, const CommonOptions& opt) {
  return guarded([&] {
    const ScenarioFile sc = load_scenario(scenario, opt);
    const Calibration cal = load_calibration(opt);
    SlotOptions slot;
    slot.solver = *parse_solver(opt.solver);
    slot.limits = limits_of(opt);
    const ClusterState current = apply_undeployments(sc.state, sc.state.pending_undeploys);
    const SalProblem problem = build_problem(current, sc.params, cal);
    const SlotResult result = run_timeslot(sc.state, sc.params, cal, slot);

    const auto dir = output_dir(opt);
    ReportExtras extras;
    extras.timing = opt.timing;
    if (result.baseline) extras.baseline_energy_j = result.baseline_energy_j;
    if (result.feasible && result.baseline) extras.energy_gain = result.energy_gain;
    write_text_file((dir / "report.json").string(), report_to_json(result.report, extras));
    std::cout << "status: " << to_string(result.report.status) << '\n';
    if (!result.feasible) {
      for (const std::string& h : result.report.infeasibility_hint) {
        std::cerr << "blocked by " << h << '\n';
      }
      return static_cast<int>(kInfeasible);
    }
    write_text_file((dir / "plan.json").string(), plan_to_json(problem, result.plan));
    std::cout << "energy_j: " << format_number(result.plan.total_energy_j) << '\n'
              << "activation_ratio: " << format_number(result.activation_ratio) << '\n';
    if (result.baseline) std::cout << "energy_gain: " << format_number(result.energy_gain) << '\n';
    std::cout << "mip_gap: " << format_number(result.report.mip_gap) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_validate(const std::string& scenario, const std::string& plan, const CommonOptions& opt) {
  return guarded([&] {
    const ScenarioFile sc = load_scenario(scenario, opt);
    const Calibration cal = load_calibration(opt);
    const PlanFile pf = read_plan(plan);
    const ClusterState current = apply_undeployments(sc.state, sc.state.pending_undeploys);
    const SalProblem problem = build_problem(current, sc.params, cal);
    const Verdict verdict = validate_plan(problem, pf.x, pf.mu);
    if (verdict.valid) {
      std::cout << "valid\n";
      return static_cast<int>(kOk);
    }
    for (const Violation& v : verdict.violations) {
      std::cout << label(v.constraint) << ' ' << v.where << ": " << v.detail << '\n';
    }
    return static_cast<int>(kInvalidPlan);
  });
}

int cmd_feasibility(const std::string& spec_path, const CommonOptions& opt) {
  return guarded([&] {
    const SweepSpec spec = read_sweep_spec(spec_path);
    const Calibration cal = load_calibration(opt);
    const FeasibilitySweep sweep = feasibility_sweep(spec, cal, limits_of(opt));
    const auto dir = output_dir(opt);
    write_text_file((dir / "feasibility.csv").string(), sweep_csv(sweep.rows, opt.timing));
    for (const FeasibilitySummary& s : sweep.summary) {
      std::cout << to_string(s.strategy) << ' ' << s.dominant_class << " rho_mb=" << format_number(s.rho_mb)
                << " nu_s=" << format_number(s.nu_s) << ": max_feasible=" << s.max_feasible;
      if (s.sm_outgoing_cap) std::cout << " sm_outgoing_cap=" << *s.sm_outgoing_cap;
      std::cout << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const std::string& spec_path, const CommonOptions& opt) {
  return guarded([&] {
    const SweepSpec spec = read_sweep_spec(spec_path);
    const Calibration cal = load_calibration(opt);
    SlotOptions slot;
    slot.solver = *parse_solver(opt.solver);
    slot.limits = limits_of(opt);
    const std::vector<SweepRow> rows = energy_sweep(spec, cal, slot);
    const auto dir = output_dir(opt);
    write_text_file((dir / "sweep.csv").string(), sweep_csv(rows, opt.timing));
    std::cout << rows.size() << " rows\n";
    return static_cast<int>(kOk);
  });
}

int cmd_fit(const std::string& measurements, const std::string& label) {
  return guarded([&] {
    const LinearFit fit = fit_linear(read_measurements_csv(measurements, label));
    nlohmann::ordered_json doc;
    doc["fit"] = {{"label", label},
                  {"delta", std::stod(format_number(fit.slope))},
                  {"b", std::stod(format_number(fit.intercept))},
                  {"residual_rms", std::stod(format_number(fit.residual_rms))}};
    std::cout << doc.dump(2) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_gen_scenario(std::uint64_t seed, int servers, int optional, int xapps, int deploys,
                     const CommonOptions& opt, const std::string& out_file) {
  return guarded([&] {
    GeneratorOptions g;
    g.servers = servers;
    g.optional_servers = optional;
    g.xapps = xapps;
    g.deploys = deploys;
    if (opt.strategy) {
      const auto s = parse_strategy(*opt.strategy);
      if (!s) throw ParseError("--strategy: expected sdl, sm-mr or sm-md");
      g.strategy = *s;
    }
    const std::string json = scenario_to_json(generate_scenario(seed, g));
    if (out_file.empty()) {
      std::cout << json;
    } else {
      write_text_file(out_file, json);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_calibration(const CommonOptions& opt) {
  return guarded([&] {
    std::cout << load_calibration(opt).to_json() << '\n';
    return static_cast<int>(kOk);
  });
}

}  // namespace ricmig::cli
