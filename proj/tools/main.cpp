// Command line driver: run closed-loop simulations, evaluate feasibility
// reports, sweep config batches and render plots.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "isotrack/config.hpp"
#include "isotrack/csvio.hpp"
#include "isotrack/errors.hpp"
#include "isotrack/report.hpp"
#include "isotrack/svgplot.hpp"

namespace {

using namespace isotrack;

constexpr const char* kToolVersion = "isotrack 0.1.0";

// exit codes: 0 ok, 2 config error, 3 scenario build error, 4 in-run abort,
// 5 infeasible under --require-feasible
constexpr int kExitConfig = 2;
constexpr int kExitBuild = 3;
constexpr int kExitAbort = 4;
constexpr int kExitInfeasible = 5;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Metadata run_metadata(const RunSetup& setup) {
  Metadata meta;
  meta["tool"] = kToolVersion;
  meta["scenario"] = setup.scenario.name;
  meta["dt"] = fmt(setup.sim.dt);
  meta["horizon"] = fmt(setup.sim.horizon);
  meta["measurement"] = setup.sim.mode == MeasureMode::exact ? "exact" : "fd";
  // finite differencing uses the sampling period itself
  meta["fd_step"] = setup.sim.mode == MeasureMode::exact ? "n/a" : fmt(setup.sim.dt);
  meta["d0"] = fmt(setup.scenario.ctrl.target_level);
  meta["band"] = fmt(setup.scenario.ctrl.band);
  meta["gain"] = fmt(setup.scenario.ctrl.gain);
  meta["speed"] = fmt(setup.scenario.robot.speed);
  meta["u_bar"] = fmt(setup.scenario.robot.turn_rate_limit);
  meta["zone_min"] = fmt(setup.scenario.zone.level_min);
  meta["zone_max"] = fmt(setup.scenario.zone.level_max);
  meta["seed"] = std::to_string(setup.seed);

  std::vector<std::pair<double, Circle>> snaps;
  for (int i = 0; i <= 4; ++i) {
    const double t = setup.sim.horizon * i / 4.0;
    if (const auto c = setup.scenario.isoline_circle(setup.scenario.ctrl.target_level, t))
      snaps.emplace_back(t, *c);
  }
  if (!snaps.empty()) meta["isoline_snapshots"] = encode_snapshots(snaps);
  return meta;
}

std::string summary_text(const RunSummary& s) {
  std::string out;
  out += "final_error = " + fmt(s.final_error) + "\n";
  out += std::string("entered_band = ") + (s.entered_band ? "yes" : "no") + "\n";
  if (s.entered_band) {
    out += "first_entry_time = " + fmt(s.first_entry_time) + "\n";
    out += "in_band_fraction = " + fmt(s.in_band_fraction) + "\n";
  }
  out += "band_width = " + fmt(s.band_width) + "\n";
  out += "chatter_quantum = " + fmt(s.chatter_quantum) + "\n";
  out += std::string("stayed_in_zone = ") + (s.stayed_in_zone ? "yes" : "no") + "\n";
  out += std::string("converged = ") + (s.entered_band && !s.aborted ? "yes" : "no") + "\n";
  if (s.aborted) {
    out += "aborted = yes\n";
    out += "abort_time = " + fmt(s.abort_time) + "\n";
    out += "abort_reason = " + s.abort_reason + "\n";
  }
  return out;
}

int do_run(const std::string& config_path, std::optional<std::string> out_override,
           bool require_feasible, bool diagnostics,
           std::optional<std::uint64_t> seed_override, std::ostream& log) {
  RunSetup setup = load_run_setup(config_path, seed_override);
  if (out_override) setup.out_dir = *out_override;
  if (diagnostics) setup.sim.diagnostics = true;

  if (require_feasible) {
    const FeasibilityReport rep = setup.scenario.verify_all();
    if (!rep.satisfied) {
      log << to_text(rep);
      log << "refusing to run an infeasible configuration\n";
      return kExitInfeasible;
    }
  }

  const SimResult result = simulate(setup.scenario, setup.sim);
  std::filesystem::create_directories(setup.out_dir);
  const Metadata meta = run_metadata(setup);
  write_trajectory_file(setup.out_dir + "/trajectory.csv", result, meta);
  {
    std::ofstream sf(setup.out_dir + "/summary.txt");
    sf << summary_text(result.summary);
  }
  TrajectoryFile traj{meta, result.rows, result.diagnostics};
  emit_plots(traj, setup.out_dir);
  log << summary_text(result.summary);
  return result.summary.aborted ? kExitAbort : 0;
}

int do_verify(const std::string& config_path, bool json, bool require_feasible,
              std::ostream& log) {
  const RunSetup setup = load_run_setup(config_path);
  const FeasibilityReport rep = setup.scenario.verify_all();
  log << (json ? to_json(rep) + "\n" : to_text(rep));
  return (!rep.satisfied && require_feasible) ? kExitInfeasible : 0;
}

int classify_error(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  return kExitBuild;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic isoline tracking: simulation and feasibility checks"};
  app.require_subcommand(1);

  std::string config_path, traj_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool require_feasible = false, diagnostics = false, json = false;
  std::vector<std::string> sweep_configs;
  unsigned jobs = std::thread::hardware_concurrency();

  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the config seed");
  run->add_flag("--require-feasible", require_feasible,
                "abort unless the feasibility report passes");
  run->add_flag("--diagnostics", diagnostics, "log isoline quantities per step");

  CLI::App* verify = app.add_subcommand("verify", "evaluate the feasibility report");
  verify->add_option("--config", config_path, "config file")->required();
  verify->add_flag("--json", json, "machine-readable output");
  verify->add_flag("--require-feasible", require_feasible,
                   "exit nonzero when infeasible");

  CLI::App* sweep = app.add_subcommand("sweep", "run several configs in parallel");
  sweep->add_option("--config", sweep_configs, "config files")->required();
  sweep->add_option("--out", out_dir, "root output directory");
  sweep->add_option("--jobs", jobs, "max parallel runs");
  sweep->add_flag("--require-feasible", require_feasible,
                  "abort runs whose feasibility report fails");
  sweep->add_flag("--diagnostics", diagnostics, "log isoline quantities per step");

  CLI::App* plot = app.add_subcommand("plot", "render plots from a trajectory file");
  plot->add_option("--traj", traj_path, "trajectory csv")->required();
  plot->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return do_run(config_path, out_dir, require_feasible, diagnostics, seed, std::cout);
    if (verify->parsed()) return do_verify(config_path, json, require_feasible, std::cout);
    if (sweep->parsed()) {
      if (jobs == 0) jobs = 1;
      const std::string root = out_dir.value_or("out");
      std::vector<std::future<int>> futures;
      int worst = 0;
      for (std::size_t i = 0; i < sweep_configs.size(); ++i) {
        if (futures.size() >= jobs) {
          worst = std::max(worst, futures.front().get());
          futures.erase(futures.begin());
        }
        const std::string cfg = sweep_configs[i];
        const std::string stem = std::filesystem::path(cfg).stem().string();
        const std::string sub = root + "/" + stem;
        futures.push_back(std::async(std::launch::async, [=] {
          std::ostringstream local;
          int rc;
          try {
            rc = do_run(cfg, sub, require_feasible, diagnostics, seed, local);
          } catch (const std::exception& e) {
            local << "error: " << e.what() << "\n";
            rc = classify_error(e);
          }
          std::filesystem::create_directories(sub);
          std::ofstream lf(sub + "/run.log");
          if (lf) lf << local.str();
          return rc;
        }));
      }
      for (auto& f : futures) worst = std::max(worst, f.get());
      std::cout << "sweep finished with worst exit code " << worst << "\n";
      return worst;
    }
    if (plot->parsed()) {
      const TrajectoryFile traj = read_trajectory_file(traj_path);
      const PlotFiles files = emit_plots(traj, *out_dir);
      for (const std::string& f : files.written) std::cout << f << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_error(e);
  }
  return 0;
}
