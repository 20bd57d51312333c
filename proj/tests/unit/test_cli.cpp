#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "isotrack/config.hpp"
#include "isotrack/csvio.hpp"
#include "isotrack/report.hpp"
#include "isotrack/svgplot.hpp"

using namespace isotrack;

namespace {

ConfigMap parse_text(const std::string& text) {
  std::istringstream in(text);
  return ConfigMap::parse(in);
}

const char* kGaussianCfg = R"(
scenario = radial
robot.speed = 1.0
robot.turn_limit = 4.0
control.level = 1.0
control.gain = 0.5
control.band = 0.1
initial.x = 1.45
initial.y = 0.0
initial.heading = 1.2
sim.horizon = 2.0
sim.dt = 0.001
field.profile = gaussian
field.sigma = 1.0
field.intensity = 2.0
center.kind = static
center.x = 0.0
center.y = 0.0
bounds.r_in_min = 1.30
bounds.r_in_max = 1.60
bounds.c_min = 2.0
bounds.c_max = 2.0
seed = 7
)";

}  // namespace

TEST_CASE("config parsing: comments, sections and values") {
  const ConfigMap cfg = parse_text("a.b = 1.5  # trailing comment\n\n# full line\nname = x\n");
  CHECK(cfg.number("a.b") == doctest::Approx(1.5));
  CHECK(cfg.str("name") == "x");
  CHECK_FALSE(cfg.has("missing"));
  CHECK_THROWS_AS(cfg.number("missing"), ConfigError);
  CHECK_THROWS_AS(parse_text("novalue\n"), ConfigError);
  CHECK_THROWS_AS(parse_text("k = 1\nk = 2\n"), ConfigError);
}

TEST_CASE("missing required keys are reported together") {
  const ConfigMap cfg = parse_text("scenario = escort\nrobot.speed = 1\n");
  try {
    make_run_setup(cfg);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("robot.turn_limit") != std::string::npos);
    CHECK(msg.find("control.gain") != std::string::npos);
    CHECK(msg.find("sim.horizon") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected") {
  std::string text = kGaussianCfg;
  text += "totally.unknown = 3\n";
  CHECK_THROWS_WITH_AS(make_run_setup(parse_text(text)),
                       doctest::Contains("totally.unknown"), ConfigError);
}

TEST_CASE("a full radial config builds a runnable setup") {
  const RunSetup setup = make_run_setup(parse_text(kGaussianCfg));
  CHECK(setup.scenario.name == "radial");
  CHECK(setup.scenario.ctrl.target_level == doctest::Approx(1.0));
  CHECK(setup.sim.dt == doctest::Approx(1e-3));
  CHECK(setup.seed == 7);
  const SimResult result = simulate(setup.scenario, setup.sim);
  CHECK_FALSE(result.summary.aborted);
}

TEST_CASE("random heading is drawn from the seed") {
  std::string base = kGaussianCfg;
  base.replace(base.find("initial.heading = 1.2"), 21, "initial.heading = random");
  const RunSetup a = make_run_setup(parse_text(base));
  const RunSetup b = make_run_setup(parse_text(base));
  CHECK(a.scenario.initial.theta == b.scenario.initial.theta);
  const RunSetup c = make_run_setup(parse_text(base), 99);
  CHECK(c.scenario.initial.theta != a.scenario.initial.theta);
}

TEST_CASE("plots: empty input is an error, one row is a degenerate dot") {
  TrajectoryFile empty;
  CHECK_THROWS_AS(emit_plots(empty, "plot_test_out/empty"), Error);

  TrajectoryFile single;
  TrajectoryRow row;
  row.t = 0.0; row.x = 1.0; row.y = 2.0; row.d = 0.5; row.s = 0.1;
  single.rows.push_back(row);
  const PlotFiles files = emit_plots(single, "plot_test_out/single");
  CHECK(files.written.size() == 6);
  for (const std::string& f : files.written) CHECK(std::filesystem::exists(f));
}

TEST_CASE("plot data series round-trip the trajectory columns") {
  const RunSetup setup = make_run_setup(parse_text(kGaussianCfg));
  const SimResult result = simulate(setup.scenario, setup.sim);
  Metadata meta{{"d0", "1"}, {"band", "0.1"}};
  std::vector<std::pair<double, Circle>> snaps;
  if (const auto c = setup.scenario.isoline_circle(1.0, 0.0)) snaps.emplace_back(0.0, *c);
  meta["isoline_snapshots"] = encode_snapshots(snaps);
  const TrajectoryFile traj{meta, result.rows, false};
  const PlotFiles files = emit_plots(traj, "plot_test_out/run");
  CHECK(files.written.size() == 6);

  // the level series mirrors (t, d) at full precision
  std::ifstream series("plot_test_out/run/level_series.csv");
  REQUIRE(series.good());
  std::string header;
  std::getline(series, header);
  CHECK(header == "t,d");
  std::size_t i = 0;
  double t, d;
  char comma;
  while (series >> t >> comma >> d) {
    REQUIRE(i < result.rows.size());
    CHECK(t == result.rows[i].t);
    CHECK(d == result.rows[i].d);
    ++i;
  }
  CHECK(i == result.rows.size());

  // the trajectory svg mentions the snapshot ring
  std::ifstream svg("plot_test_out/run/trajectory.svg");
  std::stringstream buf;
  buf << svg.rdbuf();
  CHECK(buf.str().find("polyline") != std::string::npos);
}
