#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "optosteer/config.hpp"
#include "optosteer/error.hpp"

namespace {

using namespace optosteer;
using namespace optosteer::cli;

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(OPTOSTEER_CONFIG_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(std::string_view text, const Overrides& o = {}) {
  try {
    parse_config(text, o);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    return e.what();
  }
  ADD_FAILURE() << "parse succeeded";
  return {};
}

constexpr const char* kReduced = R"(
[reduced]
c1 = 15
c2 = 35
nth1 = 0.5
nth2 = 1
r = 1
gamma_hz = 140
[run]
mode = sweep
)";

TEST(Config, ReducedFigureParameters) {
  const auto cfg = parse_config(read_file("fig2a.ini"));
  EXPECT_EQ(cfg.mode, Mode::Sweep);
  const auto& in = std::get<ReducedInput>(cfg.params);
  EXPECT_EQ(in.c1, 15.0);
  EXPECT_EQ(in.nth1, 0.5);
  const auto rp = in.to_params();
  EXPECT_DOUBLE_EQ(rp.gamma, model::kTwoPi * 140.0);
  EXPECT_EQ(cfg.grid, (GridSpec{0.0, 5.0, 1001}));
  EXPECT_EQ(cfg.format, OutputFormat::Csv);
}

TEST(Config, PhysicalBlock) {
  const auto cfg = parse_config(read_file("groblacher.ini"));
  EXPECT_EQ(cfg.mode, Mode::Regime);
  const auto p = std::get<PhysicalInput>(cfg.params).to_params();
  EXPECT_EQ(p, model::groblacher_parameters());
}

TEST(Config, EmptyDocumentListsMissingKeys) {
  EXPECT_EQ(config_error(""), "missing required keys: run.mode, [reduced] or [physical] block");
}

TEST(Config, MissingReducedKeysAreListed) {
  const auto msg = config_error("[reduced]\nc1 = 1\n[run]\nmode = sweep\n");
  for (const char* key : {"reduced.c2", "reduced.nth1", "reduced.nth2", "reduced.r",
                          "reduced.gamma_hz"}) {
    EXPECT_NE(msg.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(msg.find("reduced.c1"), std::string::npos);
}

TEST(Config, Comments) {
  const auto plain = parse_config(kReduced);
  const auto commented = parse_config(
      "# leading\n; also leading\n[reduced]   # block\nc1 = 15  # cooperativity\n"
      "c2 = 35 ; other\nnth1 = 0.5\nnth2 = 1\nr = 1\ngamma_hz = 140\t# Hz\n"
      "[run]\nmode = sweep\n");
  EXPECT_EQ(plain, commented);
}

TEST(Config, BothBlocksRejected) {
  const std::string text = std::string(kReduced) + "[physical]\nr = 1\n";
  EXPECT_NE(config_error(text).find("exclusive blocks"), std::string::npos);
}

TEST(Config, UnknownKeyAndSection) {
  EXPECT_NE(config_error(std::string(kReduced) + "bogus = 1\n").find("run.bogus"),
            std::string::npos);
  EXPECT_NE(config_error(std::string(kReduced) + "[extra]\nx = 1\n").find("extra"),
            std::string::npos);
}

TEST(Config, BadValues) {
  EXPECT_NE(config_error(kReduced, {{"reduced.c1", "-1"}}).find("reduced.c1"), std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"reduced.gamma_hz", "0"}}).find("reduced.gamma_hz"),
            std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"reduced.r", "abc"}}).find("reduced.r"), std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"run.mode", "plot"}}).find("run.mode"), std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"run.points", "1"}}).find("run.points"), std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"run.end", "-1"}}).find("run.end"), std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"run.epsilon", "0"}}).find("run.epsilon"), std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"output.format", "xml"}}).find("output.format"),
            std::string::npos);
}

TEST(Config, OverridesWin) {
  const auto cfg = parse_config(kReduced, {{"reduced.r", "1.7"}, {"output.format", "json"}});
  EXPECT_EQ(std::get<ReducedInput>(cfg.params).r, 1.7);
  EXPECT_EQ(cfg.format, OutputFormat::Json);
}

TEST(Config, FigureMode) {
  const auto cfg = parse_config("[run]\nmode = figure\npanel = 3d\n");
  EXPECT_EQ(cfg.mode, Mode::Figure);
  EXPECT_EQ(cfg.panel, "3d");
  EXPECT_TRUE(std::holds_alternative<std::monostate>(cfg.params));
  EXPECT_NE(config_error("[run]\nmode = figure\n").find("run.panel"), std::string::npos);
  EXPECT_NE(config_error("[run]\nmode = figure\npanel = 9z\n").find("run.panel"),
            std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"run.mode", "figure"}, {"run.panel", "2a"}}).find("reduced"),
            std::string::npos);
  EXPECT_NE(config_error(kReduced, {{"run.panel", "2a"}}).find("run.panel"), std::string::npos);
}

TEST(Config, RegimeNeedsPhysical) {
  EXPECT_NE(config_error(kReduced, {{"run.mode", "regime"}}).find("[physical]"),
            std::string::npos);
}

TEST(Config, OccupationAndTemperatureMustAgree) {
  const std::string base = read_file("groblacher.ini");
  // n_th = 1 at 947 kHz corresponds to T = hbar w / (kB ln 2) ~ 65.6 uK.
  const double t = model::kHbar * model::kTwoPi * 947e3 / (model::kBoltzmann * std::log(2.0));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  EXPECT_NO_THROW(parse_config(base, {{"physical.temperature_k_1", buf}}));
  EXPECT_NE(config_error(base, {{"physical.temperature_k_1", "1"}}).find("thermal_occupation_1"),
            std::string::npos);
}

TEST(Config, OccupationOrTemperatureRequired) {
  std::string text = read_file("groblacher.ini");
  const auto pos = text.find("thermal_occupation_2 = 1\n");
  ASSERT_NE(pos, std::string::npos);
  text.erase(pos, std::string("thermal_occupation_2 = 1\n").size());
  EXPECT_NE(config_error(text).find("physical.thermal_occupation_2"), std::string::npos);
}

TEST(Config, RenderRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    RunConfig cfg;
    ReducedInput in{u(rng), u(rng), u(rng) / 10.0, u(rng) / 10.0, u(rng) / 20.0, 1.0 + u(rng)};
    cfg.params = in;
    cfg.mode = i % 3 == 0 ? Mode::Eval : (i % 3 == 1 ? Mode::Sweep : Mode::Stationary);
    cfg.grid = GridSpec{u(rng) / 10.0, 6.0 + u(rng), 2 + static_cast<std::size_t>(u(rng))};
    cfg.time_unit = i % 2 ? TimeUnit::Seconds : TimeUnit::GammaT;
    cfg.eval_time = u(rng) / 7.0;
    cfg.epsilon = 1e-9 * (1.0 + u(rng));
    cfg.solver = i % 4 ? Solver::ClosedForm : Solver::Ode;
    cfg.format = i % 5 ? OutputFormat::Csv : OutputFormat::Json;
    if (i % 7 == 0) cfg.output_path = "out/run_" + std::to_string(i) + ".csv";
    EXPECT_EQ(parse_config(render_config(cfg)), cfg) << render_config(cfg);
  }
  RunConfig fig;
  fig.mode = Mode::Figure;
  fig.panel = "3inset";
  EXPECT_EQ(parse_config(render_config(fig)), fig);
  const auto phys = parse_config(read_file("groblacher.ini"));
  EXPECT_EQ(parse_config(render_config(phys)), phys);
}

}  // namespace
