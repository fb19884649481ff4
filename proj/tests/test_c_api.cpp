#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "optosteer/optosteer.h"

extern "C" int c_vacuum_steering_is_zero(void);

namespace {

void tmsv(double r, double cm[16]) {
  std::memset(cm, 0, 16 * sizeof(double));
  const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
  for (int i = 0; i < 4; ++i) cm[5 * i] = c;
  cm[0 * 4 + 2] = cm[2 * 4 + 0] = s;
  cm[1 * 4 + 3] = cm[3 * 4 + 1] = -s;
}

constexpr ost_reduced_params kFig2a{15.0, 35.0, 0.5, 1.0, 1.0, 2.0 * M_PI * 140.0};

TEST(CApi, CompilesAsC) { EXPECT_TRUE(c_vacuum_steering_is_zero()); }

TEST(CApi, Version) {
  EXPECT_STREQ(ost_version(), "1.0.0");
  EXPECT_STREQ(ost_status_string(OST_OK), "ok");
}

TEST(CApi, Measures) {
  double cm[16];
  tmsv(1.0, cm);
  double g = 0.0, e = 0.0, d = 0.0;
  ASSERT_EQ(ost_steering_a_to_b(cm, &g), OST_OK);
  EXPECT_NEAR(g, std::log(std::cosh(2.0)), 1e-12);
  ASSERT_EQ(ost_steering_b_to_a(cm, &g), OST_OK);
  EXPECT_NEAR(g, std::log(std::cosh(2.0)), 1e-12);
  ASSERT_EQ(ost_renyi2_entanglement(cm, &e), OST_OK);
  EXPECT_NEAR(e, std::log(std::cosh(2.0)), 1e-12);
  ASSERT_EQ(ost_steering_asymmetry(cm, &d), OST_OK);
  EXPECT_NEAR(d, 0.0, 1e-12);
  ost_steering_class k{};
  ASSERT_EQ(ost_classify_steering(cm, 1e-9, &k), OST_OK);
  EXPECT_EQ(k, OST_STEERING_TWO_WAY);
  ost_validity v{};
  ASSERT_EQ(ost_validate_cm(cm, &v), OST_OK);
  EXPECT_TRUE(v.bona_fide);
  EXPECT_NEAR(v.nu_minus, 0.5, 1e-9);
}

TEST(CApi, ErrorCodes) {
  double cm[16];
  tmsv(1.0, cm);
  double g = 0.0;
  EXPECT_EQ(ost_steering_a_to_b(nullptr, &g), OST_ERR_NULL_ARGUMENT);
  EXPECT_EQ(ost_steering_a_to_b(cm, nullptr), OST_ERR_NULL_ARGUMENT);
  cm[0] = -1.0;
  EXPECT_EQ(ost_steering_a_to_b(cm, &g), OST_ERR_NON_PHYSICAL_STATE);
  EXPECT_STRNE(ost_last_error(), "");
  tmsv(1.0, cm);
  cm[1] = cm[4] = 0.1;
  EXPECT_EQ(ost_renyi2_entanglement(cm, &g), OST_ERR_UNSUPPORTED_FORM);
  cm[1] = 0.2;
  EXPECT_EQ(ost_steering_a_to_b(cm, &g), OST_ERR_INVALID_INPUT);
  ost_steering_class k{};
  tmsv(1.0, cm);
  EXPECT_EQ(ost_classify_steering(cm, 0.0, &k), OST_ERR_INVALID_INPUT);
  ost_reduced_params bad = kFig2a;
  bad.gamma = 0.0;
  double out[16];
  EXPECT_EQ(ost_stationary_covariance(&bad, out), OST_ERR_INVALID_INPUT);
  EXPECT_EQ(ost_covariance_closed_form(&kFig2a, -1.0, out), OST_ERR_INVALID_INPUT);
}

TEST(CApi, Dynamics) {
  double out[16];
  ASSERT_EQ(ost_covariance_closed_form(&kFig2a, 0.0, out), OST_OK);
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(out[i], i % 5 == 0 ? 1.0 : 0.0, 1e-15);
  ASSERT_EQ(ost_stationary_covariance(&kFig2a, out), OST_OK);
  EXPECT_NEAR(out[2], 2.0 * std::sinh(1.0) * std::cosh(1.0) * std::sqrt(525.0) / 52.0, 1e-12);
  EXPECT_EQ(out[2], out[8]);
  EXPECT_EQ(out[7], -out[2]);

  const std::vector<double> grid{0.0, 0.05, 0.5, 1.0};
  std::vector<ost_measure_sample> s(grid.size());
  ASSERT_EQ(ost_sweep_time(&kFig2a, grid.data(), grid.size(), 1e-9, s.data()), OST_OK);
  EXPECT_EQ(s[0].e2, 0.0);
  EXPECT_EQ(s[1].g_ab, 0.0);
  EXPECT_GT(s[3].e2, 0.0);
  EXPECT_EQ(s[3].steering, OST_STEERING_TWO_WAY);
}

TEST(CApi, ConfigAndRun) {
  const char* keys[] = {"run.mode", "run.panel"};
  const char* values[] = {"figure", "3d"};
  ost_config* cfg = nullptr;
  ASSERT_EQ(ost_config_parse(nullptr, keys, values, 2, &cfg), OST_OK);
  ASSERT_NE(cfg, nullptr);
  EXPECT_EQ(ost_config_output_path(cfg), nullptr);

  char* text = nullptr;
  ASSERT_EQ(ost_config_render(cfg, &text), OST_OK);
  EXPECT_NE(std::string(text).find("panel = 3d"), std::string::npos);
  ost_string_free(text);

  ost_result* res = nullptr;
  ASSERT_EQ(ost_run(cfg, &res), OST_OK);
  EXPECT_EQ(ost_result_exit_code(res), 0);
  const std::string data(ost_result_data(res), ost_result_data_size(res));
  EXPECT_EQ(data.rfind("gamma_t,g_ab,g_ba,g_delta,e2\n", 0), 0u);
  EXPECT_EQ(std::count(data.begin(), data.end(), '\n'), 1002);
  ost_result_free(res);
  ost_config_free(cfg);
}

TEST(CApi, ConfigErrors) {
  ost_config* cfg = nullptr;
  EXPECT_EQ(ost_config_parse("", nullptr, nullptr, 0, &cfg), OST_ERR_CONFIG);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_NE(std::string(ost_last_error()).find("run.mode"), std::string::npos);
  EXPECT_EQ(ost_config_parse("[run]\nmode = figure\npanel = 2a\n", nullptr, nullptr, 0, nullptr),
            OST_ERR_NULL_ARGUMENT);
  ost_config_free(nullptr);
  ost_result_free(nullptr);
}

TEST(CApi, RunFailureIsAResult) {
  const char* text =
      "[reduced]\nc1 = 15\nc2 = 35\nnth1 = 1\nnth2 = 1\nr = 1\ngamma_hz = 140\n"
      "[run]\nmode = sweep\npoints = 11\nsolver = ode\node_step = 0.5\n";
  ost_config* cfg = nullptr;
  ASSERT_EQ(ost_config_parse(text, nullptr, nullptr, 0, &cfg), OST_OK);
  ost_result* res = nullptr;
  ASSERT_EQ(ost_run(cfg, &res), OST_OK);
  EXPECT_EQ(ost_result_exit_code(res), 2);
  EXPECT_EQ(ost_result_data_size(res), 0u);
  EXPECT_NE(std::string(ost_result_diagnostics(res)).find("IntegrationError"), std::string::npos);
  ost_result_free(res);
  ost_config_free(cfg);
}

}  // namespace
