#include <gtest/gtest.h>

#include <string>

#include "limitwalk/config.hpp"
#include "limitwalk/error.hpp"

using namespace limitwalk;

namespace {

std::string config_error(std::string_view text) {
  try {
    parse_pattern_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

}  // namespace

TEST(Config, ParsesAllFamiliesAndTolerances) {
  const auto cfg = parse_pattern_config(R"({
    "laws": [
      {"family": "geometric", "p": 0.55},
      {"family": "shifted_poisson", "lambda": 0.5, "shift": -3},
      {"family": "discrete_weibull_unit"},
      {"family": "table", "min_support": -3, "weights": [1, 0, 1]}
    ],
    "tolerances": {"tail_tol": 1e-10, "disk_slack": 1e-8, "cluster_tol": 1e-7,
                   "residual_tol": 1e-10, "dp_convergence_tol": 1e-3}
  })");
  ASSERT_EQ(cfg.pattern.period(), 4u);
  EXPECT_EQ(cfg.pattern.laws()[1].min_support(), -3);
  EXPECT_DOUBLE_EQ(cfg.pattern.laws()[3].prob(-1), 0.5);
  EXPECT_EQ(cfg.build.tail_tol, 1e-10);
  EXPECT_EQ(cfg.build.roots.disk_slack, 1e-8);
  EXPECT_EQ(cfg.build.roots.cluster_tol, 1e-7);
  EXPECT_EQ(cfg.build.roots.residual_tol, 1e-10);
  EXPECT_EQ(cfg.dp_convergence_tol, 1e-3);
  // Geometric truncated at the configured tail tolerance.
  EXPECT_LE(cfg.pattern.laws()[0].tail_error(), 1e-10);
}

TEST(Config, DefaultsWithoutTolerances) {
  const auto cfg = parse_pattern_config(R"({"laws": [{"family": "discrete_weibull_unit"}]})");
  EXPECT_EQ(cfg.build.tail_tol, kDefaultTailTol);
  EXPECT_EQ(cfg.dp_convergence_tol, 5e-4);
}

TEST(Config, SyntaxErrorNamesLine) {
  const auto msg = config_error("{\n  \"laws\": [\n    {\"family\": \"geometric\", \"p\": 0.5,}\n  ]\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Config, SchemaErrorsNameField) {
  EXPECT_NE(config_error(R"({"laws": [], "extra": 1})").find("/extra"), std::string::npos);
  EXPECT_NE(config_error(R"({"laws": []})").find("/laws"), std::string::npos);
  EXPECT_NE(config_error(R"({})").find("/laws"), std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "cauchy"}]})").find("/laws/0/family"), std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "geometric", "p": "x"}]})").find("/laws/0/p"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "geometric", "p": 0.5, "q": 1}]})").find("/laws/0/q"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "geometric", "p": 1.5}]})").find("/laws/0"), std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "shifted_poisson", "lambda": 1, "shift": 0.5}]})")
                .find("/laws/0/shift"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "table", "min_support": 0, "weights": [0, 1]}]})")
                .find("/laws/0"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "discrete_weibull_unit"}], "tolerances": {"tail_tol": -1}})")
                .find("/tolerances/tail_tol"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"laws": [{"family": "discrete_weibull_unit"}], "tolerances": {"tial_tol": 1e-9}})")
                .find("/tolerances/tial_tol"),
            std::string::npos);
  config_error("[1, 2]");
}

TEST(Config, MissingFile) {
  try {
    load_pattern_config("/nonexistent/limitwalk.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
}

TEST(Config, LoadsShippedFixtures) {
  for (const char* name : {"example1.json", "example2.json", "positive_drift.json"}) {
    EXPECT_NO_THROW(load_pattern_config(std::string(LIMITWALK_FIXTURE_DIR) + "/" + name)) << name;
  }
}
