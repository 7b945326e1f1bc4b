#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "limitwalk/cli.hpp"

using namespace limitwalk;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(LIMITWALK_FIXTURE_DIR) + "/" + name; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("limitwalk_test_" + name);
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = temp_path(name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, Example1CdfTable) {
  const auto r = run({"cdf", "--config", fixture("example1.json"), "--from", "-4", "--to", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "# case: ComputableMleq0\n"
            "x\tF_inf\n"
            "-4\t0\n"
            "-3\t0.228155493654\n"
            "-2\t0.352201128739\n"
            "-1\t0.419643377607\n"
            "0\t0.456310987308\n"
            "1\t0.704402257478\n"
            "2\t0.839286755214\n");
  EXPECT_EQ(r.err, "");
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const char* cmd : {"summary", "roots", "init"}) {
    const auto a = run({cmd, "--config", fixture("example2.json")});
    const auto b = run({cmd, "--config", fixture("example2.json")});
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out) << cmd;
  }
  const std::vector<std::string> v{"verify", "--config", fixture("example1.json"), "--points", "0,1",
                                   "--trials", "2000", "--horizon", "200", "--seed", "4"};
  EXPECT_EQ(run(v).out, run(v).out);
}

TEST(Cli, RootsAndInitExample1) {
  const auto r = run({"roots", "--config", fixture("example1.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("re\tim\tmultiplicity\tresidual\n-0.419643377607\t-0.606290729207\t1\t"), std::string::npos)
      << r.out;
  const auto i = run({"init", "--config", fixture("example1.json")});
  EXPECT_NE(i.out.find("0\t0.456310987308\n1\t0.704402257478\n2\t0.839286755214\n"), std::string::npos) << i.out;
}

TEST(Cli, PeriodWarning) {
  const auto r = run({"summary", "--config", fixture("example2.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning: period 3 > 1"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("D\t2\nM\t1\n"), std::string::npos) << r.out;
}

TEST(Cli, ZeroFunctionInit) {
  const auto r = run({"init", "--config", fixture("positive_drift.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("# case: ZeroFunction\n"), std::string::npos);
  EXPECT_NE(r.out.find("F_inf ≡ 0 (no boundary solve)"), std::string::npos);
  const auto c = run({"cdf", "--config", fixture("positive_drift.json"), "--from", "0", "--to", "1"});
  EXPECT_NE(c.out.find("0\t0\n1\t0\n"), std::string::npos);
  // verify needs a computable case.
  EXPECT_EQ(run({"verify", "--config", fixture("positive_drift.json"), "--points", "0"}).code, kExitValidation);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"bogus"}).code, kExitValidation);
  EXPECT_EQ(run({"cdf", "--config", fixture("example1.json")}).code, kExitValidation);
  EXPECT_EQ(run({"summary", "--config", "/nonexistent.json"}).code, kExitValidation);
  EXPECT_EQ(run({"cdf", "--config", fixture("example1.json"), "--from", "3", "--to", "1"}).code, kExitValidation);
  EXPECT_EQ(run({"gf", "--config", fixture("example1.json"), "--s", "2,0"}).code, kExitValidation);
  EXPECT_EQ(run({"gf", "--config", fixture("example1.json"), "--s", "abc"}).code, kExitValidation);
  const auto bad = write_temp("bad.json", R"({"laws": [{"family": "geometric", "p": 0.5, "extra": 1}]})");
  const auto r = run({"summary", "--config", bad});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("/laws/0/extra"), std::string::npos) << r.err;
  const auto near = run({"gf", "--config", fixture("example1.json"), "--s", "-0.419643377607081,0.606290729207199"});
  EXPECT_EQ(near.code, kExitValidation) << near.out << near.err;
  EXPECT_NE(near.err.find("NearRootArgument"), std::string::npos) << near.err;
}

TEST(Cli, JsonReportRoundTrip) {
  const auto path = temp_path("report.json");
  const auto r = run({"cdf", "--config", fixture("example1.json"), "--from", "-3", "--to", "2", "--json", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  std::ifstream in(path);
  const auto js = nlohmann::json::parse(in);
  EXPECT_EQ(js["command"], "cdf");
  EXPECT_EQ(js["case"], "ComputableMleq0");
  EXPECT_EQ(js["summary"]["D"], 3);
  EXPECT_TRUE(js["error"].is_null());
  ASSERT_EQ(js["table"]["rows"].size(), 6u);
  // Every number carries exactly the printed 12 significant digits.
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  for (const auto& row : js["table"]["rows"]) {
    std::getline(lines, line);
    const double v = row[1].get<double>();
    EXPECT_EQ(format_number(v), line.substr(line.find('\t') + 1));
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(js["roots"].size(), 2u);
  EXPECT_EQ(js["boundary"]["method"], "LinearSolve");
}

TEST(Cli, JsonReportOnError) {
  const auto path = temp_path("err.json");
  const auto r = run({"verify", "--config", fixture("positive_drift.json"), "--points", "0", "--json", path.string()});
  EXPECT_EQ(r.code, kExitValidation);
  std::ifstream in(path);
  const auto js = nlohmann::json::parse(in);
  EXPECT_EQ(js["error"]["name"], "NotComputable");
}

TEST(Cli, GfMatchesSeries) {
  const auto r = run({"gf", "--config", fixture("example1.json"), "--s", "0.25,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# series_base: 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("s_re\ts_im\txi_re\txi_im\n0.25\t0\t"), std::string::npos) << r.out;
}
