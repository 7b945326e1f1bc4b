#include "limitwalk/config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

#include "limitwalk/error.hpp"

namespace limitwalk {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "field " + where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where + "/" + key, "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where + "/" + key, "missing");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

DiscretePmf parse_law(const json& law, const std::string& where, double tail_tol) {
  if (!law.is_object()) fail(where, "expected an object");
  const json& fam = require(law, where, "family");
  if (!fam.is_string()) fail(where + "/family", "expected a string");
  const std::string family = fam.get<std::string>();
  try {
    if (family == "geometric") {
      reject_unknown(law, where, {"family", "p"});
      return geometric(number(require(law, where, "p"), where + "/p"), tail_tol);
    }
    if (family == "shifted_poisson") {
      reject_unknown(law, where, {"family", "lambda", "shift"});
      const std::int64_t shift = law.contains("shift") ? integer(law.at("shift"), where + "/shift") : 0;
      return shifted_poisson(number(require(law, where, "lambda"), where + "/lambda"), shift, tail_tol);
    }
    if (family == "discrete_weibull_unit") {
      reject_unknown(law, where, {"family"});
      return discrete_weibull_unit(tail_tol);
    }
    if (family == "table") {
      reject_unknown(law, where, {"family", "min_support", "weights"});
      const std::int64_t min_support = integer(require(law, where, "min_support"), where + "/min_support");
      const json& ws = require(law, where, "weights");
      if (!ws.is_array()) fail(where + "/weights", "expected an array");
      std::vector<double> weights;
      for (std::size_t i = 0; i < ws.size(); ++i) weights.push_back(number(ws[i], where + "/weights/" + std::to_string(i)));
      return DiscretePmf::from_weights(min_support, weights);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(where, e.what());
  }
  fail(where + "/family", "unknown family '" + family + "'");
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

PatternConfig parse_pattern_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)) + ": " + e.what());
  }
  reject_unknown(root, "", {"laws", "tolerances"});

  BuildConfig build;
  double dp_tol = 5e-4;
  if (root.contains("tolerances")) {
    const json& tol = root.at("tolerances");
    reject_unknown(tol, "/tolerances", {"tail_tol", "disk_slack", "cluster_tol", "residual_tol", "dp_convergence_tol"});
    auto positive = [&](const char* key, double& dst) {
      if (!tol.contains(key)) return;
      const std::string where = std::string("/tolerances/") + key;
      const double v = number(tol.at(key), where);
      if (!(v > 0.0)) fail(where, "must be positive");
      dst = v;
    };
    positive("tail_tol", build.tail_tol);
    positive("disk_slack", build.roots.disk_slack);
    positive("cluster_tol", build.roots.cluster_tol);
    positive("residual_tol", build.roots.residual_tol);
    positive("dp_convergence_tol", dp_tol);
    if (build.tail_tol >= 1.0) fail("/tolerances/tail_tol", "must be below 1");
  }

  const json& laws = require(root, "", "laws");
  if (!laws.is_array() || laws.empty()) fail("/laws", "expected a non-empty array");
  std::vector<DiscretePmf> parsed;
  for (std::size_t i = 0; i < laws.size(); ++i) {
    parsed.push_back(parse_law(laws[i], "/laws/" + std::to_string(i), build.tail_tol));
  }
  return PatternConfig{CyclePattern(std::move(parsed)), build, dp_tol};
}

PatternConfig load_pattern_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pattern_config(text);
}

}  // namespace limitwalk
