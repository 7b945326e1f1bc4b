#include "limitwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "limitwalk/config.hpp"
#include "limitwalk/error.hpp"
#include "limitwalk/limit_distribution.hpp"
#include "limitwalk/oracle.hpp"

namespace limitwalk {
namespace {

using ojson = nlohmann::ordered_json;

// Numbers in the JSON report carry the same 12 significant digits as the TSV.
double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

ojson number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

struct Options {
  std::string command;
  std::string config_path;
  std::string json_path;
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::string s_arg = "0,0";
  std::string points;
  std::int64_t trials = 1'000'000;
  std::int64_t horizon = 2000;
  std::uint64_t seed = 1;
};

std::vector<std::int64_t> parse_points(const std::string& text) {
  std::vector<std::int64_t> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::InvalidParameter, "--points: '" + item + "' is not an integer");
    pts.push_back(v);
  }
  return pts;
}

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used == text.size()) return {re, 0.0};
    } else {
      const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
      std::size_t ub = 0;
      const double re = std::stod(a, &used);
      const double im = std::stod(b, &ub);
      if (used == a.size() && ub == b.size()) return {re, im};
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidParameter, "--s expects RE,IM, got '" + text + "'");
}

ojson summary_json(const CycleSummary& s) {
  ojson weights = ojson::array();
  for (double w : s.period_sum.weights()) weights.push_back(number_json(w));
  return ojson{
      {"N", s.period},
      {"D", s.lower_reach},
      {"M", s.support_floor},
      {"mean_SN", number_json(s.drift)},
      {"prefix_minima", s.prefix_minima},
      {"tail_error_total", number_json(s.tail_error_total)},
      {"f_N", ojson{{"min_support", s.period_sum.min_support()}, {"weights", weights}}},
  };
}

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {
    report_["command"] = opt.command;
  }

  int run() {
    int code = kExitOk;
    try {
      execute();
    } catch (const Error& e) {
      code = is_numerical(e.code()) ? kExitNumerical : kExitValidation;
      report_["error"] = ojson{{"name", std::string(error_name(e.code()))}, {"message", e.what()}};
      err_ << "error: " << e.what() << '\n';
    }
    if (!report_.contains("error")) report_["error"] = nullptr;
    report_["warnings"] = warnings_;
    if (!opt_.json_path.empty()) {
      std::ofstream f(opt_.json_path);
      if (!f) {
        err_ << "error: cannot write " << opt_.json_path << '\n';
        return code == kExitOk ? kExitValidation : code;
      }
      f << report_.dump(2) << '\n';
    }
    return code;
  }

 private:
  void warn(const std::string& msg) {
    warnings_.push_back(msg);
    err_ << "warning: " << msg << '\n';
  }

  void comment(const std::string& key, const std::string& value) { out_ << "# " << key << ": " << value << '\n'; }

  void execute() {
    const PatternConfig cfg = load_pattern_config(opt_.config_path);
    const LimitDistribution ld = LimitDistribution::build(cfg.pattern, cfg.build);
    const CycleSummary& s = ld.summary();
    const CaseLabel label = ld.case_label();
    report_["summary"] = summary_json(s);
    report_["case"] = std::string(case_name(label));

    if (s.tail_error_total > 0.0) warn("truncated tail mass " + format_number(s.tail_error_total));
    if (s.period > 1) {
      warn("period " + std::to_string(s.period) +
           " > 1: the recurrence does not constrain prefix sums inside a period; compare with `verify`");
    }
    if (ld.roots()) {
      ojson roots = ojson::array();
      for (std::size_t i = 0; i < ld.roots()->roots.size(); ++i) {
        const UnitRoot& r = ld.roots()->roots[i];
        roots.push_back(ojson{{"re", number_json(r.value.real())},
                              {"im", number_json(r.value.imag())},
                              {"multiplicity", r.multiplicity},
                              {"residual", number_json(ld.roots()->residuals[i])}});
      }
      report_["roots"] = roots;
    }
    if (ld.boundary()) {
      const BoundaryValues& b = *ld.boundary();
      ojson vals = ojson::array();
      for (double v : b.values) vals.push_back(number_json(v));
      report_["boundary"] = ojson{{"base", b.base},
                                  {"values", vals},
                                  {"balance_residual", number_json(b.balance_residual)},
                                  {"system_condition", number_json(b.system_condition.value_or(NAN))},
                                  {"method", b.method == BoundaryMethod::LinearSolve ? "LinearSolve" : "ClosedForm"}};
      if (b.system_condition && *b.system_condition > 1e8) {
        warn("boundary system condition number " + format_number(*b.system_condition));
      }
    }

    comment("case", std::string(case_name(label)));
    const std::string& cmd = opt_.command;
    if (cmd == "summary") {
      print_summary(s);
    } else if (cmd == "roots") {
      print_roots(ld);
    } else if (cmd == "init") {
      print_init(ld);
    } else if (cmd == "cdf" || cmd == "pmf") {
      print_table(ld, cmd == "cdf");
    } else if (cmd == "gf") {
      print_gf(ld);
    } else if (cmd == "verify") {
      print_verify(ld, cfg);
    }
  }

  void print_summary(const CycleSummary& s) {
    out_ << "field\tvalue\n";
    out_ << "N\t" << s.period << '\n';
    out_ << "D\t" << s.lower_reach << '\n';
    out_ << "M\t" << s.support_floor << '\n';
    out_ << "mean_SN\t" << format_number(s.drift) << '\n';
    out_ << "tail_error_total\t" << format_number(s.tail_error_total) << '\n';
    out_ << "f_N_min_support\t" << s.period_sum.min_support() << '\n';
    out_ << "f_N_size\t" << s.period_sum.size() << '\n';
  }

  void print_roots(const LimitDistribution& ld) {
    if (!ld.roots()) comment("roots", "none (not a computable case)");
    out_ << "re\tim\tmultiplicity\tresidual\n";
    if (!ld.roots()) return;
    for (std::size_t i = 0; i < ld.roots()->roots.size(); ++i) {
      const UnitRoot& r = ld.roots()->roots[i];
      out_ << format_number(r.value.real()) << '\t' << format_number(r.value.imag()) << '\t' << r.multiplicity << '\t'
           << format_number(ld.roots()->residuals[i]) << '\n';
    }
  }

  void print_init(const LimitDistribution& ld) {
    if (ld.case_label() == CaseLabel::ZeroFunction) {
      comment("result", "F_inf ≡ 0 (no boundary solve)");
      out_ << "x\tF_inf\n";
      return;
    }
    if (ld.case_label() == CaseLabel::DegenerateStep) {
      comment("result", "F_inf steps from 0 to 1 at M = " + std::to_string(ld.summary().support_floor));
      out_ << "x\tF_inf\n";
      return;
    }
    const BoundaryValues& b = *ld.boundary();
    comment("balance_residual", format_number(b.balance_residual));
    out_ << "x\tF_inf\n";
    for (std::size_t j = 0; j < b.values.size(); ++j) {
      out_ << b.base + static_cast<std::int64_t>(j) << '\t' << format_number(b.values[j]) << '\n';
    }
  }

  void print_table(const LimitDistribution& ld, bool cumulative) {
    if (opt_.to < opt_.from) throw Error(ErrorCode::InvalidParameter, "--to must not be below --from");
    const char* column = cumulative ? "F_inf" : "f_inf";
    ojson rows = ojson::array();
    out_ << "x\t" << column << '\n';
    for (std::int64_t x = opt_.from; x <= opt_.to; ++x) {
      const double v = cumulative ? ld.cdf(x) : ld.pmf_xi(x);
      out_ << x << '\t' << format_number(v) << '\n';
      rows.push_back(ojson::array({x, number_json(v)}));
    }
    report_["table"] = ojson{{"columns", ojson::array({"x", column})}, {"rows", rows}};
  }

  void print_gf(const LimitDistribution& ld) {
    const std::complex<double> s = parse_complex(opt_.s_arg);
    const std::complex<double> v = ld.xi_series(s);
    comment("series_base", std::to_string(ld.series_base()));
    out_ << "s_re\ts_im\txi_re\txi_im\n";
    out_ << format_number(s.real()) << '\t' << format_number(s.imag()) << '\t' << format_number(v.real()) << '\t'
         << format_number(v.imag()) << '\n';
    report_["gf"] = ojson{{"s_re", number_json(s.real())},
                          {"s_im", number_json(s.imag())},
                          {"series_base", ld.series_base()},
                          {"xi_re", number_json(v.real())},
                          {"xi_im", number_json(v.imag())}};
  }

  void print_verify(const LimitDistribution& ld, const PatternConfig& cfg) {
    VerifyConfig vc;
    vc.mc.trials = opt_.trials;
    vc.mc.horizon = opt_.horizon;
    vc.mc.seed = opt_.seed;
    vc.dp_horizon = opt_.horizon;
    vc.dp_convergence_tol = cfg.dp_convergence_tol;
    const std::vector<std::int64_t> xs = parse_points(opt_.points);
    const std::vector<VerifyRow> rows = verify(ld, xs, vc);
    ojson js = ojson::array();
    out_ << "x\tanalytic\tdp\tmc\tmc_stderr\tverdict\n";
    for (const VerifyRow& r : rows) {
      const char* verdict = r.pass ? "PASS" : "FAIL";
      out_ << r.x << '\t' << format_number(r.analytic) << '\t' << format_number(r.dp.estimate) << '\t'
           << format_number(r.mc.estimate) << '\t' << format_number(r.mc.std_error) << '\t' << verdict << '\n';
      js.push_back(ojson{{"x", r.x},
                         {"analytic", number_json(r.analytic)},
                         {"dp", ojson{{"estimate", number_json(r.dp.estimate)}, {"horizon", r.dp.horizon}}},
                         {"mc",
                          ojson{{"estimate", number_json(r.mc.estimate)},
                                {"stderr", number_json(r.mc.std_error)},
                                {"horizon", r.mc.horizon},
                                {"trials", r.mc.trials}}},
                         {"verdict", verdict}});
    }
    report_["verification"] = ojson{{"seed", opt_.seed}, {"dp_convergence_tol", number_json(vc.dp_convergence_tol)}, {"rows", js}};
  }

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  ojson report_;
  ojson warnings_ = ojson::array();
};

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Limit law of the running maximum of a periodic integer random walk", "limitwalk"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "pattern JSON file")->required();
    sub->add_option("--json", opt.json_path, "write the full report as JSON");
  };
  auto* summary = app.add_subcommand("summary", "period-sum law and constants");
  auto* roots = app.add_subcommand("roots", "roots of G_N(s) = 1 in the unit disk");
  auto* init = app.add_subcommand("init", "initial values seeding the recurrence");
  auto* cdf = app.add_subcommand("cdf", "table of F_inf(x)");
  auto* pmf = app.add_subcommand("pmf", "table of P(sup = x)");
  auto* gf = app.add_subcommand("gf", "generating function of F_inf");
  auto* ver = app.add_subcommand("verify", "compare with exact DP and Monte Carlo");
  for (CLI::App* sub : {summary, roots, init, cdf, pmf, gf, ver}) add_common(sub);
  for (CLI::App* sub : {cdf, pmf}) {
    sub->add_option("--from", opt.from, "first x")->required();
    sub->add_option("--to", opt.to, "last x")->required();
  }
  gf->add_option("--s", opt.s_arg, "argument RE,IM with |s| < 1")->required();
  ver->add_option("--points", opt.points, "comma-separated x values")->required();
  ver->add_option("--trials", opt.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  ver->add_option("--horizon", opt.horizon, "horizon for DP and Monte Carlo")->check(CLI::PositiveNumber);
  ver->add_option("--seed", opt.seed, "Monte Carlo seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  for (CLI::App* sub : app.get_subcommands()) opt.command = sub->get_name();

  Runner runner(opt, out, err);
  return runner.run();
}

}  // namespace limitwalk
