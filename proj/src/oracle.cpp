#include "limitwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "limitwalk/error.hpp"
#include "limitwalk/kernels.hpp"

namespace limitwalk {
namespace {

// Below this a DP cell is treated as empty; keeps the deep negative tail out
// of the subnormal range.
constexpr double kNegligibleMass = 1e-290;

struct Sampler {
  std::int64_t min_support;
  std::vector<double> cumulative;

  explicit Sampler(const DiscretePmf& pmf) : min_support(pmf.min_support()) {
    double acc = 0.0;
    for (double w : pmf.weights()) {
      acc += w;
      cumulative.push_back(acc);
    }
  }

  template <class Rng>
  std::int64_t draw(Rng& rng) const {
    const double u = std::generate_canonical<double, 53>(rng);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto idx = std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1);
    return min_support + idx;
  }
};

std::int64_t run_stream(const std::vector<Sampler>& samplers, std::int64_t x, std::int64_t horizon,
                        std::int64_t trials, std::uint64_t seed, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  const auto period = static_cast<std::int64_t>(samplers.size());
  std::int64_t survived = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    std::int64_t sum = 0;
    bool ok = true;
    for (std::int64_t k = 0; k < horizon; ++k) {
      sum += samplers[static_cast<std::size_t>(k % period)].draw(rng);
      if (sum > x) {
        ok = false;
        break;
      }
    }
    survived += ok ? 1 : 0;
  }
  return survived;
}

}  // namespace

std::string_view method_name(OracleMethod m) noexcept {
  return m == OracleMethod::MonteCarlo ? "MonteCarlo" : "ExactDP";
}

OracleReport mc_estimate(const CyclePattern& pattern, std::int64_t x, const MonteCarloConfig& cfg) {
  if (cfg.horizon < 1 || cfg.trials < 1 || cfg.streams < 1) {
    throw Error(ErrorCode::InvalidParameter, "Monte Carlo needs horizon, trials and streams >= 1");
  }
  std::vector<Sampler> samplers;
  for (const DiscretePmf& law : pattern.laws()) samplers.emplace_back(law);

  const int streams = cfg.streams;
  std::vector<std::int64_t> per_stream_trials(static_cast<std::size_t>(streams), cfg.trials / streams);
  for (std::int64_t i = 0; i < cfg.trials % streams; ++i) ++per_stream_trials[static_cast<std::size_t>(i)];
  std::vector<std::int64_t> survived(static_cast<std::size_t>(streams), 0);

  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, streams);
  auto work = [&](int first) {
    for (int s = first; s < streams; s += threads) {
      survived[static_cast<std::size_t>(s)] =
          run_stream(samplers, x, cfg.horizon, per_stream_trials[static_cast<std::size_t>(s)], cfg.seed, s);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  std::int64_t total = 0;
  for (std::int64_t s : survived) total += s;
  const double p = static_cast<double>(total) / static_cast<double>(cfg.trials);
  return OracleReport{
      .x = x,
      .horizon = cfg.horizon,
      .estimate = p,
      .std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials)),
      .method = OracleMethod::MonteCarlo,
      .trials = cfg.trials,
  };
}

OracleReport dp_bound(const CyclePattern& pattern, std::int64_t x, std::int64_t horizon, std::int64_t state_budget) {
  if (horizon < 1) throw Error(ErrorCode::InvalidParameter, "DP horizon must be >= 1");
  OracleReport report{.x = x, .horizon = horizon, .estimate = 0.0, .std_error = 0.0, .method = OracleMethod::ExactDP,
                      .trials = 0};

  std::int64_t min_step = 0;
  for (const DiscretePmf& law : pattern.laws()) min_step = std::min(min_step, law.min_support());
  const std::int64_t lo = horizon * min_step;
  if (x < lo) return report;
  const std::int64_t states = x - lo + 1;
  if (states > state_budget / horizon) {
    throw Error(ErrorCode::StateBudgetExceeded,
                std::to_string(states) + " states x " + std::to_string(horizon) + " steps exceeds the budget of " +
                    std::to_string(state_budget));
  }

  std::vector<double> cur(static_cast<std::size_t>(states), 0.0);
  std::vector<double> nxt(static_cast<std::size_t>(states), 0.0);
  // Occupied cells are [active_lo, states); start from S_0 = 0 which may lie above x.
  std::int64_t active_lo = 0;
  bool started = false;

  for (std::int64_t step = 0; step < horizon; ++step) {
    const DiscretePmf& law = pattern.law_at_step(step);
    const auto w = law.weights();
    std::fill(nxt.begin(), nxt.end(), 0.0);
    std::int64_t next_lo = states;

    if (!started) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::int64_t v = law.min_support() + static_cast<std::int64_t>(i);
        if (v > x) break;
        nxt[static_cast<std::size_t>(v - lo)] = w[i];
        next_lo = std::min(next_lo, v - lo);
      }
      started = true;
    } else {
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::int64_t shift = law.min_support() + static_cast<std::int64_t>(i);
        // src index s maps to dst s + shift; keep dst in [0, states).
        const std::int64_t src_lo = std::max(active_lo, -shift);
        const std::int64_t src_hi = std::min(states, states - shift);
        if (src_hi <= src_lo) continue;
        const auto n = static_cast<std::size_t>(src_hi - src_lo);
        kernels::axpy(w[i], std::span<const double>(cur).subspan(static_cast<std::size_t>(src_lo), n),
                      std::span<double>(nxt).subspan(static_cast<std::size_t>(src_lo + shift), n));
        next_lo = std::min(next_lo, src_lo + shift);
      }
    }
    while (next_lo < states && nxt[static_cast<std::size_t>(next_lo)] < kNegligibleMass) {
      nxt[static_cast<std::size_t>(next_lo)] = 0.0;
      ++next_lo;
    }
    std::swap(cur, nxt);
    active_lo = next_lo;
    if (active_lo >= states) return report;
  }

  double total = 0.0;
  for (std::int64_t i = active_lo; i < states; ++i) total += cur[static_cast<std::size_t>(i)];
  report.estimate = std::min(total, 1.0);
  return report;
}

std::vector<VerifyRow> verify(const LimitDistribution& ld, std::span<const std::int64_t> xs, const VerifyConfig& cfg) {
  if (!is_computable(ld.case_label())) {
    throw Error(ErrorCode::NotComputable, "verification compares against a computable limit law");
  }
  std::vector<VerifyRow> rows;
  for (std::int64_t x : xs) {
    VerifyRow row;
    row.x = x;
    row.analytic = ld.cdf(x);
    row.dp = dp_bound(ld.pattern(), x, cfg.dp_horizon, cfg.state_budget);
    row.mc = mc_estimate(ld.pattern(), x, cfg.mc);
    row.pass = std::abs(row.analytic - row.dp.estimate) <= cfg.dp_convergence_tol &&
               std::abs(row.analytic - row.mc.estimate) <= 4.0 * row.mc.std_error + cfg.dp_convergence_tol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace limitwalk
