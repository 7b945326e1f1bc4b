#include "limitwalk/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "limitwalk/error.hpp"
#include "limitwalk/polynomial.hpp"

namespace limitwalk {
namespace {

using cplx = std::complex<double>;

constexpr double kMinSlack = 1e-12;
constexpr double kMaxSlack = 1e-4;

// sum_j P(S_N = j) |d^order/ds^order s^j| at |s|. Rounding in period_pgf is
// proportional to this, which for small |s| is far above 1 (terms s^{-D}).
double term_scale(const CycleSummary& summary, cplx s, int order) {
  const double r = std::abs(s);
  const auto w = summary.period_sum.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int64_t j = summary.period_sum.min_support() + static_cast<std::int64_t>(i);
    double falling = 1.0;
    for (int k = 0; k < order; ++k) falling *= std::abs(static_cast<double>(j - k));
    acc += w[i] * falling * std::pow(r, static_cast<double>(j - order));
  }
  return acc;
}

// |G^{(order)}(s) - [order == 0]|, relative to the size of the summed terms
// once those exceed 1.
double residual(const CycleSummary& summary, cplx s, int order = 0) {
  const double target = order == 0 ? 1.0 : 0.0;
  return std::abs(period_pgf(summary, s, order) - target) / std::max(1.0, term_scale(summary, s, order));
}

// Damped Newton on G^{(order)}(s) - [order == 0]. Step halving keeps the
// residual from increasing.
cplx newton_refine(const CycleSummary& summary, cplx s, int order, int max_iterations) {
  const double target = order == 0 ? 1.0 : 0.0;
  auto value_at = [&](cplx z) { return period_pgf(summary, z, order) - target; };
  cplx f = value_at(s);
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (f == cplx{0.0, 0.0}) break;
    const cplx df = period_pgf(summary, s, order + 1);
    if (df == cplx{0.0, 0.0}) break;
    cplx step = f / df;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      const cplx trial = s - step;
      const cplx ft = value_at(trial);
      if (std::abs(ft) < std::abs(f)) {
        s = trial;
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s))) {
      break;
    }
  }
  return s;
}

struct Cluster {
  cplx centroid;
  int count = 0;
};

std::vector<Cluster> cluster_roots(std::vector<cplx> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<int> owner(pts.size(), -1);
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (owner[i] >= 0) continue;
    const int id = static_cast<int>(clusters.size());
    owner[i] = id;
    std::vector<std::size_t> members{i};
    // Transitive closure of the "within tol" relation.
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (owner[j] < 0 && std::abs(pts[j] - pts[members[m]]) < tol) {
          owner[j] = id;
          members.push_back(j);
        }
      }
    }
    cplx sum{0.0, 0.0};
    for (std::size_t m : members) sum += pts[m];
    clusters.push_back({sum / static_cast<double>(members.size()), static_cast<int>(members.size())});
  }
  return clusters;
}

// Snap near-real clusters onto the axis and force complex ones into exact
// conjugate pairs.
void symmetrize(std::vector<Cluster>& clusters, double tol) {
  std::vector<char> used(clusters.size(), 0);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (std::abs(clusters[i].centroid.imag()) < 0.5 * tol) {
      clusters[i].centroid.imag(0.0);
      used[i] = 1;
    }
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (used[i] || clusters[i].centroid.imag() < 0.0) continue;
    std::size_t best = clusters.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (used[j] || j == i || clusters[j].centroid.imag() >= 0.0) continue;
      const double d = std::abs(clusters[j].centroid - std::conj(clusters[i].centroid));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == clusters.size() || best_dist > 1e3 * tol || clusters[best].count != clusters[i].count) {
      throw Error(ErrorCode::RootCountMismatch, "complex root without a matching conjugate");
    }
    clusters[best].centroid = std::conj(clusters[i].centroid);
    used[i] = used[best] = 1;
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (!used[i]) throw Error(ErrorCode::RootCountMismatch, "complex root without a matching conjugate");
  }
}

int count_inside(const std::vector<Cluster>& clusters, double slack) {
  int total = 0;
  for (const Cluster& c : clusters) {
    if (std::abs(c.centroid) <= 1.0 + slack) total += c.count;
  }
  return total;
}

}  // namespace

bool RootSet::all_simple() const noexcept {
  return std::all_of(roots.begin(), roots.end(), [](const UnitRoot& r) { return r.multiplicity == 1; });
}

RootSet find_unit_roots(const CycleSummary& summary, const RootConfig& cfg) {
  if (!is_computable(classify(summary))) {
    throw Error(ErrorCode::NotComputable, "root search requires negative drift");
  }
  const std::int64_t reach = summary.lower_reach;
  RootSet out;
  if (reach == 1) return out;

  // s^D (G_N(s) - 1) as an ordinary polynomial.
  const auto w = summary.period_sum.weights();
  std::vector<double> coeffs(std::max<std::size_t>(w.size(), static_cast<std::size_t>(reach) + 1), 0.0);
  std::copy(w.begin(), w.end(), coeffs.begin());
  coeffs[static_cast<std::size_t>(reach)] -= 1.0;

  const std::vector<cplx> all = poly::aberth_roots(coeffs);

  std::vector<cplx> refined;
  for (cplx z : all) {
    if (std::abs(z) > 1.0 + 10.0 * kMaxSlack) continue;
    refined.push_back(newton_refine(summary, z, 0, cfg.max_newton_iterations));
  }

  // The trivial root s = 1 is removed exactly once.
  std::size_t near_one = 0;
  std::vector<cplx> nontrivial;
  for (cplx z : refined) {
    if (std::abs(z - 1.0) < cfg.cluster_tol) {
      ++near_one;
    } else {
      nontrivial.push_back(z);
    }
  }
  if (near_one != 1) {
    throw Error(ErrorCode::RootCountMismatch,
                std::to_string(near_one) + " roots within cluster_tol of s = 1 (drift too close to zero?)");
  }

  std::vector<Cluster> clusters = cluster_roots(nontrivial, cfg.cluster_tol);
  for (Cluster& c : clusters) {
    if (c.count > 1) {
      c.centroid = newton_refine(summary, c.centroid, c.count - 1, cfg.max_newton_iterations);
    }
  }
  symmetrize(clusters, cfg.cluster_tol);

  const int expected = static_cast<int>(reach - 1);
  double slack = std::clamp(cfg.disk_slack, kMinSlack, kMaxSlack);
  if (count_inside(clusters, slack) != expected) {
    // Bisect log(slack) toward a value that yields the right count.
    double lo = std::log(kMinSlack);
    double hi = std::log(kMaxSlack);
    bool found = false;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const int cnt = count_inside(clusters, std::exp(mid));
      if (cnt == expected) {
        slack = std::exp(mid);
        found = true;
        break;
      }
      if (cnt > expected) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (!found) {
      throw Error(ErrorCode::RootCountMismatch,
                  "found " + std::to_string(count_inside(clusters, cfg.disk_slack)) + " roots in the unit disk, expected " +
                      std::to_string(expected));
    }
  }

  for (const Cluster& c : clusters) {
    if (std::abs(c.centroid) > 1.0 + slack) continue;
    const double res = residual(summary, c.centroid);
    if (!(res < cfg.residual_tol)) {
      throw Error(ErrorCode::NewtonDivergence, "refined root residual " + short_number(res) + " above tolerance");
    }
    out.roots.push_back({c.centroid, c.count});
    out.residuals.push_back(res);
    out.total_multiplicity += c.count;
  }
  // Clusters came out sorted by their first member; re-sort by centroid.
  std::vector<std::size_t> order(out.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cplx x = out.roots[a].value, y = out.roots[b].value;
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  RootSet sorted;
  sorted.total_multiplicity = out.total_multiplicity;
  for (std::size_t i : order) {
    sorted.roots.push_back(out.roots[i]);
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

std::vector<double> root_residual_report(const CycleSummary& summary, const RootSet& roots) {
  std::vector<double> report;
  for (const UnitRoot& r : roots.roots) {
    report.push_back(residual(summary, r.value));
    for (int k = 1; k < r.multiplicity; ++k) {
      report.push_back(residual(summary, r.value, k));
    }
  }
  return report;
}

}  // namespace limitwalk
