// Acceptance run: one [PASS]/[FAIL] line per criterion with its measured
// worst case and wall time. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "generators.hpp"
#include "slx/eigen_solver.hpp"
#include "slx/families.hpp"
#include "slx/potential.hpp"
#include "slx/search.hpp"
#include "slx/sobolev.hpp"

using namespace slx;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<Verdict()> body;
};

Verdict exact_norm_formula() {
  double worst = 0.0;
  for (double g : {0.25, 0.5, 0.75})
    for (long long n : {2LL, 10LL, 100LL, 10000LL}) {
      const auto member = statement1_family({0.5, n}, g);
      const double expected = std::pow(static_cast<double>(n), (g - 1.0) / g);
      worst = std::max(worst, std::abs(pnorm(member.q, NormExponent(g)) - expected) / expected);
    }
  return {worst <= 1e-12, fmt::format("max relative error {:.3g} (limit 1e-12)", worst)};
}

Verdict spectral_shift() {
  testing::Rng rng(20001);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Potential q(testing::random_step(rng, 0.0, 50.0));
    const auto bc = testing::random_bc(rng);
    const double base = lambda1(q, bc).lambda1;
    for (double c : {1.0, 10.0})
      worst = std::max(worst, std::abs(lambda1(shift(q, c), bc).lambda1 - (base - c)));
  }
  return {worst <= 1e-8, fmt::format("max deviation {:.3g} (limit 1e-8)", worst)};
}

Verdict oracle_equivalence() {
  testing::Rng rng(20002);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Potential q(testing::random_step(rng, 0.0, 50.0));
    const auto bc = testing::random_bc(rng);
    worst = std::max(worst, std::abs(lambda1(q, bc).lambda1 - lambda1_fd(q, bc, 4096)));
  }
  return {worst <= 1e-4, fmt::format("max |shooting - FE| {:.3g} (limit 1e-4)", worst)};
}

Verdict zero_baseline() {
  const Potential zero(StepPotential::constant(0.0));
  double worst = 0.0;
  for (const RobinBC bc : {RobinBC(0, 0), RobinBC(1, 0), RobinBC(1, 1), RobinBC(4, 9)})
    worst = std::max(worst, std::abs(lambda1_zero(bc) - lambda1(zero, bc).lambda1));
  const double neumann = std::abs(lambda1(zero, RobinBC(0, 0)).lambda1);
  return {worst <= 1e-8 && neumann <= 1e-10 && lambda1_zero(RobinBC(0, 0)) == 0.0,
          fmt::format("max mismatch {:.3g} (limit 1e-8), Neumann |lambda1| {:.3g} (limit 1e-10)",
                      worst, neumann)};
}

Verdict ceiling_trend() {
  const auto t = verify_thm2(2.0, RobinBC(1, 1), {10, 100, 1000, 10000});
  bool ok = t.rows.size() == 4;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    ok = ok && r.lambda1 <= r.reference;
    if (i > 0) ok = ok && r.gap < t.rows[i - 1].gap;
    worst_ratio = std::max(worst_ratio, r.gap * std::sqrt(r.n_or_rho));
  }
  const double last = t.rows.empty() ? INFINITY : t.rows.back().gap;
  ok = ok && last < 0.05 && worst_ratio <= 3.0;
  return {ok, fmt::format("gap at n=1e4 {:.4g} (limit 0.05), max gap*sqrt(n) {:.3g} (limit 3)",
                          last, worst_ratio)};
}

Verdict unbounded_below() {
  const std::vector<double> rhos{10.0, 100.0, 1000.0};
  const double bounds[] = {-5.0, -50.0, -500.0};
  const auto t = verify_thm1(0.5, RobinBC(0, 0), rhos);
  bool ok = t.rows.size() == 3 && t.certified && t.decreasing;
  std::string values;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    ok = ok && std::abs(r.constraint_norm - 1.0) <= 1e-10 && r.lambda1 < bounds[i];
    values += fmt::format("{}{:.4g}", i ? ", " : "", r.lambda1);
  }
  return {ok, fmt::format("lambda1 = [{}] against [-5, -50, -500]", values)};
}

Verdict cauchy_envelope() {
  const std::size_t grid = 1 << 14;
  double worst_margin = -INFINITY;
  for (auto [n, m] : {std::pair{100LL, 1000LL}, std::pair{1000LL, 10000LL}}) {
    const auto a = SignedMeasure::from(statement1_family({0.5, n}, 0.5).q);
    const auto b = SignedMeasure::from(statement1_family({0.5, m}, 0.5).q);
    const double bound = std::sqrt(1.0 / static_cast<double>(std::min(n, m))) + 2.0 / grid;
    worst_margin = std::max(worst_margin, wminus1_dist(a, b, grid) - bound);
  }
  return {worst_margin <= 0.0, fmt::format("max (distance - envelope) {:.3g}", worst_margin)};
}

Verdict monotone_in_q() {
  testing::Rng rng(20008);
  std::uniform_real_distribution<double> bump(0.0, 20.0);
  double worst = -INFINITY;
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_step(rng, 0.0, 30.0);
    const auto b = testing::random_step(rng, 0.0, 30.0);
    auto [ra, rb] = refine_common(a, b);
    std::vector<double> lower(ra.heights().begin(), ra.heights().end());
    std::vector<double> upper(lower);
    for (std::size_t k = 0; k < lower.size(); ++k) {
      lower[k] = std::min(ra.heights()[k], rb.heights()[k]);
      upper[k] = std::max(ra.heights()[k], rb.heights()[k]) + (k % 2 ? bump(rng) : 0.0);
    }
    const std::vector<double> bp(ra.breakpoints().begin(), ra.breakpoints().end());
    const auto bc = testing::random_bc(rng);
    const double l1 = lambda1(Potential(StepPotential(bp, lower)), bc).lambda1;
    const double l2 = lambda1(Potential(StepPotential(bp, upper)), bc).lambda1;
    worst = std::max(worst, l2 - l1);
  }
  return {worst <= 1e-8, fmt::format("max lambda1(q2) - lambda1(q1) {:.3g} (limit 1e-8)", worst)};
}

Verdict norm_monotone() {
  testing::Rng rng(20009);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  double worst = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    const auto y = testing::random_step(rng, 1e-3, 100.0);
    double p = exponent(rng);
    double r = exponent(rng);
    if (p > r) std::swap(p, r);
    if (p == r) r = std::nextafter(r, 4.0);
    const double ratio = pnorm(y, NormExponent(p)) / pnorm(y, NormExponent(r));
    worst = std::max(worst, ratio - 1.0);
  }
  return {worst <= 1e-12, fmt::format("max ||y||_p/||y||_r - 1 = {:.3g} (limit 1e-12)", worst)};
}

Verdict delta_consistency() {
  const RobinBC bc(1, 1);
  const auto spike = statement1_family({0.5, 10000}, 0.5).q;
  const double a = lambda1(Potential(spike), bc).lambda1;
  const double b = lambda1(Potential(StepPotential::constant(0.0), {{0.5, 1.0}}), bc).lambda1;
  return {std::abs(a - b) <= 1e-3, fmt::format("difference {:.3g} (limit 1e-3)", std::abs(a - b))};
}

Verdict search_ceiling() {
  const RobinBC bc(1, 1);
  ExtremumSearchSpec up;
  up.gamma = GammaConstraint(2.0);
  up.mode = SearchMode::Max;
  up.cells = 8;
  up.max_iters = 500;
  up.seed = 1;
  const auto r = search_extremum(up, bc);
  const double ceiling = lambda1_zero(bc);
  double peak = r.best_lambda;
  for (const auto& p : r.trace) peak = std::max(peak, p.best_lambda);

  ExtremumSearchSpec down;
  down.gamma = GammaConstraint(0.5);
  down.mode = SearchMode::Min;
  down.cells = 16;
  down.max_iters = 150;
  down.height_cap = 2.0;
  down.seed = 2;
  const auto rounds = search_rounds(down, bc, 5, 2.0);
  bool decreasing = rounds.size() == 5;
  std::string values;
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    if (i > 0) decreasing = decreasing && rounds[i].best_lambda < rounds[i - 1].best_lambda;
    values += fmt::format("{}{:.4g}", i ? ", " : "", rounds[i].best_lambda);
  }
  return {peak <= ceiling + 1e-6 && decreasing,
          fmt::format("max-mode peak - ceiling {:.3g}; min-mode rounds [{}]", peak - ceiling,
                      values)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "exact norm formula of the spike family", 1, exact_norm_formula},
      {"AC2", "spectral shift identity", 30, spectral_shift},
      {"AC3", "shooting agrees with finite elements", 120, oracle_equivalence},
      {"AC4", "zero-potential baseline", 5, zero_baseline},
      {"AC5", "shrinking-mass trend for gamma = 2", 60, ceiling_trend},
      {"AC6", "unboundedness below for gamma = 1/2", 300, unbounded_below},
      {"AC7", "dual-norm Cauchy envelope", 30, cauchy_envelope},
      {"AC8", "eigenvalue monotone in the potential", 60, monotone_in_q},
      {"AC9", "norm family monotone in the exponent", 5, norm_monotone},
      {"AC10", "spike versus point mass", 10, delta_consistency},
      {"AC11", "search ceiling and unbounded descent", 300, search_ceiling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %-4s %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL",
                c.id.c_str(), c.title.c_str(), v.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
