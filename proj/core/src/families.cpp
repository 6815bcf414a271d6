#include "slx/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "slx/errors.hpp"
#include "slx/parallel.hpp"

namespace slx {

namespace {

void require_gamma_in_unit_interval(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ContractError("statement1_family needs gamma in (0, 1)");
}

double default_nu(double gamma) {
  const double lower = std::max(gamma, 0.0);
  return lower + (1.0 - lower) / 10.0;
}

std::vector<EigenfunctionSample> zero_mode_samples(const RobinBC& bc) {
  constexpr std::size_t kIntervals = 4096;
  std::vector<double> xs(kIntervals + 1);
  for (std::size_t i = 0; i <= kIntervals; ++i)
    xs[i] = static_cast<double>(i) / static_cast<double>(kIntervals);
  return zero_potential_mode(bc, xs);
}

UnboundednessRow thm1_row(double gamma, const RobinBC& bc, double rho, double lambda_zero,
                          const std::vector<EigenfunctionSample>& zero_mode,
                          const SolverConfig& cfg, const Thm1Options& options) {
  SpikeTrainSpec spec;
  spec.target_level = rho;
  spec.floor = options.floor;
  spec.spike_count = options.spike_count;
  spec.nu = options.nu > 0.0 ? options.nu : default_nu(gamma);
  spec.spike_height = spec.target_level - spec.floor;
  spec.spike_height = spike_height_for_budget(spec, options.norm_budget);

  const auto member = statement2_family(spec, gamma);
  UnboundednessRow row;
  row.rho = rho;
  row.kappa = member.kappa;
  row.spike_height = spec.spike_height;
  row.spike_count = spec.spike_count;
  row.constraint_norm = pnorm(member.q, NormExponent(gamma));
  row.lambda1 = lambda1(Potential(member.q), bc, cfg).lambda1;
  row.reference = lambda_zero - rho;
  row.gap = row.reference - row.lambda1;
  // q = f / kappa >= f, so lambda1(q) <= lambda1(f) <= Rayleigh(f, zero mode).
  row.certificate = rayleigh(Potential(member.f), bc, zero_mode);
  row.slack = row.certificate - row.reference;
  const double slop = 1e-9 * std::max(1.0, std::abs(row.certificate));
  row.certified = std::abs(row.constraint_norm - 1.0) <= options.constraint_tolerance &&
                  member.kappa > 0.0 && member.kappa < 1.0 &&
                  row.lambda1 <= row.certificate + slop;
  return row;
}

}  // namespace

void SpikeFamilySpec::validate() const {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw ContractError("zeta must lie in [0, 1]");
  if (n < 2) throw ContractError("spike family needs n >= 2");
}

SpikeFamilyMember statement1_family(const SpikeFamilySpec& spec, double gamma) {
  spec.validate();
  require_gamma_in_unit_interval(gamma);
  const double n = static_cast<double>(spec.n);
  const double inv = 1.0 / n;
  const bool shifted = spec.zeta - inv > 0.0;
  const double start = shifted ? spec.zeta - inv : 0.0;
  const double end = shifted ? spec.zeta : inv;

  std::vector<double> bp{0.0};
  std::vector<double> h;
  if (start > 0.0) {
    bp.push_back(start);
    h.push_back(0.0);
  }
  bp.push_back(end);
  h.push_back(n);
  if (end < 1.0) {
    bp.push_back(1.0);
    h.push_back(0.0);
  }
  return {StepPotential(std::move(bp), std::move(h)), std::pow(n, (gamma - 1.0) / gamma)};
}

StepPotential statement3_family(double gamma, long long n) {
  if (!(gamma > 1.0)) throw ContractError("statement3_family needs gamma > 1");
  if (n < 2) throw ContractError("statement3_family needs n >= 2");
  const double nd = static_cast<double>(n);
  return StepPotential({0.0, 1.0 / nd, 1.0}, {std::pow(nd, 1.0 / gamma), 0.0});
}

void SpikeTrainSpec::validate() const {
  if (!(floor > 0.0 && floor < 1.0)) throw ContractError("floor must lie in (0, 1)");
  if (!(target_level > floor) || !std::isfinite(target_level))
    throw ContractError("target level must exceed the floor");
  if (spike_count < 1) throw ContractError("spike_count must be >= 1");
  if (!(nu > 0.0 && nu < 1.0)) throw ContractError("nu must lie in (0, 1)");
  if (!std::isfinite(spike_height) || spike_height < target_level - floor)
    throw ContractError("spike height must be at least target_level - floor so each "
                        "spike fits its 1/m slot");
}

double spike_train_nu_norm(const SpikeTrainSpec& spec) {
  const double covered = (spec.target_level - spec.floor) / spec.spike_height;
  const double integral = std::pow(spec.floor, spec.nu) * (1.0 - covered) +
                          std::pow(spec.spike_height + spec.floor, spec.nu) * covered;
  return std::pow(integral, 1.0 / spec.nu);
}

double spike_height_for_budget(SpikeTrainSpec spec, double budget) {
  // As h grows the nu-norm decreases toward the floor value.
  if (!(spec.floor < budget))
    throw NormBudgetExceeded("floor alone exceeds the norm budget; lower the floor",
                             std::numeric_limits<double>::infinity());
  double lo = std::log(spec.target_level - spec.floor);
  spec.spike_height = std::exp(lo);
  if (spike_train_nu_norm(spec) <= budget) return spec.spike_height;
  double hi = lo;
  do {
    hi += 8.0;
    spec.spike_height = std::exp(hi);
    if (!std::isfinite(spec.spike_height))
      throw NormBudgetExceeded("no finite spike height meets the norm budget",
                               std::numeric_limits<double>::infinity());
  } while (spike_train_nu_norm(spec) > budget);
  while (hi - lo > std::log(1.01)) {
    const double mid = 0.5 * (lo + hi);
    spec.spike_height = std::exp(mid);
    if (spike_train_nu_norm(spec) <= budget)
      hi = mid;
    else
      lo = mid;
  }
  return std::exp(hi);
}

SpikeTrainMember statement2_family(const SpikeTrainSpec& spec, double gamma) {
  spec.validate();
  GammaConstraint constraint(gamma);
  if (!(gamma < 1.0)) throw ContractError("statement2_family needs gamma < 1");
  if (!(spec.nu > std::max(gamma, 0.0)))
    throw ContractError("nu must lie in (gamma^+, 1)");

  const int m = spec.spike_count;
  const double width = (spec.target_level - spec.floor) / m / spec.spike_height;
  std::vector<double> bp{0.0};
  std::vector<double> h;
  for (int j = 1; j <= m; ++j) {
    const double centre = (j - 0.5) / m;
    const double a = centre - 0.5 * width;
    const double b = centre + 0.5 * width;
    if (a > bp.back()) {
      bp.push_back(a);
      h.push_back(spec.floor);
    }
    bp.push_back(b < 1.0 ? b : 1.0);
    h.push_back(spec.spike_height + spec.floor);
  }
  if (bp.back() < 1.0) {
    bp.push_back(1.0);
    h.push_back(spec.floor);
  }
  StepPotential f(std::move(bp), std::move(h));

  const double nu_norm = pnorm(f, NormExponent(spec.nu));
  if (!(nu_norm < 1.0)) {
    double suggestion = std::numeric_limits<double>::infinity();
    try {
      suggestion = spike_height_for_budget(spec, 0.5);
    } catch (const NormBudgetExceeded&) {
    }
    throw NormBudgetExceeded(
        fmt::format("nu-norm of the spike train is {:.6g} >= 1; raise the spike height "
                    "(suggested {:.6g}) or lower the floor",
                    nu_norm, suggestion),
        suggestion);
  }
  auto normalized = normalize_gamma(f, constraint);
  return {std::move(f), std::move(normalized.q), normalized.kappa, nu_norm};
}

ConvergenceTable verify_thm2(double gamma, const RobinBC& bc,
                             const std::vector<long long>& n_list,
                             const SolverConfig& cfg) {
  if (!(gamma > 1.0)) throw ContractError("verify_thm2 needs gamma > 1");
  for (auto n : n_list)
    if (n < 2) throw ContractError("verify_thm2 needs every n >= 2");
  const double reference = lambda1_zero(bc);
  ConvergenceTable table;
  table.rows = parallel_map<ConvergenceRow>(n_list.size(), [&](std::size_t i) {
    const auto q = statement3_family(gamma, n_list[i]);
    const double value = lambda1(Potential(q), bc, cfg).lambda1;
    return ConvergenceRow{static_cast<double>(n_list[i]), value, reference, reference - value};
  });
  constexpr double tol = 1e-8;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.lambda1 > row.reference + tol) table.bounded = false;
    if (i > 0 && row.gap > table.rows[i - 1].gap + tol) table.monotone = false;
  }
  return table;
}

UnboundednessTable verify_thm1(double gamma, const RobinBC& bc,
                               const std::vector<double>& rho_list,
                               const SolverConfig& cfg, const Thm1Options& options) {
  GammaConstraint constraint(gamma);
  if (!(gamma < 1.0)) throw ContractError("verify_thm1 needs gamma < 1");
  for (std::size_t i = 0; i < rho_list.size(); ++i) {
    if (!(rho_list[i] > 1.0)) throw ContractError("verify_thm1 needs every rho > 1");
    if (i > 0 && !(rho_list[i] > rho_list[i - 1]))
      throw ContractError("verify_thm1 needs an increasing rho list");
  }
  const double lambda_zero = lambda1_zero(bc);
  const auto zero_mode = zero_mode_samples(bc);
  UnboundednessTable table;
  table.rows = parallel_map<UnboundednessRow>(rho_list.size(), [&](std::size_t i) {
    return thm1_row(gamma, bc, rho_list[i], lambda_zero, zero_mode, cfg, options);
  });
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.certified = table.certified && table.rows[i].certified;
    if (i > 0 && !(table.rows[i].lambda1 < table.rows[i - 1].lambda1)) table.decreasing = false;
  }
  return table;
}

UnboundednessRow certify_below(double gamma, const RobinBC& bc, double bound,
                               const SolverConfig& cfg, const Thm1Options& options) {
  GammaConstraint constraint(gamma);
  if (!(gamma < 1.0)) throw ContractError("certify_below needs gamma < 1");
  const double lambda_zero = lambda1_zero(bc);
  const auto zero_mode = zero_mode_samples(bc);
  double rho = std::max(2.0, bound + lambda_zero + 1.0);
  for (int attempt = 0; attempt < 64; ++attempt, rho *= 2.0) {
    auto row = thm1_row(gamma, bc, rho, lambda_zero, zero_mode, cfg, options);
    if (row.certified && row.lambda1 < -bound) return row;
  }
  throw SolverError("CertificationFailed",
                    fmt::format("no certified member below {} found", -bound));
}

std::string ConvergenceTable::to_csv() const {
  std::string out = "n_or_rho,lambda1,reference,gap\n";
  for (const auto& r : rows)
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", r.n_or_rho, r.lambda1,
                       r.reference, r.gap);
  return out;
}

std::string UnboundednessTable::to_csv() const {
  std::string out = "n_or_rho,lambda1,reference,gap\n";
  for (const auto& r : rows)
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", r.rho, r.lambda1, r.reference,
                       r.gap);
  return out;
}

}  // namespace slx
