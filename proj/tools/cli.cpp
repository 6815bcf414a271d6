#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "slx/eigen_solver.hpp"
#include "slx/errors.hpp"
#include "slx/families.hpp"
#include "slx/json_io.hpp"
#include "slx/potential.hpp"
#include "slx/search.hpp"
#include "slx/sobolev.hpp"

namespace slx::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string potential_text(const std::string& inline_json, const std::string& file,
                           const char* what) {
  if (!inline_json.empty() && !file.empty())
    throw ContractError(std::string("give either inline JSON or a file for ") + what + ", not both");
  if (!inline_json.empty()) return inline_json;
  if (!file.empty()) return read_file(file);
  throw ContractError(std::string("missing ") + what + " (inline JSON or file)");
}

// Signed variant of the potential format: heights and weights may be negative.
SignedMeasure signed_measure_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("malformed measure JSON: ") + e.what());
  }
  auto numbers = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
      throw ContractError(std::string("measure JSON needs an array \"") + key + "\"");
    std::vector<double> v;
    for (const auto& x : j.at(key)) {
      if (!x.is_number()) throw ContractError(std::string("non-numeric entry in ") + key);
      v.push_back(x.get<double>());
    }
    return v;
  };
  std::vector<SignedDelta> deltas;
  if (j.contains("deltas")) {
    for (const auto& d : j.at("deltas")) {
      if (!d.is_object() || !d.contains("site") || !d.contains("weight") ||
          !d.at("site").is_number() || !d.at("weight").is_number())
        throw ContractError("each delta needs numeric \"site\" and \"weight\"");
      deltas.push_back({d.at("site").get<double>(), d.at("weight").get<double>()});
    }
  }
  return SignedMeasure(numbers("breakpoints"), numbers("heights"), std::move(deltas));
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

Format default_format(Command c) {
  return (c == Command::VerifyThm1 || c == Command::VerifyThm2) ? Format::Csv : Format::Json;
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig cfg;
  cfg.ode_steps_per_cell = c.steps_per_cell;
  cfg.theta_tolerance = c.theta_tolerance;
  cfg.keep_eigenfunction = c.samples;
  cfg.validate();
  return cfg;
}

RobinBC bc_of(const RunConfig& c) { return RobinBC(c.k0sq, c.k1sq); }

std::string cells_csv(const StepPotential& q) {
  std::string out = "left,right,height\n";
  for (std::size_t i = 0; i < q.cells(); ++i)
    out += num(q.breakpoints()[i]) + "," + num(q.breakpoints()[i + 1]) + "," +
           num(q.heights()[i]) + "\n";
  return out;
}

std::string run_eig(const RunConfig& c, Format f) {
  const auto q = potential_from_json(potential_text(c.q_json, c.q_file, "potential"));
  const auto result = lambda1(q, bc_of(c), solver_config(c));
  if (f == Format::Json) return to_json(result, c.samples) + "\n";
  std::string out = "lambda1,residual,bracket_lo,bracket_hi,iterations\n";
  out += num(result.lambda1) + "," + num(result.residual) + "," + num(result.bracket.first) +
         "," + num(result.bracket.second) + "," + std::to_string(result.iterations) + "\n";
  if (c.samples && result.eigenfunction) {
    out += "\nx,y,dy\n";
    for (const auto& s : *result.eigenfunction)
      out += num(s.x) + "," + num(s.y) + "," + num(s.dy) + "\n";
  }
  return out;
}

std::string run_eig_zero(const RunConfig& c, Format f) {
  const auto bc = bc_of(c);
  const double value = lambda1_zero(bc);
  if (f == Format::Json)
    return json{{"k0sq", bc.k0sq}, {"k1sq", bc.k1sq}, {"lambda1", value}}.dump() + "\n";
  return "k0sq,k1sq,lambda1\n" + num(bc.k0sq) + "," + num(bc.k1sq) + "," + num(value) + "\n";
}

std::string run_norms(const RunConfig& c, Format f) {
  if (c.p_list.empty()) throw ContractError("norms needs at least one exponent (--p)");
  const auto q = potential_from_json(potential_text(c.q_json, c.q_file, "potential"));
  std::vector<std::pair<double, double>> values;
  for (double p : c.p_list) values.emplace_back(p, pnorm(q, NormExponent(p)));
  if (f == Format::Json) {
    json rows = json::array();
    for (const auto& [p, v] : values) rows.push_back({{"p", p}, {"value", v}});
    return json{{"norms", rows}}.dump() + "\n";
  }
  std::string out = "p,value\n";
  for (const auto& [p, v] : values) out += num(p) + "," + num(v) + "\n";
  return out;
}

std::string run_wdist(const RunConfig& c, Format f) {
  const auto a = signed_measure_from_json(potential_text(c.q_json, c.q_file, "first measure"));
  const auto b = signed_measure_from_json(potential_text(c.g_json, c.g_file, "second measure"));
  const double d = wminus1_dist(a, b, c.grid);
  if (f == Format::Json)
    return json{{"grid", c.grid}, {"distance", d}}.dump() + "\n";
  return "grid,distance\n" + std::to_string(c.grid) + "," + num(d) + "\n";
}

std::string run_family(const RunConfig& c, Format f) {
  json j{{"statement", c.statement}};
  StepPotential q = StepPotential::constant(0.0);
  switch (c.statement) {
    case 1: {
      auto m = statement1_family({c.zeta, c.n}, c.gamma);
      q = m.q;
      j["gamma_norm"] = m.gamma_norm;
      break;
    }
    case 2: {
      SpikeTrainSpec spec;
      spec.target_level = c.rho;
      spec.floor = c.floor;
      spec.spike_count = c.spikes;
      spec.nu = c.nu > 0.0 ? c.nu : std::max(c.gamma, 0.0) + (1.0 - std::max(c.gamma, 0.0)) / 10.0;
      spec.spike_height = c.height > 0.0 ? c.height
                                         : spike_height_for_budget(
                                               [&] {
                                                 auto s = spec;
                                                 s.spike_height = s.target_level - s.floor;
                                                 return s;
                                               }(),
                                               0.5);
      auto m = statement2_family(spec, c.gamma);
      q = m.q;
      j["kappa"] = m.kappa;
      j["nu"] = spec.nu;
      j["nu_norm"] = m.nu_norm;
      j["spike_height"] = spec.spike_height;
      j["gamma_norm"] = pnorm(m.q, NormExponent(c.gamma));
      break;
    }
    case 3: {
      q = statement3_family(c.gamma, c.n);
      j["gamma_norm"] = pnorm(q, NormExponent(c.gamma));
      break;
    }
    default:
      throw ContractError("--statement must be 1, 2 or 3");
  }
  j["mass"] = q.mass();
  j["q"] = json::parse(to_json(q));
  if (f == Format::Json) return j.dump() + "\n";
  return cells_csv(q);
}

std::string run_verify_thm2(const RunConfig& c, Format f) {
  if (c.n_list.empty()) throw ContractError("verify-thm2 needs --n");
  const auto table = verify_thm2(c.gamma, bc_of(c), c.n_list, solver_config(c));
  return f == Format::Json ? to_json(table) + "\n" : table.to_csv();
}

std::string run_verify_thm1(const RunConfig& c, Format f) {
  if (c.rho_list.empty()) throw ContractError("verify-thm1 needs --rho");
  Thm1Options options;
  options.spike_count = c.spikes;
  options.floor = c.floor;
  options.nu = c.nu;
  const auto table = verify_thm1(c.gamma, bc_of(c), c.rho_list, solver_config(c), options);
  return f == Format::Json ? to_json(table) + "\n" : table.to_csv();
}

std::string run_search(const RunConfig& c, Format f) {
  ExtremumSearchSpec spec;
  spec.gamma = GammaConstraint(c.gamma);
  if (c.mode == "min")
    spec.mode = SearchMode::Min;
  else if (c.mode == "max")
    spec.mode = SearchMode::Max;
  else
    throw ContractError("--mode must be min or max");
  spec.cells = c.cells;
  spec.max_iters = c.iters;
  spec.seed = c.seed;
  if (c.height_cap > 0.0) spec.height_cap = c.height_cap;
  const auto rounds = search_rounds(spec, bc_of(c), c.rounds, c.cap_growth, solver_config(c));

  if (f == Format::Json) {
    json out = json::array();
    double cap = spec.height_cap;
    for (const auto& r : rounds) {
      json round = json::parse(to_json(r));
      round["height_cap"] = std::isfinite(cap) ? json(cap) : json(nullptr);
      out.push_back(std::move(round));
      cap *= c.cap_growth;
    }
    return json{{"mode", c.mode}, {"gamma", c.gamma}, {"seed", c.seed}, {"rounds", out}}.dump() +
           "\n";
  }
  std::string out = "round,iteration,best_lambda,step,accepted\n";
  for (std::size_t r = 0; r < rounds.size(); ++r)
    for (const auto& p : rounds[r].trace)
      out += std::to_string(r) + "," + std::to_string(p.iteration) + "," + num(p.best_lambda) +
             "," + num(p.step) + "," + (p.accepted ? "1" : "0") + "\n";
  return out;
}

void add_potential_options(CLI::App* app, RunConfig& c) {
  app->add_option("--q-json", c.q_json, "Potential as inline JSON");
  app->add_option("--q-file", c.q_file, "Potential JSON file");
}

void add_bc_options(CLI::App* app, RunConfig& c) {
  app->add_option("--k0sq", c.k0sq, "Left boundary coefficient k0^2")->check(CLI::NonNegativeNumber);
  app->add_option("--k1sq", c.k1sq, "Right boundary coefficient k1^2")->check(CLI::NonNegativeNumber);
}

void add_solver_options(CLI::App* app, RunConfig& c) {
  app->add_option("--steps-per-cell", c.steps_per_cell, "Minimum RK4 steps per cell")
      ->check(CLI::Range(16, 1 << 24));
  app->add_option("--theta-tol", c.theta_tolerance, "Prufer angle tolerance")
      ->check(CLI::PositiveNumber);
}

std::string error_line(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}}.dump() + "\n";
}

}  // namespace

std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig c;
  CLI::App app{"First-eigenvalue laboratory for y'' + q y + lambda y = 0 with Robin conditions",
               "slx"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  std::string output;
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", output, "Write the artifact to this file");
  app.add_option("--seed", c.seed, "Seed for randomized searches");

  auto* eig = app.add_subcommand("eig", "First eigenvalue by Prufer shooting");
  add_potential_options(eig, c);
  add_bc_options(eig, c);
  add_solver_options(eig, c);
  eig->add_flag("--samples", c.samples, "Include eigenfunction samples");

  auto* eig_zero = app.add_subcommand("eig-zero", "First eigenvalue for the zero potential");
  add_bc_options(eig_zero, c);

  auto* norms = app.add_subcommand("norms", "p-norm family of a step potential");
  add_potential_options(norms, c);
  norms->add_option("--p", c.p_list, "Exponents (comma separated)")->delimiter(',')->required();

  auto* wdist = app.add_subcommand("wdist", "Discrete W2^-1 distance of two signed measures");
  wdist->add_option("--f-json", c.q_json, "First measure as inline JSON");
  wdist->add_option("--f-file", c.q_file, "First measure JSON file");
  wdist->add_option("--g-json", c.g_json, "Second measure as inline JSON");
  wdist->add_option("--g-file", c.g_file, "Second measure JSON file");
  wdist->add_option("--grid", c.grid, "Number of grid intervals (>= 64)");

  auto* family = app.add_subcommand("family", "Generate a constructive potential family member");
  family->add_option("--statement", c.statement, "Family: 1 spike, 2 spike train, 3 vanishing spike")
      ->check(CLI::Range(1, 3));
  family->add_option("--zeta", c.zeta, "Spike site (single spike)");
  family->add_option("--n", c.n, "Family index n");
  family->add_option("--gamma", c.gamma, "Constraint exponent");
  family->add_option("--rho", c.rho, "Target level (spike train)");
  family->add_option("--floor", c.floor, "Floor level (spike train)");
  family->add_option("--spikes", c.spikes, "Spike count (spike train)");
  family->add_option("--height", c.height, "Spike height (spike train; default: tuned)");
  family->add_option("--nu", c.nu, "Intermediate exponent (spike train)");

  auto* thm1 = app.add_subcommand("verify-thm1", "Unboundedness below for gamma < 1");
  thm1->add_option("--gamma", c.gamma, "Constraint exponent (< 1)");
  add_bc_options(thm1, c);
  add_solver_options(thm1, c);
  thm1->add_option("--rho", c.rho_list, "Target levels (comma separated)")->delimiter(',')->required();
  thm1->add_option("--spikes", c.spikes, "Spike count");
  thm1->add_option("--floor", c.floor, "Floor level");
  thm1->add_option("--nu", c.nu, "Intermediate exponent");

  auto* thm2 = app.add_subcommand("verify-thm2", "Supremum equals the zero-potential value for gamma > 1");
  thm2->add_option("--gamma", c.gamma, "Constraint exponent (> 1)");
  add_bc_options(thm2, c);
  add_solver_options(thm2, c);
  thm2->add_option("--n", c.n_list, "Family indices (comma separated)")->delimiter(',')->required();

  auto* search = app.add_subcommand("search", "Coordinate search for extremal step potentials");
  search->add_option("--gamma", c.gamma, "Constraint exponent");
  add_bc_options(search, c);
  add_solver_options(search, c);
  search->add_option("--mode", c.mode, "min or max")->check(CLI::IsMember({"min", "max"}));
  search->add_option("--cells", c.cells, "Number of uniform cells");
  search->add_option("--iters", c.iters, "Iterations per round");
  search->add_option("--height-cap", c.height_cap, "Height cap (0: none)");
  search->add_option("--rounds", c.rounds, "Rounds; the cap grows between rounds");
  search->add_option("--cap-growth", c.cap_growth, "Cap multiplier between rounds");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ContractError("ValidationError", e.what());
  }

  const std::pair<CLI::App*, Command> table[] = {
      {eig, Command::Eig},         {eig_zero, Command::EigZero},  {norms, Command::Norms},
      {wdist, Command::Wdist},     {family, Command::Family},     {thm1, Command::VerifyThm1},
      {thm2, Command::VerifyThm2}, {search, Command::Search}};
  for (const auto& [sub, cmd] : table)
    if (sub->parsed()) c.command = cmd;
  if (!format.empty()) c.format = format == "csv" ? Format::Csv : Format::Json;
  if (!output.empty()) c.output_path = output;
  return c;
}

void execute(const RunConfig& c, std::ostream& out) {
  const Format f = c.format.value_or(default_format(c.command));
  std::string artifact;
  switch (c.command) {
    case Command::Eig: artifact = run_eig(c, f); break;
    case Command::EigZero: artifact = run_eig_zero(c, f); break;
    case Command::Norms: artifact = run_norms(c, f); break;
    case Command::Wdist: artifact = run_wdist(c, f); break;
    case Command::Family: artifact = run_family(c, f); break;
    case Command::VerifyThm1: artifact = run_verify_thm1(c, f); break;
    case Command::VerifyThm2: artifact = run_verify_thm2(c, f); break;
    case Command::Search: artifact = run_search(c, f); break;
  }
  if (c.output_path) {
    std::ofstream file(*c.output_path, std::ios::binary);
    if (!file) throw ContractError("cannot write output file: " + *c.output_path);
    file << artifact;
  } else {
    out << artifact;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto config = parse(args, out);
    if (!config) return kExitOk;
    execute(*config, out);
    return kExitOk;
  } catch (const SolverError& e) {
    err << error_line(e.kind(), e.what());
    return kExitSolver;
  } catch (const Error& e) {
    err << error_line(e.kind(), e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    err << error_line("ValidationError", e.what());
    return kExitValidation;
  }
}

}  // namespace slx::cli
