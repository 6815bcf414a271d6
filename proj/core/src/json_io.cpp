#include "slx/json_io.hpp"

#include <json.hpp>

#include "slx/errors.hpp"

namespace slx {

using nlohmann::json;

namespace {

json step_json(const StepPotential& q) {
  return json{{"breakpoints", std::vector<double>(q.breakpoints().begin(), q.breakpoints().end())},
              {"heights", std::vector<double>(q.heights().begin(), q.heights().end())}};
}

json potential_json(const Potential& q) {
  json j = step_json(q.step());
  j["deltas"] = json::array();
  for (const auto& d : q.deltas()) j["deltas"].push_back({{"site", d.site}, {"weight", d.weight}});
  return j;
}

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ContractError(std::string("potential JSON needs an array \"") + key + "\"");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ContractError(std::string("non-numeric entry in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string to_json(const StepPotential& q) { return step_json(q).dump(); }

std::string to_json(const Potential& q) { return potential_json(q).dump(); }

Potential potential_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("malformed potential JSON: ") + e.what());
  }
  if (!j.is_object()) throw ContractError("potential JSON must be an object");
  StepPotential step(number_array(j, "breakpoints"), number_array(j, "heights"));
  std::vector<DeltaComponent> deltas;
  if (j.contains("deltas")) {
    if (!j.at("deltas").is_array()) throw ContractError("\"deltas\" must be an array");
    for (const auto& d : j.at("deltas")) {
      if (!d.is_object() || !d.contains("site") || !d.contains("weight") ||
          !d.at("site").is_number() || !d.at("weight").is_number())
        throw ContractError("each delta needs numeric \"site\" and \"weight\"");
      deltas.push_back({d.at("site").get<double>(), d.at("weight").get<double>()});
    }
  }
  return Potential(std::move(step), std::move(deltas));
}

std::string to_json(const EigenResult& r, bool with_eigenfunction) {
  json j{{"lambda1", r.lambda1},
         {"residual", r.residual},
         {"bracket", {r.bracket.first, r.bracket.second}},
         {"iterations", r.iterations}};
  if (with_eigenfunction && r.eigenfunction) {
    json samples = json::array();
    for (const auto& s : *r.eigenfunction) samples.push_back({s.x, s.y, s.dy});
    j["eigenfunction_samples"] = std::move(samples);
  }
  return j.dump();
}

std::string to_json(const ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n_or_rho", r.n_or_rho},
                    {"lambda1", r.lambda1},
                    {"reference", r.reference},
                    {"gap", r.gap}});
  return json{{"rows", rows}, {"bounded", t.bounded}, {"monotone", t.monotone}}.dump();
}

std::string to_json(const UnboundednessTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n_or_rho", r.rho},
                    {"lambda1", r.lambda1},
                    {"reference", r.reference},
                    {"gap", r.gap},
                    {"slack", r.slack},
                    {"certificate", r.certificate},
                    {"kappa", r.kappa},
                    {"constraint_norm", r.constraint_norm},
                    {"spike_height", r.spike_height},
                    {"spike_count", r.spike_count},
                    {"certified", r.certified}});
  return json{{"rows", rows}, {"certified", t.certified}, {"decreasing", t.decreasing}}.dump();
}

std::string to_json(const SearchResult& r) {
  json trace = json::array();
  for (const auto& p : r.trace)
    trace.push_back({{"iteration", p.iteration},
                     {"best_lambda", p.best_lambda},
                     {"step", p.step},
                     {"accepted", p.accepted}});
  return json{{"best_q", step_json(r.best_q)}, {"best_lambda", r.best_lambda}, {"trace", trace}}
      .dump();
}

}  // namespace slx
