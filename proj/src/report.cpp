#include "permqio/report.hpp"

#include "json.hpp"

namespace permqio {

std::string report_to_json(const SolverReport& r) {
  nlohmann::ordered_json doc;
  doc["solver"] = r.solver;
  doc["status"] = r.failure ? "extinct" : "ok";
  if (r.failure) doc["failure"] = *r.failure;
  doc["best_route"] = std::vector<int>(r.best_route.begin(), r.best_route.end());
  doc["best_energy"] = r.best_energy;
  doc["total_queries"] = r.total_queries;
  doc["unique_queries"] = r.unique_queries;
  doc["rounds"] = r.rounds;
  auto& trace = doc["trace"] = nlohmann::ordered_json::array();
  for (const auto& t : r.trace) trace.push_back({{"round", t.round}, {"best", t.best}});
  if (!r.population_trace.empty()) {
    auto& pop = doc["population_trace"] = nlohmann::ordered_json::array();
    for (const auto& p : r.population_trace) {
      pop.push_back({{"beta", p.beta}, {"size", p.size}, {"e_bar", p.e_bar}});
    }
  }
  if (!r.walker_trace.empty()) {
    auto& walk = doc["walker_trace"] = nlohmann::ordered_json::array();
    for (const auto& w : r.walker_trace) {
      walk.push_back({{"s", w.s}, {"count", w.count}, {"mean_energy", w.mean_energy}, {"offset", w.offset}});
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace permqio
