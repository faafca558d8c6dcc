#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permqio/permutation.hpp"

namespace permqio {

struct RoundBest {
  std::size_t round = 0;
  double best = 0.0;
};

struct PopulationSample {
  double beta = 0.0;
  std::size_t size = 0;
  double e_bar = 0.0;
};

struct WalkerSample {
  double s = 0.0;
  std::size_t count = 0;
  double mean_energy = 0.0;
  double offset = 0.0;
};

/// Common result of every solver run.
struct SolverReport {
  std::string solver;
  Permutation best_route;
  double best_energy = 0.0;
  std::uint64_t total_queries = 0;
  std::uint64_t unique_queries = 0;
  std::size_t rounds = 0;
  std::vector<RoundBest> trace;
  std::vector<PopulationSample> population_trace;  // population annealing only
  std::vector<WalkerSample> walker_trace;          // substochastic Monte Carlo only
  /// Set when the population died out; the best-so-far fields remain valid.
  std::optional<std::string> failure;
};

/// {"best_route", "best_energy", "total_queries", "unique_queries", "rounds", "trace",
///  optional "population_trace" / "walker_trace", "solver", "status"[, "failure"]}
std::string report_to_json(const SolverReport& report);

}  // namespace permqio
