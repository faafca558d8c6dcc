#include "permqio/pt.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "permqio/errors.hpp"

namespace permqio {
namespace {

enum StreamTag : std::uint64_t { kCalibration = 1, kSwaps = 2, kReplica = 3 };

void check_endpoints(double t_hot, double t_cold, std::size_t m) {
  if (m < 2) throw ConfigError("temperature ladder needs at least 2 slots");
  if (!(t_cold > 0.0) || !(t_hot > t_cold) || !std::isfinite(t_hot)) {
    throw ConfigError("temperature ladder needs t_hot > t_cold > 0");
  }
}

double mean_acceptance(const std::vector<double>& uphill, double t) {
  double acc = 0.0;
  for (double d : uphill) acc += std::exp(-d / t);
  return acc / static_cast<double>(uphill.size());
}

double solve_temperature(const std::vector<double>& uphill, double target) {
  const double scale = std::accumulate(uphill.begin(), uphill.end(), 0.0) / static_cast<double>(uphill.size());
  double lo = std::log(scale) - 40.0, hi = std::log(scale) + 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_acceptance(uphill, std::exp(mid)) < target ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

TemperatureLadder geometric_ladder(double t_hot, double t_cold, std::size_t m) {
  check_endpoints(t_hot, t_cold, m);
  TemperatureLadder ladder;
  ladder.temperatures.resize(m);
  const double ratio = t_cold / t_hot;
  for (std::size_t i = 0; i < m; ++i) {
    ladder.temperatures[i] = t_hot * std::pow(ratio, static_cast<double>(i) / static_cast<double>(m - 1));
  }
  ladder.temperatures.back() = t_cold;
  return ladder;
}

TemperatureLadder inverse_linear_ladder(double t_hot, double t_cold, std::size_t m) {
  check_endpoints(t_hot, t_cold, m);
  const double beta_hot = 1.0 / t_hot, beta_cold = 1.0 / t_cold;
  TemperatureLadder ladder;
  ladder.temperatures.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double beta = beta_hot + (beta_cold - beta_hot) * static_cast<double>(i) / static_cast<double>(m - 1);
    ladder.temperatures[i] = 1.0 / beta;
  }
  ladder.temperatures.front() = t_hot;
  ladder.temperatures.back() = t_cold;
  return ladder;
}

TemperatureRange calibrate_temperatures(const CostModel& model, RandomStream& rng, QueryLedger& ledger,
                                        const CalibrationSettings& settings) {
  if (!(settings.hot_acceptance > settings.cold_acceptance) || !(settings.cold_acceptance > 0.0) ||
      !(settings.hot_acceptance < 1.0) || settings.samples == 0) {
    throw ConfigError("calibration targets must satisfy 0 < cold < hot < 1");
  }
  const std::size_t n = model.size();
  TemperatureRange range;
  if (n < 2) return range;
  std::vector<double> uphill;
  for (std::size_t i = 0; i < settings.samples; ++i) {
    Permutation p = random_permutation(n, rng);
    const double e = model.cost(p);
    ledger.record(p);
    const AdjacentMove m = random_move(n, rng);
    const double e2 = model.delta_cost(p, m, e);
    p.transpose(m);
    ledger.record(p);
    if (e2 > e) uphill.push_back(e2 - e);
  }
  if (uphill.empty()) return range;
  range.hot = solve_temperature(uphill, settings.hot_acceptance);
  range.cold = solve_temperature(uphill, settings.cold_acceptance);
  return range;
}

SweepStats metropolis_sweep(PtReplica& replica, const TemperatureLadder& ladder, const CostModel& model,
                            QueryLedger& ledger, Incumbent& best) {
  return metropolis_sweep(model, replica.chain, ladder[replica.temperature_index], replica.rng, ledger, best);
}

double swap_probability(double delta_beta, double delta_energy) {
  const double x = delta_beta * delta_energy;
  return x >= 0.0 ? 1.0 : std::exp(x);
}

bool swap_states(Chain& at_i, Chain& at_j, double beta_i, double beta_j, RandomStream& rng) {
  const double p = swap_probability(beta_j - beta_i, at_j.energy - at_i.energy);
  if (p < 1.0 && !(rng.uniform() < p)) return false;
  std::swap(at_i, at_j);
  return true;
}

bool swap_attempt(PtReplica& a, PtReplica& b, const TemperatureLadder& ladder, RandomStream& rng) {
  PtReplica* lo = &a;
  PtReplica* hi = &b;
  if (lo->temperature_index > hi->temperature_index) std::swap(lo, hi);
  if (hi->temperature_index != lo->temperature_index + 1 || hi->temperature_index >= ladder.size()) {
    throw std::logic_error("swap_attempt: replicas are not at adjacent ladder slots (" +
                           std::to_string(a.temperature_index) + ", " + std::to_string(b.temperature_index) + ")");
  }
  return swap_states(lo->chain, hi->chain, ladder.beta(lo->temperature_index), ladder.beta(hi->temperature_index),
                     rng);
}

SolverReport run_pt(const CostModel& model, const PtConfig& config) {
  if (config.replicas == 0 || config.sweeps_per_round == 0 || config.max_rounds == 0 || config.patience == 0) {
    throw ConfigError("pt: replicas, sweeps_per_round, max_rounds and patience must be positive");
  }
  const std::size_t n = model.size();
  QueryLedger ledger(n);
  Incumbent best;

  TemperatureRange range;
  if (!config.t_hot || !config.t_cold) {
    RandomStream calib = RandomStream::derive(config.seed, kCalibration);
    range = calibrate_temperatures(model, calib, ledger, config.calibration);
  }
  if (config.t_hot) range.hot = *config.t_hot;
  if (config.t_cold) range.cold = *config.t_cold;

  const std::size_t m = config.replicas;
  TemperatureLadder ladder;
  if (m == 1) {
    if (!(range.cold > 0.0)) throw ConfigError("pt: temperature must be positive");
    ladder.temperatures = {range.cold};
  } else {
    ladder = config.profile == LadderProfile::geometric ? geometric_ladder(range.hot, range.cold, m)
                                                        : inverse_linear_ladder(range.hot, range.cold, m);
  }

  std::vector<RandomStream> streams;
  std::vector<Chain> chains;
  for (std::size_t i = 0; i < m; ++i) {
    streams.push_back(RandomStream::derive(config.seed, kReplica, i));
    chains.push_back(make_chain(model, random_permutation(n, streams.back()), ledger, best));
  }
  RandomStream swap_rng = RandomStream::derive(config.seed, kSwaps);

  SolverReport report;
  report.solver = "pt";
  std::size_t stale = 0;
  for (std::size_t round = 0; round < config.max_rounds; ++round) {
    const double before = best.energy;
    sweep_chains(config.execution, model, chains, ladder.temperatures, config.sweeps_per_round, streams, ledger, best);
    for (std::size_t i = round % 2; i + 1 < m; i += 2) {
      swap_states(chains[i], chains[i + 1], ladder.beta(i), ladder.beta(i + 1), swap_rng);
    }
    report.trace.push_back({round + 1, best.energy});
    report.rounds = round + 1;
    stale = best.energy < before ? 0 : stale + 1;
    if (stale >= config.patience) break;
  }

  report.best_route = *best.route;
  report.best_energy = model.cost(report.best_route);
  report.total_queries = ledger.total();
  report.unique_queries = ledger.unique();
  return report;
}

}  // namespace permqio
