#include "permqio/pa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "permqio/errors.hpp"

namespace permqio {
namespace {

enum StreamTag : std::uint64_t { kCalibration = 1, kInit = 2, kStep = 3 };

}  // namespace

AnnealSchedule geometric_beta_schedule(double beta_first, double beta_final, std::size_t steps) {
  if (steps == 0 || !(beta_first > 0.0) || !(beta_final >= beta_first)) {
    throw ConfigError("beta schedule needs steps >= 1 and 0 < beta_first <= beta_final");
  }
  if (steps > 1 && !(beta_final > beta_first)) throw ConfigError("beta schedule must be strictly increasing");
  AnnealSchedule s;
  s.betas.push_back(0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    s.betas.push_back(steps == 1 ? beta_final : beta_first * std::pow(beta_final / beta_first, f));
  }
  return s;
}

std::vector<double> resampling_weights(const Population& pop, double beta_prev, double beta_next) {
  if (pop.members.empty()) throw std::invalid_argument("resampling_weights: empty population");
  if (!(beta_next > beta_prev)) throw std::invalid_argument("resampling_weights: beta must increase");
  const double dbeta = beta_next - beta_prev;
  double e_min = pop.members.front().energy;
  for (const auto& m : pop.members) e_min = std::min(e_min, m.energy);

  std::vector<double> w(pop.members.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = std::exp(-dbeta * (pop.members[j].energy - e_min));
    sum += w[j];
  }
  // tau_hat = (R / R_prev) * w / (sum / R_prev) = R * w / sum.
  const double scale = static_cast<double>(pop.nominal_size) / sum;
  for (auto& x : w) x *= scale;
  return w;
}

std::vector<std::size_t> copy_counts(std::span<const double> weights, RandomStream& rng) {
  std::vector<std::size_t> counts(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] >= 0.0) || !std::isfinite(weights[j])) {
      throw std::invalid_argument("copy_counts: weights must be finite and non-negative");
    }
    const double whole = std::floor(weights[j]);
    const double frac = weights[j] - whole;
    const double r = rng.uniform();
    counts[j] = static_cast<std::size_t>(whole) + (r > frac ? 0 : 1);
  }
  return counts;
}

void pa_step(Population& pop, double beta_prev, double beta_next, std::size_t sweeps, const CostModel& model,
             QueryLedger& ledger, RandomStream& rng, Incumbent& best, Execution exec, std::size_t step_index) {
  const auto weights = resampling_weights(pop, beta_prev, beta_next);
  const auto counts = copy_counts(weights, rng);

  std::vector<Chain> next;
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) {
    throw ExtinctionError("population annealing: no replicas survived resampling at beta=" +
                              std::to_string(beta_next) + " (step " + std::to_string(step_index) + ", " +
                              std::to_string(pop.members.size()) + " members before)",
                          step_index);
  }
  next.reserve(total);
  for (std::size_t j = 0; j < counts.size(); ++j) {
    for (std::size_t c = 0; c < counts[j]; ++c) next.push_back(pop.members[j]);
  }
  pop.members = std::move(next);

  std::vector<RandomStream> streams;
  streams.reserve(pop.members.size());
  for (std::size_t j = 0; j < pop.members.size(); ++j) streams.push_back(rng.split(j));
  const std::vector<double> temps(pop.members.size(), 1.0 / beta_next);
  sweep_chains(exec, model, pop.members, temps, sweeps, streams, ledger, best);
}

double population_energy(const Population& pop, std::size_t n) {
  if (pop.members.empty()) throw std::invalid_argument("population_energy: empty population");
  if (n == 0) throw std::invalid_argument("population_energy: n must be positive");
  double sum = 0.0;
  for (const auto& m : pop.members) sum += m.energy;
  return sum / static_cast<double>(pop.members.size()) / static_cast<double>(n);
}

SolverReport run_pa(const CostModel& model, const PaConfig& config) {
  if (config.population < 2 || config.sweeps == 0 || config.temperatures == 0) {
    throw ConfigError("pa: population >= 2, sweeps >= 1 and temperatures >= 1 required");
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
  const AnnealSchedule schedule = geometric_beta_schedule(1.0 / range.hot, 1.0 / range.cold, config.temperatures);

  Population pop;
  pop.nominal_size = config.population;
  RandomStream init = RandomStream::derive(config.seed, kInit);
  for (std::size_t j = 0; j < config.population; ++j) {
    pop.members.push_back(make_chain(model, random_permutation(n, init), ledger, best));
  }

  SolverReport report;
  report.solver = "pa";
  report.population_trace.push_back({0.0, pop.current_size(), population_energy(pop, n)});
  for (std::size_t i = 1; i < schedule.betas.size(); ++i) {
    RandomStream rng = RandomStream::derive(config.seed, kStep, i);
    try {
      pa_step(pop, schedule.betas[i - 1], schedule.betas[i], config.sweeps, model, ledger, rng, best,
              config.execution, i);
    } catch (const ExtinctionError& e) {
      report.failure = e.what();
      break;
    }
    report.rounds = i;
    report.trace.push_back({i, best.energy});
    report.population_trace.push_back({schedule.betas[i], pop.current_size(), population_energy(pop, n)});
  }

  report.best_route = *best.route;
  report.best_energy = model.cost(report.best_route);
  report.total_queries = ledger.total();
  report.unique_queries = ledger.unique();
  return report;
}

}  // namespace permqio
