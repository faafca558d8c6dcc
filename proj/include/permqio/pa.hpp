#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "permqio/kernels.hpp"
#include "permqio/pt.hpp"
#include "permqio/report.hpp"

namespace permqio {

/// Inverse temperatures beta_0 < beta_1 < ... < beta_f.
struct AnnealSchedule {
  std::vector<double> betas;
};

/// beta_0 = 0 followed by `steps` geometrically spaced values from beta_first to beta_final.
AnnealSchedule geometric_beta_schedule(double beta_first, double beta_final, std::size_t steps);

struct Population {
  std::vector<Chain> members;
  std::size_t nominal_size = 0;

  std::size_t current_size() const noexcept { return members.size(); }
};

/// tau_hat_j = (R / R_prev) * exp(-(beta_next - beta_prev) E_j) / Q with
/// Q = mean_j exp(-(beta_next - beta_prev) E_j); the weights sum to R.
std::vector<double> resampling_weights(const Population& pop, double beta_prev, double beta_next);

/// floor(tau) or floor(tau) + 1, the latter with probability frac(tau).
std::vector<std::size_t> copy_counts(std::span<const double> weights, RandomStream& rng);

/// Resample by copy counts, then N_s sweeps of every member at T = 1 / beta_next.
/// Member j sweeps with rng.split(j). Throws ExtinctionError if no copies survive.
void pa_step(Population& pop, double beta_prev, double beta_next, std::size_t sweeps, const CostModel& model,
             QueryLedger& ledger, RandomStream& rng, Incumbent& best, Execution exec = Execution::parallel,
             std::size_t step_index = 0);

/// Population mean energy per stop, (1/R_i) sum_j E_j / n.
double population_energy(const Population& pop, std::size_t n);

struct PaConfig {
  std::size_t population = 100;  // R
  std::size_t temperatures = 50;  // geometric beta steps after beta_0 = 0
  std::optional<double> t_hot;   // first (hottest) annealing temperature; calibrated when unset
  std::optional<double> t_cold;  // final temperature; calibrated when unset
  std::size_t sweeps = 5;        // N_s
  std::uint64_t seed = 0;
  CalibrationSettings calibration;
  Execution execution = Execution::parallel;
};

/// Uniform start at beta_0 = 0, then pa_step over the schedule. Extinction ends
/// the run early with `failure` set; the best route found so far is kept.
SolverReport run_pa(const CostModel& model, const PaConfig& config);

}  // namespace permqio
