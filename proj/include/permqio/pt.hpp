#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "permqio/kernels.hpp"
#include "permqio/ledger.hpp"
#include "permqio/problem.hpp"
#include "permqio/report.hpp"

namespace permqio {

/// Temperatures T_1 > T_2 > ... > T_m > 0; slot 0 is the hottest.
struct TemperatureLadder {
  std::vector<double> temperatures;

  std::size_t size() const noexcept { return temperatures.size(); }
  double operator[](std::size_t i) const { return temperatures[i]; }
  double beta(std::size_t i) const { return 1.0 / temperatures[i]; }
};

/// T_i = T_hot (T_cold / T_hot)^((i-1)/(m-1)).
TemperatureLadder geometric_ladder(double t_hot, double t_cold, std::size_t m);
/// beta_i equally spaced between 1/t_hot and 1/t_cold, returned hottest first.
TemperatureLadder inverse_linear_ladder(double t_hot, double t_cold, std::size_t m);

enum class LadderProfile { geometric, inverse_linear };

struct TemperatureRange {
  double hot = 1.0;
  double cold = 0.01;
};

struct CalibrationSettings {
  std::size_t samples = 100;
  double hot_acceptance = 0.8;
  double cold_acceptance = 0.01;
};

/// Pick (t_hot, t_cold) so the mean Metropolis acceptance of uphill moves sampled
/// from random routes hits the two targets. Every probed route is recorded.
TemperatureRange calibrate_temperatures(const CostModel& model, RandomStream& rng, QueryLedger& ledger,
                                        const CalibrationSettings& settings = {});

struct PtReplica {
  Chain chain;
  std::size_t temperature_index = 0;  // 0-based slot in the ladder
  RandomStream rng;
};

SweepStats metropolis_sweep(PtReplica& replica, const TemperatureLadder& ladder, const CostModel& model,
                            QueryLedger& ledger, Incumbent& best);

/// min{1, exp(delta_beta * delta_energy)}.
double swap_probability(double delta_beta, double delta_energy);

/// Exchange attempt between chains sitting at inverse temperatures beta_i and
/// beta_j; on acceptance the states trade places. Returns whether it did.
bool swap_states(Chain& at_i, Chain& at_j, double beta_i, double beta_j, RandomStream& rng);

/// Replicas must occupy neighbouring ladder slots (std::logic_error otherwise).
/// Temperature indices never move; only states and energies are exchanged.
bool swap_attempt(PtReplica& a, PtReplica& b, const TemperatureLadder& ladder, RandomStream& rng);

struct PtConfig {
  std::size_t replicas = 8;
  std::optional<double> t_hot;   // calibrated when unset
  std::optional<double> t_cold;  // calibrated when unset
  LadderProfile profile = LadderProfile::geometric;
  std::size_t sweeps_per_round = 10;
  std::size_t max_rounds = 2000;
  std::size_t patience = 50;
  std::uint64_t seed = 0;
  CalibrationSettings calibration;
  Execution execution = Execution::parallel;
};

/// Replicas sweep independently, then neighbouring slots attempt swaps (even
/// pairs on even rounds, odd pairs on odd rounds) until max_rounds or
/// `patience` rounds without a new best.
SolverReport run_pt(const CostModel& model, const PtConfig& config);

}  // namespace permqio
