#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "permqio/kernels.hpp"
#include "permqio/report.hpp"

namespace permqio {

/// Interpolation H(s) = a(s) L + b(s) W; a non-increasing, b non-decreasing on [0, 1].
struct SsmcSchedule {
  std::function<double(double)> a;
  std::function<double(double)> b;

  /// a(s) = 1 - s, b(s) = s.
  static SsmcSchedule linear();
};

/// Per-walker transition probabilities; they sum to one, with spawning
/// understood as staying and leaving a copy behind.
struct TransitionProbabilities {
  double step = 0.0;
  double stay = 0.0;
  double die = 0.0;
  double spawn = 0.0;
};

/// For a walker of energy w against threshold <W> - E on a graph of the given degree:
///   step = a dt d, die = max(0, b dt (w - threshold)), spawn = max(0, b dt (threshold - w)),
///   stay = 1 - step - |b dt (w - threshold)|.
/// Throws ConfigError when dt is too large for stay to be non-negative.
TransitionProbabilities transition_probabilities(double energy, double threshold, double a, double b, double dt,
                                                 std::size_t degree);

struct WalkerEnsemble {
  std::vector<Chain> walkers;
  std::size_t nominal_size = 0;
  double energy_offset = 0.0;  // E; the death/spawn threshold is <W> - E
};

struct SsmcStepSettings {
  double dt = 0.0;            // fixed time step; <= 0 selects the automatic step
  double dt_fraction = 0.5;   // automatic dt as a fraction of the largest admissible step
  double offset_gain = 0.1;   // controller gain, in units of the current energy spread
  double offset_decay = 0.2;  // fraction of E forgotten per step; damps the population oscillation
  double energy_scale = 1.0;  // costs enter the death/spawn rates as w / energy_scale
};

struct SsmcStepInfo {
  double dt = 0.0;
  double mean_energy_before = 0.0;
};

/// One discrete step of the walker process at schedule position s. <W> is the
/// mean over the walkers at the start of the step; walker j draws from
/// rng.split(j); spawned copies act from the next step on. Afterwards the offset
/// controller moves E toward the nominal population. Throws ExtinctionError when
/// every walker dies.
SsmcStepInfo ssmc_step(WalkerEnsemble& ensemble, double s, const SsmcSchedule& schedule, const CostModel& model,
                       QueryLedger& ledger, RandomStream& rng, Incumbent& best, const SsmcStepSettings& settings = {},
                       Execution exec = Execution::parallel, std::size_t step_index = 0);

/// Single-threaded reference for ssmc_step.
SsmcStepInfo ssmc_step_serial(WalkerEnsemble& ensemble, double s, const SsmcSchedule& schedule,
                              const CostModel& model, QueryLedger& ledger, RandomStream& rng, Incumbent& best,
                              const SsmcStepSettings& settings = {}, std::size_t step_index = 0);

struct SsmcConfig {
  std::size_t walkers = 256;
  std::size_t steps_per_stop = 100;    // schedule length is steps_per_stop * n ...
  std::optional<std::size_t> steps;    // ... unless fixed here
  SsmcSchedule schedule = SsmcSchedule::linear();
  SsmcStepSettings step;
  /// Cost unit for the death/spawn term; when unset, the standard deviation of
  /// the initial walker energies.
  std::optional<double> energy_scale;
  std::uint64_t seed = 0;
  Execution execution = Execution::parallel;
};

/// Walkers start uniformly at random and s runs linearly from 0 to 1.
/// Extinction ends the run early with `failure` set.
SolverReport run_ssmc(const CostModel& model, const SsmcConfig& config);

}  // namespace permqio
