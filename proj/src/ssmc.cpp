#include "permqio/ssmc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "loop_errors.hpp"
#include "permqio/errors.hpp"

namespace permqio {
namespace {

enum StreamTag : std::uint64_t { kInit = 1, kStep = 2 };

// Floating-point slack when checking the stay probability.
constexpr double kProbabilityEps = 1e-12;

enum class Outcome : std::uint8_t { stay, step, die, spawn };

struct WalkerUpdate {
  Outcome outcome = Outcome::stay;
  std::optional<std::uint64_t> evaluated;
};

struct StepPlan {
  double a = 0.0, b = 0.0, dt = 0.0, threshold = 0.0, mean = 0.0;
};

StepPlan plan_step(const WalkerEnsemble& ens, double s, const SsmcSchedule& schedule, std::size_t degree,
                   const SsmcStepSettings& settings) {
  StepPlan plan;
  plan.a = schedule.a(s);
  plan.b = schedule.b(s);
  if (plan.a < 0.0 || plan.b < 0.0) throw ConfigError("ssmc: schedule functions must be non-negative");
  if (!(settings.energy_scale > 0.0)) throw ConfigError("ssmc: energy scale must be positive");
  plan.b /= settings.energy_scale;
  double sum = 0.0;
  for (const auto& w : ens.walkers) sum += w.energy;
  plan.mean = sum / static_cast<double>(ens.walkers.size());
  plan.threshold = plan.mean - ens.energy_offset;
  if (settings.dt > 0.0) {
    plan.dt = settings.dt;
  } else {
    double worst = 0.0;
    for (const auto& w : ens.walkers) worst = std::max(worst, std::abs(w.energy - plan.threshold));
    const double rate = plan.a * static_cast<double>(degree) + plan.b * worst;
    plan.dt = rate > 0.0 ? settings.dt_fraction / rate : 0.0;
  }
  return plan;
}

WalkerUpdate update_walker(Chain& walker, const StepPlan& plan, std::size_t degree, const CostModel& model,
                           RandomStream& rng) {
  const auto p = transition_probabilities(walker.energy, plan.threshold, plan.a, plan.b, plan.dt, degree);
  const double u = rng.uniform();
  WalkerUpdate up;
  if (u < p.step) {
    const AdjacentMove m = random_move(walker.state.size(), rng);
    walker.energy = model.delta_cost(walker.state, m, walker.energy);
    walker.state.transpose(m);
    up.outcome = Outcome::step;
    up.evaluated = rank(walker.state);
  } else if (u < p.step + p.die) {
    up.outcome = Outcome::die;
  } else if (u < p.step + p.die + p.spawn) {
    up.outcome = Outcome::spawn;
  }
  return up;
}

SsmcStepInfo finish_step(WalkerEnsemble& ens, const StepPlan& plan, std::vector<WalkerUpdate>& updates,
                         QueryLedger& ledger, Incumbent& best, const SsmcStepSettings& settings,
                         std::size_t step_index) {
  std::vector<Chain> next;
  next.reserve(ens.walkers.size() + ens.walkers.size() / 2);
  for (std::size_t j = 0; j < ens.walkers.size(); ++j) {
    const auto& up = updates[j];
    if (up.evaluated) {
      ledger.record_rank(*up.evaluated);
      best.offer(ens.walkers[j].state, ens.walkers[j].energy);
    }
    if (up.outcome == Outcome::die) continue;
    next.push_back(std::move(ens.walkers[j]));
    if (up.outcome == Outcome::spawn) next.push_back(next.back());
  }
  if (next.empty()) {
    throw ExtinctionError("substochastic Monte Carlo: all walkers died at step " + std::to_string(step_index),
                          step_index);
  }
  ens.walkers = std::move(next);

  // Offset controller: raise E (more deaths) above nominal, lower it below.
  double lo = ens.walkers.front().energy, hi = lo;
  for (const auto& w : ens.walkers) {
    lo = std::min(lo, w.energy);
    hi = std::max(hi, w.energy);
  }
  const double spread = hi - lo;
  const double nominal = static_cast<double>(ens.nominal_size);
  ens.energy_offset *= 1.0 - settings.offset_decay;
  ens.energy_offset += settings.offset_gain * spread * (static_cast<double>(ens.walkers.size()) - nominal) / nominal;
  ens.energy_offset = std::clamp(ens.energy_offset, -spread, spread);

  return SsmcStepInfo{plan.dt, plan.mean};
}

void check_ensemble(const WalkerEnsemble& ens) {
  if (ens.walkers.empty()) throw std::invalid_argument("ssmc_step: empty ensemble");
  if (ens.nominal_size == 0) throw std::invalid_argument("ssmc_step: nominal size must be positive");
}

}  // namespace

SsmcSchedule SsmcSchedule::linear() {
  return SsmcSchedule{[](double s) { return 1.0 - s; }, [](double s) { return s; }};
}

TransitionProbabilities transition_probabilities(double energy, double threshold, double a, double b, double dt,
                                                 std::size_t degree) {
  TransitionProbabilities p;
  p.step = a * dt * static_cast<double>(degree);
  const double pressure = b * dt * (energy - threshold);
  p.die = pressure > 0.0 ? pressure : 0.0;
  p.spawn = pressure < 0.0 ? -pressure : 0.0;
  p.stay = 1.0 - p.step - std::abs(pressure);
  if (p.stay < -kProbabilityEps || p.step < 0.0) {
    std::ostringstream msg;
    msg << "ssmc: time step too large (a*dt*d=" << p.step << ", |b*dt*(w-<W>)|=" << std::abs(pressure)
        << ", dt=" << dt << ")";
    throw ConfigError(msg.str());
  }
  p.stay = std::max(p.stay, 0.0);
  return p;
}

SsmcStepInfo ssmc_step_serial(WalkerEnsemble& ens, double s, const SsmcSchedule& schedule, const CostModel& model,
                              QueryLedger& ledger, RandomStream& rng, Incumbent& best,
                              const SsmcStepSettings& settings, std::size_t step_index) {
  check_ensemble(ens);
  const std::size_t degree = model.size() - 1;
  const StepPlan plan = plan_step(ens, s, schedule, degree, settings);
  std::vector<WalkerUpdate> updates(ens.walkers.size());
  for (std::size_t j = 0; j < ens.walkers.size(); ++j) {
    RandomStream local = rng.split(j);
    updates[j] = update_walker(ens.walkers[j], plan, degree, model, local);
  }
  return finish_step(ens, plan, updates, ledger, best, settings, step_index);
}

SsmcStepInfo ssmc_step(WalkerEnsemble& ens, double s, const SsmcSchedule& schedule, const CostModel& model,
                       QueryLedger& ledger, RandomStream& rng, Incumbent& best, const SsmcStepSettings& settings,
                       Execution exec, std::size_t step_index) {
  if (exec == Execution::serial) {
    return ssmc_step_serial(ens, s, schedule, model, ledger, rng, best, settings, step_index);
  }
  check_ensemble(ens);
  const std::size_t degree = model.size() - 1;
  const StepPlan plan = plan_step(ens, s, schedule, degree, settings);
  std::vector<WalkerUpdate> updates(ens.walkers.size());
  const std::size_t count = ens.walkers.size();

  detail::LoopErrors errors(count);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < count; ++j) {
    errors.run(j, [&] {
      RandomStream local = rng.split(j);
      updates[j] = update_walker(ens.walkers[j], plan, degree, model, local);
    });
  }
  errors.rethrow();
  return finish_step(ens, plan, updates, ledger, best, settings, step_index);
}

SolverReport run_ssmc(const CostModel& model, const SsmcConfig& config) {
  const std::size_t n = model.size();
  const std::size_t steps = config.steps.value_or(config.steps_per_stop * n);
  if (config.walkers == 0 || steps < 2) throw ConfigError("ssmc: need walkers >= 1 and at least 2 steps");
  if (!config.schedule.a || !config.schedule.b) throw ConfigError("ssmc: schedule functions are not set");

  QueryLedger ledger(n);
  Incumbent best;
  WalkerEnsemble ens;
  ens.nominal_size = config.walkers;
  RandomStream init = RandomStream::derive(config.seed, kInit);
  for (std::size_t j = 0; j < config.walkers; ++j) {
    ens.walkers.push_back(make_chain(model, random_permutation(n, init), ledger, best));
  }

  SsmcStepSettings step = config.step;
  if (config.energy_scale) {
    step.energy_scale = *config.energy_scale;
  } else {
    double mean = 0.0, var = 0.0;
    for (const auto& w : ens.walkers) mean += w.energy;
    mean /= static_cast<double>(ens.walkers.size());
    for (const auto& w : ens.walkers) var += (w.energy - mean) * (w.energy - mean);
    const double sd = std::sqrt(var / static_cast<double>(ens.walkers.size()));
    step.energy_scale = sd > 0.0 ? sd : 1.0;
  }

  SolverReport report;
  report.solver = "ssmc";
  for (std::size_t t = 0; t < steps; ++t) {
    const double s = static_cast<double>(t) / static_cast<double>(steps - 1);
    RandomStream rng = RandomStream::derive(config.seed, kStep, t);
    try {
      ssmc_step(ens, s, config.schedule, model, ledger, rng, best, step, config.execution, t);
    } catch (const ExtinctionError& e) {
      report.failure = e.what();
      break;
    }
    double sum = 0.0;
    for (const auto& w : ens.walkers) sum += w.energy;
    report.rounds = t + 1;
    report.trace.push_back({t + 1, best.energy});
    report.walker_trace.push_back({s, ens.walkers.size(), sum / static_cast<double>(ens.walkers.size()),
                                   ens.energy_offset});
  }

  report.best_route = *best.route;
  report.best_energy = model.cost(report.best_route);
  report.total_queries = ledger.total();
  report.unique_queries = ledger.unique();
  return report;
}

}  // namespace permqio
