#include "permqio/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "loop_errors.hpp"

namespace permqio {
namespace {

void check_spans(std::size_t chains, std::size_t temps, std::size_t streams) {
  if (temps != chains || streams != chains) {
    throw std::invalid_argument("sweep_chains: chains, temperatures and streams must have equal length");
  }
}

}  // namespace

double metropolis_probability(double delta, double temperature) {
  if (delta <= 0.0 || std::isinf(temperature)) return 1.0;
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-delta / temperature);
}

bool metropolis_accept(double delta, double temperature, RandomStream& rng) {
  if (delta <= 0.0 || std::isinf(temperature)) return true;
  return rng.uniform() < metropolis_probability(delta, temperature);
}

SweepStats metropolis_sweep(const CostModel& model, Chain& chain, double temperature, RandomStream& rng,
                            std::vector<std::uint64_t>& evaluated, Incumbent& best) {
  const std::size_t n = chain.state.size();
  SweepStats stats;
  if (n < 2) return stats;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const AdjacentMove move = random_move(n, rng);
    const double proposed = model.delta_cost(chain.state, move, chain.energy);
    chain.state.transpose(move);
    evaluated.push_back(rank(chain.state));
    ++stats.proposals;
    if (metropolis_accept(proposed - chain.energy, temperature, rng)) {
      chain.energy = proposed;
      ++stats.accepted;
      best.offer(chain.state, chain.energy);
    } else {
      chain.state.transpose(move);
    }
  }
  return stats;
}

SweepStats metropolis_sweep(const CostModel& model, Chain& chain, double temperature, RandomStream& rng,
                            QueryLedger& ledger, Incumbent& best) {
  std::vector<std::uint64_t> evaluated;
  const SweepStats stats = metropolis_sweep(model, chain, temperature, rng, evaluated, best);
  ledger.absorb(evaluated);
  return stats;
}

SweepStats sweep_chains_serial(const CostModel& model, std::span<Chain> chains,
                               std::span<const double> temperatures, std::size_t sweeps,
                               std::span<RandomStream> streams, QueryLedger& ledger, Incumbent& best) {
  check_spans(chains.size(), temperatures.size(), streams.size());
  SweepStats total;
  std::vector<std::uint64_t> evaluated;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    Incumbent local;
    evaluated.clear();
    for (std::size_t s = 0; s < sweeps; ++s) {
      total += metropolis_sweep(model, chains[i], temperatures[i], streams[i], evaluated, local);
    }
    ledger.absorb(evaluated);
    best.merge(local);
  }
  return total;
}

SweepStats sweep_chains(const CostModel& model, std::span<Chain> chains, std::span<const double> temperatures,
                        std::size_t sweeps, std::span<RandomStream> streams, QueryLedger& ledger,
                        Incumbent& best) {
  check_spans(chains.size(), temperatures.size(), streams.size());
  const std::size_t m = chains.size();
  std::vector<std::vector<std::uint64_t>> evaluated(m);
  std::vector<Incumbent> local(m);
  std::vector<SweepStats> stats(m);

  detail::LoopErrors errors(m);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) {
    errors.run(i, [&] {
      for (std::size_t s = 0; s < sweeps; ++s) {
        stats[i] += metropolis_sweep(model, chains[i], temperatures[i], streams[i], evaluated[i], local[i]);
      }
    });
  }
  errors.rethrow();

  SweepStats total;
  for (std::size_t i = 0; i < m; ++i) {
    ledger.absorb(evaluated[i]);
    best.merge(local[i]);
    total += stats[i];
  }
  return total;
}

Chain make_chain(const CostModel& model, Permutation state, QueryLedger& ledger, Incumbent& best) {
  Chain c{std::move(state), 0.0};
  c.energy = model.cost(c.state);
  ledger.record(c.state);
  best.offer(c.state, c.energy);
  return c;
}

}  // namespace permqio
