#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "permqio/ledger.hpp"
#include "permqio/permutation.hpp"
#include "permqio/problem.hpp"
#include "permqio/random.hpp"

namespace permqio {

enum class Execution { serial, parallel };

/// A Markov chain state with its cached cost.
struct Chain {
  Permutation state;
  double energy = 0.0;
};

/// Best route seen so far. Only a strictly lower energy replaces it.
struct Incumbent {
  std::optional<Permutation> route;
  double energy = std::numeric_limits<double>::infinity();

  // Energies carried by delta updates drift by a few ulps, so a revisit of the
  // incumbent route must not count as an improvement.
  bool offer(const Permutation& p, double e) {
    if (route && !(e < energy - 1e-9 * std::abs(energy))) return false;
    route = p;
    energy = e;
    return true;
  }
  void merge(const Incumbent& other) {
    if (other.route) offer(*other.route, other.energy);
  }
};

struct SweepStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;

  SweepStats& operator+=(const SweepStats& o) {
    proposals += o.proposals;
    accepted += o.accepted;
    return *this;
  }
};

/// min{1, exp(-delta / T)}; T = +inf accepts everything.
double metropolis_probability(double delta, double temperature);

/// Draws only when the move is uphill and T is finite.
bool metropolis_accept(double delta, double temperature, RandomStream& rng);

/// One sweep: n-1 uniformly chosen adjacent transpositions, each accepted by the
/// Metropolis rule at `temperature`. The rank of every proposed route is appended
/// to `evaluated`; accepted states are offered to `best`.
SweepStats metropolis_sweep(const CostModel& model, Chain& chain, double temperature, RandomStream& rng,
                            std::vector<std::uint64_t>& evaluated, Incumbent& best);

/// Same as above, recording straight into a ledger.
SweepStats metropolis_sweep(const CostModel& model, Chain& chain, double temperature, RandomStream& rng,
                            QueryLedger& ledger, Incumbent& best);

/// `sweeps` sweeps of every chain, chain i at temperatures[i] with streams[i].
/// Chains run on OpenMP threads; evaluations and incumbents are merged in chain
/// order afterwards, so the outcome is independent of the thread count.
SweepStats sweep_chains(const CostModel& model, std::span<Chain> chains, std::span<const double> temperatures,
                        std::size_t sweeps, std::span<RandomStream> streams, QueryLedger& ledger,
                        Incumbent& best);

/// Single-threaded reference for sweep_chains.
SweepStats sweep_chains_serial(const CostModel& model, std::span<Chain> chains,
                               std::span<const double> temperatures, std::size_t sweeps,
                               std::span<RandomStream> streams, QueryLedger& ledger, Incumbent& best);

inline SweepStats sweep_chains(Execution exec, const CostModel& model, std::span<Chain> chains,
                               std::span<const double> temperatures, std::size_t sweeps,
                               std::span<RandomStream> streams, QueryLedger& ledger, Incumbent& best) {
  return exec == Execution::parallel
             ? sweep_chains(model, chains, temperatures, sweeps, streams, ledger, best)
             : sweep_chains_serial(model, chains, temperatures, sweeps, streams, ledger, best);
}

/// Evaluate a freshly sampled state and record it.
Chain make_chain(const CostModel& model, Permutation state, QueryLedger& ledger, Incumbent& best);

}  // namespace permqio
