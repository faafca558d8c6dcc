#include "permqio/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "loop_errors.hpp"
#include "permqio/errors.hpp"

namespace permqio {
namespace {

[[noreturn]] void refuse(const CostModel& model, std::size_t cap) {
  const std::size_t n = model.size();
  // Time a short sample of evaluations to estimate the full enumeration.
  RandomStream rng(n);
  const Permutation probe = random_permutation(n, rng);
  constexpr int kSamples = 2000;
  volatile double sink = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < kSamples; ++i) sink = sink + model.cost(probe);
  const double ns_per_eval =
      std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count() / kSamples;
  double routes = 1.0;
  for (std::size_t i = 2; i <= n; ++i) routes *= static_cast<double>(i);
  std::ostringstream msg;
  msg << "brute force refused: n=" << n << " exceeds cap " << cap << " (";
  if (n <= 20) {
    msg << factorial(n);
  } else {
    msg << routes;
  }
  msg << " routes, estimated " << routes * ns_per_eval * 1e-9 << " s single-threaded)";
  throw CapExceeded(msg.str());
}

struct Best {
  std::optional<Permutation> route;
  double cost = 0.0;

  void offer(const Permutation& p, double c) {
    if (!route || strictly_better(c, cost)) {
      route = p;
      cost = c;
    }
  }
};

}  // namespace

bool strictly_better(double candidate, double incumbent) {
  return candidate < incumbent - kCostTolerance * std::abs(incumbent);
}

ExactResult brute_force_serial(const CostModel& model, const BruteForceOptions& options) {
  const std::size_t n = model.size();
  if (n > options.cap) refuse(model, options.cap);
  Permutation p = Permutation::identity(n);
  Best best;
  std::uint64_t evaluations = 0;
  do {
    best.offer(p, model.cost(p));
    ++evaluations;
  } while (p.next_lexicographic());
  return ExactResult{*best.route, best.cost, evaluations};
}

ExactResult brute_force(const CostModel& model, const BruteForceOptions& options) {
  const std::size_t n = model.size();
  if (n > options.cap) refuse(model, options.cap);
  if (n < 4) return brute_force_serial(model, options);

  // Chunks are the n(n-1) two-symbol prefixes, in lexicographic order.
  const std::size_t chunks = n * (n - 1);
  const std::uint64_t per_chunk = factorial(n - 2);
  std::vector<Best> partial(chunks);

  detail::LoopErrors errors(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < chunks; ++c) {
    errors.run(c, [&] {
      const int first = static_cast<int>(c / (n - 1)) + 1;
      int second = static_cast<int>(c % (n - 1)) + 1;
      if (second >= first) ++second;
      std::vector<int> s{first, second};
      for (int v = 1; v <= static_cast<int>(n); ++v) {
        if (v != first && v != second) s.push_back(v);
      }
      Permutation p(std::move(s));
      for (std::uint64_t k = 0; k < per_chunk; ++k) {
        partial[c].offer(p, model.cost(p));
        p.next_lexicographic();
      }
    });
  }
  errors.rethrow();

  Best best;
  for (const auto& b : partial) best.offer(*b.route, b.cost);
  return ExactResult{*best.route, best.cost, factorial(n)};
}

double deviation(double found, const ExactResult& exact) {
  const double min = exact.min_cost;
  const double slack = kCostTolerance * std::max(1.0, std::abs(min));
  if (found < min - slack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "reported cost " << found << " is below the exact minimum " << min;
    throw OracleViolation(msg.str());
  }
  const double gap = std::max(0.0, found - min);
  return min == 0.0 ? gap : gap / std::abs(min);
}

PerformanceVector performance_vector(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("performance_vector: no records");
  const std::size_t n = records.front().n;
  double unique = 0.0, error = 0.0;
  for (const auto& r : records) {
    if (r.n != n) throw std::invalid_argument("performance_vector: records mix problem sizes");
    if (!r.deviation) throw std::invalid_argument("performance_vector: record lacks an exact baseline");
    unique += static_cast<double>(r.unique);
    error += *r.deviation;
  }
  const double count = static_cast<double>(records.size());
  return PerformanceVector{unique / count / static_cast<double>(factorial(n)), error / count};
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit_r2: need >= 2 paired points");
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit_r2: x has no spread");
  if (syy == 0.0) return 1.0;
  return sxy * sxy / (sxx * syy);
}

}  // namespace permqio
