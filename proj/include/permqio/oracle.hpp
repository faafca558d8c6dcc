#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permqio/permutation.hpp"
#include "permqio/problem.hpp"

namespace permqio {

struct ExactResult {
  Permutation min_route;
  double min_cost = 0.0;
  std::uint64_t evaluations = 0;
};

/// Costs within this relative distance of each other are ties.
inline constexpr double kCostTolerance = 1e-9;

/// True if `candidate` beats `incumbent` by more than the tie tolerance.
bool strictly_better(double candidate, double incumbent);

struct BruteForceOptions {
  std::size_t cap = 10;
};

/// Exhaustive enumeration of all n! routes in lexicographic order; ties go to
/// the lexicographically smallest route. The prefix space is split across
/// OpenMP threads and reduced in lexicographic order, so the result does not
/// depend on the thread count. Throws CapExceeded when n > cap.
ExactResult brute_force(const CostModel& model, const BruteForceOptions& options = {});

/// Single-threaded reference for brute_force.
ExactResult brute_force_serial(const CostModel& model, const BruteForceOptions& options = {});

/// Relative deviation (found - min) / min. Absolute when min is zero.
/// Throws OracleViolation if found undercuts the minimum beyond tolerance.
double deviation(double found, const ExactResult& exact);

/// One solver run on one instance.
struct RunRecord {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string solver;
  std::uint64_t total = 0;
  std::uint64_t unique = 0;
  double best = 0.0;
  std::optional<double> exact;
  std::optional<double> deviation;
};

struct PerformanceVector {
  double span = 0.0;   // mean unique queries / n!
  double error = 0.0;  // mean relative deviation
};

/// All records must share n and carry a deviation; throws std::invalid_argument otherwise.
PerformanceVector performance_vector(std::span<const RunRecord> records);

/// Coefficient of determination of the least-squares line through (x, y).
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

}  // namespace permqio
