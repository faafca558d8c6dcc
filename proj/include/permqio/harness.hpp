#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "permqio/oracle.hpp"
#include "permqio/pa.hpp"
#include "permqio/problem.hpp"
#include "permqio/pt.hpp"
#include "permqio/report.hpp"
#include "permqio/ssmc.hpp"

namespace permqio::harness {

/// Process exit codes of the permqio tool.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kInstanceError = 3,
  kSolverFailure = 4,
  kCapRefused = 5,
};

/// Hyperparameters for every solver; one set per invocation or bench plan.
struct SolverSettings {
  std::string solver = "pa";  // pt | pa | ssmc
  PtConfig pt;
  PaConfig pa;
  SsmcConfig ssmc;
};

bool known_solver(const std::string& name);

/// Runs the named solver with `seed`; throws std::invalid_argument for an unknown name.
SolverReport run_solver(const CostModel& model, const SolverSettings& settings, std::uint64_t seed,
                        Execution exec = Execution::parallel);

/// Seed that regenerates instance `index` of size n for a master seed.
std::uint64_t instance_seed(std::uint64_t master, std::size_t n, std::size_t index);
/// Seed of the solver run on that instance.
std::uint64_t run_seed(std::uint64_t master, std::size_t n, std::size_t index);

Instance make_instance(const std::string& kind, std::size_t n, std::uint64_t seed);

struct GenerateOptions {
  std::size_t n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string kind = "espdp";
  std::filesystem::path out;
};

/// Writes `count` instance documents named <kind>_n<n>_i<index>_s<seed>.json.
std::vector<std::filesystem::path> cmd_generate(const GenerateOptions& options);

/// Solves one instance file and writes the report document to `out`.
SolverReport cmd_solve(const std::filesystem::path& instance, const SolverSettings& settings, std::uint64_t seed,
                       const std::filesystem::path& out);

std::string exact_to_json(const ExactResult& exact);

/// Brute-forces one instance file and writes {"min_route", "min_cost", "evaluations"}.
ExactResult cmd_exact(const std::filesystem::path& instance, std::size_t cap, const std::filesystem::path& out);

struct BenchPlan {
  std::size_t n_min = 4;
  std::size_t n_max = 10;
  std::size_t instances_per_n = 20;
  SolverSettings settings;
  std::uint64_t seed = 0;
  std::size_t cap = 10;
  std::string kind = "espdp";
  std::filesystem::path out;  // directory; empty keeps results in memory only
};

struct SeriesRow {
  std::size_t n = 0;
  std::size_t instances = 0;
  double mean_total = 0.0;
  double mean_unique = 0.0;
  double span = 0.0;
  std::optional<double> error;  // empty above the brute-force cap
};

struct BenchResult {
  std::vector<RunRecord> runs;
  std::vector<std::string> status;  // "ok", "extinct" or an error message, per run
  std::vector<SeriesRow> series;
};

/// For each n: generate instances, solve each, brute-force where n <= cap and
/// aggregate. Runs are spread over OpenMP threads with per-run derived seeds.
/// Writes runs.csv, series.csv and summary.json into plan.out when set.
BenchResult cmd_bench(const BenchPlan& plan);

std::string runs_csv(const BenchResult& result);
std::string series_csv(const BenchResult& result);
std::string summary_json(const BenchPlan& plan, const BenchResult& result);

}  // namespace permqio::harness
