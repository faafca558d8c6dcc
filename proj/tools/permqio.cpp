// permqio: generate instances, run the permutation solvers, brute-force
// baselines and benchmark sweeps.
//
// Exit codes: 0 success, 2 usage, 3 instance/schema error, 4 solver failure
// (extinction), 5 brute-force cap refusal. PERMQIO_THREADS caps the OpenMP
// thread count; outputs do not depend on it.

#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "permqio/errors.hpp"
#include "permqio/harness.hpp"

namespace {

using namespace permqio;
using namespace permqio::harness;

void add_solver_flags(CLI::App& cmd, SolverSettings& s) {
  static const std::map<std::string, LadderProfile> profiles{{"geometric", LadderProfile::geometric},
                                                             {"inverse-linear", LadderProfile::inverse_linear}};
  cmd.add_option("--pt-replicas", s.pt.replicas, "PT: number of replicas")->capture_default_str();
  cmd.add_option("--pt-t-hot", s.pt.t_hot, "PT: hottest temperature (calibrated when omitted)");
  cmd.add_option("--pt-t-cold", s.pt.t_cold, "PT: coldest temperature (calibrated when omitted)");
  cmd.add_option("--pt-profile", s.pt.profile, "PT: ladder profile")
      ->transform(CLI::CheckedTransformer(profiles, CLI::ignore_case));
  cmd.add_option("--pt-sweeps", s.pt.sweeps_per_round, "PT: sweeps per round")->capture_default_str();
  cmd.add_option("--pt-max-rounds", s.pt.max_rounds, "PT: round limit")->capture_default_str();
  cmd.add_option("--pt-patience", s.pt.patience, "PT: rounds without improvement before stopping")
      ->capture_default_str();

  cmd.add_option("--pa-population", s.pa.population, "PA: nominal population R")->capture_default_str();
  cmd.add_option("--pa-temperatures", s.pa.temperatures, "PA: annealing steps")->capture_default_str();
  cmd.add_option("--pa-sweeps", s.pa.sweeps, "PA: sweeps per temperature")->capture_default_str();
  cmd.add_option("--pa-t-hot", s.pa.t_hot, "PA: first temperature (calibrated when omitted)");
  cmd.add_option("--pa-t-cold", s.pa.t_cold, "PA: final temperature (calibrated when omitted)");

  cmd.add_option("--ssmc-walkers", s.ssmc.walkers, "SSMC: nominal walker count")->capture_default_str();
  cmd.add_option("--ssmc-steps-per-stop", s.ssmc.steps_per_stop, "SSMC: schedule steps per stop")
      ->capture_default_str();
  cmd.add_option("--ssmc-steps", s.ssmc.steps, "SSMC: fixed schedule length");
  cmd.add_option("--ssmc-dt", s.ssmc.step.dt, "SSMC: fixed time step (0 = automatic)")->capture_default_str();
  cmd.add_option("--ssmc-dt-fraction", s.ssmc.step.dt_fraction, "SSMC: automatic step fraction")
      ->capture_default_str();
  cmd.add_option("--ssmc-energy-scale", s.ssmc.energy_scale, "SSMC: cost unit (initial spread when omitted)");
  cmd.add_option("--ssmc-gain", s.ssmc.step.offset_gain, "SSMC: offset controller gain")->capture_default_str();
  cmd.add_option("--ssmc-decay", s.ssmc.step.offset_decay, "SSMC: offset leak per step")->capture_default_str();
}

void apply_thread_cap() {
  if (const char* env = std::getenv("PERMQIO_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
}

// "4..10", "4-10" or a single value.
bool parse_range(const std::string& text, std::size_t& lo, std::size_t& hi) {
  try {
    auto sep = text.find("..");
    std::size_t skip = 2;
    if (sep == std::string::npos) {
      sep = text.find('-');
      skip = 1;
    }
    if (sep == std::string::npos) {
      lo = hi = std::stoul(text);
    } else {
      lo = std::stoul(text.substr(0, sep));
      hi = std::stoul(text.substr(sep + skip));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo >= 1 && hi >= lo;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Permutation-space quantum-inspired optimization toolkit"};
  app.require_subcommand(1);

  GenerateOptions gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "write random problem instances");
  generate->add_option("--n", gen.n, "number of stops")->required();
  generate->add_option("--count", gen.count, "number of instances")->required();
  generate->add_option("--seed", gen.seed, "master seed")->capture_default_str();
  generate->add_option("--kind", gen.kind, "instance kind")->check(CLI::IsMember({"espdp", "tsp"}))
      ->capture_default_str();
  generate->add_option("--out", gen_out, "output directory")->required();

  SolverSettings solve_settings;
  std::string solve_instance, solve_out;
  std::uint64_t solve_seed = 0;
  auto* solve = app.add_subcommand("solve", "run one solver on an instance file");
  solve->add_option("--instance", solve_instance, "instance document")->required();
  solve->add_option("--solver", solve_settings.solver, "pt, pa or ssmc")->required();
  solve->add_option("--seed", solve_seed, "solver seed")->capture_default_str();
  solve->add_option("--out", solve_out, "report path")->required();
  add_solver_flags(*solve, solve_settings);

  std::string exact_instance, exact_out;
  std::size_t exact_cap = 10;
  auto* exact = app.add_subcommand("exact", "brute-force the global minimum of an instance");
  exact->add_option("--instance", exact_instance, "instance document")->required();
  exact->add_option("--cap", exact_cap, "largest n to enumerate")->capture_default_str();
  exact->add_option("--out", exact_out, "result path")->required();

  BenchPlan plan;
  std::string bench_range = "4..10", bench_out;
  auto* bench = app.add_subcommand("bench", "benchmark a solver over a range of problem sizes");
  bench->add_option("--solver", plan.settings.solver, "pt, pa or ssmc")->required();
  bench->add_option("--n", bench_range, "size range, e.g. 4..10")->capture_default_str();
  bench->add_option("--instances-per-n", plan.instances_per_n, "instances per size")->capture_default_str();
  bench->add_option("--seed", plan.seed, "master seed")->capture_default_str();
  bench->add_option("--cap", plan.cap, "largest n with a brute-force baseline")->capture_default_str();
  bench->add_option("--kind", plan.kind, "instance kind")->check(CLI::IsMember({"espdp", "tsp"}))
      ->capture_default_str();
  bench->add_option("--out", bench_out, "output directory")->required();
  add_solver_flags(*bench, plan.settings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) {
      if (gen.count == 0 || gen.n == 0) {
        std::cerr << "generate: --n and --count must be >= 1\n";
        return kUsage;
      }
      gen.out = gen_out;
      for (const auto& p : cmd_generate(gen)) std::cout << p.string() << '\n';
    } else if (*solve) {
      if (!known_solver(solve_settings.solver)) {
        std::cerr << "solve: unknown solver \"" << solve_settings.solver << "\" (expected pt, pa or ssmc)\n";
        return kUsage;
      }
      const SolverReport report = cmd_solve(solve_instance, solve_settings, solve_seed, solve_out);
      if (report.failure) {
        std::cerr << "solve: " << *report.failure << '\n';
        return kSolverFailure;
      }
    } else if (*exact) {
      cmd_exact(exact_instance, exact_cap, exact_out);
    } else if (*bench) {
      if (!known_solver(plan.settings.solver)) {
        std::cerr << "bench: unknown solver \"" << plan.settings.solver << "\" (expected pt, pa or ssmc)\n";
        return kUsage;
      }
      if (!parse_range(bench_range, plan.n_min, plan.n_max)) {
        std::cerr << "bench: bad --n range \"" << bench_range << "\"\n";
        return kUsage;
      }
      if (plan.instances_per_n == 0) {
        std::cerr << "bench: --instances-per-n must be >= 1\n";
        return kUsage;
      }
      plan.out = bench_out;
      std::cout << series_csv(cmd_bench(plan));
    }
  } catch (const SchemaError& e) {
    std::cerr << "instance error: " << e.what() << '\n';
    return kInstanceError;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << '\n';
    return kCapRefused;
  } catch (const ExtinctionError& e) {
    std::cerr << e.what() << '\n';
    return kSolverFailure;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kSuccess;
}
