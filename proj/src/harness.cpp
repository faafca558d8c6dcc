#include "permqio/harness.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "permqio/errors.hpp"
#include "permqio/instance_io.hpp"

namespace permqio::harness {
namespace {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

bool known_solver(const std::string& name) { return name == "pt" || name == "pa" || name == "ssmc"; }

SolverReport run_solver(const CostModel& model, const SolverSettings& settings, std::uint64_t seed, Execution exec) {
  if (settings.solver == "pt") {
    PtConfig c = settings.pt;
    c.seed = seed;
    c.execution = exec;
    return run_pt(model, c);
  }
  if (settings.solver == "pa") {
    PaConfig c = settings.pa;
    c.seed = seed;
    c.execution = exec;
    return run_pa(model, c);
  }
  if (settings.solver == "ssmc") {
    SsmcConfig c = settings.ssmc;
    c.seed = seed;
    c.execution = exec;
    return run_ssmc(model, c);
  }
  throw std::invalid_argument("unknown solver \"" + settings.solver + "\" (expected pt, pa or ssmc)");
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t n, std::size_t index) {
  return RandomStream::derive(master, n, index).next_u64();
}

std::uint64_t run_seed(std::uint64_t master, std::size_t n, std::size_t index) {
  return RandomStream::derive(master, n, index).split(1).next_u64();
}

Instance make_instance(const std::string& kind, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  if (kind == "espdp") {
    auto inst = generate_espdp(n, rng);
    inst.seed = seed;
    return inst;
  }
  if (kind == "tsp") {
    auto inst = generate_tsp(n, rng);
    inst.seed = seed;
    return inst;
  }
  throw std::invalid_argument("unknown instance kind \"" + kind + "\" (expected espdp or tsp)");
}

std::vector<std::filesystem::path> cmd_generate(const GenerateOptions& o) {
  if (o.n == 0) throw std::invalid_argument("--n must be >= 1");
  if (o.count == 0) throw std::invalid_argument("--count must be >= 1");
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw std::runtime_error("cannot create " + o.out.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < o.count; ++i) {
    const Instance inst = make_instance(o.kind, o.n, instance_seed(o.seed, o.n, i));
    const auto path = o.out / (o.kind + "_n" + std::to_string(o.n) + "_i" + std::to_string(i) + "_s" +
                               std::to_string(o.seed) + ".json");
    save_instance(inst, path);
    written.push_back(path);
  }
  return written;
}

SolverReport cmd_solve(const std::filesystem::path& instance, const SolverSettings& settings, std::uint64_t seed,
                       const std::filesystem::path& out) {
  const Instance inst = load_instance(instance);
  const auto model = make_model(inst);
  SolverReport report = run_solver(*model, settings, seed);
  write_text(out, report_to_json(report));
  return report;
}

std::string exact_to_json(const ExactResult& exact) {
  nlohmann::ordered_json doc;
  doc["min_route"] = std::vector<int>(exact.min_route.begin(), exact.min_route.end());
  doc["min_cost"] = exact.min_cost;
  doc["evaluations"] = exact.evaluations;
  return doc.dump(2) + "\n";
}

ExactResult cmd_exact(const std::filesystem::path& instance, std::size_t cap, const std::filesystem::path& out) {
  const Instance inst = load_instance(instance);
  const auto model = make_model(inst);
  ExactResult exact = brute_force(*model, BruteForceOptions{cap});
  write_text(out, exact_to_json(exact));
  return exact;
}

BenchResult cmd_bench(const BenchPlan& plan) {
  if (plan.n_min == 0 || plan.n_max < plan.n_min) throw std::invalid_argument("bench: empty n range");
  if (plan.instances_per_n == 0) throw std::invalid_argument("bench: instances per n must be >= 1");
  if (!known_solver(plan.settings.solver)) {
    throw std::invalid_argument("unknown solver \"" + plan.settings.solver + "\"");
  }

  const std::size_t sizes = plan.n_max - plan.n_min + 1;
  const std::size_t jobs = sizes * plan.instances_per_n;
  BenchResult result;
  result.runs.resize(jobs);
  result.status.assign(jobs, "ok");

#pragma omp parallel for schedule(dynamic)
  for (std::size_t job = 0; job < jobs; ++job) {
    const std::size_t n = plan.n_min + job / plan.instances_per_n;
    const std::size_t index = job % plan.instances_per_n;
    RunRecord& rec = result.runs[job];
    rec.n = n;
    rec.seed = instance_seed(plan.seed, n, index);
    rec.solver = plan.settings.solver;
    try {
      const auto model = make_model(make_instance(plan.kind, n, rec.seed));
      const SolverReport report = run_solver(*model, plan.settings, run_seed(plan.seed, n, index), Execution::serial);
      rec.total = report.total_queries;
      rec.unique = report.unique_queries;
      rec.best = report.best_energy;
      if (report.failure) result.status[job] = "extinct";
      if (n <= plan.cap) {
        const ExactResult exact = brute_force_serial(*model, BruteForceOptions{plan.cap});
        rec.exact = exact.min_cost;
        rec.deviation = deviation(rec.best, exact);
      }
    } catch (const std::exception& e) {
      result.status[job] = std::string("error: ") + e.what();
    }
  }

  for (std::size_t k = 0; k < sizes; ++k) {
    const std::size_t n = plan.n_min + k;
    std::vector<RunRecord> ok;
    for (std::size_t i = 0; i < plan.instances_per_n; ++i) {
      const std::size_t job = k * plan.instances_per_n + i;
      if (result.status[job].rfind("error", 0) != 0) ok.push_back(result.runs[job]);
    }
    SeriesRow row;
    row.n = n;
    row.instances = ok.size();
    if (!ok.empty()) {
      for (const auto& r : ok) {
        row.mean_total += static_cast<double>(r.total);
        row.mean_unique += static_cast<double>(r.unique);
      }
      row.mean_total /= static_cast<double>(ok.size());
      row.mean_unique /= static_cast<double>(ok.size());
      row.span = row.mean_unique / static_cast<double>(factorial(n));
      if (n <= plan.cap) row.error = performance_vector(ok).error;
    }
    result.series.push_back(row);
  }

  if (!plan.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(plan.out, ec);
    if (ec) throw std::runtime_error("cannot create " + plan.out.string() + ": " + ec.message());
    write_text(plan.out / "runs.csv", runs_csv(result));
    write_text(plan.out / "series.csv", series_csv(result));
    write_text(plan.out / "summary.json", summary_json(plan, result));
  }
  return result;
}

std::string runs_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "n,seed,solver,total,unique,best,exact,deviation,status\n";
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& r = result.runs[i];
    std::string status = result.status[i];
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << r.n << ',' << r.seed << ',' << r.solver << ',' << r.total << ',' << r.unique << ',' << format_real(r.best)
        << ',' << (r.exact ? format_real(*r.exact) : "") << ',' << (r.deviation ? format_real(*r.deviation) : "")
        << ',' << status << '\n';
  }
  return out.str();
}

std::string series_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "n,instances,mean_total_queries,mean_unique_queries,span,error\n";
  for (const auto& s : result.series) {
    out << s.n << ',' << s.instances << ',' << format_real(s.mean_total) << ',' << format_real(s.mean_unique) << ','
        << format_real(s.span) << ',' << (s.error ? format_real(*s.error) : "") << '\n';
  }
  return out.str();
}

std::string summary_json(const BenchPlan& plan, const BenchResult& result) {
  nlohmann::ordered_json doc;
  doc["solver"] = plan.settings.solver;
  doc["kind"] = plan.kind;
  doc["seed"] = plan.seed;
  doc["instances_per_n"] = plan.instances_per_n;
  doc["cap"] = plan.cap;
  auto& series = doc["series"] = nlohmann::ordered_json::array();
  for (const auto& s : result.series) {
    nlohmann::ordered_json row;
    row["n"] = s.n;
    row["mean_total_queries"] = s.mean_total;
    row["mean_unique_queries"] = s.mean_unique;
    if (s.error) {
      row["performance_vector"] = {s.span, *s.error};
    } else {
      row["span"] = s.span;
    }
    series.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

}  // namespace permqio::harness
