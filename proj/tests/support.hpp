#pragma once

// Independent reference implementations and helpers shared by the tests. The
// evaluators here deliberately avoid the library's cost code.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "permqio/problem.hpp"
#include "permqio/random.hpp"

namespace testing {

// Visited sequence 0, sigma(1), ..., sigma(n), 0; segment k carries the vehicle
// plus every parcel of stops k+1..n along that sequence.
inline double naive_espdp(const permqio::EspdpInstance& inst, const std::vector<int>& order) {
  std::vector<std::size_t> seq{0};
  for (int s : order) seq.push_back(static_cast<std::size_t>(s));
  seq.push_back(0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    double load = inst.vehicle_weight;
    for (std::size_t j = k + 1; j + 1 < seq.size(); ++j) load += inst.parcel_weights[seq[j] - 1];
    total += load * inst.coeff.data[seq[k] * inst.coeff.dim + seq[k + 1]] +
             inst.resistance.data[seq[k] * inst.resistance.dim + seq[k + 1]];
  }
  return total;
}

inline double naive_tour(const std::vector<permqio::Point>& pts, const std::vector<int>& order) {
  std::vector<std::size_t> seq{0};
  for (int s : order) seq.push_back(static_cast<std::size_t>(s));
  seq.push_back(0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const double dx = pts[seq[k]][0] - pts[seq[k + 1]][0];
    const double dy = pts[seq[k]][1] - pts[seq[k + 1]][1];
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

inline permqio::EspdpInstance random_espdp(std::size_t n, std::uint64_t seed) {
  permqio::RandomStream rng(seed);
  return permqio::generate_espdp(n, rng);
}

// Exhaustive minimum via std::next_permutation over a plain vector.
template <class F>
double naive_minimum(std::size_t n, F cost, std::vector<int>* argmin = nullptr) {
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i + 1);
  double best = cost(order);
  if (argmin) *argmin = order;
  while (std::next_permutation(order.begin(), order.end())) {
    const double c = cost(order);
    if (c < best - 1e-9 * best) {
      best = c;
      if (argmin) *argmin = order;
    }
  }
  return best;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("permqio_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

#ifdef PERMQIO_CLI
// Runs the command line tool; returns its exit status. stdout/stderr go to `log` if given.
inline int cli(const std::string& args, const std::string& env = "", const std::filesystem::path& log = {}) {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string("\"") + PERMQIO_CLI + "\" " + args;
  cmd += log.empty() ? " >/dev/null 2>&1" : " >\"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

}  // namespace testing
