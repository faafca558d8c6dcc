#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "permqio/permutation.hpp"

namespace permqio {

/// Counts cost evaluations. Unique routes are tracked exactly by their Lehmer
/// rank, so n is limited to 20; the distinct-route set is capped at
/// `max_unique` entries (about 40 bytes each) and exceeding it throws
/// std::length_error instead of approximating.
class QueryLedger {
 public:
  static constexpr std::size_t kDefaultMaxUnique = std::size_t{1} << 26;

  explicit QueryLedger(std::size_t n, std::size_t max_unique = kDefaultMaxUnique, bool keep_log = false);

  void record(const Permutation& route);
  void record_rank(std::uint64_t route_rank);
  /// Append a batch of ranks produced by a worker, in order.
  void absorb(std::span<const std::uint64_t> ranks);

  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t unique() const noexcept { return seen_.size(); }
  std::size_t n() const noexcept { return n_; }

  /// Every recorded rank in order; empty unless constructed with keep_log.
  const std::vector<std::uint64_t>& log() const noexcept { return log_; }

 private:
  std::size_t n_;
  std::size_t max_unique_;
  bool keep_log_;
  std::uint64_t total_ = 0;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<std::uint64_t> log_;
};

}  // namespace permqio
