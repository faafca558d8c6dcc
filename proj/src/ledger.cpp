#include "permqio/ledger.hpp"

#include <stdexcept>
#include <string>

namespace permqio {

QueryLedger::QueryLedger(std::size_t n, std::size_t max_unique, bool keep_log)
    : n_(n), max_unique_(max_unique), keep_log_(keep_log) {
  if (n == 0 || n > 20) throw std::invalid_argument("QueryLedger supports 1 <= n <= 20");
}

void QueryLedger::record(const Permutation& route) { record_rank(rank(route)); }

void QueryLedger::record_rank(std::uint64_t route_rank) {
  ++total_;
  if (keep_log_) log_.push_back(route_rank);
  if (seen_.insert(route_rank).second && seen_.size() > max_unique_) {
    throw std::length_error("QueryLedger: more than " + std::to_string(max_unique_) +
                            " distinct routes; raise max_unique");
  }
}

void QueryLedger::absorb(std::span<const std::uint64_t> ranks) {
  for (auto r : ranks) record_rank(r);
}

}  // namespace permqio
