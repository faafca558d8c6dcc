#include "permqio/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace permqio {

Permutation::Permutation(std::vector<int> symbols) : symbols_(std::move(symbols)) {
  if (!is_valid(symbols_)) {
    throw std::invalid_argument("not a permutation of 1.." + std::to_string(symbols_.size()));
  }
}

Permutation::Permutation(std::initializer_list<int> symbols)
    : Permutation(std::vector<int>(symbols)) {}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0) throw std::invalid_argument("permutation size must be >= 1");
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 1);
  return Permutation(std::move(s));
}

void Permutation::transpose(AdjacentMove m) {
  if (symbols_.size() < 2 || m.position > symbols_.size() - 2) {
    throw std::out_of_range("adjacent move position " + std::to_string(m.position) +
                            " out of range for n=" + std::to_string(symbols_.size()));
  }
  std::swap(symbols_[m.position], symbols_[m.position + 1]);
}

bool Permutation::next_lexicographic() {
  return std::next_permutation(symbols_.begin(), symbols_.end());
}

bool is_valid(std::span<const int> candidate) {
  const std::size_t n = candidate.size();
  if (n == 0) return false;
  std::vector<bool> seen(n + 1, false);
  for (int s : candidate) {
    if (s < 1 || static_cast<std::size_t>(s) > n || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

Permutation random_permutation(std::size_t n, RandomStream& rng) {
  Permutation p = Permutation::identity(n);
  std::vector<int> s(p.begin(), p.end());
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.below(i + 1);
    std::swap(s[i], s[j]);
  }
  return Permutation(std::move(s));
}

Permutation apply_move(const Permutation& p, AdjacentMove m) {
  Permutation out = p;
  out.transpose(m);
  return out;
}

AdjacentMove random_move(std::size_t n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("no adjacent moves for n < 2");
  return AdjacentMove{rng.below(n - 1)};
}

std::vector<Permutation> neighborhood(const Permutation& p) {
  std::vector<Permutation> out;
  if (p.size() < 2) return out;
  out.reserve(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) out.push_back(apply_move(p, AdjacentMove{k}));
  return out;
}

std::uint64_t rank(const Permutation& p) {
  const std::size_t n = p.size();
  if (n > 20) throw std::invalid_argument("rank requires n <= 20");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    r = r * (n - i) + smaller;
  }
  return r;
}

std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw std::invalid_argument("factorial overflows 64 bits for n > 20");
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace permqio
