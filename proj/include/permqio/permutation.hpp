#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "permqio/random.hpp"

namespace permqio {

/// Swap of the entries at positions k and k+1 (0-based).
struct AdjacentMove {
  std::size_t position = 0;
  friend bool operator==(const AdjacentMove&, const AdjacentMove&) = default;
};

/// A bijection on the symbols {1..n}, stored as the sequence sigma(1..n).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `symbols` is a bijection on {1..n}.
  explicit Permutation(std::vector<int> symbols);
  Permutation(std::initializer_list<int> symbols);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return symbols_.size(); }
  int operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const int> symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  /// In-place transposition; throws std::out_of_range for a bad position.
  void transpose(AdjacentMove m);

  /// Advance to the next permutation in lexicographic order; false after the last.
  bool next_lexicographic();

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> symbols_;
};

/// True iff `candidate` is a non-empty bijection on {1..n}.
bool is_valid(std::span<const int> candidate);

/// Durstenfeld's in-place Fisher-Yates: exactly n-1 draws from `rng`.
Permutation random_permutation(std::size_t n, RandomStream& rng);

Permutation apply_move(const Permutation& p, AdjacentMove m);

/// Uniformly chosen adjacent move; requires n >= 2.
AdjacentMove random_move(std::size_t n, RandomStream& rng);

/// The n-1 adjacent-transposition neighbours of p, ordered by move position.
std::vector<Permutation> neighborhood(const Permutation& p);

/// Lehmer-code rank in [0, n!), lexicographic order. n <= 20.
std::uint64_t rank(const Permutation& p);

/// n! as an exact integer; n <= 20.
std::uint64_t factorial(std::size_t n);

}  // namespace permqio
