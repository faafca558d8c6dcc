#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace permqio::detail {

// Exceptions must not cross an OpenMP region boundary. Each iteration parks its
// exception here; afterwards the lowest-index one is rethrown, as a serial loop
// would have done.
class LoopErrors {
 public:
  explicit LoopErrors(std::size_t iterations) : errors_(iterations) {}

  template <class F>
  void run(std::size_t i, F&& body) noexcept {
    try {
      body();
    } catch (...) {
      errors_[i] = std::current_exception();
    }
  }

  void rethrow() const {
    for (const auto& e : errors_) {
      if (e) std::rethrow_exception(e);
    }
  }

 private:
  std::vector<std::exception_ptr> errors_;
};

}  // namespace permqio::detail
