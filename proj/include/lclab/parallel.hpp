#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lclab {

// 0 = use the OpenMP default.
void set_max_threads(int threads);
int max_threads();

// Data-parallel loop over [0, n).  The body must write only to slots owned by
// its index so results are independent of the evaluation order.  Falls back
// to a plain loop when built without OpenMP, when run_parallel is false, or
// when the range is too small to be worth the fork.
template <typename Body>
void parallel_for(std::int64_t n, bool run_parallel, Body&& body) {
#ifdef _OPENMP
  if (run_parallel && n >= 64) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  (void)run_parallel;
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Exceptions may not leave an OpenMP region; bodies that can throw run
// through this guard and the first captured exception is rethrown after the
// loop joins.
class ExceptionGuard {
 public:
  template <typename Body>
  auto wrap(Body body) {
    return [this, body](std::int64_t i) {
      if (failed_.load(std::memory_order_relaxed)) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!failed_.exchange(true)) first_ = std::current_exception();
      }
    };
  }

  void rethrow_if_failed() {
    if (failed_.load() && first_) std::rethrow_exception(first_);
  }

 private:
  std::atomic<bool> failed_{false};
  std::exception_ptr first_;
  std::mutex mu_;
};

template <typename Body>
void parallel_for_throwing(std::int64_t n, bool run_parallel, Body&& body) {
  ExceptionGuard guard;
  parallel_for(n, run_parallel, guard.wrap(std::forward<Body>(body)));
  guard.rethrow_if_failed();
}

}  // namespace lclab
