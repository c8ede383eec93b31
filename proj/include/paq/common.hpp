#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace paq {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Search and evaluation budgets. All guarded operations fail with a clear
/// Error instead of truncating silently. The PAQ_BUDGET environment variable
/// ("key=value,key=value") overrides individual fields; see from_env().
struct Budget {
  int enum_poset_max = 6;          // enumerate_posets size cap
  int epsilon_poset_max = 20;      // epsilon() input size cap
  long long epsilon_algebra_max = 4096;   // upset count cap (tables are quadratic)
  long long ibm_tuple_budget = 2'000'000'000;  // evaluate_ibm assignment cap
  int images_poset_max = 8;        // pp_morphic_images input size cap
  int jobs = 0;                    // worker cap, 0 = hardware default

  // Reads PAQ_BUDGET. Keys: enum_max, epsilon_max, algebra_max, ibm_tuples,
  // images_max, jobs. Unknown keys or malformed values raise Error.
  static Budget from_env();
};

inline constexpr uint64_t bit(int i) { return uint64_t{1} << i; }

inline constexpr uint64_t mask_n(int n) {
  return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

inline int popcount(uint64_t m) { return std::popcount(m); }

/// Visits set bits in ascending order.
template <typename Fn>
void for_each_bit(uint64_t m, Fn fn) {
  while (m) {
    fn(std::countr_zero(m));
    m &= m - 1;
  }
}

int effective_jobs(int requested);

/// Static block partition of [0, n); calls fn(first, last) on each worker.
/// Callers merge per-index results in index order, so outcomes do not depend
/// on the number of workers.
template <typename Fn>
void parallel_chunks(long long n, int jobs, Fn fn) {
  if (n <= 0) return;
  int workers = effective_jobs(jobs);
  if (workers > n) workers = static_cast<int>(n);
  if (workers <= 1) {
    fn(0LL, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long first = w * chunk;
    long long last = std::min(n, first + chunk);
    if (first >= last) break;
    pool.emplace_back(fn, first, last);
  }
  for (auto& t : pool) t.join();
}

}  // namespace paq
