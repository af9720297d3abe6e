#include "satcov/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace satcov {

namespace {
int g_override = -1;
}

void set_thread_count(int n) { g_override = n; }

int resolve_thread_count() {
  int n = g_override;
  if (n < 0) {
    if (const char* env = std::getenv("SATCOV_THREADS")) {
      try {
        n = std::stoi(env);
      } catch (const std::exception&) {
        throw std::runtime_error("SATCOV_THREADS is not an integer: " + std::string(env));
      }
      if (n < 0) throw std::runtime_error("SATCOV_THREADS must be >= 0");
    } else {
      n = 0;
    }
  }
  if (n == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    n = hw ? static_cast<int>(hw) : 1;
  }
  return n;
}

void parallel_chunks(std::uint64_t n, std::uint64_t chunk,
                     const std::function<void(std::uint64_t, std::uint64_t)>& f) {
  if (n == 0) return;
  if (chunk == 0) chunk = 1;
  const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
  const int workers = std::min<std::uint64_t>(resolve_thread_count(), n_chunks);
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c)
      f(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= n_chunks || failed.load()) return;
        try {
          f(c * chunk, std::min(n, (c + 1) * chunk));
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace satcov
