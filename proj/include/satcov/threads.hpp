#pragma once

#include <cstdint>
#include <functional>

namespace satcov {

// Worker count: SATCOV_THREADS env var when set (0 = auto), else hardware.
int resolve_thread_count();

// Override for the current process (tests, CLI flags). -1 restores env lookup.
void set_thread_count(int n);

// Runs f(begin, end) over [0, n) split into fixed-size chunks handed to a
// worker pool. Chunk boundaries depend only on n, never on the worker count,
// so trial-indexed work is schedule-independent.
void parallel_chunks(std::uint64_t n, std::uint64_t chunk,
                     const std::function<void(std::uint64_t, std::uint64_t)>& f);

}  // namespace satcov
