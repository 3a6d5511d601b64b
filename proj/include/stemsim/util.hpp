#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace stemsim {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items are
/// claimed atomically, so fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

inline std::size_t default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Unbiased draw in [0, n) from a 64-bit generator (rejection sampling),
/// independent of standard-library distribution internals.
template <typename Rng>
std::uint64_t bounded_draw(Rng& rng, std::uint64_t n) {
    if (n <= 1) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace stemsim
