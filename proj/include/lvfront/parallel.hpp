#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace lvfront {

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunks are disjoint,
/// so any per-index computation gives identical results for every worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n < 2 * static_cast<std::size_t>(workers)) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 1; w < workers; ++w) {
        const std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    fn(std::size_t{0}, std::min(n, chunk));
    for (auto& t : pool) t.join();
}

}  // namespace lvfront
