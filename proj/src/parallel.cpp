#include "antirips/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace antirips {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int threads) { g_max_threads.store(threads < 0 ? 0 : threads); }

int max_threads() {
    int cap = g_max_threads.load();
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (cap <= 0) return hw;
    return std::min(cap, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t kMinPerThread = 2048;
    int workers = max_threads();
    if (workers <= 1 || n < 2 * kMinPerThread) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t want = n / kMinPerThread;
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), want));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace antirips
