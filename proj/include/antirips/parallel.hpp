#pragma once

#include <cstddef>
#include <functional>

namespace antirips {

// Caps the number of worker threads used by internal data-parallel loops.
// 0 restores the hardware default. Results never depend on the cap: parallel
// loops only ever write to disjoint, index-addressed slots.
void set_max_threads(int threads);
int max_threads();

// Runs fn(i) for i in [0, n). Chunked across threads when profitable,
// sequential otherwise.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace antirips
