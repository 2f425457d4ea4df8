#pragma once

#include <cstddef>
#include <functional>

namespace sphtrunc
{
/// Splits [0, n) into contiguous chunks, one per worker, and runs body(begin, end) on each.
/// workers <= 1 runs inline on the calling thread. Exceptions from any chunk are rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t, std::size_t)> &body);
} // namespace sphtrunc
