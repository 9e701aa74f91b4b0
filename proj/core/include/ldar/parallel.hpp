#pragma once

#include <cstddef>
#include <functional>

namespace ldar {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is
/// processed exactly once; callers write results into slot i, so output does
/// not depend on `jobs`. The first exception thrown by fn is rethrown.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// Thread count from the LDAR_JOBS environment variable, or 1.
std::size_t default_jobs();

}  // namespace ldar
