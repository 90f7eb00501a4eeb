#ifndef COVAR_PARALLEL_HPP
#define COVAR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace covar {

/// Worker count: explicit request > COVAR_THREADS env var > hardware count.
/// Always at least 1.
unsigned resolve_threads(unsigned requested = 0);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items
/// are claimed from a shared atomic counter; callers must write results
/// into per-index slots so the outcome is independent of scheduling.
/// The first exception thrown by any worker is rethrown after all join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

} // namespace covar

#endif // COVAR_PARALLEL_HPP
