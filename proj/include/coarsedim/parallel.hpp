#ifndef COARSEDIM_PARALLEL_HPP
#define COARSEDIM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace coarsedim {

/// Worker count: hardware concurrency, capped by the COARSEDIM_THREADS environment variable.
std::size_t thread_count();

/**
 * Runs body(i) for i in [0, n). Work is split into contiguous blocks across
 * thread_count() threads; callers write results into slot i so the outcome
 * does not depend on scheduling. The first exception thrown is rethrown.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace coarsedim

#endif
