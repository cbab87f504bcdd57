#pragma once

#include <cstddef>
#include <functional>

namespace fhenon {

/// Number of workers to use when the caller asks for 0 ("auto").
unsigned default_thread_count() noexcept;

/// Runs body(i) for every i in [0, count) on up to `threads` workers.
/// Items are claimed dynamically; callers write results by index, so output
/// does not depend on scheduling. The first exception thrown by any item is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace fhenon
