#pragma once

#include <cstddef>
#include <functional>

namespace pestpolicy {

/// Parses a PEST_ENGINE_THREADS-style value: a positive integer caps the
/// worker count, "0", empty, or unparsable means one worker per hardware thread.
std::size_t worker_count_from(const char* value) noexcept;

/// Worker count from the PEST_ENGINE_THREADS environment variable.
std::size_t worker_count() noexcept;

/// Runs body(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
/// Each index runs exactly once; if any throw, the exception from the lowest
/// failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t workers = 0);

}  // namespace pestpolicy
