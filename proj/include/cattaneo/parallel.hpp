#pragma once

#include <cstddef>
#include <functional>

namespace cattaneo {

/// Environment variable that caps worker threads for per-mode loops.
inline constexpr const char* kThreadsEnv = "CATTANEO_THREADS";

/// Worker count: CATTANEO_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1). Read on every call.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one
/// worker; bodies must write only to slot i so results do not depend on
/// the schedule. The first exception thrown (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cattaneo
