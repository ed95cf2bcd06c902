#pragma once

#include <cstddef>
#include <functional>

namespace magnon::cli {

// Number of worker threads to use: `requested` if positive, else the
// MAGNON_ECHO_THREADS environment variable if set and positive, else the
// hardware concurrency (at least 1).
int resolve_thread_count(int requested = 0);

// Runs fn(i) for every i in [0, count) on a pool of worker threads. The
// caller owns result placement (fn writes to slot i), so output order is
// deterministic regardless of scheduling. The first exception thrown by any
// fn is rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

}  // namespace magnon::cli
