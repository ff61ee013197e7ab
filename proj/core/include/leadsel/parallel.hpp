#pragma once

#include <functional>

namespace leadsel {

/// Worker count from the LEADSEL_THREADS environment variable, falling back to
/// std::thread::hardware_concurrency(). Always at least 1.
unsigned default_thread_count();

/// Runs fn(worker) for worker = 0..workers-1, worker 0 on the calling thread.
/// If any invocation throws, the exception of the lowest-numbered failing
/// worker is rethrown after all workers have joined.
void run_workers(unsigned workers, const std::function<void(unsigned)>& fn);

}  // namespace leadsel
