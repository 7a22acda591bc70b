#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tlsdyn {

/// Worker count for sweep execution: TLSDYN_WORKERS if set, otherwise the
/// machine parallelism (at least 1).
std::size_t sweep_worker_count();

/// Runs the jobs on up to `workers` threads (0 = sweep_worker_count()).
/// Job order inside the vector is preserved by index, so callers get
/// deterministic output ordering regardless of scheduling. The first
/// exception thrown by any job is rethrown after all workers finish.
void run_jobs(const std::vector<std::function<void()>>& jobs, std::size_t workers = 0);

}  // namespace tlsdyn
