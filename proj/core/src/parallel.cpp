#include "tlsdyn/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "tlsdyn/config.hpp"

namespace tlsdyn {

std::size_t sweep_worker_count() {
    if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void run_jobs(const std::vector<std::function<void()>>& jobs, std::size_t workers) {
    if (jobs.empty()) return;
    if (workers == 0) workers = sweep_worker_count();
    workers = std::min(workers, jobs.size());

    if (workers <= 1) {
        for (const auto& job : jobs) job();
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                jobs[i]();
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tlsdyn
