#include "netprice/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netprice::par {

namespace {
std::atomic<unsigned> g_max_jobs{1};
thread_local bool t_inside_parallel = false;
} // namespace

void set_max_jobs(unsigned jobs) { g_max_jobs.store(jobs == 0 ? 1 : jobs); }

unsigned max_jobs() { return g_max_jobs.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned jobs = max_jobs();
    if (n == 0) return;
    if (jobs <= 1 || n == 1 || t_inside_parallel) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    unsigned workers = jobs < n ? jobs : static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto run = [&] {
        t_inside_parallel = true;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
            }
        }
        t_inside_parallel = false;
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

} // namespace netprice::par
