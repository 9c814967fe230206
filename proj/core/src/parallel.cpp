#include "mpgemm/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mpgemm {

namespace {

int default_thread_count() {
    if (const char* env = std::getenv("MPGEMM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::atomic<int>& thread_count_state() {
    static std::atomic<int> count{default_thread_count()};
    return count;
}

} // namespace

int thread_count() { return thread_count_state().load(std::memory_order_relaxed); }

void set_thread_count(int n) {
    thread_count_state().store(n > 0 ? n : 1, std::memory_order_relaxed);
}

void parallel_for(int begin, int end, const std::function<void(int, int)>& fn) {
    const int total = end - begin;
    if (total <= 0) {
        return;
    }
    const int workers = std::min(thread_count(), total);
    if (workers <= 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const int chunk = total / workers;
    const int rem = total % workers;
    int lo = begin;
    for (int w = 0; w < workers; ++w) {
        const int hi = lo + chunk + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
        lo = hi;
    }
}

} // namespace mpgemm
