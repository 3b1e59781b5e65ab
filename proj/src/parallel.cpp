#include "stokeseig/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stokeseig {

namespace {
std::atomic<int> g_threads{0};
thread_local bool t_inside = false;

struct InsideGuard {
    bool saved;
    InsideGuard() : saved(t_inside) { t_inside = true; }
    ~InsideGuard() { t_inside = saved; }
};
}  // namespace

void set_num_threads(int n) { g_threads = std::max(0, n); }

int num_threads() {
    const int n = g_threads.load();
    if (n > 0) return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& f, int max_workers) {
    if (n <= 0) return;
    int workers = std::min(num_threads(), n);
    if (max_workers > 0) workers = std::min(workers, max_workers);
    // Nested loops run serially on the worker that reached them.
    if (workers == 1 || t_inside) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        InsideGuard guard;
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace stokeseig
