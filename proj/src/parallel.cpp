#include "enskog/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace enskog {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) {
    if (threads < 1) throw std::invalid_argument("thread count must be at least 1");
    g_threads = threads;
}

int thread_count() { return g_threads; }

void parallel_for(int n, const std::function<void(int, int)>& body) {
    if (n <= 0) return;
    const int t = std::min(g_threads.load(), n);
    if (t == 1) {
        body(0, n);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    for (int w = 0; w < t; ++w) {
        const int begin = static_cast<int>(static_cast<long long>(n) * w / t);
        const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / t);
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace enskog
