#include "pap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace pap {
namespace {
std::atomic<std::size_t> g_workers{0};

std::size_t from_env() {
    if (const char* s = std::getenv("PAPSIM_THREADS")) {
        try {
            const long v = std::stol(s);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

thread_local bool t_inside_pool = false;
}  // namespace

std::size_t worker_count() {
    const std::size_t n = g_workers.load();
    return n ? n : from_env();
}

void set_worker_count(std::size_t n) { g_workers.store(n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    // Nested calls run inline so the outer map owns the threads.
    const std::size_t workers = t_inside_pool ? 1 : std::min(worker_count(), n);
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                t_inside_pool = true;
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace pap
