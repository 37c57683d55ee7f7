#pragma once

#include <cstddef>
#include <functional>

namespace pap {

// Worker count: set_worker_count() if called, else PAPSIM_THREADS, else the
// hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t n);

// Runs body(i) for i in [0, n). Results must be written by index; the first
// exception (lowest i) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pap
