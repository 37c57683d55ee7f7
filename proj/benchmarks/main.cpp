#include <benchmark/benchmark.h>

// The distro benchmark_main archive ships LTO bytecode from another compiler release.
BENCHMARK_MAIN();
