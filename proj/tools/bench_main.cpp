#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kaleph/batch.hpp"
#include "kaleph/engine.hpp"

// Compares the serial batch path against the OpenMP one on an identical
// workload and cross-checks that both produce the same traces.

using namespace kaleph;

namespace {

std::vector<BatchSpec> workload() {
    std::vector<BatchSpec> specs;
    const char* makers[] = {"vanilla", "finite-colours", "infinite-colours"};
    const char* breakers[] = {"passive", "random", "greedy-blocker"};
    for (const char* mk : makers)
        for (const char* bk : breakers)
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                BatchSpec spec;
                spec.config.horizon = 1500;
                spec.config.seed = seed;
                spec.config.colouring = std::string(mk) == "finite-colours" ? Colouring::mod_k(3)
                                                                            : Colouring::diagonal();
                spec.maker = mk;
                spec.breaker = bk;
                specs.push_back(spec);
            }
    return specs;
}

double run_timed(const std::vector<BatchSpec>& specs, int jobs, std::vector<BatchResult>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = run_batch(specs, jobs);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    auto specs = workload();
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif

    std::vector<BatchResult> serial, parallel;
    double t_serial = run_timed(specs, 1, serial);
    double t_parallel = run_timed(specs, threads, parallel);

    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (!serial[i].error.empty() || !parallel[i].error.empty()) {
            std::fprintf(stderr, "game %zu failed: %s%s\n", i, serial[i].error.c_str(),
                         parallel[i].error.c_str());
            return 1;
        }
        if (dump_trace(serial[i].trace) != dump_trace(parallel[i].trace)) {
            std::fprintf(stderr, "game %zu: serial and parallel traces differ\n", i);
            return 1;
        }
    }

    std::printf("games: %zu (horizon 1500)\n", specs.size());
    std::printf("serial   (jobs=1):  %.3f s\n", t_serial);
    std::printf("parallel (jobs=%d): %.3f s\n", threads, t_parallel);
    std::printf("speedup: %.2fx, traces identical\n", t_parallel > 0 ? t_serial / t_parallel : 0.0);
    return 0;
}
