#include "kaleph/batch.hpp"

#include "kaleph/strategies.hpp"

namespace kaleph {

namespace {

BatchResult run_one(const BatchSpec& spec) {
    BatchResult r;
    try {
        auto maker = make_maker(spec.maker, spec.config, spec.supply);
        auto breaker = make_breaker(spec.breaker, spec.config);
        r.trace = run_game(spec.config, *maker, *breaker);
    } catch (const StrategyFault& e) {
        r.error = e.what();
        r.fault = true;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

} // namespace

std::vector<BatchResult> run_batch(const std::vector<BatchSpec>& specs, int jobs) {
    std::vector<BatchResult> results(specs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) results[i] = run_one(specs[i]);
        return results;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(specs.size()); ++i)
        results[static_cast<std::size_t>(i)] = run_one(specs[static_cast<std::size_t>(i)]);
#else
    for (std::size_t i = 0; i < specs.size(); ++i) results[i] = run_one(specs[i]);
#endif
    return results;
}

} // namespace kaleph
