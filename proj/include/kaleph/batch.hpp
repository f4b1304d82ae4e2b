#pragma once

#include "kaleph/engine.hpp"

namespace kaleph {

struct BatchSpec {
    GameConfig config;
    std::string maker;
    std::string breaker;
    std::string supply = "antidiagonal";
};

struct BatchResult {
    GameTrace trace;
    std::string error; // empty on success
    bool fault = false;
};

/// Runs independent games. jobs <= 1 is the serial reference path;
/// larger values fan the specs out over OpenMP threads. Results keep
/// the spec order either way.
std::vector<BatchResult> run_batch(const std::vector<BatchSpec>& specs, int jobs = 1);

} // namespace kaleph
