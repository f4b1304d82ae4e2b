#pragma once

#include <memory>

#include "kaleph/breaker.hpp"
#include "kaleph/maker.hpp"

namespace kaleph {

/// Colour supply by name ("antidiagonal").
ColourSequence make_supply(const std::string& name);

/// Maker strategy by name: vanilla, finite-colours, infinite-colours.
/// The finite strategy takes its k from the config's palette; the
/// infinite one draws fresh colours from `supply`.
std::unique_ptr<Strategy> make_maker(const std::string& name, const GameConfig& config,
                                     const std::string& supply = "antidiagonal");

/// Breaker strategy by name: passive, random, greedy-blocker, pairing,
/// unbounded-bias. The random adversary derives its stream from
/// config.seed.
std::unique_ptr<Strategy> make_breaker(const std::string& name, const GameConfig& config);

const std::vector<std::string>& maker_names();
const std::vector<std::string>& breaker_names();

} // namespace kaleph
