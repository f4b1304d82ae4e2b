#include "kaleph/strategies.hpp"

namespace kaleph {

ColourSequence make_supply(const std::string& name) {
    if (name == "antidiagonal") return ColourSequence::anti_diagonal();
    throw std::invalid_argument("unknown colour supply: " + name);
}

std::unique_ptr<Strategy> make_maker(const std::string& name, const GameConfig& config,
                                     const std::string& supply) {
    if (name == "vanilla") return std::make_unique<VanillaMaker>(config.colouring);
    if (name == "finite-colours") {
        auto k = config.colouring.palette_size();
        if (!k)
            throw std::invalid_argument("finite-colours maker needs a finite palette");
        return std::make_unique<FiniteColoursMaker>(config.colouring, *k);
    }
    if (name == "infinite-colours")
        return std::make_unique<InfiniteColoursMaker>(config.colouring, make_supply(supply));
    throw std::invalid_argument("unknown maker strategy: " + name);
}

std::unique_ptr<Strategy> make_breaker(const std::string& name, const GameConfig& config) {
    if (name == "passive") return std::make_unique<PassiveAdversary>();
    if (name == "random") {
        std::uint64_t z = config.seed + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return std::make_unique<RandomAdversary>(z ^ (z >> 31));
    }
    if (name == "greedy-blocker") return std::make_unique<GreedyBlocker>();
    if (name == "pairing") return std::make_unique<PairingBreaker>(config.colouring);
    if (name == "unbounded-bias") return std::make_unique<UnboundedBiasBreaker>();
    throw std::invalid_argument("unknown breaker strategy: " + name);
}

const std::vector<std::string>& maker_names() {
    static const std::vector<std::string> names{"vanilla", "finite-colours", "infinite-colours"};
    return names;
}

const std::vector<std::string>& breaker_names() {
    static const std::vector<std::string> names{"passive", "random", "greedy-blocker", "pairing",
                                                "unbounded-bias"};
    return names;
}

} // namespace kaleph
