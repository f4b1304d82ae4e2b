#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kaleph/board.hpp"

// Turn loop for biased Maker-Breaker play, deterministic traces, replay.

namespace kaleph {

struct BiasSchedule {
    enum class Kind : std::uint8_t { Unit, ConstantK, CeilLog2, Linear };
    Kind kind = Kind::Unit;
    std::uint64_t param = 1; // k for ConstantK, slope for Linear

    static BiasSchedule unit() { return {Kind::Unit, 1}; }
    static BiasSchedule constant_k(std::uint64_t k);
    static BiasSchedule ceil_log2() { return {Kind::CeilLog2, 0}; }
    static BiasSchedule linear(std::uint64_t slope);

    friend bool operator==(const BiasSchedule&, const BiasSchedule&) = default;
};

/// Edges Breaker may claim in his t-th block (t >= 1). Maker always gets 1.
std::uint64_t bias_allowance(const BiasSchedule& b, std::uint64_t t);

struct GameConfig {
    Player first_player = Player::Maker;
    std::uint64_t horizon = 1; // number of Maker moves; must be >= 1
    Colouring colouring = Colouring::diagonal();
    BiasSchedule bias = BiasSchedule::unit();
    std::uint64_t seed = 0;
};

/// Per-Maker-move bookkeeping: which rule fired and how crowded the
/// candidate sets were. Not serialized into trace files.
struct MoveNote {
    enum class Rule : std::uint8_t { Open, Extend, Fresh, FreshFallback };
    Rule rule = Rule::Open;
    std::uint64_t candidate_pool = 0; // |F| (vanilla: candidates scanned)
    std::uint64_t anchor_pool = 0;    // |K|
    std::uint64_t pick_rank = 0;      // 1-based rank of the chosen candidate
};

const char* to_string(MoveNote::Rule r);

struct GameTrace {
    GameConfig config;
    std::vector<Claim> moves;
    std::vector<MoveNote> notes; // one per Maker move
    bool aborted = false;        // a strategy ended the session early
};

struct GameView {
    const ClaimLedger& ledger;
    const Colouring& colouring;
};

/// Thrown by a strategy to end the session cleanly (interactive quit).
struct AbortGame {};

struct StrategyFault : std::runtime_error {
    std::string strategy;
    std::uint32_t turn;
    StrategyFault(std::string who, std::uint32_t at, const std::string& why)
        : std::runtime_error("strategy '" + who + "' faulted at turn " + std::to_string(at) +
                             ": " + why),
          strategy(std::move(who)), turn(at) {}
};

class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string_view name() const = 0;
    /// Exactly `allowance` unclaimed, pairwise distinct edges.
    virtual std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) = 0;
    /// Bookkeeping for the move just returned (Maker strategies).
    virtual const MoveNote* last_note() const { return nullptr; }
};

/// Plays `config.horizon` Maker moves interleaved with Breaker blocks of
/// bias_allowance(t) edges. Maker first: M_t then block t; Breaker first:
/// block t then M_t. Validates every returned move (StrategyFault on
/// claimed/duplicate/short/overlong blocks). AbortGame yields a partial
/// trace with aborted = true.
GameTrace run_game(const GameConfig& config, Strategy& maker, Strategy& breaker);

/// Rebuilds the ledger from a trace, enforcing turn contiguity, legality
/// and the block alternation pattern implied by first_player and bias.
/// Accepts prefixes (aborted sessions stop mid-block).
ClaimLedger replay(const GameTrace& trace);

/// Canonical JSON serialization: {"header": {colouring, bias, seed,
/// first_player}, "moves": [{turn, player, edge}, ...]}. dump/parse
/// round-trip byte-identically.
std::string dump_trace(const GameTrace& trace);

struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses dump_trace output. Horizon is the Maker-move count. Throws
/// TraceError on malformed input.
GameTrace parse_trace(const std::string& json_text);

} // namespace kaleph
