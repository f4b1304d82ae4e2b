#include "kaleph/engine.hpp"

#include <bit>
#include <unordered_set>

#include "json.hpp"

namespace kaleph {

BiasSchedule BiasSchedule::constant_k(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("constant_k: k must be positive");
    return {Kind::ConstantK, k};
}

BiasSchedule BiasSchedule::linear(std::uint64_t slope) {
    if (slope == 0) throw std::invalid_argument("linear: slope must be positive");
    return {Kind::Linear, slope};
}

std::uint64_t bias_allowance(const BiasSchedule& b, std::uint64_t t) {
    if (t == 0) throw std::invalid_argument("bias_allowance: block index is 1-based");
    switch (b.kind) {
        case BiasSchedule::Kind::Unit: return 1;
        case BiasSchedule::Kind::ConstantK: return b.param;
        case BiasSchedule::Kind::CeilLog2: return std::bit_width(t + 1); // ceil(log2(t+2))
        case BiasSchedule::Kind::Linear: return std::max<std::uint64_t>(1, b.param * t);
    }
    throw std::logic_error("bias_allowance: bad kind");
}

const char* to_string(MoveNote::Rule r) {
    switch (r) {
        case MoveNote::Rule::Open: return "open";
        case MoveNote::Rule::Extend: return "extend";
        case MoveNote::Rule::Fresh: return "fresh";
        case MoveNote::Rule::FreshFallback: return "fresh-fallback";
    }
    return "?";
}

namespace {

void apply_block(ClaimLedger& ledger, GameTrace& trace, Strategy& strat, const GameView& view,
                 Player who, std::uint64_t allowance, bool record_note) {
    std::vector<Edge> edges;
    try {
        edges = strat.next_moves(view, allowance);
    } catch (const AbortGame&) {
        trace.aborted = true;
        throw;
    }
    std::string who_name(strat.name());
    if (edges.empty())
        throw StrategyFault(who_name, ledger.next_turn(), "returned no edges");
    if (edges.size() > allowance)
        throw StrategyFault(who_name, ledger.next_turn(),
                            "returned " + std::to_string(edges.size()) + " edges, allowance " +
                                std::to_string(allowance));
    if (edges.size() < allowance)
        throw StrategyFault(who_name, ledger.next_turn(),
                            "under-delivered " + std::to_string(edges.size()) + "/" +
                                std::to_string(allowance) + " edges");
    std::unordered_set<Edge, EdgeHash> seen;
    for (const Edge& e : edges) {
        if (!seen.insert(e).second)
            throw StrategyFault(who_name, ledger.next_turn(), "duplicate edge in block");
        std::uint32_t turn = ledger.next_turn();
        try {
            ledger.claim(e, who, turn);
        } catch (const IllegalMove& ill) {
            throw StrategyFault(who_name, turn, ill.what());
        }
        trace.moves.push_back(Claim{e, who, turn});
    }
    if (record_note) {
        if (const MoveNote* note = strat.last_note()) trace.notes.push_back(*note);
        else trace.notes.push_back(MoveNote{});
    }
}

} // namespace

GameTrace run_game(const GameConfig& config, Strategy& maker, Strategy& breaker) {
    if (config.horizon == 0) throw std::invalid_argument("run_game: horizon must be >= 1");
    ClaimLedger ledger;
    GameTrace trace;
    trace.config = config;
    GameView view{ledger, config.colouring};
    try {
        for (std::uint64_t t = 1; t <= config.horizon; ++t) {
            std::uint64_t allowance = bias_allowance(config.bias, t);
            if (config.first_player == Player::Breaker)
                apply_block(ledger, trace, breaker, view, Player::Breaker, allowance, false);
            apply_block(ledger, trace, maker, view, Player::Maker, 1, true);
            if (config.first_player == Player::Maker)
                apply_block(ledger, trace, breaker, view, Player::Breaker, allowance, false);
        }
    } catch (const AbortGame&) {
        trace.aborted = true;
    }
    return trace;
}

ClaimLedger replay(const GameTrace& trace) {
    ClaimLedger ledger;
    // expected player pattern: blocks of 1 (Maker) and allowance(t) (Breaker)
    std::uint64_t block = 1;         // Breaker block counter
    std::uint64_t left = 0;          // edges left in the current block
    Player current = trace.config.first_player;
    auto open_block = [&](Player p) {
        current = p;
        left = p == Player::Maker ? 1 : bias_allowance(trace.config.bias, block);
    };
    open_block(current);
    for (const Claim& c : trace.moves) {
        if (left == 0) {
            if (current == Player::Breaker) ++block;
            open_block(current == Player::Maker ? Player::Breaker : Player::Maker);
        }
        if (c.player != current)
            throw ProtocolError("replay: turn " + std::to_string(c.turn) + " claimed by " +
                                to_string(c.player) + ", expected " + to_string(current) +
                                " (alternation)");
        ledger.claim(c.edge, c.player, c.turn); // throws on duplicates / bad turn
        --left;
    }
    return ledger;
}

// ----------------------------------------------------------------------------
// Trace JSON

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json colouring_to_json(const Colouring& c) {
    ordered_json j;
    switch (c.kind()) {
        case Colouring::Kind::ModK:
            j["kind"] = "modk";
            j["k"] = c.fallback_k();
            break;
        case Colouring::Kind::Diagonal:
            j["kind"] = "diagonal";
            break;
        case Colouring::Kind::Table: {
            j["kind"] = "table";
            ordered_json ov = ordered_json::object();
            for (const auto& [v, col] : c.overrides()) ov[std::to_string(v)] = col;
            j["overrides"] = std::move(ov);
            ordered_json fb;
            if (c.fallback_kind() == Colouring::Kind::ModK) {
                fb["kind"] = "modk";
                fb["k"] = c.fallback_k();
            } else {
                fb["kind"] = "diagonal";
            }
            j["fallback"] = std::move(fb);
            break;
        }
    }
    return j;
}

Colouring colouring_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "modk") return Colouring::mod_k(j.at("k").get<std::uint64_t>());
    if (kind == "diagonal") return Colouring::diagonal();
    if (kind == "table") {
        std::map<VertexId, ColourId> overrides;
        for (const auto& [key, val] : j.at("overrides").items())
            overrides[std::stoull(key)] = val.get<ColourId>();
        return Colouring::table(std::move(overrides), colouring_from_json(j.at("fallback")));
    }
    throw TraceError("unknown colouring kind '" + kind + "'");
}

ordered_json bias_to_json(const BiasSchedule& b) {
    ordered_json j;
    switch (b.kind) {
        case BiasSchedule::Kind::Unit: j["kind"] = "unit"; break;
        case BiasSchedule::Kind::ConstantK: j["kind"] = "constant"; j["k"] = b.param; break;
        case BiasSchedule::Kind::CeilLog2: j["kind"] = "ceillog2"; break;
        case BiasSchedule::Kind::Linear: j["kind"] = "linear"; j["slope"] = b.param; break;
    }
    return j;
}

BiasSchedule bias_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "unit") return BiasSchedule::unit();
    if (kind == "constant") return BiasSchedule::constant_k(j.at("k").get<std::uint64_t>());
    if (kind == "ceillog2") return BiasSchedule::ceil_log2();
    if (kind == "linear") return BiasSchedule::linear(j.at("slope").get<std::uint64_t>());
    throw TraceError("unknown bias kind '" + kind + "'");
}

} // namespace

std::string dump_trace(const GameTrace& trace) {
    ordered_json j;
    ordered_json header;
    header["colouring"] = colouring_to_json(trace.config.colouring);
    header["bias"] = bias_to_json(trace.config.bias);
    header["seed"] = trace.config.seed;
    header["first_player"] = to_string(trace.config.first_player);
    j["header"] = std::move(header);
    ordered_json moves = ordered_json::array();
    for (const Claim& c : trace.moves) {
        ordered_json m;
        m["turn"] = c.turn;
        m["player"] = to_string(c.player);
        m["edge"] = {c.edge.lo, c.edge.hi};
        moves.push_back(std::move(m));
    }
    j["moves"] = std::move(moves);
    return j.dump(2) + "\n";
}

GameTrace parse_trace(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw TraceError(std::string("malformed trace: ") + e.what());
    }
    try {
        GameTrace trace;
        const auto& header = j.at("header");
        trace.config.colouring = colouring_from_json(header.at("colouring"));
        trace.config.bias = bias_from_json(header.at("bias"));
        trace.config.seed = header.at("seed").get<std::uint64_t>();
        const std::string fp = header.at("first_player").get<std::string>();
        if (fp != "M" && fp != "B") throw TraceError("bad first_player '" + fp + "'");
        trace.config.first_player = fp == "M" ? Player::Maker : Player::Breaker;
        std::uint64_t maker_moves = 0;
        for (const auto& m : j.at("moves")) {
            Claim c;
            c.turn = m.at("turn").get<std::uint32_t>();
            const std::string p = m.at("player").get<std::string>();
            if (p != "M" && p != "B") throw TraceError("bad player '" + p + "'");
            c.player = p == "M" ? Player::Maker : Player::Breaker;
            const auto& e = m.at("edge");
            if (!e.is_array() || e.size() != 2) throw TraceError("bad edge entry");
            c.edge = Edge{e.at(0).get<VertexId>(), e.at(1).get<VertexId>()};
            if (c.edge.lo >= c.edge.hi) throw TraceError("non-canonical edge in trace");
            if (c.player == Player::Maker) ++maker_moves;
            trace.moves.push_back(c);
        }
        trace.config.horizon = std::max<std::uint64_t>(maker_moves, 1);
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw TraceError(std::string("malformed trace: ") + e.what());
    }
}

} // namespace kaleph
