#include "kaleph/certificate.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "json.hpp"

namespace kaleph {

const char* to_string(ChainVariant v) {
    switch (v) {
        case ChainVariant::Vanilla: return "vanilla";
        case ChainVariant::FiniteColours: return "finite-colours";
        case ChainVariant::InfiniteColours: return "infinite-colours";
    }
    return "?";
}

ClaimLedger lenient_replay(const GameTrace& trace) {
    ClaimLedger ledger;
    std::uint64_t last_turn = 0;
    bool first = true;
    for (const Claim& c : trace.moves) {
        if (!first && c.turn <= last_turn)
            throw ProtocolError("trace turns must strictly increase (turn " +
                                std::to_string(c.turn) + ")");
        last_turn = c.turn;
        first = false;
        ledger.claim(c.edge, c.player, ledger.next_turn());
    }
    return ledger;
}

// ----------------------------------------------------------------------------
// Extraction

namespace {

struct ExtractSetup {
    ChainVariant variant;
    std::uint64_t bias_k = 1;
    std::uint64_t k = 1;
    const ColourSequence* c_hat = nullptr;
    Colouring colouring = Colouring::diagonal();
    std::optional<ColourId> v1_colour; // names v_1 on the opening edge
};

CliqueChain extract(const GameTrace& trace, const ExtractSetup& setup) {
    MakerView view;
    std::vector<ColourId> colours;
    const Colouring& col = setup.colouring;
    bool first = true;
    for (const Claim& c : trace.moves) {
        if (c.player != Player::Maker) continue;
        if (first) {
            VertexId v1 = c.edge.lo;
            if (setup.v1_colour && col.colour_of(c.edge.hi) == *setup.v1_colour &&
                col.colour_of(c.edge.lo) != *setup.v1_colour)
                v1 = c.edge.hi;
            view.absorb(c.edge, v1);
            first = false;
        } else {
            view.absorb(c.edge);
        }
    }
    for (std::size_t s = 0; s < view.size(); ++s)
        colours.push_back(col.colour_of(view.vertex(s)));

    CliqueChain chain;
    chain.variant = setup.variant;
    if (view.size() == 0) return chain;

    std::vector<std::size_t> clique{0};
    std::vector<char> in_clique(view.size(), 0);
    in_clique[0] = 1;

    ChainLevel base;
    base.clique = {view.vertex(0)};
    std::set<ColourId> pool;
    for (std::size_t s = 1; s < view.size(); ++s) {
        base.witnesses.push_back(view.vertex(s));
        pool.insert(colours[s]);
    }
    if (setup.variant == ChainVariant::InfiniteColours) {
        base.pool_tracked = true;
        base.pool.assign(pool.begin(), pool.end());
    }
    chain.levels.push_back(std::move(base));

    // tracked witnesses: connection history follows the clique order so
    // far; "pending" members have not revealed their next connection yet
    std::vector<std::size_t> tracked;
    for (std::size_t s = 1; s < view.size(); ++s)
        if (view.connections(s)[0] == 0) tracked.push_back(s);

    Bitset common = view.nbrs(0);
    std::uint64_t m_hat = 1;

    while (true) {
        std::size_t n = clique.size();

        std::optional<ColourId> target;
        std::size_t cap = 0;
        if (setup.variant == ChainVariant::Vanilla) {
            cap = setup.bias_k * n + 1;
        } else if (setup.variant == ChainVariant::FiniteColours) {
            target = (n + 1) % setup.k;
            cap = setup.k * n + 1;
        } else {
            if (pool.empty()) break;
            std::uint64_t p = m_hat + 1;
            while (!pool.count(setup.c_hat->at(p))) {
                ++p;
                if (p > m_hat + 10'000'000)
                    throw std::logic_error("target colour sequence never revisits the pool");
            }
            m_hat = p;
            target = setup.c_hat->at(p);
            std::set<ColourId> clique_cols;
            for (std::size_t s : clique) clique_cols.insert(colours[s]);
            cap = (clique_cols.size() + 2) * n + 1;
        }

        std::vector<std::size_t> F;
        for (std::size_t s = 0; s < view.size() && F.size() < cap; ++s) {
            if (in_clique[s]) continue;
            if (target && colours[s] != *target) continue;
            if (!common.test(s)) continue;
            F.push_back(s);
        }
        if (F.empty()) break;

        // supporters: tracked witnesses whose (n+1)-st connection is the
        // candidate; witnesses still short of n+1 connections back every
        // candidate (their choice is beyond the horizon)
        std::unordered_map<std::size_t, std::vector<std::size_t>> supporters;
        std::vector<std::size_t> pending;
        for (std::size_t w : tracked) {
            if (view.degree(w) <= n) pending.push_back(w);
            else supporters[view.connections(w)[n]].push_back(w);
        }

        std::set<ColourId> required; // colours a candidate must cover
        if (setup.variant == ChainVariant::FiniteColours) {
            for (std::size_t w : tracked) required.insert(colours[w]);
        } else if (setup.variant == ChainVariant::InfiniteColours) {
            for (std::size_t s : clique) required.insert(colours[s]);
            required.insert(*target);
        }

        struct Cand {
            std::size_t slot = 0;
            std::uint64_t total = 0;
            std::size_t diversity = 0;
            bool eligible = false;
        };
        std::vector<Cand> cands;
        std::uint64_t best_raw = 0;
        for (std::size_t f : F) {
            Cand c;
            c.slot = f;
            std::set<ColourId> cover;
            auto it = supporters.find(f);
            if (it != supporters.end())
                for (std::size_t w : it->second) {
                    ++c.total;
                    cover.insert(colours[w]);
                }
            for (std::size_t w : pending) {
                if (w == f) continue;
                ++c.total;
                cover.insert(colours[w]);
            }
            c.diversity = cover.size();
            c.eligible = c.total >= 1 &&
                         std::includes(cover.begin(), cover.end(), required.begin(), required.end());
            best_raw = std::max(best_raw, c.total);
            cands.push_back(c);
        }

        const Cand* pick = nullptr;
        for (const Cand& c : cands) {
            if (!c.eligible) continue;
            if (!pick) { pick = &c; continue; }
            bool better;
            if (setup.variant == ChainVariant::InfiniteColours)
                better = c.diversity != pick->diversity ? c.diversity > pick->diversity
                         : c.total != pick->total       ? c.total > pick->total
                                                        : c.slot < pick->slot;
            else
                better = c.total != pick->total ? c.total > pick->total : c.slot < pick->slot;
            if (better) pick = &c;
        }
        if (!pick) {
            if (best_raw > 0) chain.levels.back().surrogate_bound = true;
            break;
        }

        std::size_t chosen = pick->slot;
        clique.push_back(chosen);
        in_clique[chosen] = 1;

        ChainLevel lvl;
        for (std::size_t s : clique) lvl.clique.push_back(view.vertex(s));
        if (auto it = supporters.find(chosen); it != supporters.end())
            for (std::size_t w : it->second) lvl.witnesses.push_back(view.vertex(w));
        lvl.surrogate_bound = pick->total < best_raw;

        std::vector<std::size_t> next_tracked;
        for (std::size_t w : tracked) {
            if (w == chosen) continue;
            if (view.degree(w) <= n || view.connections(w)[n] == chosen)
                next_tracked.push_back(w);
        }
        tracked = std::move(next_tracked);

        if (setup.variant == ChainVariant::InfiniteColours) {
            pool.clear();
            for (std::size_t w : tracked) pool.insert(colours[w]);
            lvl.pool_tracked = true;
            lvl.pool.assign(pool.begin(), pool.end());
        }
        chain.levels.push_back(std::move(lvl));
        common.and_with(view.nbrs(chosen));
    }
    return chain;
}

} // namespace

CliqueChain extract_chain_vanilla(const GameTrace& trace, std::uint64_t bias_k) {
    if (bias_k == 0) throw std::invalid_argument("extract: bias_k must be positive");
    ExtractSetup setup;
    setup.variant = ChainVariant::Vanilla;
    setup.bias_k = bias_k;
    setup.colouring = trace.config.colouring;
    return extract(trace, setup);
}

CliqueChain extract_chain_finite(const GameTrace& trace, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("extract: k must be positive");
    ExtractSetup setup;
    setup.variant = ChainVariant::FiniteColours;
    setup.k = k;
    setup.colouring = trace.config.colouring;
    if (k >= 2) setup.v1_colour = 1 % k;
    return extract(trace, setup);
}

CliqueChain extract_chain_infinite(const GameTrace& trace, const ColourSequence& s,
                                   const ColourSequence& c_hat) {
    if (c_hat.at(1) != s.at(1))
        throw std::invalid_argument("extract: target sequence must start at the supply's first colour");
    ExtractSetup setup;
    setup.variant = ChainVariant::InfiniteColours;
    setup.c_hat = &c_hat;
    setup.colouring = trace.config.colouring;
    setup.v1_colour = s.at(1);
    return extract(trace, setup);
}

// ----------------------------------------------------------------------------
// Verification

VerificationReport verify_chain(const CliqueChain& chain, const GameTrace& trace,
                                const VerifyParams& params) {
    VerificationReport report;
    report.variant = to_string(chain.variant);
    report.levels = chain.levels.size();

    const Colouring col = params.colouring.value_or(trace.config.colouring);

    ClaimLedger ledger;
    try {
        ledger = lenient_replay(trace);
    } catch (const std::exception& e) {
        report.failures.emplace_back(e.what());
        report.pass = false;
        return report;
    }

    // independent derivation of Maker's connection orders
    std::unordered_map<VertexId, std::vector<VertexId>> conn;
    std::unordered_set<Edge, EdgeHash> maker_edges;
    for (const Claim& c : ledger.claims()) {
        if (c.player != Player::Maker) continue;
        conn[c.edge.lo].push_back(c.edge.hi);
        conn[c.edge.hi].push_back(c.edge.lo);
        maker_edges.insert(c.edge);
    }

    for (std::size_t i = 0; i < chain.levels.size(); ++i) {
        const ChainLevel& level = chain.levels[i];
        const std::size_t n = i + 1;
        LevelReport lr;
        lr.clique = level.clique;
        for (VertexId v : level.clique) lr.colours.push_back(col.colour_of(v));
        lr.witness_count = level.witnesses.size();
        auto check = [&lr](const std::string& name, bool ok) {
            lr.checks[name] = ok;
            if (!ok) lr.pass = false;
        };

        std::set<VertexId> clique_set(level.clique.begin(), level.clique.end());
        check("level_size", level.clique.size() == n && clique_set.size() == n);

        bool nested = true;
        if (i > 0) {
            const auto& prev = chain.levels[i - 1].clique;
            nested = prev.size() < level.clique.size() &&
                     std::equal(prev.begin(), prev.end(), level.clique.begin());
        }
        check("nesting", nested);

        bool fully_claimed = true;
        for (std::size_t a = 0; a < level.clique.size() && fully_claimed; ++a)
            for (std::size_t b = a + 1; b < level.clique.size(); ++b) {
                if (level.clique[a] == level.clique[b]) { fully_claimed = false; break; }
                if (!maker_edges.count(canonical_edge(level.clique[a], level.clique[b]))) {
                    fully_claimed = false;
                    break;
                }
            }
        check("clique_claimed", fully_claimed);

        bool witnesses_ok = true;
        for (VertexId w : level.witnesses) {
            if (clique_set.count(w)) { witnesses_ok = false; break; }
            auto it = conn.find(w);
            if (it == conn.end() || it->second.size() < n) { witnesses_ok = false; break; }
            std::set<VertexId> first_n(it->second.begin(),
                                       it->second.begin() + static_cast<std::ptrdiff_t>(n));
            if (first_n != clique_set) { witnesses_ok = false; break; }
        }
        check("witness_first_connections", witnesses_ok);

        if (chain.variant == ChainVariant::FiniteColours) {
            bool law = true;
            for (std::size_t j = 1; j <= level.clique.size(); ++j)
                if (col.colour_of(level.clique[j - 1]) != j % params.k) { law = false; break; }
            check("colour_law", law);
        }

        if (chain.variant == ChainVariant::InfiniteColours) {
            check("pool_tracked", level.pool_tracked);
            std::set<ColourId> pool(level.pool.begin(), level.pool.end());
            bool in_pool = true;
            for (VertexId v : level.clique)
                if (!pool.count(col.colour_of(v))) { in_pool = false; break; }
            check("clique_colours_in_pool", in_pool);
            bool w_in_pool = true;
            for (VertexId w : level.witnesses)
                if (!pool.count(col.colour_of(w))) { w_in_pool = false; break; }
            check("witness_colours_in_pool", w_in_pool);
            bool nested_pool = true;
            if (i > 0) {
                const auto& prev = chain.levels[i - 1].pool;
                std::set<ColourId> prev_pool(prev.begin(), prev.end());
                for (ColourId c : level.pool)
                    if (!prev_pool.count(c)) { nested_pool = false; break; }
            }
            check("pool_nested", nested_pool);
        }

        if (!lr.pass && !report.first_failing_level) report.first_failing_level = n;
        report.pass = report.pass && lr.pass;
        report.per_level.push_back(std::move(lr));
    }
    return report;
}

std::string dump_report(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["variant"] = report.variant;
    j["levels"] = report.levels;
    j["pass"] = report.pass;
    if (report.first_failing_level) j["first_failing_level"] = *report.first_failing_level;
    else j["first_failing_level"] = nullptr;
    j["failures"] = report.failures;
    auto arr = nlohmann::ordered_json::array();
    for (const LevelReport& lr : report.per_level) {
        nlohmann::ordered_json l;
        l["clique"] = lr.clique;
        l["colours"] = lr.colours;
        l["witness_count"] = lr.witness_count;
        l["checks"] = lr.checks;
        l["pass"] = lr.pass;
        arr.push_back(std::move(l));
    }
    j["per_level"] = std::move(arr);
    return j.dump(2) + "\n";
}

// ----------------------------------------------------------------------------
// Brute-force clique oracle

CliqueResult brute_force_max_clique(const ClaimLedger& ledger, Player player,
                                    std::span<const VertexId> verts, std::size_t vertex_cap) {
    if (vertex_cap > 32) throw std::invalid_argument("oracle: vertex cap above 32");
    std::vector<VertexId> vs(verts.begin(), verts.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.size() > vertex_cap)
        throw std::invalid_argument("oracle: " + std::to_string(vs.size()) +
                                    " vertices exceed the cap of " + std::to_string(vertex_cap));
    const std::size_t n = vs.size();
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            auto claim = ledger.claim_on(canonical_edge(vs[a], vs[b]));
            if (claim && claim->player == player) {
                adj[a] |= std::uint32_t{1} << b;
                adj[b] |= std::uint32_t{1} << a;
            }
        }

    std::size_t best = 0;
    std::uint32_t best_mask = 0;
    auto grow = [&](auto&& self, std::uint32_t cur, std::size_t cur_size, std::uint32_t cand) -> void {
        if (cur_size > best) {
            best = cur_size;
            best_mask = cur;
        }
        while (cand) {
            if (cur_size + static_cast<std::size_t>(std::popcount(cand)) <= best) return;
            std::uint32_t bit = cand & (~cand + 1);
            auto v = static_cast<std::size_t>(std::countr_zero(cand));
            cand ^= bit;
            self(self, cur | bit, cur_size + 1, cand & adj[v]);
        }
    };
    std::uint32_t all = n == 32 ? 0xffffffffu : (std::uint32_t{1} << n) - 1;
    grow(grow, 0, 0, all);

    CliqueResult result;
    result.size = best;
    for (std::size_t v = 0; v < n; ++v)
        if (best_mask & (std::uint32_t{1} << v)) result.members.push_back(vs[v]);
    return result;
}

CliqueResult brute_force_max_clique(const ClaimLedger& ledger, Player player,
                                    std::size_t vertex_cap) {
    std::set<VertexId> verts;
    for (const Claim& c : ledger.claims())
        if (c.player == player) {
            verts.insert(c.edge.lo);
            verts.insert(c.edge.hi);
        }
    std::vector<VertexId> vs(verts.begin(), verts.end());
    return brute_force_max_clique(ledger, player, vs, vertex_cap);
}

// ----------------------------------------------------------------------------
// Pairing guarantee

VerificationReport pairing_guarantee_check(const GameTrace& trace, PairingTable& table) {
    VerificationReport report;
    report.variant = "pairing";

    ClaimLedger ledger;
    try {
        ledger = lenient_replay(trace);
    } catch (const std::exception& e) {
        report.failures.emplace_back(e.what());
        report.pass = false;
        return report;
    }
    const Colouring& col = table.colouring();

    for (const Claim& c : ledger.claims()) {
        // membership in two pairs would break the disjointness argument
        try {
            table.partner_of(c.edge);
        } catch (const std::logic_error& e) {
            report.failures.emplace_back("edge (" + std::to_string(c.edge.lo) + "," +
                                         std::to_string(c.edge.hi) + "): " + e.what());
        }
    }

    for (const Claim& c : ledger.claims()) {
        if (c.player != Player::Maker) continue;
        const Edge e = c.edge; // table entry m = edge_index(e)
        const EdgeIndex m = edge_index(e);
        auto nx = ledger.neighbours(Player::Maker, e.lo);
        for (VertexId v : nx) {
            if (v == e.hi) continue;
            auto other = ledger.claim_on(canonical_edge(v, e.hi));
            if (!other || other->player != Player::Maker) continue;
            // v is Maker-joined to both endpoints; fatal iff v sits in
            // the colour class designated for this entry
            auto mv = table.index_of_colour(col.colour_of(v));
            if (mv && *mv == m)
                report.failures.emplace_back(
                    "pair of entry " + std::to_string(m) + " fully Maker-owned via vertex " +
                    std::to_string(v));
        }
    }
    report.pass = report.failures.empty();
    return report;
}

// ----------------------------------------------------------------------------

std::vector<std::pair<std::uint64_t, std::size_t>> growth_curve(const GameTrace& trace,
                                                                ChainVariant variant,
                                                                std::uint64_t k,
                                                                std::uint64_t stride) {
    if (stride == 0) stride = 1;
    std::vector<std::pair<std::uint64_t, std::size_t>> curve;
    std::uint64_t maker_total = 0;
    for (const Claim& c : trace.moves)
        if (c.player == Player::Maker) ++maker_total;
    ColourSequence s = ColourSequence::anti_diagonal();
    for (std::uint64_t h = stride; h <= maker_total; h += stride) {
        GameTrace prefix;
        prefix.config = trace.config;
        prefix.config.horizon = h;
        std::uint64_t seen = 0;
        for (const Claim& c : trace.moves) {
            prefix.moves.push_back(c);
            if (c.player == Player::Maker && ++seen == h) break;
        }
        CliqueChain chain;
        switch (variant) {
            case ChainVariant::Vanilla: chain = extract_chain_vanilla(prefix, k); break;
            case ChainVariant::FiniteColours: chain = extract_chain_finite(prefix, k); break;
            case ChainVariant::InfiniteColours:
                chain = extract_chain_infinite(prefix, s, s);
                break;
        }
        curve.emplace_back(h, chain.levels.size());
    }
    return curve;
}

} // namespace kaleph
