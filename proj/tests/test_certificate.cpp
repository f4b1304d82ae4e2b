#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "json.hpp"
#include "kaleph/certificate.hpp"
#include "kaleph/strategies.hpp"

using namespace kaleph;

namespace {

GameTrace play(const std::string& maker, GameConfig cfg, const std::string& breaker = "passive") {
    auto m = make_maker(maker, cfg);
    auto b = make_breaker(breaker, cfg);
    return run_game(cfg, *m, *b);
}

std::vector<std::vector<VertexId>> cliques_of(const CliqueChain& chain) {
    std::vector<std::vector<VertexId>> out;
    for (const ChainLevel& l : chain.levels) out.push_back(l.clique);
    return out;
}

// exhaustive subset scan, the independent answer for small graphs
std::size_t oracle_max_clique(const ClaimLedger& ledger, Player p) {
    std::vector<VertexId> verts;
    for (const Claim& c : ledger.claims()) {
        if (c.player != p) continue;
        for (VertexId v : {c.edge.lo, c.edge.hi})
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    REQUIRE(verts.size() <= 20);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << verts.size()); ++mask) {
        std::vector<VertexId> subset;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (mask & (1u << i)) subset.push_back(verts[i]);
        bool clique = true;
        for (std::size_t i = 0; i < subset.size() && clique; ++i)
            for (std::size_t j = i + 1; j < subset.size() && clique; ++j) {
                auto claim = ledger.claim_on(canonical_edge(subset[i], subset[j]));
                clique = claim && claim->player == p;
            }
        if (clique) best = std::max(best, subset.size());
    }
    return best;
}

ClaimLedger random_maker_graph(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    ClaimLedger ledger;
    for (VertexId v = 1; v < n; ++v)
        for (VertexId u = 0; u < v; ++u)
            if (coin(rng)) ledger.claim({u, v}, Player::Maker, ledger.next_turn());
    return ledger;
}

} // namespace

TEST_CASE("brute-force clique search matches the subset-scan oracle") {
    struct Cell {
        std::size_t n;
        double p;
        std::uint64_t seed;
    };
    for (const Cell& cell : {Cell{8, 0.5, 1}, Cell{12, 0.3, 2}, Cell{14, 0.6, 3},
                             Cell{16, 0.15, 4}, Cell{16, 0.8, 5}}) {
        ClaimLedger ledger = random_maker_graph(cell.n, cell.p, cell.seed);
        CliqueResult got = brute_force_max_clique(ledger, Player::Maker);
        CHECK(got.size == oracle_max_clique(ledger, Player::Maker));
        CHECK(got.members.size() == got.size);
        for (std::size_t i = 0; i < got.members.size(); ++i)
            for (std::size_t j = i + 1; j < got.members.size(); ++j) {
                auto claim = ledger.claim_on(canonical_edge(got.members[i], got.members[j]));
                REQUIRE(claim);
                CHECK(claim->player == Player::Maker);
            }
    }

    ClaimLedger empty;
    CHECK(brute_force_max_clique(empty, Player::Maker).size == 0);
    ClaimLedger one;
    one.claim({3, 9}, Player::Maker, 1);
    CHECK(brute_force_max_clique(one, Player::Maker).size == 2);
    CHECK(brute_force_max_clique(one, Player::Breaker).size == 0);
}

TEST_CASE("brute-force clique search enforces its vertex cap") {
    ClaimLedger wide;
    for (VertexId i = 0; i < 33; ++i) wide.claim({i, 100 + i}, Player::Maker, wide.next_turn());
    CHECK_THROWS_AS(brute_force_max_clique(wide, Player::Maker), std::invalid_argument);
    ClaimLedger small;
    small.claim({0, 1}, Player::Maker, 1);
    CHECK_THROWS_AS(brute_force_max_clique(small, Player::Maker, 40), std::invalid_argument);

    // the span overload only sees the listed vertices
    std::vector<VertexId> span = {0, 1, 2, 100, 101};
    CliqueResult r = brute_force_max_clique(wide, Player::Maker, span);
    CHECK(r.size == 2); // {0,100} or {1,101}
}

TEST_CASE("a short unobstructed game extracts the full nested chain") {
    GameConfig cfg;
    cfg.horizon = 7;
    GameTrace t = play("vanilla", cfg);
    CliqueChain chain = extract_chain_vanilla(t);
    REQUIRE(chain.levels.size() == 4);
    CHECK(cliques_of(chain) == std::vector<std::vector<VertexId>>{
                                   {0}, {0, 1}, {0, 1, 2}, {0, 1, 2, 3}});
    CHECK(chain.levels[0].witnesses == std::vector<VertexId>{1, 2, 3, 4});
    CHECK(chain.levels[1].witnesses == std::vector<VertexId>{2, 3});
    CHECK(chain.levels[2].witnesses == std::vector<VertexId>{3});
    CHECK(chain.levels[3].witnesses.empty());

    VerificationReport report = verify_chain(chain, t);
    CHECK(report.pass);
    CHECK(report.variant == "vanilla");
    CHECK(report.levels == 4);
    CHECK_FALSE(report.first_failing_level);
    for (const LevelReport& l : report.per_level) {
        CHECK(l.pass);
        for (const auto& [name, ok] : l.checks) {
            CAPTURE(name);
            CHECK(ok);
        }
    }

    std::string json = dump_report(report);
    auto j = nlohmann::json::parse(json);
    CHECK(j["variant"] == "vanilla");
    CHECK(j["levels"] == 4);
    CHECK(j["pass"] == true);
    CHECK(j["first_failing_level"].is_null());
    CHECK(j["per_level"].size() == 4);
}

TEST_CASE("a single maker edge yields the one-level chain") {
    GameConfig cfg;
    cfg.horizon = 1;
    GameTrace t = play("vanilla", cfg);
    CliqueChain chain = extract_chain_vanilla(t);
    REQUIRE(chain.levels.size() == 1);
    CHECK(chain.levels[0].clique == std::vector<VertexId>{0});
    CHECK(chain.levels[0].witnesses == std::vector<VertexId>{1});
    CHECK(verify_chain(chain, t).pass);
}

TEST_CASE("verification pinpoints a deleted edge") {
    GameConfig cfg;
    cfg.horizon = 7;
    GameTrace t = play("vanilla", cfg);
    CliqueChain chain = extract_chain_vanilla(t);

    SUBCASE("missing clique edge") {
        // dropping maker's {2,3} starves witness 3 at level 3 and breaks
        // the level-4 clique
        GameTrace bad = t;
        std::erase_if(bad.moves, [](const Claim& c) { return c.edge == Edge{2, 3}; });
        VerificationReport report = verify_chain(chain, bad);
        CHECK_FALSE(report.pass);
        REQUIRE(report.first_failing_level);
        CHECK(*report.first_failing_level == 3);
        CHECK_FALSE(report.per_level[2].checks.at("witness_first_connections"));
        CHECK_FALSE(report.per_level[3].checks.at("clique_claimed"));
    }

    SUBCASE("missing witness edge") {
        GameTrace bad = t;
        std::erase_if(bad.moves, [](const Claim& c) { return c.edge == Edge{0, 4}; });
        VerificationReport report = verify_chain(chain, bad);
        CHECK_FALSE(report.pass);
        REQUIRE(report.first_failing_level);
        CHECK(*report.first_failing_level == 1);
        CHECK_FALSE(report.per_level[0].checks.at("witness_first_connections"));
        CHECK(report.per_level[1].pass); // later levels never used vertex 4
    }

    SUBCASE("swapped levels break sizes and nesting") {
        CliqueChain bad = chain;
        std::swap(bad.levels[1], bad.levels[2]);
        VerificationReport report = verify_chain(bad, t);
        CHECK_FALSE(report.pass);
        REQUIRE(report.first_failing_level);
        CHECK(*report.first_failing_level == 2);
        bool size_or_nesting = !report.per_level[1].checks.at("level_size") ||
                               !report.per_level[1].checks.at("nesting");
        CHECK(size_or_nesting);
    }
}

TEST_CASE("finite-variant verification enforces the colour law") {
    GameConfig cfg;
    cfg.colouring = Colouring::mod_k(2);
    cfg.horizon = 20;
    GameTrace t = play("finite-colours", cfg);
    CliqueChain chain = extract_chain_finite(t, 2);
    REQUIRE(chain.levels.size() >= 2);

    VerifyParams params;
    params.k = 2;
    CHECK(verify_chain(chain, t, params).pass);

    // recolour the level-2 vertex into the wrong class
    VertexId second = chain.levels[1].clique[1];
    params.colouring = Colouring::table({{second, (cfg.colouring.colour_of(second) + 1) % 2}},
                                        Colouring::mod_k(2));
    VerificationReport report = verify_chain(chain, t, params);
    CHECK_FALSE(report.pass);
    REQUIRE(report.first_failing_level);
    CHECK(*report.first_failing_level == 2);
    CHECK_FALSE(report.per_level[1].checks.at("colour_law"));
}

TEST_CASE("one-class finite extraction collapses to vanilla") {
    GameConfig cfg;
    cfg.colouring = Colouring::mod_k(1);
    cfg.horizon = 30;
    cfg.seed = 5;
    for (const char* bk : {"passive", "random"}) {
        GameTrace t = play("finite-colours", cfg, bk);
        CliqueChain fin = extract_chain_finite(t, 1);
        CliqueChain van = extract_chain_vanilla(t);
        CHECK(cliques_of(fin) == cliques_of(van));
        REQUIRE(fin.levels.size() == van.levels.size());
        for (std::size_t i = 0; i < fin.levels.size(); ++i)
            CHECK(fin.levels[i].witnesses == van.levels[i].witnesses);
    }
}

TEST_CASE("infinite-variant chains keep nested colour pools") {
    GameConfig cfg;
    cfg.horizon = 40;
    GameTrace t = play("infinite-colours", cfg);
    ColourSequence s = ColourSequence::anti_diagonal();
    CliqueChain chain = extract_chain_infinite(t, s, s);
    REQUIRE(chain.levels.size() >= 2);
    VerificationReport report = verify_chain(chain, t);
    CHECK(report.pass);
    CHECK(report.variant == "infinite-colours");

    Colouring diag = Colouring::diagonal();
    for (std::size_t i = 0; i < chain.levels.size(); ++i) {
        const ChainLevel& l = chain.levels[i];
        CHECK(l.pool_tracked);
        CHECK(std::is_sorted(l.pool.begin(), l.pool.end()));
        for (VertexId v : l.clique)
            CHECK(std::count(l.pool.begin(), l.pool.end(), diag.colour_of(v)) > 0);
        if (i > 0)
            CHECK(std::includes(chain.levels[i - 1].pool.begin(), chain.levels[i - 1].pool.end(),
                                l.pool.begin(), l.pool.end()));
    }
}

TEST_CASE("pairing audit clears real games and flags a closed pair") {
    GameConfig cfg;
    cfg.horizon = 200;
    auto maker = make_maker("vanilla", cfg);
    PairingBreaker breaker(cfg.colouring);
    GameTrace t = run_game(cfg, *maker, breaker);
    VerificationReport ok = pairing_guarantee_check(t, breaker.table());
    CHECK(ok.pass);

    // hand-built maker triangle on {0,1,2}: entry 1 pairs {0,2}/{1,2}
    // through the colour-1 vertex 2, and maker owns e_1 as well
    GameTrace bad;
    bad.config = cfg;
    bad.moves = {{{0, 1}, Player::Maker, 1},
                 {{0, 2}, Player::Maker, 2},
                 {{1, 2}, Player::Maker, 3}};
    PairingTable table(cfg.colouring);
    VerificationReport report = pairing_guarantee_check(bad, table);
    CHECK_FALSE(report.pass);
    REQUIRE_FALSE(report.failures.empty());
    CHECK(report.failures[0].find("entry 1") != std::string::npos);
}

TEST_CASE("growth curves sample chain length per horizon prefix") {
    GameConfig cfg;
    cfg.horizon = 7;
    GameTrace t = play("vanilla", cfg);
    using Point = std::pair<std::uint64_t, std::size_t>;
    auto curve = growth_curve(t, ChainVariant::Vanilla);
    CHECK(curve == std::vector<Point>{{1, 1}, {2, 2}, {3, 2}, {4, 3}, {5, 3}, {6, 3}, {7, 4}});
    auto strided = growth_curve(t, ChainVariant::Vanilla, 1, 2);
    CHECK(strided == std::vector<Point>{{2, 2}, {4, 3}, {6, 3}});
}

TEST_CASE("lenient replay demands increasing turns and legal claims") {
    GameTrace t;
    t.moves = {{{0, 1}, Player::Maker, 1},
               {{5, 6}, Player::Breaker, 3},
               {{0, 2}, Player::Maker, 7}};
    ClaimLedger ledger = lenient_replay(t); // gaps are fine
    CHECK(ledger.size() == 3);
    CHECK(ledger.claim_on(Edge{0, 2})->player == Player::Maker);

    GameTrace stuck = t;
    stuck.moves[2].turn = 3;
    CHECK_THROWS_AS(lenient_replay(stuck), ProtocolError);

    GameTrace doubled = t;
    doubled.moves[2] = {{0, 1}, Player::Breaker, 9};
    CHECK_THROWS_AS(lenient_replay(doubled), IllegalMove);
}

TEST_CASE("extracted chains never exceed the exact clique number") {
    for (const char* maker : {"vanilla", "infinite-colours"}) {
        for (const char* bk : {"passive", "random"}) {
            GameConfig cfg;
            cfg.horizon = 25;
            cfg.seed = 8;
            GameTrace t = play(maker, cfg, bk);
            ColourSequence s = ColourSequence::anti_diagonal();
            CliqueChain chain = maker[0] == 'v' ? extract_chain_vanilla(t)
                                                : extract_chain_infinite(t, s, s);
            ClaimLedger ledger = lenient_replay(t);
            CliqueResult best = brute_force_max_clique(ledger, Player::Maker);
            CHECK(chain.levels.size() <= best.size);
            CHECK(chain.levels.size() >= 1);
        }
    }
}
