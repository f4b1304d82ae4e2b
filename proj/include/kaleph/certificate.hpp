#pragma once

#include <map>

#include "kaleph/breaker.hpp"
#include "kaleph/maker.hpp"

// Certificates: nested clique chains with witness sets extracted from a
// trace, an independent invariant checker, a brute-force clique oracle,
// and the pairing guarantee audit.

namespace kaleph {

enum class ChainVariant : std::uint8_t { Vanilla, FiniteColours, InfiniteColours };

const char* to_string(ChainVariant v);

struct ChainLevel {
    std::vector<VertexId> clique;    // in the order vertices joined
    std::vector<VertexId> witnesses; // fully-joined supporters, ascending intro order
    std::vector<ColourId> pool;      // tracked colour pool (infinite variant), sorted
    bool pool_tracked = false;
    bool surrogate_bound = false; // eligibility filtering overrode the raw support argmax
};

struct CliqueChain {
    ChainVariant variant = ChainVariant::Vanilla;
    std::vector<ChainLevel> levels;
};

/// Chain growth levels 1..: level 1 is ({v_1}, all later Maker
/// vertices); each step picks the candidate (among the first bias_k*n+1
/// vertices fully Maker-joined to the clique, fewer near the horizon)
/// whose selection keeps the most witnesses alive. Witnesses whose next
/// connection is not yet on the board at the horizon stay tracked as
/// pending. Stops when no candidate or no witness evidence remains.
CliqueChain extract_chain_vanilla(const GameTrace& trace, std::uint64_t bias_k = 1);

/// As vanilla, but level n+1 must use colour (n+1) mod k, F holds k*n+1
/// candidates, and the chosen vertex needs supporters in every colour
/// class still represented among the tracked witnesses.
CliqueChain extract_chain_finite(const GameTrace& trace, std::uint64_t k);

/// Infinite palette: target colours walk C_hat restricted to the tracked
/// pool; F holds (|colours(clique)|+2)*n+1 candidates; the chosen vertex
/// needs supporters covering the clique colours plus the target, ranked
/// by supporter colour diversity. Pools shrink monotonically.
CliqueChain extract_chain_infinite(const GameTrace& trace, const ColourSequence& s,
                                   const ColourSequence& c_hat);

struct VerifyParams {
    std::uint64_t k = 1;                // finite variant colour law
    std::optional<Colouring> colouring; // defaults to the trace header's
};

struct LevelReport {
    std::vector<VertexId> clique;
    std::vector<ColourId> colours; // clique colours
    std::size_t witness_count = 0;
    std::map<std::string, bool> checks;
    bool pass = true;
};

struct VerificationReport {
    std::string variant;
    std::size_t levels = 0;
    std::vector<LevelReport> per_level;
    std::vector<std::string> failures; // trace-global problems
    std::optional<std::size_t> first_failing_level;
    bool pass = true;
};

std::string dump_report(const VerificationReport& report);

/// Re-checks every chain invariant against a ledger rebuilt from the
/// trace (claims in file order, strictly increasing turns, legality
/// enforced): level sizes and nesting, cliques fully Maker-claimed,
/// witnesses fully joined with the clique as their first connections,
/// the colour law (finite), and clique colours inside the tracked pool
/// plus pool nesting (infinite).
VerificationReport verify_chain(const CliqueChain& chain, const GameTrace& trace,
                                const VerifyParams& params = {});

struct CliqueResult {
    std::size_t size = 0;
    std::vector<VertexId> members;
};

/// Exact maximum clique in the player's subgraph. Refuses more than
/// vertex_cap vertices (default and hard maximum 32).
CliqueResult brute_force_max_clique(const ClaimLedger& ledger, Player player,
                                    std::size_t vertex_cap = 32);
/// Same, restricted to the given vertices.
CliqueResult brute_force_max_clique(const ClaimLedger& ledger, Player player,
                                    std::span<const VertexId> verts, std::size_t vertex_cap = 32);

/// Audits a finished trace against the pairing table: no pair may end up
/// fully Maker-owned, and no claimed edge may lie in two pairs.
VerificationReport pairing_guarantee_check(const GameTrace& trace, PairingTable& table);

/// (maker moves, chain length) at every stride-th prefix of the trace.
std::vector<std::pair<std::uint64_t, std::size_t>> growth_curve(
    const GameTrace& trace, ChainVariant variant, std::uint64_t k = 1, std::uint64_t stride = 1);

/// Ledger from possibly hand-edited traces: claims applied in file
/// order, turn numbers must strictly increase, legality enforced.
ClaimLedger lenient_replay(const GameTrace& trace);

} // namespace kaleph
