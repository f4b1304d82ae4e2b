#pragma once

#include <random>

#include "kaleph/engine.hpp"

// Breaker strategies and scripted adversaries. Breaker blocks are always
// padded to the full allowance with filler (smallest unclaimed edge).

namespace kaleph {

// ----------------------------------------------------------------------------
// PairingTable: greedy colour table over the fixed edge enumeration.
// Entry m pairs the edges {v, x} / {v, y} for e_m = {x, y} and every
// vertex v of colour c_m. The two greedy rules (fresh colour; colour
// absent from all endpoints so far) force the chosen colours to be
// strictly increasing, which makes colour -> index inversion decidable.

class PairingTable {
public:
    /// Throws if the board has a finite palette (pairing needs a fresh
    /// colour per edge forever).
    explicit PairingTable(Colouring colouring);

    ColourId colour_at(EdgeIndex m);
    /// The unique m with c_m == q, if q was ever picked.
    std::optional<EdgeIndex> index_of_colour(ColourId q);

    /// The other edge of the pair containing f, if f lies in a pair.
    std::optional<Edge> partner_of(const Edge& f);

    /// First `count` pairs in diagonal order over (table entry, class
    /// member). Each pair is ({v,x},{v,y}) with both edges canonical.
    std::vector<std::pair<Edge, Edge>> generate_pairs(std::size_t count);

    std::size_t built() const { return colours_.size(); }
    const Colouring& colouring() const { return col_; }

private:
    void build_to(std::size_t steps);
    Colouring col_;
    std::vector<ColourId> colours_; // strictly increasing
    std::unordered_set<ColourId> endpoint_colours_;
    ColourId cand_ = 0;
};

// Answers each Maker claim with its pair partner, filler otherwise.
class PairingBreaker : public Strategy {
public:
    explicit PairingBreaker(Colouring colouring) : table_(std::move(colouring)) {}
    std::string_view name() const override { return "pairing"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;
    /// Times the partner of a fresh Maker claim was already Maker-owned.
    /// Unreachable when this strategy answered every Maker move; counted
    /// so the suite can assert it stayed zero.
    std::size_t partner_faults() const { return partner_faults_; }
    PairingTable& table() { return table_; }

private:
    PairingTable table_;
    std::size_t partner_faults_ = 0;
};

// Growing-bias obstruction: for the i-th enumerated edge (i up to the
// allowance), keep the 4-vertex subgraph spanned by it and Maker's last
// claim from staying open.
class UnboundedBiasBreaker : public Strategy {
public:
    std::string_view name() const override { return "unbounded-bias"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;
};

// Claims far-away edges only (both endpoints >= offset).
class PassiveAdversary : public Strategy {
public:
    explicit PassiveAdversary(VertexId offset = 1000) : offset_(offset) {}
    std::string_view name() const override { return "passive"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;

private:
    VertexId offset_;
    EdgeIndex next_ = 1;
};

// Uniform choice from the sliding window of the lowest unclaimed edges.
class RandomAdversary : public Strategy {
public:
    explicit RandomAdversary(std::uint64_t seed, std::size_t window = 64);
    std::string_view name() const override { return "random"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;

private:
    std::mt19937_64 rng_;
    std::size_t window_;
};

// Cuts the newest Maker vertex off from the largest Maker clique it can see.
class GreedyBlocker : public Strategy {
public:
    std::string_view name() const override { return "greedy-blocker"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;

private:
    std::vector<VertexId> maker_order_; // first-touch order
    std::unordered_set<VertexId> seen_;
    std::size_t cursor_ = 0;
};

/// Smallest unclaimed canonical edges, skipping `taken`; appends until
/// `edges` holds `allowance` entries.
void pad_with_filler(const ClaimLedger& ledger, std::vector<Edge>& edges, std::uint64_t allowance);

/// Last Maker claim in the ledger, if any.
std::optional<Edge> last_maker_edge(const ClaimLedger& ledger);

} // namespace kaleph
