#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

// Vertex-precoloured infinite complete graph, edge claims, colourings.
// Vertices are the naturals; an edge exists between every pair, and is
// identified by its canonical (lo < hi) form.

namespace kaleph {

using VertexId = std::uint64_t;
using ColourId = std::uint64_t;
using EdgeIndex = std::uint64_t; // 1-based position in the fixed enumeration

enum class Player : std::uint8_t { Maker, Breaker };

const char* to_string(Player p); // "M" / "B"

struct Edge {
    VertexId lo = 0;
    VertexId hi = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo; // enumeration order
    }
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        std::uint64_t x = e.lo * 0x9e3779b97f4a7c15ull ^ (e.hi + 0x7f4a7c15u);
        x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27; x *= 0x94d049bb133111ebull;
        return static_cast<std::size_t>(x ^ (x >> 31));
    }
};

/// Orders the endpoints; loops are not edges.
Edge canonical_edge(VertexId u, VertexId v);

/// n-th edge (n >= 1) of the enumeration {0,1},{0,2},{1,2},{0,3},...:
/// pairs (u,v) with u < v sorted lexicographically by (v,u).
Edge edge_enumeration(EdgeIndex n);

/// Inverse of edge_enumeration.
EdgeIndex edge_index(const Edge& e);

struct Claim {
    Edge edge;
    Player player = Player::Maker;
    std::uint32_t turn = 0; // 1-based, contiguous
    friend bool operator==(const Claim&, const Claim&) = default;
};

struct IllegalMove : std::runtime_error {
    Claim prior; // who already owns the contested edge
    IllegalMove(const std::string& what, Claim prior_claim)
        : std::runtime_error(what), prior(prior_claim) {}
};

struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ----------------------------------------------------------------------------
// Colouring: total map vertex -> colour with every colour class infinite.

class Colouring {
public:
    enum class Kind : std::uint8_t { ModK, Diagonal, Table };

    static Colouring mod_k(std::uint64_t k);
    static Colouring diagonal();
    /// Finitely many explicit overrides on top of a ModK/Diagonal fallback.
    /// Override colours must lie in the fallback's image so that every
    /// class stays infinite.
    static Colouring table(std::map<VertexId, ColourId> overrides, Colouring fallback);

    ColourId colour_of(VertexId v) const;

    /// Smallest member of a colour class that is >= from. Throws if the
    /// class is empty (colour outside the palette).
    VertexId class_member_at_least(ColourId c, VertexId from) const;

    Kind kind() const { return kind_; }
    /// Number of colours for finite palettes (ModK or Table over ModK).
    std::optional<std::uint64_t> palette_size() const;
    const std::map<VertexId, ColourId>& overrides() const { return overrides_; }
    Kind fallback_kind() const { return fallback_kind_; }
    std::uint64_t fallback_k() const { return k_; }

    friend bool operator==(const Colouring&, const Colouring&) = default;

private:
    Colouring() = default;
    Kind kind_ = Kind::Diagonal;
    Kind fallback_kind_ = Kind::Diagonal; // for Table
    std::uint64_t k_ = 1;                 // for ModK (and Table over ModK)
    std::map<VertexId, ColourId> overrides_;

    ColourId base_colour(VertexId v) const;
    VertexId base_member_at_least(ColourId c, VertexId from) const;
};

// ----------------------------------------------------------------------------
// ClaimLedger: append-only record of claims with fast lookups.

class ClaimLedger {
public:
    /// Appends a claim. Rejects already-claimed edges (IllegalMove naming
    /// the prior claimant) and non-contiguous turn numbers (ProtocolError).
    void claim(Edge e, Player p, std::uint32_t turn);

    bool is_claimed(const Edge& e) const;
    std::optional<Claim> claim_on(const Edge& e) const;

    /// Neighbours of v in the claimant's subgraph, in claim order.
    std::span<const VertexId> neighbours(Player p, VertexId v) const;
    std::size_t degree(Player p, VertexId v) const;

    /// True if some claim of either player touches v.
    bool touched(VertexId v) const { return touched_.count(v) != 0; }

    /// Smallest vertex with no incident claim.
    VertexId smallest_fresh() const;
    /// Smallest fresh vertex in the given colour class.
    VertexId smallest_fresh(const Colouring& col, ColourId c) const;

    /// Smallest unclaimed edge in enumeration order, skipping `taken`.
    Edge smallest_unclaimed(const std::unordered_set<Edge, EdgeHash>& taken = {}) const;

    const std::vector<Claim>& claims() const { return claims_; }
    std::uint32_t next_turn() const { return static_cast<std::uint32_t>(claims_.size()) + 1; }
    std::size_t size() const { return claims_.size(); }

private:
    std::vector<Claim> claims_;
    std::unordered_map<Edge, std::uint32_t, EdgeHash> by_edge_; // edge -> claim idx
    std::unordered_map<VertexId, std::vector<VertexId>> adj_[2];
    std::unordered_set<VertexId> touched_;
};

} // namespace kaleph
