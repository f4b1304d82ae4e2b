#include "kaleph/board.hpp"

#include <algorithm>
#include <cmath>

namespace kaleph {

const char* to_string(Player p) { return p == Player::Maker ? "M" : "B"; }

Edge canonical_edge(VertexId u, VertexId v) {
    if (u == v) throw std::invalid_argument("canonical_edge: loop at vertex " + std::to_string(u));
    return u < v ? Edge{u, v} : Edge{v, u};
}

Edge edge_enumeration(EdgeIndex n) {
    if (n == 0) throw std::invalid_argument("edge_enumeration: index is 1-based");
    // hi(hi-1)/2 < n <= hi(hi+1)/2
    auto hi = static_cast<VertexId>((1.0 + std::sqrt(8.0 * static_cast<double>(n) - 7.0)) / 2.0);
    while (hi * (hi - 1) / 2 >= n) --hi;
    while (hi * (hi + 1) / 2 < n) ++hi;
    VertexId lo = static_cast<VertexId>(n - 1 - hi * (hi - 1) / 2);
    return Edge{lo, hi};
}

EdgeIndex edge_index(const Edge& e) {
    return e.hi * (e.hi - 1) / 2 + e.lo + 1;
}

// ----------------------------------------------------------------------------
// Colouring

Colouring Colouring::mod_k(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("mod_k: k must be positive");
    Colouring c;
    c.kind_ = Kind::ModK;
    c.k_ = k;
    return c;
}

Colouring Colouring::diagonal() {
    Colouring c;
    c.kind_ = Kind::Diagonal;
    return c;
}

Colouring Colouring::table(std::map<VertexId, ColourId> overrides, Colouring fallback) {
    if (fallback.kind_ == Kind::Table)
        throw std::invalid_argument("table: fallback must be ModK or Diagonal");
    for (const auto& [v, col] : overrides)
        if (fallback.kind_ == Kind::ModK && col >= fallback.k_)
            throw std::invalid_argument("table: override colour " + std::to_string(col) +
                                        " outside the fallback palette");
    Colouring c;
    c.kind_ = Kind::Table;
    c.fallback_kind_ = fallback.kind_;
    c.k_ = fallback.k_;
    c.overrides_ = std::move(overrides);
    return c;
}

ColourId Colouring::base_colour(VertexId v) const {
    if ((kind_ == Kind::Table ? fallback_kind_ : kind_) == Kind::ModK) return v % k_;
    // diagonal: v = s(s+1)/2 + i with s maximal, colour i
    auto s = static_cast<VertexId>((std::sqrt(8.0 * static_cast<double>(v) + 1.0) - 1.0) / 2.0);
    while (s * (s + 1) / 2 > v) --s;
    while ((s + 1) * (s + 2) / 2 <= v) ++s;
    return v - s * (s + 1) / 2;
}

ColourId Colouring::colour_of(VertexId v) const {
    if (kind_ == Kind::Table) {
        auto it = overrides_.find(v);
        if (it != overrides_.end()) return it->second;
    }
    return base_colour(v);
}

VertexId Colouring::base_member_at_least(ColourId c, VertexId from) const {
    if ((kind_ == Kind::Table ? fallback_kind_ : kind_) == Kind::ModK) {
        if (c >= k_) throw std::invalid_argument("class_member_at_least: empty colour class");
        return from + (c + k_ - from % k_) % k_;
    }
    // diagonal class c = { s(s+1)/2 + c : s >= c }
    VertexId s = c;
    while (s * (s + 1) / 2 + c < from) ++s;
    return s * (s + 1) / 2 + c;
}

VertexId Colouring::class_member_at_least(ColourId c, VertexId from) const {
    if (kind_ != Kind::Table) return base_member_at_least(c, from);
    // merge fallback members (minus overridden vertices) with override members
    std::optional<VertexId> best;
    for (const auto& [v, col] : overrides_)
        if (col == c && v >= from && (!best || v < *best)) best = v;
    VertexId x = from;
    while (true) {
        x = base_member_at_least(c, x);
        if (!overrides_.count(x)) break;
        ++x; // overridden away from its base colour
    }
    return best && *best < x ? *best : x;
}

std::optional<std::uint64_t> Colouring::palette_size() const {
    if (kind_ == Kind::ModK || (kind_ == Kind::Table && fallback_kind_ == Kind::ModK))
        return k_;
    return std::nullopt;
}

// ----------------------------------------------------------------------------
// ClaimLedger

void ClaimLedger::claim(Edge e, Player p, std::uint32_t turn) {
    if (e.lo >= e.hi)
        throw ProtocolError("claim: edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                            ") is not canonical");
    if (turn != next_turn())
        throw ProtocolError("claim: turn " + std::to_string(turn) + " is not contiguous (expected " +
                            std::to_string(next_turn()) + ")");
    auto it = by_edge_.find(e);
    if (it != by_edge_.end()) {
        const Claim& prior = claims_[it->second];
        throw IllegalMove("edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                              ") claimed by " + to_string(prior.player) + " at turn " +
                              std::to_string(prior.turn),
                          prior);
    }
    by_edge_.emplace(e, static_cast<std::uint32_t>(claims_.size()));
    claims_.push_back(Claim{e, p, turn});
    auto& adj = adj_[static_cast<int>(p)];
    adj[e.lo].push_back(e.hi);
    adj[e.hi].push_back(e.lo);
    touched_.insert(e.lo);
    touched_.insert(e.hi);
}

bool ClaimLedger::is_claimed(const Edge& e) const { return by_edge_.count(e) != 0; }

std::optional<Claim> ClaimLedger::claim_on(const Edge& e) const {
    auto it = by_edge_.find(e);
    if (it == by_edge_.end()) return std::nullopt;
    return claims_[it->second];
}

std::span<const VertexId> ClaimLedger::neighbours(Player p, VertexId v) const {
    const auto& adj = adj_[static_cast<int>(p)];
    auto it = adj.find(v);
    if (it == adj.end()) return {};
    return it->second;
}

std::size_t ClaimLedger::degree(Player p, VertexId v) const { return neighbours(p, v).size(); }

VertexId ClaimLedger::smallest_fresh() const {
    VertexId v = 0;
    while (touched(v)) ++v;
    return v;
}

VertexId ClaimLedger::smallest_fresh(const Colouring& col, ColourId c) const {
    VertexId v = col.class_member_at_least(c, 0);
    while (touched(v)) v = col.class_member_at_least(c, v + 1);
    return v;
}

Edge ClaimLedger::smallest_unclaimed(const std::unordered_set<Edge, EdgeHash>& taken) const {
    for (EdgeIndex n = 1;; ++n) {
        Edge e = edge_enumeration(n);
        if (!is_claimed(e) && !taken.count(e)) return e;
    }
}

} // namespace kaleph
