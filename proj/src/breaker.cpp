#include "kaleph/breaker.hpp"

#include <algorithm>

namespace kaleph {

void pad_with_filler(const ClaimLedger& ledger, std::vector<Edge>& edges, std::uint64_t allowance) {
    std::unordered_set<Edge, EdgeHash> taken(edges.begin(), edges.end());
    while (edges.size() < allowance) {
        Edge e = ledger.smallest_unclaimed(taken);
        edges.push_back(e);
        taken.insert(e);
    }
}

std::optional<Edge> last_maker_edge(const ClaimLedger& ledger) {
    const auto& claims = ledger.claims();
    for (auto it = claims.rbegin(); it != claims.rend(); ++it)
        if (it->player == Player::Maker) return it->edge;
    return std::nullopt;
}

// ----------------------------------------------------------------------------
// PairingTable

PairingTable::PairingTable(Colouring colouring) : col_(std::move(colouring)) {
    if (col_.palette_size())
        throw std::invalid_argument("pairing: board must carry infinitely many colours");
}

void PairingTable::build_to(std::size_t steps) {
    while (colours_.size() < steps) {
        EdgeIndex i = colours_.size() + 1;
        Edge e = edge_enumeration(i);
        endpoint_colours_.insert(col_.colour_of(e.lo));
        endpoint_colours_.insert(col_.colour_of(e.hi));
        while (endpoint_colours_.count(cand_)) ++cand_;
        colours_.push_back(cand_++);
    }
}

ColourId PairingTable::colour_at(EdgeIndex m) {
    if (m == 0) throw std::invalid_argument("colour_at: index is 1-based");
    build_to(m);
    return colours_[m - 1];
}

std::optional<EdgeIndex> PairingTable::index_of_colour(ColourId q) {
    // strictly increasing colours with c_m >= m-1: if q is ever picked,
    // it is picked by step q+1
    build_to(static_cast<std::size_t>(q) + 2);
    auto it = std::lower_bound(colours_.begin(), colours_.end(), q);
    if (it != colours_.end() && *it == q)
        return static_cast<EdgeIndex>(it - colours_.begin()) + 1;
    return std::nullopt;
}

std::optional<Edge> PairingTable::partner_of(const Edge& f) {
    std::optional<Edge> found;
    for (auto [v, x] : {std::pair{f.lo, f.hi}, std::pair{f.hi, f.lo}}) {
        // f = {v, x} belongs to entry m iff c_m = c(v) and x is an
        // endpoint of e_m; the partner joins v to the other endpoint.
        auto m = index_of_colour(col_.colour_of(v));
        if (!m) continue;
        Edge em = edge_enumeration(*m);
        if (em.lo != x && em.hi != x) continue;
        Edge partner = canonical_edge(v, em.lo == x ? em.hi : em.lo);
        if (found && !(partner == *found))
            throw std::logic_error("pairing: edge lies in two pairs");
        found = partner;
    }
    return found;
}

std::vector<std::pair<Edge, Edge>> PairingTable::generate_pairs(std::size_t count) {
    std::vector<std::pair<Edge, Edge>> out;
    out.reserve(count);
    for (std::uint64_t diag = 2; out.size() < count; ++diag) {
        for (std::uint64_t m = 1; m < diag && out.size() < count; ++m) {
            std::uint64_t t = diag - m; // t-th member of the entry's class
            Edge em = edge_enumeration(m);
            ColourId cm = colour_at(m);
            VertexId v = col_.class_member_at_least(cm, 0);
            for (std::uint64_t j = 1; j < t; ++j) v = col_.class_member_at_least(cm, v + 1);
            out.emplace_back(canonical_edge(v, em.lo), canonical_edge(v, em.hi));
        }
    }
    return out;
}

std::vector<Edge> PairingBreaker::next_moves(const GameView& view, std::uint64_t allowance) {
    std::vector<Edge> edges;
    if (auto e = last_maker_edge(view.ledger)) {
        if (auto partner = table_.partner_of(*e)) {
            if (auto prior = view.ledger.claim_on(*partner)) {
                if (prior->player == Player::Maker) {
                    ++partner_faults_;
                    throw StrategyFault(std::string(name()), view.ledger.next_turn(),
                                        "pair partner already Maker-owned");
                }
                // partner secured earlier (filler); nothing to answer
            } else {
                edges.push_back(*partner);
            }
        }
    }
    pad_with_filler(view.ledger, edges, allowance);
    return edges;
}

// ----------------------------------------------------------------------------
// UnboundedBiasBreaker

std::vector<Edge> UnboundedBiasBreaker::next_moves(const GameView& view, std::uint64_t allowance) {
    std::vector<Edge> edges;
    std::unordered_set<Edge, EdgeHash> taken;
    if (auto last = last_maker_edge(view.ledger)) {
        for (EdgeIndex i = 1; i <= allowance; ++i) {
            Edge ei = edge_enumeration(i);
            VertexId q[4] = {last->lo, last->hi, ei.lo, ei.hi};
            std::sort(q, q + 4);
            auto* uniq_end = std::unique(q, q + 4);
            // smallest open edge of the spanned subgraph, if any
            std::optional<Edge> best;
            for (auto* a = q; a != uniq_end; ++a)
                for (auto* b = q; b != a; ++b) {
                    Edge e = canonical_edge(*a, *b);
                    if (view.ledger.is_claimed(e) || taken.count(e)) continue;
                    if (!best || e < *best) best = e;
                }
            if (best) {
                edges.push_back(*best);
                taken.insert(*best);
            }
        }
    }
    pad_with_filler(view.ledger, edges, allowance);
    return edges;
}

// ----------------------------------------------------------------------------
// PassiveAdversary

std::vector<Edge> PassiveAdversary::next_moves(const GameView& view, std::uint64_t allowance) {
    std::vector<Edge> edges;
    while (edges.size() < allowance) {
        Edge e = edge_enumeration(next_++);
        e = Edge{e.lo + offset_, e.hi + offset_};
        if (view.ledger.is_claimed(e)) continue;
        edges.push_back(e);
    }
    return edges;
}

// ----------------------------------------------------------------------------
// RandomAdversary

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
} // namespace

RandomAdversary::RandomAdversary(std::uint64_t seed, std::size_t window)
    : rng_(splitmix64(seed)), window_(window) {
    if (window_ == 0) throw std::invalid_argument("random: window must be positive");
}

std::vector<Edge> RandomAdversary::next_moves(const GameView& view, std::uint64_t allowance) {
    std::vector<Edge> edges;
    std::unordered_set<Edge, EdgeHash> taken;
    while (edges.size() < allowance) {
        std::vector<Edge> window;
        for (EdgeIndex i = 1; window.size() < window_; ++i) {
            Edge e = edge_enumeration(i);
            if (view.ledger.is_claimed(e) || taken.count(e)) continue;
            window.push_back(e);
        }
        Edge pick = window[rng_() % window.size()];
        edges.push_back(pick);
        taken.insert(pick);
    }
    return edges;
}

// ----------------------------------------------------------------------------
// GreedyBlocker

std::vector<Edge> GreedyBlocker::next_moves(const GameView& view, std::uint64_t allowance) {
    const auto& claims = view.ledger.claims();
    for (; cursor_ < claims.size(); ++cursor_) {
        const Claim& c = claims[cursor_];
        if (c.player != Player::Maker) continue;
        for (VertexId v : {c.edge.lo, c.edge.hi})
            if (seen_.insert(v).second) maker_order_.push_back(v);
    }
    std::vector<Edge> edges;
    if (!maker_order_.empty()) {
        auto maker_adjacent = [&](VertexId a, VertexId b) {
            auto claim = view.ledger.claim_on(canonical_edge(a, b));
            return claim && claim->player == Player::Maker;
        };
        std::vector<VertexId> clique;
        for (VertexId v : maker_order_) {
            bool ok = true;
            for (VertexId u : clique)
                if (!maker_adjacent(u, v)) { ok = false; break; }
            if (ok) clique.push_back(v);
        }
        VertexId newest = maker_order_.back();
        std::unordered_set<Edge, EdgeHash> taken;
        for (VertexId u : clique) {
            if (edges.size() >= allowance) break;
            if (u == newest) continue;
            Edge e = canonical_edge(newest, u);
            if (view.ledger.is_claimed(e) || taken.count(e)) continue;
            edges.push_back(e);
            taken.insert(e);
        }
    }
    pad_with_filler(view.ledger, edges, allowance);
    return edges;
}

} // namespace kaleph
