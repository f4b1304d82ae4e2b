#include "kaleph/maker.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace kaleph {

std::vector<std::uint32_t> rank_map(std::vector<std::uint32_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

ColourSequence ColourSequence::anti_diagonal() {
    return ColourSequence("antidiagonal", [](std::uint64_t n) -> ColourId {
        if (n == 0) throw std::invalid_argument("colour sequence index is 1-based");
        // block b holds entries b(b-1)/2+1 .. b(b+1)/2, coloured 0..b-1
        auto b = static_cast<std::uint64_t>((1.0 + std::sqrt(8.0 * static_cast<double>(n) - 7.0)) / 2.0);
        while (b * (b - 1) / 2 >= n) --b;
        while (b * (b + 1) / 2 < n) ++b;
        return n - 1 - b * (b - 1) / 2;
    });
}

bool candidate_rank_less(std::pair<std::uint64_t, std::uint32_t> a,
                         std::pair<std::uint64_t, std::uint32_t> b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
}

// ----------------------------------------------------------------------------
// MakerView

std::optional<std::size_t> MakerView::slot_of(VertexId v) const {
    auto it = slot_.find(v);
    if (it == slot_.end()) return std::nullopt;
    return it->second;
}

std::size_t MakerView::add_vertex(VertexId v) {
    std::size_t s = verts_.size();
    verts_.push_back(v);
    slot_.emplace(v, s);
    conn_.emplace_back();
    adj_.emplace_back();
    return s;
}

void MakerView::absorb(const Edge& e, std::optional<VertexId> first) {
    auto a = slot_of(e.lo), b = slot_of(e.hi);
    std::size_t sa, sb;
    if (!a && !b) {
        VertexId v1 = first.value_or(e.lo);
        VertexId v2 = v1 == e.lo ? e.hi : e.lo;
        sa = add_vertex(v1);
        sb = add_vertex(v2);
    } else {
        sa = a ? *a : add_vertex(e.lo);
        sb = b ? *b : add_vertex(e.hi);
    }
    conn_[sa].push_back(static_cast<std::uint32_t>(sb));
    conn_[sb].push_back(static_cast<std::uint32_t>(sa));
    adj_[sa].set(sb);
    adj_[sb].set(sa);
}

// ----------------------------------------------------------------------------
// MakerBase

namespace detail {

void MakerBase::sync(const ClaimLedger& ledger) {
    const auto& claims = ledger.claims();
    for (; cursor_ < claims.size(); ++cursor_) {
        const Claim& c = claims[cursor_];
        if (c.player != Player::Maker) continue;
        if (view_.size() == 0)
            view_.absorb(c.edge, first_vertex_of(c.edge));
        else
            view_.absorb(c.edge);
        while (colours_.size() < view_.size())
            colours_.push_back(colouring_.colour_of(view_.vertex(colours_.size())));
    }
}

std::size_t MakerBase::max_connection_slot(std::size_t slot) const {
    std::size_t best = 0;
    for (auto s : view_.connections(slot)) best = std::max<std::size_t>(best, s);
    return best;
}

} // namespace detail

// ----------------------------------------------------------------------------
// VanillaMaker

std::vector<Edge> VanillaMaker::next_moves(const GameView& game, std::uint64_t) {
    sync(game.ledger);
    note_ = MoveNote{};
    if (view_.size() == 0) {
        VertexId u = game.ledger.smallest_fresh();
        VertexId w = u + 1;
        while (game.ledger.touched(w)) ++w;
        note_.rule = MoveNote::Rule::Open;
        return {canonical_edge(u, w)};
    }
    std::size_t n = view_.last_added();
    for (std::size_t i = 0; i < n; ++i) {
        Edge e = canonical_edge(view_.vertex(i), view_.vertex(n));
        if (game.ledger.is_claimed(e)) continue;
        if (!view_.nbrs(n).subset_of(view_.nbrs(i))) continue;
        note_.rule = MoveNote::Rule::Extend;
        note_.candidate_pool = n;
        note_.pick_rank = i + 1; // introduction index of the partner
        return {e};
    }
    VertexId w = game.ledger.smallest_fresh();
    note_.rule = MoveNote::Rule::Fresh;
    return {canonical_edge(view_.vertex(0), w)};
}

// ----------------------------------------------------------------------------
// FiniteColoursMaker

FiniteColoursMaker::FiniteColoursMaker(Colouring colouring, std::uint64_t k)
    : MakerBase(std::move(colouring)), k_(k) {
    if (k_ == 0) throw std::invalid_argument("finite-colours: k must be positive");
    auto palette = colouring_.palette_size();
    if (!palette || *palette != k_)
        throw std::invalid_argument("finite-colours: board must carry exactly k colour classes");
}

VertexId FiniteColoursMaker::first_vertex_of(const Edge& opening) const {
    // colour law: v_1 has colour 1 mod k
    if (k_ >= 2 && colouring_.colour_of(opening.hi) == 1 % k_ &&
        colouring_.colour_of(opening.lo) != 1 % k_)
        return opening.hi;
    return opening.lo;
}

std::vector<Edge> FiniteColoursMaker::next_moves(const GameView& game, std::uint64_t) {
    sync(game.ledger);
    note_ = MoveNote{};
    if (view_.size() == 0) {
        VertexId v1 = game.ledger.smallest_fresh(colouring_, 1 % k_);
        VertexId v2 = colouring_.class_member_at_least(2 % k_, 0);
        while (game.ledger.touched(v2) || v2 == v1)
            v2 = colouring_.class_member_at_least(2 % k_, v2 + 1);
        note_.rule = MoveNote::Rule::Open;
        return {canonical_edge(v1, v2)};
    }

    std::size_t n = view_.last_added();
    std::uint64_t d = view_.degree(n);
    // the (d+1)-st connection fills position d+1 of the vertex's
    // connection sequence, so it must carry colour (d+1) mod k
    ColourId target = (d + 1) % k_;
    ColourId h = colour(n);
    std::size_t floor_slot = max_connection_slot(n);
    std::uint64_t need = k_ * d + 1;

    std::vector<std::size_t> F;
    for (std::size_t m = floor_slot + 1; m < n && F.size() < need; ++m) {
        if (colour(m) != target) continue;
        if (!view_.nbrs(n).subset_of(view_.nbrs(m))) continue;
        F.push_back(m);
    }

    auto fresh = [&](MoveNote::Rule rule) {
        ColourId c = (view_.size() + 1) % k_;
        VertexId w = game.ledger.smallest_fresh(colouring_, c);
        note_.rule = rule;
        note_.candidate_pool = F.size();
        return std::vector<Edge>{canonical_edge(view_.vertex(0), w)};
    };

    if (F.size() < need) return fresh(MoveNote::Rule::Fresh);

    Bitset anchors;
    std::size_t anchor_count = 0;
    for (std::size_t i = F.back() + 1; i <= n; ++i) {
        if (colour(i) != h) continue;
        if (!view_.nbrs(n).subset_of(view_.nbrs(i))) continue;
        anchors.set(i);
        ++anchor_count;
    }

    std::vector<std::pair<std::uint64_t, std::uint32_t>> ranked;
    ranked.reserve(F.size());
    for (std::size_t f : F)
        ranked.emplace_back(view_.nbrs(f).count_and(anchors), static_cast<std::uint32_t>(f));
    std::sort(ranked.begin(), ranked.end(), candidate_rank_less);

    for (std::size_t r = 0; r < ranked.size(); ++r) {
        std::size_t f = ranked[r].second;
        Edge e = canonical_edge(view_.vertex(f), view_.vertex(n));
        if (game.ledger.claim_on(e)) continue;
        note_.rule = MoveNote::Rule::Extend;
        note_.candidate_pool = F.size();
        note_.anchor_pool = anchor_count;
        note_.pick_rank = r + 1;
        return {e};
    }
    return fresh(MoveNote::Rule::FreshFallback);
}

// ----------------------------------------------------------------------------
// InfiniteColoursMaker

InfiniteColoursMaker::InfiniteColoursMaker(Colouring colouring, ColourSequence s)
    : MakerBase(std::move(colouring)), s_(std::move(s)) {
    if (colouring_.palette_size())
        throw std::invalid_argument("infinite-colours: board must carry infinitely many colours");
}

VertexId InfiniteColoursMaker::first_vertex_of(const Edge& opening) const {
    ColourId s1 = s_.at(1);
    if (colouring_.colour_of(opening.hi) == s1 && colouring_.colour_of(opening.lo) != s1)
        return opening.hi;
    return opening.lo;
}

std::vector<Edge> InfiniteColoursMaker::next_moves(const GameView& game, std::uint64_t) {
    sync(game.ledger);
    note_ = MoveNote{};
    if (view_.size() == 0) {
        VertexId v1 = game.ledger.smallest_fresh(colouring_, s_.at(1));
        VertexId v2 = colouring_.class_member_at_least(s_.at(2), 0);
        while (game.ledger.touched(v2) || v2 == v1)
            v2 = colouring_.class_member_at_least(s_.at(2), v2 + 1);
        note_.rule = MoveNote::Rule::Open;
        return {canonical_edge(v1, v2)};
    }

    std::size_t n = view_.last_added();
    std::uint64_t d = view_.degree(n);
    const auto& conn_n = view_.connections(n);
    std::size_t floor_slot = max_connection_slot(n);

    // twin set U: same connection history as the newest vertex
    std::vector<std::size_t> twins;
    std::size_t same_colour = 0;
    for (std::size_t u = floor_slot + 1; u <= n; ++u) {
        if (view_.degree(u) < d) continue;
        const auto& cu = view_.connections(u);
        if (!std::equal(conn_n.begin(), conn_n.end(), cu.begin())) continue;
        twins.push_back(u);
        if (colour(u) == colour(n)) ++same_colour;
    }
    ColourId target = colour(twins[same_colour - 1]); // twins ascending; newest is its own twin

    std::unordered_set<ColourId> seen;
    for (auto s : conn_n) seen.insert(colour(s));
    std::uint64_t need = (seen.size() + 2) * d + 1;

    std::vector<std::size_t> F;
    for (std::size_t m = floor_slot + 1; m < n && F.size() < need; ++m) {
        if (colour(m) != target) continue;
        if (!view_.nbrs(n).subset_of(view_.nbrs(m))) continue;
        F.push_back(m);
    }

    auto fresh = [&](MoveNote::Rule rule) {
        VertexId w = game.ledger.smallest_fresh(colouring_, s_.at(view_.size() + 1));
        note_.rule = rule;
        note_.candidate_pool = F.size();
        return std::vector<Edge>{canonical_edge(view_.vertex(0), w)};
    };

    if (F.size() < need) return fresh(MoveNote::Rule::Fresh);

    Bitset anchors;
    std::size_t anchor_count = 0;
    for (std::size_t i = F.back() + 1; i <= n; ++i) {
        if (colour(i) != colour(n)) continue;
        if (!view_.nbrs(n).subset_of(view_.nbrs(i))) continue;
        anchors.set(i);
        ++anchor_count;
    }

    std::vector<std::pair<std::uint64_t, std::uint32_t>> ranked;
    ranked.reserve(F.size());
    for (std::size_t f : F)
        ranked.emplace_back(view_.nbrs(f).count_and(anchors), static_cast<std::uint32_t>(f));
    std::sort(ranked.begin(), ranked.end(), candidate_rank_less);

    for (std::size_t r = 0; r < ranked.size(); ++r) {
        std::size_t f = ranked[r].second;
        Edge e = canonical_edge(view_.vertex(f), view_.vertex(n));
        if (game.ledger.claim_on(e)) continue;
        note_.rule = MoveNote::Rule::Extend;
        note_.candidate_pool = F.size();
        note_.anchor_pool = anchor_count;
        note_.pick_rank = r + 1;
        return {e};
    }
    return fresh(MoveNote::Rule::FreshFallback);
}

} // namespace kaleph
