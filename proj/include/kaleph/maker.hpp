#pragma once

#include <functional>
#include <optional>

#include "kaleph/bitset.hpp"
#include "kaleph/engine.hpp"

// Maker strategies: clique growth on a precoloured board. Each strategy
// keeps an incremental view of Maker's subgraph (introduction order,
// per-vertex connection order, neighbourhood bitsets) synced from the
// ledger, so decisions are pure functions of the game state.

namespace kaleph {

/// Order-preserving positions of a set of 1-based introduction indices:
/// result[p-1] is the p-th smallest index.
std::vector<std::uint32_t> rank_map(std::vector<std::uint32_t> indices);

/// Infinite colour supply for the infinite-colours strategy: a sequence
/// hitting every colour infinitely often.
class ColourSequence {
public:
    ColourSequence(std::string name, std::function<ColourId(std::uint64_t)> rule)
        : name_(std::move(name)), rule_(std::move(rule)) {}

    /// Blocks 0; 0,1; 0,1,2; ... flattened (1-based index).
    static ColourSequence anti_diagonal();

    ColourId at(std::uint64_t n) const { return rule_(n); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::function<ColourId(std::uint64_t)> rule_;
};

// ----------------------------------------------------------------------------
// MakerView: Maker's subgraph indexed by introduction order ("slots",
// 0-based; the 1-based introduction index is slot+1).

class MakerView {
public:
    std::size_t size() const { return verts_.size(); }
    VertexId vertex(std::size_t slot) const { return verts_[slot]; }
    std::optional<std::size_t> slot_of(VertexId v) const;
    /// Slots of the vertices Maker connected to this one, in claim order.
    const std::vector<std::uint32_t>& connections(std::size_t slot) const { return conn_[slot]; }
    const Bitset& nbrs(std::size_t slot) const { return adj_[slot]; }
    std::size_t degree(std::size_t slot) const { return conn_[slot].size(); }
    /// Slot of the vertex introduced last (== size()-1).
    std::size_t last_added() const { return verts_.size() - 1; }

    /// Absorbs one Maker claim. `first` names which endpoint of the very
    /// first edge becomes v_1 (defaults to the smaller endpoint).
    void absorb(const Edge& e, std::optional<VertexId> first = std::nullopt);

private:
    std::size_t add_vertex(VertexId v);
    std::vector<VertexId> verts_;
    std::unordered_map<VertexId, std::size_t> slot_;
    std::vector<std::vector<std::uint32_t>> conn_;
    std::vector<Bitset> adj_;
};

// ----------------------------------------------------------------------------

namespace detail {

// Ledger-sync plumbing shared by the Maker strategies.
class MakerBase : public Strategy {
public:
    explicit MakerBase(Colouring colouring) : colouring_(std::move(colouring)) {}
    const MoveNote* last_note() const override { return &note_; }
    const MakerView& view() const { return view_; }

protected:
    void sync(const ClaimLedger& ledger);
    virtual VertexId first_vertex_of(const Edge& opening) const { return opening.lo; }
    ColourId colour(std::size_t slot) const { return colours_[slot]; }
    std::size_t max_connection_slot(std::size_t slot) const;

    Colouring colouring_;
    MakerView view_;
    std::vector<ColourId> colours_; // per slot
    MoveNote note_;

private:
    std::size_t cursor_ = 0;
};

} // namespace detail

// ----------------------------------------------------------------------------
// Uncoloured strategy: connect the newest vertex to the earliest older
// vertex that dominates its neighbourhood, else open a fresh vertex.

class VanillaMaker : public detail::MakerBase {
public:
    explicit VanillaMaker(Colouring colouring) : MakerBase(std::move(colouring)) {}
    std::string_view name() const override { return "vanilla"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;
};

// ----------------------------------------------------------------------------
// Finite palette of k colours (ModK board): the j-th vertex Maker adds
// has colour j mod k, and extensions pick from a candidate set F of
// k*deg+1 colour-matched dominating vertices, ranked by how little they
// touch the anchor set K.

class FiniteColoursMaker : public detail::MakerBase {
public:
    FiniteColoursMaker(Colouring colouring, std::uint64_t k);
    std::string_view name() const override { return "finite-colours"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;

private:
    VertexId first_vertex_of(const Edge& opening) const override;
    std::uint64_t k_;
};

// ----------------------------------------------------------------------------
// Infinitely many colours: fresh vertices follow the colour supply S; the
// target colour of an extension is read off the twin set U (vertices
// whose connection history matches the newest vertex).

class InfiniteColoursMaker : public detail::MakerBase {
public:
    InfiniteColoursMaker(Colouring colouring, ColourSequence s);
    std::string_view name() const override { return "infinite-colours"; }
    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override;

private:
    VertexId first_vertex_of(const Edge& opening) const override;
    ColourSequence s_;
};

// Exposed for tests: ranking tuple order for extension candidates,
// (anchor overlap, introduction index) lexicographic.
bool candidate_rank_less(std::pair<std::uint64_t, std::uint32_t> a,
                         std::pair<std::uint64_t, std::uint32_t> b);

} // namespace kaleph
