#pragma once

// Coloured graph domain types: finite complete graphs with a total edge
// colouring, lazily evaluated countable graphs, and half-graph (H-type)
// bipartite graphs.  Vertices are naturals; finite graphs use 0..n-1, lazy
// graphs use all of them with horizon-bounded queries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monopath {

using Vertex = std::uint64_t;
using Colour = int;

/// A graph usable by the verifier and neighbourhood queries: total colour
/// count, an edge-colour lookup (nullopt = non-edge), and a vertex-range test.
template <typename G>
concept ColouredGraph = requires(const G& g, Vertex u, Vertex v) {
    { g.colour_count() } -> std::convertible_to<Colour>;
    { g.edge_colour(u, v) } -> std::convertible_to<std::optional<Colour>>;
    { g.contains_vertex(v) } -> std::convertible_to<bool>;
};

/// Complete graph on vertices 0..n-1 with a total r-edge-colouring, stored on
/// unordered pairs (triangular array).  Small per-vertex sets of missing
/// edges model kappa-completeness at finite scale.
class FiniteColouredGraph {
public:
    FiniteColouredGraph(int n, int r) : n_(n), r_(r) {
        if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
        if (r < 1) throw std::invalid_argument("colour count must be >= 1");
        colours_.assign(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, -1);
        missing_.assign(static_cast<std::size_t>(n), {});
    }

    static FiniteColouredGraph from_function(int n, int r,
                                             const std::function<Colour(Vertex, Vertex)>& fn) {
        FiniteColouredGraph g(n, r);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.set_colour(u, v, fn(static_cast<Vertex>(u), static_cast<Vertex>(v)));
        return g;
    }

    int vertex_count() const { return n_; }
    Colour colour_count() const { return r_; }
    bool contains_vertex(Vertex v) const { return v < static_cast<Vertex>(n_); }

    void set_colour(Vertex u, Vertex v, Colour c) {
        if (c < 0 || c >= r_) throw std::invalid_argument("colour out of range");
        colours_[tri_index(u, v)] = static_cast<std::int16_t>(c);
    }

    /// Declare {u,v} a non-edge.  Kept symmetric.
    void set_missing(Vertex u, Vertex v) {
        tri_index(u, v); // range check
        colours_[tri_index(u, v)] = -1;
        add_missing(u, v);
        add_missing(v, u);
    }

    bool is_missing(Vertex u, Vertex v) const {
        const auto& m = missing_[static_cast<std::size_t>(u)];
        return std::binary_search(m.begin(), m.end(), v);
    }

    const std::vector<Vertex>& missing_of(Vertex v) const {
        if (!contains_vertex(v)) throw std::out_of_range("vertex out of range");
        return missing_[static_cast<std::size_t>(v)];
    }

    /// Colour of edge {u,v}; nullopt for self-pairs, out-of-range vertices and
    /// missing edges.  Symmetric by construction.
    std::optional<Colour> edge_colour(Vertex u, Vertex v) const {
        if (u == v || !contains_vertex(u) || !contains_vertex(v)) return std::nullopt;
        auto c = colours_[tri_index(u, v)];
        if (c < 0) return std::nullopt;
        return static_cast<Colour>(c);
    }

    /// True once every non-missing pair has been assigned a colour.
    bool totally_coloured() const {
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (colours_[tri_index(u, v)] < 0 && !is_missing(u, v)) return false;
        return true;
    }

    bool operator==(const FiniteColouredGraph& o) const {
        return n_ == o.n_ && r_ == o.r_ && colours_ == o.colours_ && missing_ == o.missing_;
    }

private:
    std::size_t tri_index(Vertex u, Vertex v) const {
        if (u == v) throw std::invalid_argument("self-pair has no colour");
        if (!contains_vertex(u) || !contains_vertex(v)) throw std::out_of_range("vertex out of range");
        if (u > v) std::swap(u, v);
        // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
        return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
    }

    void add_missing(Vertex u, Vertex v) {
        auto& m = missing_[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(m.begin(), m.end(), v);
        if (it == m.end() || *it != v) m.insert(it, v);
        if (m.size() >= static_cast<std::size_t>(n_))
            throw std::invalid_argument("missing set of a vertex must stay below n");
    }

    int n_;
    int r_;
    std::vector<std::int16_t> colours_;
    std::vector<std::vector<Vertex>> missing_;
};

/// Countable complete-ish graph given by a pure colour function on ordered
/// pairs u < v and a finite per-vertex non-neighbour set (omega-completeness).
///
/// `period`/`period_offset`, when set, promise that for every fixed u,
/// edge-ness and colour of {u,x} depend only on x mod period once
/// x >= max(u+1, period_offset), and that missing sets live below the offset.
/// The congruence-chain oracle relies on this hint; graphs without it (e.g.
/// seeded random colourings) are only decidable by the density oracle.
class LazyColouredGraph {
public:
    LazyColouredGraph(int r, std::function<Colour(Vertex, Vertex)> colour_fn)
        : r_(r), colour_fn_(std::move(colour_fn)) {
        if (r < 1) throw std::invalid_argument("colour count must be >= 1");
    }

    Colour colour_count() const { return r_; }
    bool contains_vertex(Vertex) const { return true; }

    std::optional<Colour> edge_colour(Vertex u, Vertex v) const {
        if (u == v) return std::nullopt;
        if (u > v) std::swap(u, v);
        if (missing_fn_ && (in_missing(u, v) || in_missing(v, u))) return std::nullopt;
        Colour c = colour_fn_(u, v);
        if (c < 0 || c >= r_) throw std::logic_error("colour_fn returned value out of range");
        return c;
    }

    void set_missing_fn(std::function<std::vector<Vertex>(Vertex)> fn) { missing_fn_ = std::move(fn); }
    std::vector<Vertex> missing_of(Vertex v) const { return missing_fn_ ? missing_fn_(v) : std::vector<Vertex>{}; }

    void set_period_hint(std::uint64_t period, std::uint64_t offset) {
        period_ = period;
        period_offset_ = offset;
    }
    std::optional<std::uint64_t> period_hint() const { return period_; }
    std::uint64_t period_offset() const { return period_offset_; }

    void set_name(std::string name) { name_ = std::move(name); }
    const std::string& name() const { return name_; }

private:
    bool in_missing(Vertex key, Vertex probe) const {
        auto m = missing_fn_(key);
        return std::find(m.begin(), m.end(), probe) != m.end();
    }

    int r_;
    std::function<Colour(Vertex, Vertex)> colour_fn_;
    std::function<std::vector<Vertex>(Vertex)> missing_fn_;
    std::optional<std::uint64_t> period_;
    std::uint64_t period_offset_ = 0;
    std::string name_;
};

/// Half-graph-type graph: two injective enumerations a_xi, b_zeta with an edge
/// a_xi -- b_zeta exactly when xi <= zeta and the vertices differ.  `disjoint`
/// is the genuine bipartite H_{omega,omega}; `identified` lets the classes
/// share vertices (a complete graph is H-type with a_n = b_n = n).
class HTypeGraph {
public:
    enum class Kind { disjoint, identified };

    /// Standard disjoint embedding a_xi = 2*xi, b_zeta = 2*zeta + 1.
    static HTypeGraph disjoint_standard(int r = 1,
                                        std::function<Colour(std::uint64_t, std::uint64_t)> cross = {}) {
        HTypeGraph h;
        h.kind_ = Kind::disjoint;
        h.r_ = r;
        h.a_enum_ = [](std::uint64_t xi) { return 2 * xi; };
        h.b_enum_ = [](std::uint64_t zeta) { return 2 * zeta + 1; };
        h.a_index_ = [](Vertex v) -> std::optional<std::uint64_t> {
            if (v % 2 == 0) return v / 2;
            return std::nullopt;
        };
        h.b_index_ = [](Vertex v) -> std::optional<std::uint64_t> {
            if (v % 2 == 1) return (v - 1) / 2;
            return std::nullopt;
        };
        h.cross_ = cross ? std::move(cross) : [](std::uint64_t, std::uint64_t) { return 0; };
        return h;
    }

    /// Arbitrary injective enumerations with their inverses.
    static HTypeGraph custom(Kind kind, int r,
                             std::function<Vertex(std::uint64_t)> a_enum,
                             std::function<Vertex(std::uint64_t)> b_enum,
                             std::function<std::optional<std::uint64_t>(Vertex)> a_index,
                             std::function<std::optional<std::uint64_t>(Vertex)> b_index,
                             std::function<Colour(std::uint64_t, std::uint64_t)> cross = {}) {
        HTypeGraph h;
        h.kind_ = kind;
        h.r_ = r;
        h.a_enum_ = std::move(a_enum);
        h.b_enum_ = std::move(b_enum);
        h.a_index_ = std::move(a_index);
        h.b_index_ = std::move(b_index);
        h.cross_ = cross ? std::move(cross) : [](std::uint64_t, std::uint64_t) { return 0; };
        return h;
    }

    /// Complete graph viewed as an identified H-type graph: a_n = b_n = n.
    static HTypeGraph identified_complete(int r = 1,
                                          std::function<Colour(std::uint64_t, std::uint64_t)> cross = {}) {
        HTypeGraph h;
        h.kind_ = Kind::identified;
        h.r_ = r;
        h.a_enum_ = [](std::uint64_t xi) { return xi; };
        h.b_enum_ = [](std::uint64_t zeta) { return zeta; };
        h.a_index_ = [](Vertex v) -> std::optional<std::uint64_t> { return v; };
        h.b_index_ = [](Vertex v) -> std::optional<std::uint64_t> { return v; };
        h.cross_ = cross ? std::move(cross) : [](std::uint64_t, std::uint64_t) { return 0; };
        return h;
    }

    Kind kind() const { return kind_; }
    Colour colour_count() const { return r_; }
    bool contains_vertex(Vertex) const { return true; }

    Vertex a_vertex(std::uint64_t xi) const { return a_enum_(xi); }
    Vertex b_vertex(std::uint64_t zeta) const { return b_enum_(zeta); }
    std::optional<std::uint64_t> a_index(Vertex v) const { return a_index_(v); }
    std::optional<std::uint64_t> b_index(Vertex v) const { return b_index_(v); }

    /// Cross colour of the edge a_xi -- b_zeta (requires xi <= zeta).
    Colour cross_colour(std::uint64_t xi, std::uint64_t zeta) const { return cross_(xi, zeta); }

    /// Edge-colour lookup on vertex pairs.  A self-pair a_xi = b_zeta is never
    /// an edge.  Builtin enumerations admit at most one valid orientation per
    /// pair, so the colour is unambiguous.
    std::optional<Colour> edge_colour(Vertex u, Vertex v) const {
        if (u == v) return std::nullopt;
        if (auto c = oriented(u, v)) return c;
        return oriented(v, u);
    }

    /// Cross colours periodic in zeta for fixed xi beyond the offset; mirrors
    /// LazyColouredGraph::period_hint for the split/configuration oracles.
    void set_cross_period_hint(std::uint64_t period, std::uint64_t offset) {
        cross_period_ = period;
        cross_offset_ = offset;
    }
    std::optional<std::uint64_t> cross_period_hint() const { return cross_period_; }
    std::uint64_t cross_period_offset() const { return cross_offset_; }

    void set_name(std::string name) { name_ = std::move(name); }
    const std::string& name() const { return name_; }

private:
    std::optional<Colour> oriented(Vertex a, Vertex b) const {
        auto xi = a_index_(a);
        auto zeta = b_index_(b);
        if (!xi || !zeta || *xi > *zeta) return std::nullopt;
        return cross_(*xi, *zeta);
    }

    Kind kind_ = Kind::disjoint;
    int r_ = 1;
    std::function<Vertex(std::uint64_t)> a_enum_, b_enum_;
    std::function<std::optional<std::uint64_t>(Vertex)> a_index_, b_index_;
    std::function<Colour(std::uint64_t, std::uint64_t)> cross_;
    std::optional<std::uint64_t> cross_period_;
    std::uint64_t cross_offset_ = 0;
    std::string name_;
};

/// N_G(v,i) limited to vertices below `horizon`; monotone in the horizon.
template <ColouredGraph G>
std::vector<Vertex> neighbours(const G& g, Vertex v, Colour i, Vertex horizon) {
    if (i < 0 || i >= g.colour_count()) throw std::invalid_argument("colour out of range");
    if (!g.contains_vertex(v)) throw std::out_of_range("vertex out of range");
    std::vector<Vertex> out;
    for (Vertex w = 0; w < horizon; ++w) {
        if (w == v) continue;
        if (auto c = g.edge_colour(v, w); c && *c == i) out.push_back(w);
    }
    return out;
}

/// N_G(v) (any colour) below `horizon`.
template <ColouredGraph G>
std::vector<Vertex> neighbours_any(const G& g, Vertex v, Vertex horizon) {
    if (!g.contains_vertex(v)) throw std::out_of_range("vertex out of range");
    std::vector<Vertex> out;
    for (Vertex w = 0; w < horizon; ++w) {
        if (w != v && g.edge_colour(v, w)) out.push_back(w);
    }
    return out;
}

/// N_G[F,i] below `horizon`.  Convention: N[{} ,i] is the whole vertex range.
template <ColouredGraph G>
std::vector<Vertex> common_neighbours(const G& g, const std::vector<Vertex>& F, Colour i,
                                      Vertex horizon) {
    if (i < 0 || i >= g.colour_count()) throw std::invalid_argument("colour out of range");
    std::vector<Vertex> out;
    for (Vertex w = 0; w < horizon; ++w) {
        if (!g.contains_vertex(w)) break;
        bool all = true;
        for (Vertex v : F) {
            if (!g.contains_vertex(v)) throw std::out_of_range("vertex out of range");
            auto c = (v == w) ? std::optional<Colour>{} : g.edge_colour(v, w);
            if (!c || *c != i) {
                all = false;
                break;
            }
        }
        if (all) out.push_back(w);
    }
    return out;
}

/// N_G[F] (any colour) below `horizon`; N[{}] is the whole range.
template <ColouredGraph G>
std::vector<Vertex> common_neighbours_any(const G& g, const std::vector<Vertex>& F, Vertex horizon) {
    std::vector<Vertex> out;
    for (Vertex w = 0; w < horizon; ++w) {
        if (!g.contains_vertex(w)) break;
        bool all = true;
        for (Vertex v : F) {
            if (v == w || !g.edge_colour(v, w)) {
                all = false;
                break;
            }
        }
        if (all) out.push_back(w);
    }
    return out;
}

} // namespace monopath
