#pragma once

// Exact minimum monochromatic path partition of finite coloured complete
// graphs (n up to the configured cap), plus a greedy/rotation heuristic for
// larger instances.
//
// Exact algorithm: subset DP.  reach[mask][v] records the colours c for which
// a monochromatic path of colour c covering exactly `mask` can end at v; a
// second DP over (subset, pieces) — with an extra used-colour dimension in
// distinct mode — yields the optimum.  Witnesses are reconstructed as the
// lexicographically smallest sorted list of canonical path sequences among all
// optimal partitions, so identical inputs give identical outputs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monopath/graph.hpp"
#include "monopath/path.hpp"
#include "monopath/verify.hpp"

namespace monopath {

struct SolverConfig {
    int exact_cap = 12;       // refuse exact solves above this vertex count
    bool want_witness = true; // sweeps skip witness reconstruction
};

struct SolveResult {
    PartitionMode mode = PartitionMode::any_colours;
    bool feasible = true; // distinct mode can be unsatisfiable outright
    int optimum = 0;
    PathPartition witness;
    std::uint64_t nodes_explored = 0;
};

namespace detail {

constexpr std::uint8_t kInfPieces = 0xff;

/// Subset-DP state for one instance.  Masks are bitsets over vertices.
class PathCoverDP {
public:
    explicit PathCoverDP(const FiniteColouredGraph& g)
        : n_(g.vertex_count()), r_(g.colour_count()) {
        if (n_ > 20) throw std::invalid_argument("exact solver limited to small n");
        if (r_ > 30) throw std::invalid_argument("exact solver supports at most 30 colours");
        colmat_.assign(static_cast<std::size_t>(n_) * n_, -1);
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v)
                if (u != v)
                    if (auto c = g.edge_colour(u, v)) colmat_[idx(u, v)] = static_cast<int>(*c);
        build_reach();
    }

    int n() const { return n_; }
    int r() const { return r_; }
    std::uint64_t nodes() const { return nodes_; }
    int edge_colour(int u, int v) const { return colmat_[idx(u, v)]; }

    /// Colour bitmask of monochromatic paths covering `mask` (needs >= 2 bits).
    std::uint32_t path_colours(std::uint32_t mask) const { return pathcols_[mask]; }
    bool pathable(std::uint32_t mask) const {
        return std::popcount(mask) == 1 || pathcols_[mask] != 0;
    }

    int any_optimum() {
        ensure_any();
        return dp_any_[full_mask()];
    }

    bool any_feasible(std::uint32_t rem, int pieces) {
        ensure_any();
        return dp_any_[rem] <= pieces && pieces <= std::popcount(rem);
    }

    /// Minimum piece count in distinct mode, or nullopt when no partition into
    /// at most r distinctly-labelled paths exists.
    std::optional<int> distinct_optimum() {
        ensure_distinct();
        int best = -1;
        for (std::uint32_t used = 0; used < (1u << r_); ++used) {
            std::uint16_t ds = f_[f_index(full_mask(), used)];
            for (int d = 0; ds >> d; ++d)
                if ((ds >> d) & 1) {
                    int total = std::popcount(used) + d;
                    if (total <= r_ && (best < 0 || total < best)) best = total;
                }
        }
        if (best < 0) return std::nullopt;
        return best;
    }

    bool distinct_feasible(std::uint32_t rem, std::uint32_t used_abs, int pieces) {
        ensure_distinct();
        if (pieces < 0) return false;
        std::uint32_t avail = ((1u << r_) - 1) & ~used_abs;
        // iterate over subsets of the still-unused colours
        std::uint32_t sub = avail;
        while (true) {
            int d = pieces - std::popcount(sub);
            if (d >= 0 && d < 16 && ((f_[f_index(rem, sub)] >> d) & 1)) return true;
            if (sub == 0) break;
            sub = (sub - 1) & avail;
        }
        return false;
    }

    std::uint32_t full_mask() const { return (n_ == 0) ? 0 : ((1u << n_) - 1); }

private:
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }
    std::size_t f_index(std::uint32_t mask, std::uint32_t used) const {
        return (static_cast<std::size_t>(mask) << r_) | used;
    }

    void build_reach() {
        const std::uint32_t total = 1u << n_;
        reach_.assign(static_cast<std::size_t>(total) * n_, 0);
        pathcols_.assign(total, 0);
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v) {
                int c = (u == v) ? -1 : colmat_[idx(u, v)];
                if (c >= 0)
                    reach_[static_cast<std::size_t>((1u << u) | (1u << v)) * n_ + v] |= 1u << c;
            }
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            if (std::popcount(mask) < 2) continue;
            for (int v = 0; v < n_; ++v) {
                if (!((mask >> v) & 1)) continue;
                std::uint32_t cols = reach_[static_cast<std::size_t>(mask) * n_ + v];
                if (!cols) continue;
                pathcols_[mask] |= cols;
                for (int u = 0; u < n_; ++u) {
                    if ((mask >> u) & 1) continue;
                    int c = colmat_[idx(v, u)];
                    ++nodes_;
                    if (c >= 0 && ((cols >> c) & 1))
                        reach_[static_cast<std::size_t>(mask | (1u << u)) * n_ + u] |= 1u << c;
                }
            }
        }
    }

    void ensure_any() {
        if (!dp_any_.empty()) return;
        const std::uint32_t total = 1u << n_;
        dp_any_.assign(total, kInfPieces);
        dp_any_[0] = 0;
        for (std::uint32_t mask = 1; mask < total; ++mask) {
            int low = std::countr_zero(mask);
            std::uint32_t rest = mask ^ (1u << low);
            std::uint32_t sub = rest;
            std::uint8_t best = kInfPieces;
            while (true) {
                std::uint32_t piece = sub | (1u << low);
                ++nodes_;
                if (pathable(piece) && dp_any_[mask ^ piece] != kInfPieces)
                    best = std::min<std::uint8_t>(best, 1 + dp_any_[mask ^ piece]);
                if (sub == 0) break;
                sub = (sub - 1) & rest;
            }
            dp_any_[mask] = best;
        }
    }

    void ensure_distinct() {
        if (!f_.empty()) return;
        if (r_ > 8)
            throw std::invalid_argument("distinct-mode exact solver supports at most 8 colours");
        const std::uint32_t total = 1u << n_;
        const std::uint32_t utotal = 1u << r_;
        f_.assign(static_cast<std::size_t>(total) << r_, 0);
        f_[f_index(0, 0)] = 1; // zero singletons
        for (std::uint32_t mask = 1; mask < total; ++mask) {
            int low = std::countr_zero(mask);
            std::uint32_t rest = mask ^ (1u << low);
            // singleton piece {low}
            for (std::uint32_t used = 0; used < utotal; ++used) {
                std::uint16_t prev = f_[f_index(rest, used)];
                if (prev) f_[f_index(mask, used)] |= static_cast<std::uint16_t>(prev << 1);
            }
            // non-degenerate pieces through `low`
            std::uint32_t sub = rest;
            while (true) {
                std::uint32_t piece = sub | (1u << low);
                std::uint32_t cols = (std::popcount(piece) >= 2) ? pathcols_[piece] : 0;
                ++nodes_;
                if (cols) {
                    std::uint32_t remm = mask ^ piece;
                    for (std::uint32_t used = 0; used < utotal; ++used) {
                        std::uint32_t usable = cols & used;
                        if (!usable) continue;
                        std::uint16_t acc = 0;
                        std::uint32_t cs = usable;
                        while (cs) {
                            int c = std::countr_zero(cs);
                            cs &= cs - 1;
                            acc |= f_[f_index(remm, used ^ (1u << c))];
                        }
                        f_[f_index(mask, used)] |= acc;
                    }
                }
                if (sub == 0) break;
                sub = (sub - 1) & rest;
            }
        }
    }

    int n_;
    int r_;
    std::vector<std::int8_t> colmat_;
    std::vector<std::uint32_t> reach_;
    std::vector<std::uint32_t> pathcols_;
    std::vector<std::uint8_t> dp_any_;
    std::vector<std::uint16_t> f_;
    std::uint64_t nodes_ = 0;
};

/// Finds the lexicographically smallest canonical piece (vertex sequence with
/// first < last, or degenerate) whose removal keeps the remaining budget
/// feasible.  Repeating this greedily yields the lexicographically smallest
/// sorted witness overall.
class WitnessBuilder {
public:
    WitnessBuilder(PathCoverDP& dp, PartitionMode mode) : dp_(dp), mode_(mode) {}

    std::vector<PathSeq> build(int optimum) {
        std::vector<PathSeq> pieces;
        std::uint32_t rem = dp_.full_mask();
        std::uint32_t used = 0;
        int left = optimum;
        while (rem) {
            seq_.clear();
            found_ = false;
            rem_ = rem;
            used_ = used;
            left_ = left;
            for (int v = 0; v < dp_.n() && !found_; ++v)
                if ((rem >> v) & 1) {
                    seq_.push_back(v);
                    try_close_or_extend(1u << v, -1);
                    if (!found_) seq_.pop_back();
                }
            if (!found_) throw std::logic_error("witness reconstruction failed");
            PathSeq p;
            std::uint32_t piece_mask = 0;
            for (int v : seq_) {
                p.vertices.push_back(static_cast<Vertex>(v));
                piece_mask |= 1u << v;
            }
            if (seq_.size() >= 2) {
                p.colour = found_colour_;
                if (mode_ == PartitionMode::distinct_colours) used |= 1u << found_colour_;
            }
            pieces.push_back(std::move(p));
            rem ^= piece_mask;
            --left;
        }
        if (mode_ == PartitionMode::distinct_colours) assign_degenerate_labels(pieces);
        return pieces;
    }

private:
    // DFS over candidate sequences in lexicographic order; the first sequence
    // that closes feasibly is the minimum.  Stopping is always tried before
    // extending because a proper prefix precedes all of its extensions.
    void try_close_or_extend(std::uint32_t piece_mask, int colour) {
        const auto len = seq_.size();
        bool canonical = len <= 1 || seq_.front() < seq_.back();
        if (canonical && closes_feasibly(piece_mask, colour)) {
            found_ = true;
            found_colour_ = colour;
            return;
        }
        int last = seq_.back();
        for (int u = 0; u < dp_.n() && !found_; ++u) {
            if (!((rem_ >> u) & 1) || ((piece_mask >> u) & 1)) continue;
            int c = dp_.edge_colour(last, u);
            if (c < 0) continue;
            if (len >= 2 && c != colour) continue;
            if (mode_ == PartitionMode::distinct_colours && ((used_ >> c) & 1)) continue;
            seq_.push_back(u);
            try_close_or_extend(piece_mask | (1u << u), c);
            if (!found_) seq_.pop_back();
        }
    }

    bool closes_feasibly(std::uint32_t piece_mask, int colour) {
        std::uint32_t rest = rem_ ^ piece_mask;
        if (mode_ == PartitionMode::any_colours) return dp_.any_feasible(rest, left_ - 1);
        std::uint32_t used = used_;
        if (seq_.size() >= 2) used |= 1u << colour;
        return dp_.distinct_feasible(rest, used, left_ - 1);
    }

    /// Degenerate paths still consume a colour label in distinct mode: give
    /// each the smallest label not taken yet, in list order.
    void assign_degenerate_labels(std::vector<PathSeq>& pieces) {
        std::uint32_t taken = 0;
        for (const auto& p : pieces)
            if (p.colour) taken |= 1u << *p.colour;
        for (auto& p : pieces) {
            if (p.colour) continue;
            int c = std::countr_one(taken);
            p.colour = c;
            taken |= 1u << c;
        }
    }

    PathCoverDP& dp_;
    PartitionMode mode_;
    std::vector<int> seq_;
    std::uint32_t rem_ = 0, used_ = 0;
    int left_ = 0;
    bool found_ = false;
    int found_colour_ = -1;
};

} // namespace detail

/// Provably minimal monochromatic path partition.  Distinct mode caps the
/// piece count at r and may be infeasible; the result says so.
inline SolveResult min_partition(const FiniteColouredGraph& g, PartitionMode mode,
                                 const SolverConfig& cfg = {}) {
    if (g.vertex_count() > cfg.exact_cap)
        throw std::invalid_argument("instance exceeds the exact-solver cap (" +
                                    std::to_string(cfg.exact_cap) +
                                    "); use heuristic_partition instead");
    SolveResult res;
    res.mode = mode;
    detail::PathCoverDP dp(g);

    if (g.vertex_count() == 0) {
        res.optimum = 0;
        res.witness.mode = mode;
        res.nodes_explored = dp.nodes();
        return res;
    }

    if (mode == PartitionMode::any_colours) {
        res.optimum = dp.any_optimum();
    } else {
        auto opt = dp.distinct_optimum();
        if (!opt) {
            res.feasible = false;
            res.nodes_explored = dp.nodes();
            return res;
        }
        res.optimum = *opt;
    }

    if (cfg.want_witness) {
        detail::WitnessBuilder wb(dp, mode);
        res.witness.paths = wb.build(res.optimum);
        res.witness.mode = mode;
        for (int v = 0; v < g.vertex_count(); ++v)
            res.witness.cover.push_back(static_cast<Vertex>(v));
    }
    res.nodes_explored = dp.nodes();
    return res;
}

struct ExistsResult {
    bool yes = false;
    std::optional<PathPartition> witness;
};

/// Decision form: is there a valid partition into at most k paths?
inline ExistsResult exists_within(const FiniteColouredGraph& g, int k, PartitionMode mode,
                                  const SolverConfig& cfg = {}) {
    SolveResult res = min_partition(g, mode, cfg);
    ExistsResult out;
    if (g.vertex_count() == 0) {
        out.yes = k >= 0;
        if (out.yes) out.witness = res.witness;
        return out;
    }
    if (!res.feasible || res.optimum > k) return out;
    out.yes = true;
    out.witness = res.witness;
    return out;
}

/// Greedy longest-monochromatic-path extraction with rotation-based local
/// search.  Always returns a verifier-accepted partition; no optimality claim.
inline PathPartition heuristic_partition(const FiniteColouredGraph& g) {
    const int n = g.vertex_count();
    const int r = g.colour_count();
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    int remaining = n;

    auto ecol = [&](int u, int v) -> int {
        auto c = g.edge_colour(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return c ? static_cast<int>(*c) : -1;
    };

    // Extend `path` (colour c) at the back with the smallest free vertex;
    // when stuck, try Posa rotations to expose a different endpoint.
    auto grow = [&](std::vector<int>& path, int c) {
        auto extend_back = [&]() {
            bool grew = false;
            while (true) {
                int last = path.back();
                int next = -1;
                for (int u = 0; u < n; ++u)
                    if (!covered[u] && ecol(last, u) == c &&
                        std::find(path.begin(), path.end(), u) == path.end()) {
                        next = u;
                        break;
                    }
                if (next < 0) break;
                path.push_back(next);
                grew = true;
            }
            return grew;
        };
        extend_back();
        int rotations = 2 * n;
        while (rotations-- > 0) {
            int last = path.back();
            bool rotated = false;
            for (std::size_t i = 0; i + 2 < path.size() && !rotated; ++i) {
                if (ecol(last, path[i]) != c) continue;
                std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
                if (extend_back()) rotated = true;
                else
                    std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
            }
            if (!rotated) break;
        }
    };

    PathPartition part;
    part.mode = PartitionMode::any_colours;
    while (remaining > 0) {
        int start = 0;
        while (covered[start]) ++start;
        std::vector<int> best{start};
        int best_colour = -1;
        for (int c = 0; c < r; ++c) {
            std::vector<int> fwd{start};
            grow(fwd, c);
            std::reverse(fwd.begin(), fwd.end());
            grow(fwd, c); // extend what used to be the front
            if (fwd.size() > best.size()) {
                best = fwd;
                best_colour = c;
            }
        }
        PathSeq p;
        if (best.size() >= 2) {
            if (best.front() > best.back()) std::reverse(best.begin(), best.end());
            p.colour = best_colour;
        }
        for (int v : best) {
            p.vertices.push_back(static_cast<Vertex>(v));
            covered[static_cast<std::size_t>(v)] = true;
            --remaining;
        }
        part.paths.push_back(std::move(p));
    }
    for (int v = 0; v < n; ++v) part.cover.push_back(static_cast<Vertex>(v));
    return part;
}

} // namespace monopath
