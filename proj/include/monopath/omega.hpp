#pragma once

// Depth-bounded executions of the countable constructions: the ultrafilter
// labelling trick, the Rado cover (finitely many disjoint monochromatic paths
// of different colours covering an omega-complete graph), the H-type zig-zag
// path, lambda-configurations, and ultrafilter splits of a coloured half
// graph.
//
// Every "infinite set" hypothesis is checked as ">= W elements below horizon
// H"; a failed check is reported as unverified evidence, never silently
// accepted.  All sampling is seeded, all tie-breaks take the minimal unused
// vertex, so identical parameters reproduce byte-identical certificates.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "monopath/graph.hpp"
#include "monopath/oracle.hpp"
#include "monopath/path.hpp"
#include "monopath/verify.hpp"

namespace monopath {

struct OmegaConfig {
    std::uint64_t horizon = 0; // 0: defaults to 10 * steps (or depth)
    int witness_count = 8;     // W: how many elements count as "infinite"
    int miss_slack = 2;        // S: "cofinite within horizon" allows S misses
    std::uint64_t seed = 0;    // seeds all sampling
    int max_forbidden = 3;     // forbidden-set size in unseparability checks

    std::uint64_t horizon_or(std::uint64_t steps) const {
        return horizon ? horizon : 10 * std::max<std::uint64_t>(steps, 1);
    }
};

namespace detail {

/// Memoized d_c labelling: d_c(v) is the unique colour i with N(v,i) large.
/// Exactly one class is large per vertex or the oracle is incoherent.
/// Heap-allocated via make_shared: label-class descriptors keep the labeller
/// alive through the oracle transcript.
class VertexLabeller : public std::enable_shared_from_this<VertexLabeller> {
public:
    VertexLabeller(const LazyColouredGraph& g, LargeSetOracle& oracle)
        : g_(g), oracle_(oracle) {}

    Colour label(Vertex v) {
        auto it = memo_.find(v);
        if (it != memo_.end()) return it->second;
        Colour found = -1;
        int larges = 0;
        for (Colour i = 0; i < g_.colour_count(); ++i) {
            if (oracle_.is_large(SetDescriptor::neighbourhood(g_, v, i))) {
                ++larges;
                found = i;
            }
        }
        if (larges != 1) {
            std::ostringstream os;
            os << "vertex " << v << ": " << larges << " colour classes answered large";
            throw OracleIncoherence(os.str());
        }
        memo_.emplace(v, found);
        return found;
    }

    /// V_i = {v : d_c(v) = i} as a descriptor.  With a periodicity hint the
    /// class is assembled exactly from congruence/interval/finite atoms;
    /// otherwise it is a pointwise predicate (density-oracle route).
    SetDescriptor class_descriptor(Colour i) {
        if (auto period = g_.period_hint()) {
            const std::uint64_t P = *period;
            const std::uint64_t T0 = g_.period_offset();
            std::vector<std::uint64_t> finite_part;
            for (Vertex v = 0; v < T0; ++v)
                if (label(v) == i) finite_part.push_back(v);
            std::optional<SetDescriptor> tail;
            for (std::uint64_t k = 0; k < P; ++k) {
                Vertex v = T0 + k;
                if (label(v) != i) continue;
                auto atom = SetDescriptor::congruence(v % P, P);
                tail = tail ? tail->unite(atom) : atom;
            }
            SetDescriptor out = SetDescriptor::finite_set(finite_part);
            if (tail) out = out.unite(tail->intersect(SetDescriptor::interval(0, T0).complement()));
            return out;
        }
        std::ostringstream os;
        os << "labels(" << (g_.name().empty() ? "graph" : g_.name()) << ")==" << i;
        auto self = shared_from_this();
        return SetDescriptor::predicate(os.str(),
                                        [self, i](std::uint64_t v) { return self->label(v) == i; });
    }

    /// i_c: the unique colour whose label class is large.
    Colour concentration_colour() {
        if (conc_) return *conc_;
        Colour found = -1;
        int larges = 0;
        for (Colour i = 0; i < g_.colour_count(); ++i) {
            if (oracle_.is_large(class_descriptor(i))) {
                ++larges;
                found = i;
            }
        }
        if (larges != 1)
            throw OracleIncoherence("label classes: " + std::to_string(larges) +
                                    " answered large, expected exactly 1");
        conc_ = found;
        return found;
    }

private:
    LazyColouredGraph g_;
    LargeSetOracle& oracle_;
    std::unordered_map<Vertex, Colour> memo_;
    std::optional<Colour> conc_;
};

inline std::vector<Vertex> sample_subset(const std::vector<Vertex>& pool, std::size_t want,
                                         std::mt19937_64& rng) {
    std::vector<Vertex> out;
    if (pool.empty() || want == 0) return out;
    std::vector<Vertex> copy = pool;
    for (std::size_t k = 0; k < want && !copy.empty(); ++k) {
        std::size_t j = rng() % copy.size();
        out.push_back(copy[j]);
        copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(j));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

struct WitnessCheck {
    Colour colour = 0;
    std::vector<Vertex> F;
    std::uint64_t found = 0;
    bool pass = false;
};

struct UftrickResult {
    std::vector<Colour> labels;   // d_c(v) for v < depth
    Colour concentration_colour = 0;
    std::vector<WitnessCheck> witness_checks;
    std::vector<std::string> unverified; // failed finitary checks, empty when clean
};

/// Ultrafilter-trick labelling: partition the vertices into colour classes so that
/// colour-i common neighbourhoods of finite subsets of A meet the large class.
/// Witness checks sample F inside A \cap V_i and count
/// |N[F,i] \cap V_{i_c} \cap [0,horizon)|.
inline UftrickResult uftrick_partition(const LazyColouredGraph& g,
                                       const std::function<bool(Vertex)>& A,
                                       LargeSetOracle& oracle, std::uint64_t depth,
                                       const OmegaConfig& cfg = {}) {
    UftrickResult out;
    const std::uint64_t horizon = cfg.horizon_or(depth);
    auto lab_ptr = std::make_shared<detail::VertexLabeller>(g, oracle);
    auto& lab = *lab_ptr;

    for (Vertex v = 0; v < depth; ++v) out.labels.push_back(lab.label(v));
    out.concentration_colour = lab.concentration_colour();

    std::mt19937_64 rng(cfg.seed ^ 0x75667472u);

    // Precondition spot-check: N[F] is infinite for finite F inside A.
    {
        std::vector<Vertex> apool;
        for (Vertex v = 0; v < depth && apool.size() < 32; ++v)
            if (A(v)) apool.push_back(v);
        for (std::size_t size : {std::size_t(1), std::size_t(2), std::size_t(4)}) {
            auto F = detail::sample_subset(apool, size, rng);
            if (F.empty() && size > 0) continue;
            std::uint64_t found = 0;
            for (Vertex w = 0; w < horizon && found < static_cast<std::uint64_t>(cfg.witness_count);
                 ++w) {
                bool all = true;
                for (Vertex v : F)
                    if (v == w || !g.edge_colour(v, w)) {
                        all = false;
                        break;
                    }
                if (all) ++found;
            }
            if (found < static_cast<std::uint64_t>(cfg.witness_count)) {
                std::ostringstream os;
                os << "N[F] check found only " << found << " common neighbours below " << horizon;
                out.unverified.push_back(os.str());
            }
        }
    }

    // Sampled witness checks per colour.
    for (Colour i = 0; i < g.colour_count(); ++i) {
        std::vector<Vertex> pool;
        for (Vertex v = 0; v < depth; ++v)
            if (A(v) && out.labels[v] == i) pool.push_back(v);
        for (int rep = 0; rep < 3; ++rep) {
            WitnessCheck chk;
            chk.colour = i;
            std::size_t want = pool.empty() ? 0 : 1 + rng() % std::min<std::size_t>(4, pool.size());
            chk.F = detail::sample_subset(pool, want, rng);
            std::uint64_t found = 0;
            for (Vertex w = 0; w < horizon && found < static_cast<std::uint64_t>(cfg.witness_count);
                 ++w) {
                if (lab.label(w) != out.concentration_colour) continue;
                bool all = true;
                for (Vertex v : chk.F) {
                    auto c = (v == w) ? std::optional<Colour>{} : g.edge_colour(v, w);
                    if (!c || *c != i) {
                        all = false;
                        break;
                    }
                }
                if (all) ++found;
            }
            chk.found = found;
            chk.pass = found >= static_cast<std::uint64_t>(cfg.witness_count);
            if (!chk.pass) {
                std::ostringstream os;
                os << "witness check colour " << i << " found " << found << " < "
                   << cfg.witness_count;
                out.unverified.push_back(os.str());
            }
            out.witness_checks.push_back(std::move(chk));
            if (pool.empty()) break; // only the trivial F = {} check applies
        }
    }

    oracle.require_coherent();
    return out;
}

/// Countable cover: at most r disjoint monochromatic streams of pairwise
/// distinct colours whose union covers an initial segment.  Each step absorbs
/// the least uncovered vertex into the stream of its label, going through a
/// connector in the large class when no direct edge works.
inline PrefixCertificate rado_cover(const LazyColouredGraph& g, LargeSetOracle& oracle,
                                    std::uint64_t steps, const OmegaConfig& cfg = {}) {
    const std::uint64_t horizon = cfg.horizon_or(steps);
    auto lab_ptr = std::make_shared<detail::VertexLabeller>(g, oracle);
    auto& lab = *lab_ptr;
    const Colour conc = lab.concentration_colour();

    std::map<Colour, std::vector<Vertex>> streams;
    std::unordered_set<Vertex> used;
    Vertex frontier = 0; // least vertex not yet absorbed
    std::vector<std::uint64_t> unverified;

    auto advance_frontier = [&]() {
        while (used.count(frontier)) ++frontier;
    };

    for (std::uint64_t step = 0; step < steps; ++step) {
        advance_frontier();
        Vertex v = frontier;
        Colour i = lab.label(v);
        auto& stream = streams[i];
        if (stream.empty()) {
            stream.push_back(v);
            used.insert(v);
            continue;
        }
        Vertex last = stream.back();
        auto direct = g.edge_colour(last, v);
        if (direct && *direct == i) {
            stream.push_back(v);
            used.insert(v);
            continue;
        }
        // connector w in V_{i_c} with colour-i edges last--w and w--v
        std::optional<Vertex> connector;
        for (Vertex w = 0; w < horizon; ++w) {
            if (w == v || used.count(w)) continue;
            auto c1 = g.edge_colour(last, w);
            if (!c1 || *c1 != i) continue;
            auto c2 = g.edge_colour(w, v);
            if (!c2 || *c2 != i) continue;
            if (lab.label(w) != conc) continue;
            connector = w;
            break;
        }
        if (!connector) {
            unverified.push_back(step);
            break; // the frontier cannot move past v; stop honestly
        }
        stream.push_back(*connector);
        stream.push_back(v);
        used.insert(*connector);
        used.insert(v);
    }
    advance_frontier();

    PrefixCertificate cert;
    cert.step_count = steps;
    cert.coverage_bound = frontier;
    for (auto& [colour, vertices] : streams) {
        PathSeq p;
        p.vertices = vertices;
        p.colour = colour;
        cert.streams.push_back(std::move(p));
    }
    for (auto& stream : cert.streams) {
        std::optional<Vertex> witness;
        for (Vertex w = 0; w < horizon; ++w) {
            if (used.count(w)) continue;
            auto c = g.edge_colour(stream.vertices.back(), w);
            if (c && *c == *stream.colour) {
                witness = w;
                break;
            }
        }
        if (!witness) unverified.push_back(steps); // finalize pseudo-step
        cert.witnesses.push_back(witness);
    }
    cert.params.colouring = g.name();
    cert.params.oracle = oracle.kind();
    cert.params.construction = "rado";
    cert.params.seed = cfg.seed;
    cert.params.steps = steps;
    cert.params.horizon = horizon;
    cert.params.witness_count = cfg.witness_count;
    cert.params.unverified_steps = std::move(unverified);

    oracle.require_coherent();
    return cert;
}

/// Zig-zag through an H-type graph covering the main class: alternate
/// a-vertices and b-vertices, choosing after a_l the minimal unused b-index
/// k >= l that still leaves an unused a-index <= k (collision handling for
/// identified classes), then that minimal a-index.
inline OmegaPathStream zigzag_htype(const HTypeGraph& h) {
    struct State {
        HTypeGraph h;
        std::unordered_set<Vertex> used;
        std::uint64_t last_a_idx = 0;
        std::uint64_t a_scan_from = 0;
        std::optional<std::uint64_t> pending_a;
        bool started = false;

        explicit State(const HTypeGraph& graph) : h(graph) {}

        // minimal a-index >= a_scan_from whose vertex is unused and != excluded
        std::optional<std::uint64_t> min_unused_a(std::optional<Vertex> excluded,
                                                  std::uint64_t cap) {
            for (std::uint64_t j = a_scan_from; j <= cap; ++j) {
                Vertex va = h.a_vertex(j);
                if (used.count(va)) continue;
                if (excluded && va == *excluded) continue;
                return j;
            }
            return std::nullopt;
        }

        std::optional<Vertex> next() {
            if (!started) {
                started = true;
                Vertex va = h.a_vertex(0);
                used.insert(va);
                last_a_idx = 0;
                a_scan_from = 1;
                return va;
            }
            if (pending_a) {
                std::uint64_t j = *pending_a;
                pending_a.reset();
                Vertex va = h.a_vertex(j);
                used.insert(va);
                last_a_idx = j;
                while (used.count(h.a_vertex(a_scan_from))) ++a_scan_from;
                return va;
            }
            for (std::uint64_t k = last_a_idx;; ++k) {
                Vertex vb = h.b_vertex(k);
                if (used.count(vb)) continue;
                auto j = min_unused_a(vb, k);
                if (!j) continue;
                used.insert(vb);
                pending_a = *j;
                return vb;
            }
        }
    };
    auto st = std::make_shared<State>(h);
    return OmegaPathStream(0, [st]() { return st->next(); });
}

/// One lambda-configuration level: pairwise disjoint finite a-sets from the
/// main class and distinct points y with y_zeta adjacent in a colour from I to
/// some member of every earlier a-set.
struct Configuration {
    std::vector<std::vector<Vertex>> a_sets; // main-class vertices
    std::vector<Vertex> y_points;            // second-class vertices
};

/// Greedy build per the finite induction: each a-set is a minimal finite set
/// whose I-coloured neighbourhood union misses at most `miss_slack` b-indices
/// below the horizon.  not-found is evidence for the split branch, not a
/// failure.
inline std::optional<Configuration> find_configuration(const HTypeGraph& h,
                                                       const std::vector<Colour>& I,
                                                       std::uint64_t k, std::uint64_t horizon,
                                                       const OmegaConfig& cfg = {}) {
    for (Colour i : I)
        if (i < 0 || i >= h.colour_count()) throw std::invalid_argument("colour out of range");

    Configuration out;
    std::unordered_set<Vertex> used;
    auto covers = [&](std::uint64_t xi, std::uint64_t zeta) {
        if (xi > zeta) return false;
        if (h.a_vertex(xi) == h.b_vertex(zeta)) return false;
        Colour c = h.cross_colour(xi, zeta);
        return std::find(I.begin(), I.end(), c) != I.end();
    };

    std::uint64_t next_a = 0;
    for (std::uint64_t level = 0; level < k; ++level) {
        std::vector<bool> covered(horizon, false);
        std::uint64_t misses = horizon;
        std::vector<std::uint64_t> a_idx;
        std::uint64_t candidate = next_a;
        while (misses > static_cast<std::uint64_t>(cfg.miss_slack)) {
            // smallest unused candidate that strictly reduces the miss count
            bool progressed = false;
            for (std::uint64_t x = candidate; x < horizon + 64; ++x) {
                if (used.count(h.a_vertex(x))) continue;
                if (std::find(a_idx.begin(), a_idx.end(), x) != a_idx.end()) continue;
                std::uint64_t gain = 0;
                for (std::uint64_t zeta = 0; zeta < horizon; ++zeta)
                    if (!covered[zeta] && covers(x, zeta)) ++gain;
                if (gain == 0) continue;
                a_idx.push_back(x);
                for (std::uint64_t zeta = 0; zeta < horizon; ++zeta)
                    if (!covered[zeta] && covers(x, zeta)) covered[zeta] = true;
                misses -= gain;
                progressed = true;
                break;
            }
            if (!progressed) return std::nullopt;
            if (a_idx.size() > 64) return std::nullopt; // no small qualifying set
        }
        std::vector<Vertex> a_set;
        for (std::uint64_t x : a_idx) {
            Vertex va = h.a_vertex(x);
            used.insert(va);
            a_set.push_back(va);
        }
        out.a_sets.push_back(std::move(a_set));
        while (used.count(h.a_vertex(next_a))) ++next_a;

        // y for this level: adjacent in an I-colour to every a-set so far
        std::optional<Vertex> y;
        for (std::uint64_t zeta = 0; zeta < horizon && !y; ++zeta) {
            Vertex vb = h.b_vertex(zeta);
            if (used.count(vb)) continue;
            bool all = true;
            for (std::uint64_t xi_level = 0; xi_level <= level && all; ++xi_level) {
                bool hit = false;
                for (Vertex va : out.a_sets[xi_level]) {
                    auto xi = h.a_index(va);
                    if (xi && covers(*xi, zeta)) {
                        hit = true;
                        break;
                    }
                }
                all = hit;
            }
            if (all) y = vb;
        }
        if (!y) return std::nullopt;
        used.insert(*y);
        out.y_points.push_back(*y);
    }

    // pointwise verification of the configuration property
    for (std::uint64_t zeta_level = 0; zeta_level < k; ++zeta_level)
        for (std::uint64_t xi_level = 0; xi_level <= zeta_level; ++xi_level) {
            bool hit = false;
            for (Vertex va : out.a_sets[xi_level]) {
                auto c = h.edge_colour(va, out.y_points[zeta_level]);
                if (c && std::find(I.begin(), I.end(), *c) != I.end()) {
                    hit = true;
                    break;
                }
            }
            if (!hit) throw std::logic_error("configuration verification failed");
        }
    return out;
}

struct SplitResult {
    std::map<Colour, std::vector<Vertex>> classes; // X_j for j outside I
    std::vector<WitnessCheck> witness_checks;
    std::vector<std::string> unverified;
};

/// Second-class split: X_j = {x in X : N(x,j) \cap B large}.  Preconditions and
/// membership are oracle queries on descriptors over second-class indices.
inline SplitResult ultrafilter_split(const HTypeGraph& h,
                                     const std::function<bool(Vertex)>& X,
                                     const std::vector<Colour>& I, LargeSetOracle& oracle,
                                     std::uint64_t depth, const OmegaConfig& cfg = {}) {
    const std::uint64_t horizon = cfg.horizon_or(depth);

    // descriptors capture a shared copy: they live on in the oracle transcript
    auto hp = std::make_shared<HTypeGraph>(h);
    auto nb = [&](std::uint64_t xi, Colour j) {
        std::ostringstream os;
        os << "Nb(" << xi << "," << j << ")";
        if (!h.name().empty()) os << "@" << h.name();
        auto contains = [hp, xi, j](std::uint64_t zeta) {
            if (zeta < xi) return false;
            if (hp->a_vertex(xi) == hp->b_vertex(zeta)) return false;
            return hp->cross_colour(xi, zeta) == j;
        };
        std::optional<EventuallyPeriodic> nf;
        if (auto period = h.cross_period_hint()) {
            EventuallyPeriodic f;
            f.period = *period;
            f.threshold = std::max<std::uint64_t>(xi + 1, h.cross_period_offset());
            f.mask.resize(f.period);
            for (std::uint64_t t = 0; t < f.period; ++t)
                f.mask[(f.threshold + t) % f.period] = contains(f.threshold + t);
            nf = std::move(f);
        }
        return SetDescriptor::predicate(os.str(), contains, nf);
    };

    // members of X among the first `depth` main-class indices
    std::vector<std::uint64_t> members;
    for (std::uint64_t xi = 0; xi < depth; ++xi)
        if (X(h.a_vertex(xi))) members.push_back(xi);

    // Precondition: the avoided union leaves a large remainder of B.
    std::mt19937_64 rng(cfg.seed ^ 0x73706c69u);
    for (int rep = 0; rep < 3 && !members.empty(); ++rep) {
        std::vector<Vertex> pool(members.begin(), members.end());
        auto a = detail::sample_subset(pool, 1 + rng() % 4, rng);
        std::optional<SetDescriptor> avoided;
        for (Vertex xi : a)
            for (Colour i : I) {
                auto d = nb(xi, i);
                avoided = avoided ? avoided->unite(d) : d;
            }
        SetDescriptor remainder =
            avoided ? avoided->complement() : SetDescriptor::interval(0, std::nullopt);
        if (!oracle.is_large(remainder))
            throw std::invalid_argument(
                "split precondition: avoided neighbourhood union is co-large; "
                "use find_configuration instead");
    }

    SplitResult out;
    for (std::uint64_t xi : members) {
        Colour found = -1;
        int larges = 0;
        for (Colour j = 0; j < h.colour_count(); ++j)
            if (oracle.is_large(nb(xi, j))) {
                ++larges;
                found = j;
            }
        if (larges != 1)
            throw OracleIncoherence("main-class index " + std::to_string(xi) + ": " +
                                    std::to_string(larges) + " colour classes large");
        if (std::find(I.begin(), I.end(), found) != I.end())
            throw std::invalid_argument("index " + std::to_string(xi) +
                                        " lands in an avoided colour; precondition violated");
        out.classes[found].push_back(h.a_vertex(xi));
    }

    // Sampled pair witnesses: common j-coloured b-neighbours are plentiful.
    for (auto& [j, xs] : out.classes) {
        if (xs.size() < 2) continue;
        for (int rep = 0; rep < 2; ++rep) {
            auto pair = detail::sample_subset(xs, 2, rng);
            if (pair.size() < 2) break;
            auto xi0 = h.a_index(pair[0]), xi1 = h.a_index(pair[1]);
            WitnessCheck chk;
            chk.colour = j;
            chk.F = pair;
            for (std::uint64_t zeta = 0;
                 zeta < horizon && chk.found < static_cast<std::uint64_t>(cfg.witness_count);
                 ++zeta) {
                if (zeta < *xi0 || zeta < *xi1) continue;
                Vertex vb = h.b_vertex(zeta);
                if (vb == pair[0] || vb == pair[1]) continue;
                if (h.cross_colour(*xi0, zeta) == j && h.cross_colour(*xi1, zeta) == j) ++chk.found;
            }
            chk.pass = chk.found >= static_cast<std::uint64_t>(cfg.witness_count);
            if (!chk.pass) {
                std::ostringstream os;
                os << "pair witness colour " << j << " found " << chk.found << " < "
                   << cfg.witness_count;
                out.unverified.push_back(os.str());
            }
            out.witness_checks.push_back(std::move(chk));
        }
    }

    oracle.require_coherent();
    return out;
}

/// Concatenate colour-i segments whose junctions are colour-i edges.
template <ColouredGraph G>
PathSeq stitch(const G& g, const std::vector<PathSeq>& segments, Colour link_colour) {
    PathSeq out;
    out.colour = link_colour;
    std::set<Vertex> seen;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        if (seg.vertices.empty()) continue;
        if (seg.vertices.size() >= 2 && (!seg.colour || *seg.colour != link_colour))
            throw std::invalid_argument("segment " + std::to_string(s) +
                                        " is not monochromatic in the link colour");
        Report r = verify_path(g, seg);
        if (!r.ok())
            throw std::invalid_argument("segment " + std::to_string(s) + ": " + r.issues.front());
        for (Vertex v : seg.vertices)
            if (!seen.insert(v).second)
                throw std::invalid_argument("duplicate vertex " + std::to_string(v) +
                                            " at segment " + std::to_string(s));
        if (!out.vertices.empty()) {
            Vertex a = out.vertices.back(), b = seg.vertices.front();
            auto c = g.edge_colour(a, b);
            if (!c || *c != link_colour) {
                std::ostringstream os;
                os << "missing link edge at junction (" << a << "," << b << ")";
                throw std::invalid_argument(os.str());
            }
        }
        out.vertices.insert(out.vertices.end(), seg.vertices.begin(), seg.vertices.end());
    }
    if (out.vertices.size() < 2) out.colour.reset();
    if (out.vertices.size() >= 2) out.colour = link_colour;
    return out;
}

/// Prescribed-start cover: a colour-i stream with first point `start` absorbing
/// every A-vertex in increasing order, through minimal unused connectors.
/// The sampled unseparability precondition reports the violating pair.
inline OmegaPathStream cover_from(const LazyColouredGraph& g,
                                  const std::function<bool(Vertex)>& A, Colour i, Vertex start,
                                  std::uint64_t steps, const OmegaConfig& cfg = {}) {
    if (i < 0 || i >= g.colour_count()) throw std::invalid_argument("colour out of range");
    if (!A(start)) throw std::invalid_argument("start vertex is not in A");
    const std::uint64_t horizon = cfg.horizon_or(steps);
    const std::uint64_t bfs_cap = std::min<std::uint64_t>(horizon, 512);

    // omega-unseparability spot-check on sampled pairs and forbidden sets
    std::vector<Vertex> apool{start};
    for (Vertex v = 0; v < bfs_cap && apool.size() < 4; ++v)
        if (A(v) && v != start) apool.push_back(v);
    std::mt19937_64 rng(cfg.seed ^ 0x636f766572u);
    for (std::size_t p = 0; p < apool.size(); ++p)
        for (std::size_t q = p + 1; q < apool.size(); ++q) {
            Vertex u = apool[p], v = apool[q];
            std::set<Vertex> forbidden;
            while (forbidden.size() < static_cast<std::size_t>(cfg.max_forbidden)) {
                Vertex f = rng() % bfs_cap;
                if (f != u && f != v) forbidden.insert(f);
            }
            // BFS in the colour-i subgraph below bfs_cap avoiding `forbidden`
            std::vector<int> dist(bfs_cap, -1);
            std::vector<Vertex> queue{u};
            dist[u] = 0;
            for (std::size_t head = 0; head < queue.size() && dist[v] < 0; ++head) {
                Vertex x = queue[head];
                for (Vertex y = 0; y < bfs_cap; ++y) {
                    if (dist[y] >= 0 || forbidden.count(y)) continue;
                    auto c = (x == y) ? std::optional<Colour>{} : g.edge_colour(x, y);
                    if (c && *c == i) {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if (dist[v] < 0) {
                std::ostringstream os;
                os << "unseparability check failed for pair (" << u << "," << v << ")";
                throw std::runtime_error(os.str());
            }
        }

    struct State {
        LazyColouredGraph g;
        std::function<bool(Vertex)> A;
        Colour colour;
        std::uint64_t horizon;
        Vertex start;
        std::unordered_set<Vertex> used;
        std::optional<Vertex> pending_target;
        Vertex last = 0;
        Vertex a_frontier = 0;
        bool started = false;

        State(const LazyColouredGraph& graph, std::function<bool(Vertex)> pred, Colour c,
              std::uint64_t h, Vertex s)
            : g(graph), A(std::move(pred)), colour(c), horizon(h), start(s) {}

        std::optional<Vertex> next_target() {
            while (a_frontier < horizon && (used.count(a_frontier) || !A(a_frontier)))
                ++a_frontier;
            if (a_frontier >= horizon) return std::nullopt;
            return a_frontier;
        }

        Vertex emit(Vertex v) {
            used.insert(v);
            last = v;
            return v;
        }

        std::optional<Vertex> next() {
            if (!started) {
                started = true;
                return emit(start);
            }
            if (pending_target) {
                Vertex t = *pending_target;
                pending_target.reset();
                return emit(t);
            }
            auto target = next_target();
            if (!target) return std::nullopt;
            auto direct = g.edge_colour(last, *target);
            if (direct && *direct == colour) return emit(*target);
            for (Vertex w = 0; w < horizon; ++w) {
                if (w == *target || used.count(w)) continue;
                auto c1 = g.edge_colour(last, w);
                if (!c1 || *c1 != colour) continue;
                auto c2 = g.edge_colour(w, *target);
                if (!c2 || *c2 != colour) continue;
                pending_target = *target;
                return emit(w);
            }
            return std::nullopt; // connector search exhausted the horizon
        }
    };

    auto st = std::make_shared<State>(g, A, i, horizon, start);
    return OmegaPathStream(i, [st]() { return st->next(); });
}

/// Wrap a produced stream prefix as a certificate (single stream).
template <ColouredGraph G>
PrefixCertificate stream_certificate(const G& g, OmegaPathStream& stream, std::uint64_t steps,
                                     const OmegaConfig& cfg, const std::string& construction,
                                     const std::string& colouring_name,
                                     const std::string& oracle_kind) {
    PrefixCertificate cert;
    cert.step_count = steps;
    PathSeq p = stream.prefix(steps);
    p.colour = stream.colour();
    std::set<Vertex> used(p.vertices.begin(), p.vertices.end());
    Vertex frontier = 0;
    while (used.count(frontier)) ++frontier;
    cert.coverage_bound = frontier;
    const std::uint64_t horizon = cfg.horizon_or(steps);
    std::optional<Vertex> witness;
    if (!p.vertices.empty()) {
        for (Vertex w = 0; w < horizon; ++w) {
            if (used.count(w)) continue;
            auto c = g.edge_colour(p.vertices.back(), w);
            if (c && *c == stream.colour()) {
                witness = w;
                break;
            }
        }
    }
    cert.streams.push_back(std::move(p));
    cert.witnesses.push_back(witness);
    if (!witness) cert.params.unverified_steps.push_back(steps);
    cert.params.colouring = colouring_name;
    cert.params.oracle = oracle_kind;
    cert.params.construction = construction;
    cert.params.seed = cfg.seed;
    cert.params.steps = steps;
    cert.params.horizon = horizon;
    cert.params.witness_count = cfg.witness_count;
    return cert;
}

} // namespace monopath
