#pragma once

// Independent validation of paths, partitions and prefix certificates.  All
// checks recompute directly against the graph; nothing is trusted from the
// producer.  Partition-level reports enumerate every failed clause, path-level
// reports name the first violating index.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monopath/graph.hpp"
#include "monopath/path.hpp"

namespace monopath {

enum class PartitionMode { distinct_colours, any_colours };

inline const char* to_string(PartitionMode m) {
    return m == PartitionMode::distinct_colours ? "distinct" : "any";
}

inline std::optional<PartitionMode> partition_mode_from(const std::string& s) {
    if (s == "distinct") return PartitionMode::distinct_colours;
    if (s == "any") return PartitionMode::any_colours;
    return std::nullopt;
}

/// A claimed partition of `cover` into vertex-disjoint monochromatic paths.
struct PathPartition {
    std::vector<PathSeq> paths;
    PartitionMode mode = PartitionMode::any_colours;
    std::vector<Vertex> cover;
};

/// Construction parameters echoed into a certificate so a verifier (or a rerun)
/// can reproduce it.  `unverified_steps` lists construction steps whose
/// finitary evidence could not be established within the horizon.
struct CertificateParams {
    std::string colouring;
    std::string oracle;
    std::string construction;
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t horizon = 0;
    int witness_count = 8;
    std::vector<std::uint64_t> unverified_steps;
};

/// Finitary evidence that an omega-scale construction ran correctly for
/// `step_count` steps: disjoint monochromatic stream prefixes, a coverage
/// frontier B (every vertex below B lies in exactly one stream), and one
/// unused extendability witness per stream.
struct PrefixCertificate {
    std::uint64_t step_count = 0;
    std::vector<PathSeq> streams;
    std::uint64_t coverage_bound = 0;
    std::vector<std::optional<Vertex>> witnesses; // aligned with streams
    CertificateParams params;
};

enum class VerifyStatus { ok, violation, unverifiable };

struct Report {
    VerifyStatus status = VerifyStatus::ok;
    std::vector<std::string> issues;

    bool ok() const { return status == VerifyStatus::ok; }

    void violate(std::string msg) {
        status = VerifyStatus::violation;
        issues.push_back(std::move(msg));
    }
    // A violation outranks unverifiable: a certificate that is provably wrong
    // stays "violation" even if some other witness was also out of horizon.
    void unverifiable(std::string msg) {
        if (status == VerifyStatus::ok) status = VerifyStatus::unverifiable;
        issues.push_back(std::move(msg));
    }
};

/// ok iff vertices are injective and each consecutive pair is an edge of the
/// path's colour.  Degenerate paths always pass.
template <ColouredGraph G>
Report verify_path(const G& g, const PathSeq& path) {
    Report rep;
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        Vertex v = path.vertices[i];
        if (!g.contains_vertex(v)) {
            rep.violate("vertex out of range at index " + std::to_string(i));
            return rep;
        }
        if (!seen.insert(v).second) {
            rep.violate("repeated vertex at index " + std::to_string(i));
            return rep;
        }
    }
    if (path.vertices.size() < 2) return rep;
    if (!path.colour || *path.colour < 0 || *path.colour >= g.colour_count()) {
        rep.violate("missing or out-of-range colour label");
        return rep;
    }
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        auto c = g.edge_colour(path.vertices[i], path.vertices[i + 1]);
        if (!c) {
            rep.violate("no edge at index " + std::to_string(i));
            return rep;
        }
        if (*c != *path.colour) {
            std::ostringstream os;
            os << "edge at index " << i << " has colour " << *c << ", expected " << *path.colour;
            rep.violate(os.str());
            return rep;
        }
    }
    return rep;
}

/// Checks every PathPartition invariant against the graph and lists all failed
/// clauses: per-path validity, pairwise disjointness, coverage of the claimed
/// cover set, and colour-label distinctness in distinct mode (degenerate paths
/// consume a label too).
template <ColouredGraph G>
Report verify_partition(const G& g, const PathPartition& part) {
    Report rep;
    for (std::size_t p = 0; p < part.paths.size(); ++p) {
        Report r = verify_path(g, part.paths[p]);
        if (!r.ok())
            for (auto& m : r.issues) rep.violate("path " + std::to_string(p) + ": " + m);
    }

    std::map<Vertex, std::vector<std::size_t>> owner;
    for (std::size_t p = 0; p < part.paths.size(); ++p)
        for (Vertex v : part.paths[p].vertices) owner[v].push_back(p);
    for (auto& [v, ps] : owner)
        if (ps.size() > 1) {
            std::ostringstream os;
            os << "vertex " << v << " appears in " << ps.size() << " paths";
            rep.violate(os.str());
        }

    std::set<Vertex> cover(part.cover.begin(), part.cover.end());
    for (auto& [v, ps] : owner)
        if (!cover.count(v)) {
            std::ostringstream os;
            os << "vertex " << v << " is outside the claimed cover";
            rep.violate(os.str());
        }
    for (Vertex v : cover)
        if (!owner.count(v)) {
            std::ostringstream os;
            os << "cover vertex " << v << " is not on any path";
            rep.violate(os.str());
        }

    if (part.mode == PartitionMode::distinct_colours) {
        std::set<Colour> labels;
        for (std::size_t p = 0; p < part.paths.size(); ++p) {
            const auto& path = part.paths[p];
            if (!path.colour) {
                rep.violate("path " + std::to_string(p) + ": no colour label in distinct mode");
                continue;
            }
            if (*path.colour < 0 || *path.colour >= g.colour_count()) {
                rep.violate("path " + std::to_string(p) + ": label out of range");
                continue;
            }
            if (!labels.insert(*path.colour).second)
                rep.violate("path " + std::to_string(p) + ": duplicate colour label " +
                            std::to_string(*path.colour));
        }
    }
    return rep;
}

/// Recomputes every PrefixCertificate invariant against the graph: stream
/// validity and disjointness, exact coverage below the frontier, and witness
/// adjacency.  Vertices or witnesses at or beyond the recorded horizon make
/// the certificate "unverifiable" rather than wrong.
template <ColouredGraph G>
Report verify_certificate(const G& g, const PrefixCertificate& cert) {
    Report rep;
    const std::uint64_t horizon = cert.params.horizon;

    for (std::size_t s = 0; s < cert.streams.size(); ++s) {
        Report r = verify_path(g, cert.streams[s]);
        if (!r.ok())
            for (auto& m : r.issues) rep.violate("stream " + std::to_string(s) + ": " + m);
        if (!cert.streams[s].colour)
            rep.violate("stream " + std::to_string(s) + ": missing colour label");
    }

    std::map<Vertex, std::size_t> owner;
    for (std::size_t s = 0; s < cert.streams.size(); ++s)
        for (Vertex v : cert.streams[s].vertices) {
            auto [it, fresh] = owner.emplace(v, s);
            if (!fresh) {
                std::ostringstream os;
                os << "vertex " << v << " shared by streams " << it->second << " and " << s;
                rep.violate(os.str());
            }
            if (horizon && v >= horizon) {
                std::ostringstream os;
                os << "vertex " << v << " is beyond the recorded horizon";
                rep.unverifiable(os.str());
            }
        }

    for (Vertex v = 0; v < cert.coverage_bound; ++v)
        if (!owner.count(v)) {
            std::ostringstream os;
            os << "vertex " << v << " below coverage bound " << cert.coverage_bound
               << " is uncovered";
            rep.violate(os.str());
        }

    if (cert.witnesses.size() != cert.streams.size())
        rep.violate("witness list does not match stream list");
    for (std::size_t s = 0; s < cert.witnesses.size() && s < cert.streams.size(); ++s) {
        const auto& w = cert.witnesses[s];
        const auto& stream = cert.streams[s];
        if (!w) {
            rep.unverifiable("stream " + std::to_string(s) + ": no extendability witness");
            continue;
        }
        if (horizon && *w >= horizon) {
            rep.unverifiable("stream " + std::to_string(s) + ": witness beyond horizon");
            continue;
        }
        if (owner.count(*w)) {
            rep.violate("stream " + std::to_string(s) + ": witness already used");
            continue;
        }
        if (stream.vertices.empty() || !stream.colour) {
            rep.violate("stream " + std::to_string(s) + ": cannot check witness adjacency");
            continue;
        }
        auto ec = g.edge_colour(stream.vertices.back(), *w);
        if (!ec || *ec != *stream.colour)
            rep.violate("stream " + std::to_string(s) +
                        ": witness not adjacent in the stream colour");
    }
    return rep;
}

} // namespace monopath
