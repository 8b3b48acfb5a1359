#pragma once

// Exhaustive sweeps over the colouring space of K_n: every r-colouring is a
// mixed-radix number with one digit per edge (pairs in (0,1),(0,2),...
// order, first pair least significant).  The index space is split into
// contiguous chunks processed by independent workers; merging is a
// commutative reduction done in chunk order, so results are deterministic for
// any worker count.  Chunk results can be checkpointed to a JSON state file
// and resumed.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "monopath/solver.hpp"
#include "monopath/verify.hpp"

namespace monopath {

struct SweepRequest {
    int n = 4;
    int r = 2;
    PartitionMode mode = PartitionMode::any_colours;
    int jobs = 1;
    bool canonical = false;          // restrict to lex-minimal representatives
    std::uint64_t budget = 1ull << 26;
    std::string state_file;          // empty: no checkpointing
    int chunk_count = 0;             // 0: derived from jobs
};

struct SweepSummary {
    int n = 0;
    int r = 0;
    PartitionMode mode = PartitionMode::any_colours;
    bool canonical = false;
    std::uint64_t total = 0;                 // colourings (canonical: classes) examined
    std::map<int, std::uint64_t> histogram;  // optimum -> count
    std::map<int, std::uint64_t> weighted;   // canonical sweeps: orbit-size weighted
    std::uint64_t infeasible = 0;            // distinct mode only
    int max_optimum = -1;
    std::uint64_t argmax_index = 0;          // smallest index attaining the max
};

inline int edge_count(int n) { return n * (n - 1) / 2; }

/// r^C(n,2), or nullopt on overflow.
inline std::optional<std::uint64_t> colouring_count(int n, int r) {
    std::uint64_t count = 1;
    for (int e = 0; e < edge_count(n); ++e) {
        if (count > UINT64_MAX / static_cast<std::uint64_t>(r)) return std::nullopt;
        count *= static_cast<std::uint64_t>(r);
    }
    return count;
}

/// Decode a colouring index into a concrete instance.
inline FiniteColouredGraph colouring_from_index(int n, int r, std::uint64_t index) {
    FiniteColouredGraph g(n, r);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            g.set_colour(static_cast<Vertex>(u), static_cast<Vertex>(v),
                         static_cast<Colour>(index % static_cast<std::uint64_t>(r)));
            index /= static_cast<std::uint64_t>(r);
        }
    return g;
}

namespace detail {

inline std::uint64_t colouring_index_of(const FiniteColouredGraph& g) {
    std::uint64_t index = 0;
    std::uint64_t place = 1;
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            index += place * static_cast<std::uint64_t>(*g.edge_colour(u, v));
            place *= static_cast<std::uint64_t>(g.colour_count());
        }
    return index;
}

/// Smallest index in the vertex-permutation orbit, and the orbit size.
struct OrbitInfo {
    std::uint64_t min_index;
    std::uint64_t orbit_size;
};

inline OrbitInfo orbit_info(const FiniteColouredGraph& g,
                            const std::vector<std::vector<int>>& perms) {
    const int n = g.vertex_count();
    std::uint64_t self = colouring_index_of(g);
    std::uint64_t min_index = self;
    std::uint64_t stabilizer = 0;
    for (const auto& p : perms) {
        std::uint64_t index = 0;
        std::uint64_t place = 1;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                index += place * static_cast<std::uint64_t>(*g.edge_colour(p[u], p[v]));
                place *= static_cast<std::uint64_t>(g.colour_count());
            }
        if (index == self) ++stabilizer;
        min_index = std::min(min_index, index);
    }
    return {min_index, perms.size() / stabilizer};
}

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

struct ChunkResult {
    std::uint64_t lo = 0, hi = 0;
    bool done = false;
    std::map<int, std::uint64_t> histogram;
    std::map<int, std::uint64_t> weighted;
    std::uint64_t infeasible = 0;
    int max_optimum = -1;
    std::uint64_t argmax_index = 0;
    std::uint64_t examined = 0;
};

inline nlohmann::json chunk_to_json(const ChunkResult& c) {
    nlohmann::json j;
    j["lo"] = c.lo;
    j["hi"] = c.hi;
    j["done"] = c.done;
    nlohmann::json hist = nlohmann::json::object();
    for (auto& [k, v] : c.histogram) hist[std::to_string(k)] = v;
    j["hist"] = hist;
    nlohmann::json wt = nlohmann::json::object();
    for (auto& [k, v] : c.weighted) wt[std::to_string(k)] = v;
    j["weighted"] = wt;
    j["infeasible"] = c.infeasible;
    j["max"] = c.max_optimum;
    j["argmax"] = c.argmax_index;
    j["examined"] = c.examined;
    return j;
}

inline ChunkResult chunk_from_json(const nlohmann::json& j) {
    ChunkResult c;
    c.lo = j.at("lo").get<std::uint64_t>();
    c.hi = j.at("hi").get<std::uint64_t>();
    c.done = j.at("done").get<bool>();
    for (auto& [k, v] : j.at("hist").items()) c.histogram[std::stoi(k)] = v.get<std::uint64_t>();
    for (auto& [k, v] : j.at("weighted").items()) c.weighted[std::stoi(k)] = v.get<std::uint64_t>();
    c.infeasible = j.at("infeasible").get<std::uint64_t>();
    c.max_optimum = j.at("max").get<int>();
    c.argmax_index = j.at("argmax").get<std::uint64_t>();
    c.examined = j.at("examined").get<std::uint64_t>();
    return c;
}

} // namespace detail

inline SweepSummary sweep_colourings(const SweepRequest& req) {
    if (req.n < 1 || req.r < 1) throw std::invalid_argument("sweep needs n >= 1 and r >= 1");
    auto count = colouring_count(req.n, req.r);
    if (!count || *count > req.budget)
        throw std::invalid_argument(
            "sweep budget exceeded: need " + (count ? std::to_string(*count) : std::string(">2^64")) +
            " solves, budget " + std::to_string(req.budget));

    const std::uint64_t total = *count;
    const int jobs = std::max(1, req.jobs);
    int chunks = req.chunk_count > 0 ? req.chunk_count : jobs * 4;
    chunks = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(chunks),
                                                      std::max<std::uint64_t>(total, 1)));

    std::vector<detail::ChunkResult> results(static_cast<std::size_t>(chunks));
    for (int c = 0; c < chunks; ++c) {
        results[c].lo = total * static_cast<std::uint64_t>(c) / chunks;
        results[c].hi = total * (static_cast<std::uint64_t>(c) + 1) / chunks;
    }

    // Resume from a state file when compatible.
    std::mutex state_mutex;
    const bool checkpointing = !req.state_file.empty();
    if (checkpointing) {
        std::ifstream in(req.state_file);
        if (in) {
            nlohmann::json j = nlohmann::json::parse(in, nullptr, true, true);
            const auto& meta = j.at("meta");
            if (meta.at("n").get<int>() != req.n || meta.at("r").get<int>() != req.r ||
                meta.at("mode").get<std::string>() != to_string(req.mode) ||
                meta.at("canonical").get<bool>() != req.canonical)
                throw std::invalid_argument("state file does not match this sweep");
            const auto& arr = j.at("chunks");
            if (static_cast<int>(arr.size()) != static_cast<int>(results.size())) {
                results.clear();
                for (const auto& cj : arr) results.push_back(detail::chunk_from_json(cj));
                chunks = static_cast<int>(results.size());
            } else {
                for (std::size_t i = 0; i < arr.size(); ++i)
                    results[i] = detail::chunk_from_json(arr[i]);
            }
        }
    }
    auto write_state = [&]() {
        if (!checkpointing) return;
        nlohmann::json j;
        j["meta"] = {{"n", req.n},
                     {"r", req.r},
                     {"mode", to_string(req.mode)},
                     {"canonical", req.canonical},
                     {"total", total}};
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : results) arr.push_back(detail::chunk_to_json(c));
        j["chunks"] = arr;
        std::ofstream out(req.state_file);
        out << j.dump();
    };

    std::vector<std::vector<int>> perms;
    if (req.canonical) perms = detail::all_permutations(req.n);

    std::atomic<int> next{0};
    auto worker = [&]() {
        SolverConfig cfg;
        cfg.exact_cap = std::max(req.n, 12);
        cfg.want_witness = false;
        while (true) {
            int c = next.fetch_add(1);
            if (c >= chunks) return;
            detail::ChunkResult& res = results[static_cast<std::size_t>(c)];
            if (res.done) continue;
            for (std::uint64_t idx = res.lo; idx < res.hi; ++idx) {
                FiniteColouredGraph g = colouring_from_index(req.n, req.r, idx);
                std::uint64_t weight = 1;
                if (req.canonical) {
                    auto orbit = detail::orbit_info(g, perms);
                    if (orbit.min_index != idx) continue; // not the representative
                    weight = orbit.orbit_size;
                }
                SolveResult sr = min_partition(g, req.mode, cfg);
                ++res.examined;
                if (!sr.feasible) {
                    ++res.infeasible;
                    continue;
                }
                ++res.histogram[sr.optimum];
                res.weighted[sr.optimum] += weight;
                if (sr.optimum > res.max_optimum) {
                    res.max_optimum = sr.optimum;
                    res.argmax_index = idx;
                }
            }
            res.done = true;
            if (checkpointing) {
                std::lock_guard<std::mutex> lock(state_mutex);
                write_state();
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepSummary sum;
    sum.n = req.n;
    sum.r = req.r;
    sum.mode = req.mode;
    sum.canonical = req.canonical;
    for (const auto& res : results) {
        sum.total += res.examined;
        sum.infeasible += res.infeasible;
        for (auto& [k, v] : res.histogram) sum.histogram[k] += v;
        for (auto& [k, v] : res.weighted) sum.weighted[k] += v;
        if (res.max_optimum > sum.max_optimum) {
            sum.max_optimum = res.max_optimum;
            sum.argmax_index = res.argmax_index;
        }
    }
    return sum;
}

} // namespace monopath
