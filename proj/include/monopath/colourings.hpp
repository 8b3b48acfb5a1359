#pragma once

// Named parameterized colourings shared by the solver and the omega
// constructors, plus the text file format for finite instances.
//
// Spec grammar: NAME[:k=v,...], e.g. "parity", "mod:m=3", "random:seed=42,r=3".
// Every builtin is pure: repeated queries on the same pair agree, across runs
// and across workers.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monopath/graph.hpp"

namespace monopath {

struct ColouringSpec {
    std::string name;
    std::map<std::string, std::string> params;

    std::string canonical() const {
        std::string out = name;
        char sep = ':';
        for (const auto& [k, v] : params) {
            out += sep;
            out += k + "=" + v;
            sep = ',';
        }
        return out;
    }
};

inline ColouringSpec parse_colouring_spec(const std::string& text) {
    ColouringSpec spec;
    auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    if (spec.name.empty()) throw std::invalid_argument("empty colouring name");
    if (colon == std::string::npos) return spec;
    std::string rest = text.substr(colon + 1);
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("bad colouring parameter '" + item + "' (want k=v)");
        spec.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return spec;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stateless per-pair hash: parallel sweeps need no shared RNG state.
inline std::uint64_t pair_hash(std::uint64_t seed, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    std::uint64_t h = splitmix64(seed ^ 0x6d6f6e6f70617468ULL);
    h = splitmix64(h ^ u);
    h = splitmix64(h ^ v);
    return h;
}

inline std::uint64_t param_u64(const ColouringSpec& s, const std::string& key,
                               std::optional<std::uint64_t> fallback = std::nullopt) {
    auto it = s.params.find(key);
    if (it == s.params.end()) {
        if (fallback) return *fallback;
        throw std::invalid_argument("colouring '" + s.name + "' needs parameter '" + key + "'");
    }
    std::size_t pos = 0;
    std::uint64_t val = 0;
    try {
        val = std::stoull(it->second, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != it->second.size())
        throw std::invalid_argument("bad value for parameter '" + key + "': " + it->second);
    return val;
}

inline std::vector<Colour> param_table(const ColouringSpec& s, const std::string& key) {
    auto it = s.params.find(key);
    if (it == s.params.end())
        throw std::invalid_argument("colouring '" + s.name + "' needs parameter '" + key + "'");
    std::vector<Colour> table;
    std::istringstream in(it->second);
    std::string tok;
    while (std::getline(in, tok, '-')) {
        try {
            table.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad table entry '" + tok + "'");
        }
    }
    if (table.empty()) throw std::invalid_argument("empty layer table");
    return table;
}

} // namespace detail

/// A resolved colouring: colour count, pure pair function, periodicity hint.
struct BuiltColouring {
    int r = 1;
    std::function<Colour(Vertex, Vertex)> pair_colour; // total on u != v, symmetric
    std::optional<std::uint64_t> period;
    std::uint64_t period_offset = 0;
    std::string canonical_name;
};

inline BuiltColouring build_colouring(const ColouringSpec& spec) {
    BuiltColouring out;
    out.canonical_name = spec.canonical();
    if (spec.name == "constant") {
        std::uint64_t c = detail::param_u64(spec, "c", 0);
        std::uint64_t r = detail::param_u64(spec, "r", c + 1);
        if (c >= r) throw std::invalid_argument("constant: c must be below r");
        out.r = static_cast<int>(r);
        out.pair_colour = [c](Vertex, Vertex) { return static_cast<Colour>(c); };
        out.period = 1;
    } else if (spec.name == "parity") {
        std::uint64_t r = detail::param_u64(spec, "r", 2);
        if (r < 2) throw std::invalid_argument("parity needs r >= 2");
        out.r = static_cast<int>(r);
        out.pair_colour = [](Vertex u, Vertex v) { return static_cast<Colour>((u + v) % 2); };
        out.period = 2;
    } else if (spec.name == "mod") {
        std::uint64_t m = detail::param_u64(spec, "m");
        if (m == 0) throw std::invalid_argument("mod: m must be positive");
        std::uint64_t r = detail::param_u64(spec, "r", m);
        if (r == 0) throw std::invalid_argument("mod: r must be positive");
        out.r = static_cast<int>(r);
        out.pair_colour = [m, r](Vertex u, Vertex v) {
            return static_cast<Colour>(((u + v) % m) % r);
        };
        out.period = m;
    } else if (spec.name == "star") {
        std::uint64_t center = detail::param_u64(spec, "center", 0);
        std::uint64_t c = detail::param_u64(spec, "c", 1);
        std::uint64_t r = detail::param_u64(spec, "r", std::max<std::uint64_t>(2, c + 1));
        if (c >= r) throw std::invalid_argument("star: c must be below r");
        out.r = static_cast<int>(r);
        out.pair_colour = [center, c](Vertex u, Vertex v) {
            return (u == center || v == center) ? static_cast<Colour>(c) : 0;
        };
        out.period = 1;
        out.period_offset = center + 1;
    } else if (spec.name == "layer") {
        auto table = detail::param_table(spec, "table");
        Colour maxc = *std::max_element(table.begin(), table.end());
        Colour minc = *std::min_element(table.begin(), table.end());
        if (minc < 0) throw std::invalid_argument("layer: negative colour in table");
        std::uint64_t r = detail::param_u64(spec, "r", static_cast<std::uint64_t>(maxc) + 1);
        if (static_cast<std::uint64_t>(maxc) >= r)
            throw std::invalid_argument("layer: table entry exceeds r");
        out.r = static_cast<int>(r);
        std::uint64_t k = table.size();
        out.pair_colour = [table, k](Vertex u, Vertex v) {
            return table[static_cast<std::size_t>(std::max(u, v) % k)];
        };
        out.period = k;
    } else if (spec.name == "random") {
        std::uint64_t seed = detail::param_u64(spec, "seed", 0);
        std::uint64_t r = detail::param_u64(spec, "r");
        if (r == 0) throw std::invalid_argument("random: r must be positive");
        out.r = static_cast<int>(r);
        out.pair_colour = [seed, r](Vertex u, Vertex v) {
            return static_cast<Colour>(detail::pair_hash(seed, u, v) % r);
        };
        // no period: random colourings need the density (or a user) oracle
    } else {
        throw std::invalid_argument("unknown colouring '" + spec.name + "'");
    }
    return out;
}

inline LazyColouredGraph build_lazy(const ColouringSpec& spec) {
    BuiltColouring b = build_colouring(spec);
    LazyColouredGraph g(b.r, b.pair_colour);
    if (b.period) g.set_period_hint(*b.period, b.period_offset);
    g.set_name(b.canonical_name);
    return g;
}

inline LazyColouredGraph build_lazy(const std::string& text) {
    return build_lazy(parse_colouring_spec(text));
}

inline FiniteColouredGraph build_finite(const ColouringSpec& spec, int n) {
    BuiltColouring b = build_colouring(spec);
    return FiniteColouredGraph::from_function(n, b.r, b.pair_colour);
}

inline FiniteColouredGraph build_finite(const std::string& text, int n) {
    return build_finite(parse_colouring_spec(text), n);
}

struct RegistryEntry {
    std::string name;
    std::string synopsis;
    bool eventually_periodic;
};

inline std::vector<RegistryEntry> colouring_registry() {
    return {
        {"constant", "constant:c=0[,r]       every edge gets colour c", true},
        {"parity", "parity[:r=2]           c(u,v) = (u+v) mod 2", true},
        {"mod", "mod:m=M[,r=M]          c(u,v) = ((u+v) mod m) mod r", true},
        {"star", "star:center=0,c=1[,r]  edges at the center get colour c, others 0", true},
        {"layer", "layer:table=T0-T1-...  c(u,v) = table[max(u,v) mod len]", true},
        {"random", "random:seed=S,r=R      seeded per-pair hash (density oracle only)", false},
    };
}

// ---- finite graph text format -------------------------------------------
//
//   n r
//   u v c        (one line per edge, 0 <= u < v < n, 0 <= c < r)
//   ! missing u v
//
// Every pair must be either coloured or declared missing.

inline FiniteColouredGraph load_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };

    long long n = -1, r = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!(ls >> n >> r) || n < 0 || r < 1) fail("expected header 'n r'");
        std::string junk;
        if (ls >> junk) fail("trailing tokens after header");
        break;
    }
    if (n < 0) throw std::invalid_argument("empty graph file");

    FiniteColouredGraph g(static_cast<int>(n), static_cast<int>(r));
    std::vector<std::vector<bool>> assigned(static_cast<std::size_t>(n),
                                            std::vector<bool>(static_cast<std::size_t>(n), false));
    auto mark = [&](long long u, long long v) {
        if (assigned[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
            fail("duplicate pair " + std::to_string(u) + " " + std::to_string(v));
        assigned[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (line[0] == '!') {
            char bang;
            std::string word;
            long long u, v;
            if (!(ls >> bang >> word >> u >> v) || word != "missing") fail("bad directive");
            if (u < 0 || v < 0 || u >= v || v >= n) fail("missing pair out of range");
            mark(u, v);
            g.set_missing(static_cast<Vertex>(u), static_cast<Vertex>(v));
            continue;
        }
        long long u, v, c;
        if (!(ls >> u >> v >> c)) fail("expected 'u v c'");
        std::string junk;
        if (ls >> junk) fail("trailing tokens");
        if (u < 0 || v < 0 || u >= v || v >= n) fail("pair out of range or not u < v");
        if (c < 0 || c >= r) fail("colour " + std::to_string(c) + " out of range");
        mark(u, v);
        g.set_colour(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Colour>(c));
    }

    for (long long u = 0; u < n; ++u)
        for (long long v = u + 1; v < n; ++v)
            if (!assigned[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
                throw std::invalid_argument("pair " + std::to_string(u) + " " + std::to_string(v) +
                                            " neither coloured nor declared missing");
    return g;
}

inline FiniteColouredGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return load_graph(in);
}

inline void save_graph(const FiniteColouredGraph& g, std::ostream& out) {
    out << g.vertex_count() << " " << g.colour_count() << "\n";
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (auto c = g.edge_colour(u, v)) out << u << " " << v << " " << *c << "\n";
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.is_missing(u, v)) out << "! missing " << u << " " << v << "\n";
}

inline void save_graph_file(const FiniteColouredGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    save_graph(g, out);
}

} // namespace monopath
