#include <catch2/catch_amalgamated.hpp>

#include "monopath/colourings.hpp"
#include "monopath/json_io.hpp"
#include "monopath/omega.hpp"

using namespace monopath;

namespace {
const auto kAll = [](Vertex) { return true; };
}

TEST_CASE("uftrick labelling") {
    OmegaConfig cfg;
    SECTION("constant colouring: one class") {
        auto g = build_lazy("constant:c=0");
        auto oracle = make_congruence_oracle();
        auto res = uftrick_partition(g, kAll, *oracle, 16, cfg);
        CHECK(res.concentration_colour == 0);
        for (auto l : res.labels) CHECK(l == 0);
        CHECK(res.unverified.empty());
        CHECK(oracle->check_coherence().ok());
    }
    SECTION("parity with the even-concentrating chain") {
        auto g = build_lazy("parity");
        auto oracle = make_congruence_oracle();
        auto res = uftrick_partition(g, kAll, *oracle, 16, cfg);
        CHECK(res.concentration_colour == 0);
        for (Vertex v = 0; v < 16; ++v) CHECK(res.labels[v] == static_cast<Colour>(v % 2));
        CHECK(res.unverified.empty());
    }
    SECTION("parity with an odd-concentrating chain flips the labels") {
        auto g = build_lazy("parity");
        auto oracle = make_congruence_oracle({0, 1});
        auto res = uftrick_partition(g, kAll, *oracle, 16, cfg);
        for (Vertex v = 0; v < 16; ++v) CHECK(res.labels[v] == static_cast<Colour>((v + 1) % 2));
        // the odds now carry label 0, and they are the large class: colour 0
        // is the same-parity colour, so i_c stays 0 under either chain
        CHECK(res.concentration_colour == 0);
    }
    SECTION("star: the centre is the odd one out") {
        auto g = build_lazy("star");
        auto oracle = make_congruence_oracle();
        auto res = uftrick_partition(g, kAll, *oracle, 12, cfg);
        CHECK(res.concentration_colour == 0);
        CHECK(res.labels[0] == 1);
        for (Vertex v = 1; v < 12; ++v) CHECK(res.labels[v] == 0);
    }
    SECTION("every witness check passes on the builtins") {
        for (const char* name : {"constant:c=0", "parity", "mod:m=3", "star"}) {
            auto g = build_lazy(name);
            auto oracle = make_congruence_oracle();
            auto res = uftrick_partition(g, kAll, *oracle, 32, cfg);
            INFO(name);
            CHECK(res.unverified.empty());
            for (const auto& chk : res.witness_checks) CHECK(chk.pass);
        }
    }
}

TEST_CASE("rado cover") {
    OmegaConfig cfg;
    SECTION("constant colouring covers in order") {
        auto g = build_lazy("constant:c=0");
        auto oracle = make_congruence_oracle();
        auto cert = rado_cover(g, *oracle, 10, cfg);
        REQUIRE(cert.streams.size() == 1);
        CHECK(cert.streams[0].vertices == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
        CHECK(cert.coverage_bound == 10);
        CHECK(cert.params.unverified_steps.empty());
        CHECK(verify_certificate(g, cert).ok());
    }
    SECTION("parity: odds absorb even connectors") {
        auto g = build_lazy("parity");
        auto oracle = make_congruence_oracle();
        auto cert = rado_cover(g, *oracle, 60, cfg);
        REQUIRE(cert.streams.size() == 2);
        CHECK(verify_certificate(g, cert).ok());
        // stream of colour 0 holds only evens; stream of colour 1 alternates
        for (const auto& s : cert.streams) {
            REQUIRE(s.colour.has_value());
            if (*s.colour == 0)
                for (Vertex v : s.vertices) CHECK(v % 2 == 0);
            else
                for (Vertex v : s.vertices) {
                    (void)v; // odds plus even connectors; validity checked above
                }
        }
        // every vertex below the bound is in exactly one stream
        std::set<Vertex> seen;
        for (const auto& s : cert.streams)
            for (Vertex v : s.vertices) CHECK(seen.insert(v).second);
        for (Vertex v = 0; v < cert.coverage_bound; ++v) CHECK(seen.count(v) == 1);
    }
    SECTION("star: a singleton stream for the centre") {
        auto g = build_lazy("star");
        auto oracle = make_congruence_oracle();
        auto cert = rado_cover(g, *oracle, 40, cfg);
        REQUIRE(cert.streams.size() == 2);
        CHECK(verify_certificate(g, cert).ok());
        CHECK(cert.streams[1].vertices == std::vector<Vertex>{0}); // colour 1
    }
    SECTION("coverage bound grows unboundedly") {
        for (const char* name : {"constant:c=0", "parity", "mod:m=3", "star"}) {
            auto g = build_lazy(name);
            OmegaConfig c1;
            for (std::uint64_t s : {20u, 40u, 80u}) {
                auto o1 = make_congruence_oracle();
                auto o2 = make_congruence_oracle();
                auto small = rado_cover(g, *o1, s, c1);
                auto big = rado_cover(g, *o2, 2 * s, c1);
                INFO(name << " steps " << s);
                CHECK(big.coverage_bound > small.coverage_bound);
            }
        }
    }
    SECTION("streams have pairwise distinct colours") {
        auto g = build_lazy("mod:m=3");
        auto oracle = make_congruence_oracle();
        auto cert = rado_cover(g, *oracle, 100, cfg);
        std::set<Colour> cols;
        for (const auto& s : cert.streams) CHECK(cols.insert(*s.colour).second);
        CHECK(cols.size() <= 3);
    }
    SECTION("byte-identical certificates on identical parameters") {
        auto g = build_lazy("parity");
        auto o1 = make_congruence_oracle();
        auto o2 = make_congruence_oracle();
        auto c1 = rado_cover(g, *o1, 50, cfg);
        auto c2 = rado_cover(g, *o2, 50, cfg);
        CHECK(to_json(c1).dump() == to_json(c2).dump());
    }
}

TEST_CASE("zig-zag") {
    SECTION("disjoint half graph: minimal valid alternation") {
        auto h = HTypeGraph::disjoint_standard();
        auto stream = zigzag_htype(h);
        auto prefix = stream.prefix(7);
        // a_0, b_1, a_1, b_2, a_2, b_3, a_3
        CHECK(prefix.vertices == std::vector<Vertex>{0, 3, 2, 5, 4, 7, 6});
        CHECK(verify_path(h, prefix).ok());
    }
    SECTION("identified complete graph interleaves with lookahead") {
        auto h = HTypeGraph::identified_complete();
        auto stream = zigzag_htype(h);
        auto prefix = stream.prefix(7);
        CHECK(prefix.vertices == std::vector<Vertex>{0, 2, 1, 4, 3, 6, 5});
        CHECK(verify_path(h, prefix).ok());
    }
    SECTION("index discipline and main-class coverage") {
        auto h = HTypeGraph::disjoint_standard();
        auto stream = zigzag_htype(h);
        auto prefix = stream.prefix(2001);
        CHECK(verify_path(h, prefix).ok());
        std::set<std::uint64_t> covered_a;
        std::size_t n_seen = 0;
        for (Vertex v : prefix.vertices) {
            ++n_seen;
            if (auto xi = h.a_index(v)) covered_a.insert(*xi);
            // coverage invariant: a_xi covered for all xi < floor(N/2)
            for (std::uint64_t xi = 0; xi < n_seen / 2; ++xi) CHECK(covered_a.count(xi) == 1);
        }
    }
}

TEST_CASE("lambda configurations") {
    OmegaConfig cfg;
    SECTION("all-0 cross colouring: singletons work") {
        auto h = HTypeGraph::disjoint_standard(1);
        auto found = find_configuration(h, {0}, 3, 40, cfg);
        REQUIRE(found.has_value());
        REQUIRE(found->a_sets.size() == 3);
        for (std::uint64_t xi = 0; xi < 3; ++xi) {
            CHECK(found->a_sets[xi] == std::vector<Vertex>{h.a_vertex(xi)});
            CHECK(found->y_points[xi] == h.b_vertex(xi));
        }
    }
    SECTION("empty colour set: never found") {
        auto h = HTypeGraph::disjoint_standard(1);
        CHECK_FALSE(find_configuration(h, {}, 2, 40, cfg).has_value());
    }
    SECTION("c(a_i,b_j) = j mod 2") {
        auto cross = [](std::uint64_t, std::uint64_t zeta) {
            return static_cast<Colour>(zeta % 2);
        };
        auto h = HTypeGraph::disjoint_standard(2, cross);
        CHECK_FALSE(find_configuration(h, {0}, 3, 40, cfg).has_value());
        auto both = find_configuration(h, {0, 1}, 3, 40, cfg);
        REQUIRE(both.has_value());
        for (std::uint64_t xi = 0; xi < 3; ++xi)
            CHECK(both->a_sets[xi].size() == 1);
    }
}

TEST_CASE("ultrafilter split") {
    OmegaConfig cfg;
    auto layered = [](std::uint64_t, std::uint64_t zeta) { return static_cast<Colour>(zeta % 2); };
    SECTION("j mod 2 with the even-concentrating chain") {
        auto h = HTypeGraph::disjoint_standard(2, layered);
        h.set_cross_period_hint(2, 0);
        auto oracle = make_congruence_oracle();
        auto res = ultrafilter_split(h, kAll, {}, *oracle, 12, cfg);
        CHECK(res.classes[0].size() == 12);
        CHECK(res.classes.count(1) == 0);
        CHECK(res.unverified.empty());
    }
    SECTION("constant cross colouring, avoiding its only colour: precondition fails") {
        auto h = HTypeGraph::disjoint_standard(1);
        h.set_cross_period_hint(1, 0);
        auto oracle = make_congruence_oracle();
        CHECK_THROWS_AS(ultrafilter_split(h, kAll, {0}, *oracle, 8, cfg), std::invalid_argument);
    }
    SECTION("constant cross colouring, avoiding nothing") {
        auto h = HTypeGraph::disjoint_standard(1);
        h.set_cross_period_hint(1, 0);
        auto oracle = make_congruence_oracle();
        auto res = ultrafilter_split(h, kAll, {}, *oracle, 8, cfg);
        CHECK(res.classes[0].size() == 8);
        for (const auto& chk : res.witness_checks) CHECK(chk.pass);
    }
}

TEST_CASE("stitch") {
    auto constant = build_lazy("constant:c=0");
    auto parity = build_lazy("parity");
    auto seg = [](std::initializer_list<Vertex> vs, std::optional<Colour> c) {
        PathSeq p;
        p.vertices = vs;
        p.colour = c;
        return p;
    };
    SECTION("plain concatenation") {
        auto joined = stitch(constant, {seg({0, 1}, 0), seg({2, 3}, 0)}, 0);
        CHECK(joined.vertices == std::vector<Vertex>{0, 1, 2, 3});
        CHECK(joined.colour == std::optional<Colour>{0});
    }
    SECTION("parity junction that works") {
        auto joined = stitch(parity, {seg({0, 2}, 0), seg({4, 6}, 0)}, 0);
        CHECK(joined.vertices == std::vector<Vertex>{0, 2, 4, 6});
    }
    SECTION("parity junction that fails names the junction") {
        try {
            stitch(parity, {seg({0, 2}, 0), seg({3, 5}, 0)}, 0);
            FAIL();
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("(2,3)") != std::string::npos);
        }
    }
    SECTION("duplicate vertices across segments") {
        CHECK_THROWS_AS(stitch(constant, {seg({0, 1}, 0), seg({1, 2}, 0)}, 0),
                        std::invalid_argument);
    }
    SECTION("singleton segments are allowed") {
        auto joined = stitch(constant, {seg({0}, std::nullopt), seg({5, 7}, 0)}, 0);
        CHECK(joined.vertices == std::vector<Vertex>{0, 5, 7});
    }
}

TEST_CASE("cover_from") {
    OmegaConfig cfg;
    SECTION("constant colouring absorbs everything from a late start") {
        auto g = build_lazy("constant:c=0");
        auto stream = cover_from(g, kAll, 0, 5, 100, cfg);
        auto prefix = stream.prefix(8);
        CHECK(prefix.vertices == std::vector<Vertex>{5, 0, 1, 2, 3, 4, 6, 7});
        CHECK(verify_path(g, prefix).ok());
    }
    SECTION("parity colour 1 covering the odds") {
        auto g = build_lazy("parity");
        auto odds = [](Vertex v) { return v % 2 == 1; };
        auto stream = cover_from(g, odds, 1, 1, 100, cfg);
        auto prefix = stream.prefix(40);
        CHECK(verify_path(g, prefix).ok());
        // all odds below the stream frontier are covered
        std::set<Vertex> seen(prefix.vertices.begin(), prefix.vertices.end());
        Vertex top = *std::max_element(prefix.vertices.begin(), prefix.vertices.end());
        std::size_t missing = 0;
        for (Vertex v = 1; v + 8 < top; v += 2)
            if (!seen.count(v)) ++missing;
        CHECK(missing == 0);
    }
    SECTION("a vertex with no edges in the colour fails the unseparability check") {
        auto g = build_lazy("star");
        try {
            cover_from(g, kAll, 0, 0, 50, cfg);
            FAIL();
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("(0,") != std::string::npos);
        }
    }
    SECTION("stream certificates verify") {
        auto g = build_lazy("parity");
        auto odds = [](Vertex v) { return v % 2 == 1; };
        auto stream = cover_from(g, odds, 1, 1, 50, cfg);
        auto cert = stream_certificate(g, stream, 50, cfg, "cover", "parity", "none");
        CHECK(verify_certificate(g, cert).ok());
    }
}
