#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "monopath/colourings.hpp"

using namespace monopath;

TEST_CASE("spec grammar") {
    auto s = parse_colouring_spec("mod:m=3,r=2");
    CHECK(s.name == "mod");
    CHECK(s.params.at("m") == "3");
    CHECK(s.params.at("r") == "2");
    CHECK(s.canonical() == "mod:m=3,r=2");
    CHECK(parse_colouring_spec("parity").params.empty());
    CHECK_THROWS_AS(parse_colouring_spec("mod:m"), std::invalid_argument);
    CHECK_THROWS_AS(build_colouring(parse_colouring_spec("nope")), std::invalid_argument);
    CHECK_THROWS_AS(build_colouring(parse_colouring_spec("mod:m=0")), std::invalid_argument);
    CHECK_THROWS_AS(build_colouring(parse_colouring_spec("random:seed=1")),
                    std::invalid_argument); // r required
}

TEST_CASE("builtins") {
    SECTION("constant") {
        auto g = build_finite("constant:c=0", 4);
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) CHECK(g.edge_colour(u, v) == std::optional<Colour>{0});
    }
    SECTION("parity") {
        auto g = build_lazy("parity");
        CHECK(g.edge_colour(2, 5) == std::optional<Colour>{1});
        CHECK(g.edge_colour(5, 2) == std::optional<Colour>{1});
    }
    SECTION("mod") {
        auto g = build_lazy("mod:m=3");
        CHECK(g.colour_count() == 3);
        CHECK(g.edge_colour(1, 4) == std::optional<Colour>{2});
    }
    SECTION("star") {
        auto g = build_lazy("star");
        CHECK(g.edge_colour(0, 7) == std::optional<Colour>{1});
        CHECK(g.edge_colour(3, 7) == std::optional<Colour>{0});
    }
    SECTION("layer") {
        auto g = build_lazy("layer:table=0-1-1");
        CHECK(g.edge_colour(0, 4) == std::optional<Colour>{1}); // table[4 % 3]
        CHECK(g.edge_colour(2, 3) == std::optional<Colour>{0}); // table[3 % 3]
    }
    SECTION("random purity and reproducibility") {
        auto a = build_lazy("random:seed=42,r=3");
        auto b = build_lazy("random:seed=42,r=3");
        for (Vertex u = 0; u < 12; ++u)
            for (Vertex v = u + 1; v < 12; ++v) {
                CHECK(a.edge_colour(u, v) == a.edge_colour(u, v));
                CHECK(a.edge_colour(u, v) == b.edge_colour(u, v));
            }
        auto c = build_lazy("random:seed=43,r=3");
        int diff = 0;
        for (Vertex u = 0; u < 12; ++u)
            for (Vertex v = u + 1; v < 12; ++v)
                if (a.edge_colour(u, v) != c.edge_colour(u, v)) ++diff;
        CHECK(diff > 0);
    }
}

TEST_CASE("period hints are honest") {
    // contract: colour(u,x) depends only on x mod P once x >= max(u+1, offset)
    for (const char* name : {"constant:c=0", "parity", "mod:m=3", "star", "layer:table=0-1-2"}) {
        auto g = build_lazy(name);
        auto period = g.period_hint();
        REQUIRE(period.has_value());
        const std::uint64_t P = *period;
        const std::uint64_t off = g.period_offset();
        for (Vertex u = 0; u < 9; ++u) {
            std::uint64_t t = std::max<std::uint64_t>(u + 1, off);
            for (std::uint64_t x = t; x < t + 3 * P; ++x) {
                INFO(name << " u=" << u << " x=" << x);
                CHECK(g.edge_colour(u, x) == g.edge_colour(u, x + P));
            }
        }
    }
    CHECK_FALSE(build_lazy("random:seed=1,r=2").period_hint().has_value());
}

TEST_CASE("graph file round trip") {
    auto g = build_finite("random:seed=7,r=3", 6);
    std::ostringstream out;
    save_graph(g, out);
    std::istringstream in(out.str());
    auto back = load_graph(in);
    CHECK(back == g);
}

TEST_CASE("graph files with missing edges round trip") {
    FiniteColouredGraph g(4, 2);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v)
            if (!(u == 1 && v == 3)) g.set_colour(u, v, (u + v) % 2);
    g.set_missing(1, 3);
    std::ostringstream out;
    save_graph(g, out);
    CHECK(out.str().find("! missing 1 3") != std::string::npos);
    std::istringstream in(out.str());
    auto back = load_graph(in);
    CHECK(back == g);
}

TEST_CASE("loader rejects malformed files") {
    auto try_load = [](const std::string& text) {
        std::istringstream in(text);
        return load_graph(in);
    };
    CHECK_NOTHROW(try_load("3 2\n0 1 0\n0 2 1\n1 2 1\n"));

    SECTION("uncoloured pair without a missing directive") {
        try {
            try_load("3 2\n0 1 0\n0 2 1\n");
            FAIL();
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("1 2") != std::string::npos);
        }
    }
    SECTION("colour out of range carries the line number") {
        try {
            try_load("3 2\n0 1 0\n0 2 5\n1 2 1\n");
            FAIL();
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SECTION("duplicate pair") {
        CHECK_THROWS_AS(try_load("3 2\n0 1 0\n0 1 1\n0 2 0\n1 2 0\n"), std::invalid_argument);
    }
    SECTION("pairs must satisfy u < v") {
        CHECK_THROWS_AS(try_load("3 2\n1 0 0\n0 2 1\n1 2 1\n"), std::invalid_argument);
    }
    SECTION("empty input") {
        CHECK_THROWS_AS(try_load(""), std::invalid_argument);
    }
}

TEST_CASE("registry names resolve") {
    for (const auto& entry : colouring_registry()) {
        ColouringSpec spec;
        spec.name = entry.name;
        if (entry.name == "mod") spec.params["m"] = "3";
        if (entry.name == "random") spec.params["r"] = "2";
        if (entry.name == "layer") spec.params["table"] = "0-1";
        CHECK_NOTHROW(build_colouring(spec));
    }
}
