#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "monopath/colourings.hpp"
#include "monopath/json_io.hpp"
#include "monopath/solver.hpp"
#include "monopath/verify.hpp"

using namespace monopath;

namespace {

PathSeq path(std::initializer_list<Vertex> vs, std::optional<Colour> c = std::nullopt) {
    PathSeq p;
    p.vertices = vs;
    p.colour = c;
    return p;
}

} // namespace

TEST_CASE("verify_path") {
    auto k5 = build_finite("constant:c=0", 5);
    CHECK(verify_path(k5, path({0, 1, 2}, 0)).ok());
    CHECK(verify_path(k5, path({})).ok());
    CHECK(verify_path(k5, path({3})).ok());

    auto parity = build_lazy("parity");
    CHECK(verify_path(parity, path({0, 2, 4}, 0)).ok());

    auto rep = verify_path(parity, path({0, 1}, 0));
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.issues.front().find("index 0") != std::string::npos);

    CHECK_FALSE(verify_path(parity, path({0, 2, 0}, 0)).ok());  // repeated vertex
    CHECK_FALSE(verify_path(parity, path({0, 2, 4})).ok());     // label missing
    CHECK_FALSE(verify_path(k5, path({0, 1}, 7)).ok());         // label out of range
    CHECK_FALSE(verify_path(k5, path({0, 9}, 0)).ok());         // vertex out of range
}

TEST_CASE("verify_partition") {
    auto k3 = build_finite("constant:c=0", 3);
    PathPartition good;
    good.mode = PartitionMode::any_colours;
    good.paths = {path({0, 1, 2}, 0)};
    good.cover = {0, 1, 2};
    CHECK(verify_partition(k3, good).ok());

    PathPartition dup;
    dup.mode = PartitionMode::any_colours;
    dup.paths = {path({0, 1}, 0), path({1, 2}, 0)};
    dup.cover = {0, 1, 2};
    auto rep = verify_partition(k3, dup);
    REQUIRE_FALSE(rep.ok());
    bool mentions_dup = false;
    for (auto& m : rep.issues)
        if (m.find("vertex 1") != std::string::npos) mentions_dup = true;
    CHECK(mentions_dup);

    // K_4 with c(0,1)=0, all other edges colour 1
    FiniteColouredGraph k4(4, 2);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.set_colour(u, v, (u == 0 && v == 1) ? 0 : 1);
    PathPartition single;
    single.mode = PartitionMode::distinct_colours;
    single.paths = {path({1, 2, 0, 3}, 1)};
    single.cover = {0, 1, 2, 3};
    CHECK(verify_partition(k4, single).ok());

    SECTION("coverage must match the claimed cover exactly") {
        PathPartition p = good;
        p.cover = {0, 1};
        CHECK_FALSE(verify_partition(k3, p).ok());
        p.cover = {0, 1, 2};
        p.paths = {path({0, 1}, 0)};
        CHECK_FALSE(verify_partition(k3, p).ok());
    }
    SECTION("distinct mode rejects duplicate labels, also on degenerate paths") {
        FiniteColouredGraph k2(2, 2);
        k2.set_colour(0, 1, 0);
        PathPartition p;
        p.mode = PartitionMode::distinct_colours;
        p.paths = {path({0}, 1), path({1}, 1)};
        p.cover = {0, 1};
        CHECK_FALSE(verify_partition(k2, p).ok());
        p.paths = {path({0}, 0), path({1}, 1)};
        CHECK(verify_partition(k2, p).ok());
        p.paths = {path({0}), path({1}, 1)};
        CHECK_FALSE(verify_partition(k2, p).ok()); // degenerate path needs a label
    }
    SECTION("report lists every failed clause") {
        PathPartition p;
        p.mode = PartitionMode::distinct_colours;
        p.paths = {path({0, 1}, 0), path({1}, 0)};
        p.cover = {0, 1, 2};
        auto r = verify_partition(k3, p);
        CHECK(r.issues.size() >= 3); // duplicate vertex, missing cover vertex, duplicate label
    }
}

TEST_CASE("verify_certificate") {
    auto constant = build_lazy("constant:c=0");

    PrefixCertificate cert;
    cert.step_count = 10;
    cert.streams = {path({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 0)};
    cert.coverage_bound = 10;
    cert.witnesses = {10};
    cert.params.horizon = 100;
    CHECK(verify_certificate(constant, cert).ok());

    SECTION("streams sharing a vertex") {
        auto bad = cert;
        bad.streams = {path({0, 1, 2, 3, 4, 5, 6, 7}, 0), path({7, 8, 9}, 0)};
        bad.witnesses = {10, 11};
        CHECK(verify_certificate(constant, bad).status == VerifyStatus::violation);
    }
    SECTION("witness already used") {
        auto bad = cert;
        bad.witnesses = {9};
        CHECK(verify_certificate(constant, bad).status == VerifyStatus::violation);
    }
    SECTION("uncovered vertex below the bound") {
        auto bad = cert;
        bad.streams = {path({0, 1, 2, 3, 4, 5, 6, 7, 8}, 0)};
        CHECK(verify_certificate(constant, bad).status == VerifyStatus::violation);
    }
    SECTION("witness beyond the horizon is unverifiable, not wrong") {
        auto odd = cert;
        odd.witnesses = {1000};
        odd.params.horizon = 500;
        CHECK(verify_certificate(constant, odd).status == VerifyStatus::unverifiable);
    }
    SECTION("witness must match the stream colour") {
        auto parity = build_lazy("parity");
        PrefixCertificate c2;
        c2.step_count = 2;
        c2.streams = {path({0, 2}, 0)};
        c2.coverage_bound = 1;
        c2.witnesses = {3}; // edge (2,3) has colour 1
        c2.params.horizon = 50;
        CHECK(verify_certificate(parity, c2).status == VerifyStatus::violation);
        c2.witnesses = {4};
        CHECK(verify_certificate(parity, c2).ok());
    }
}

TEST_CASE("partition and certificate JSON round-trips") {
    PathPartition part;
    part.mode = PartitionMode::distinct_colours;
    part.paths = {path({0, 2, 4}, 0), path({1}, 1)};
    part.cover = {0, 1, 2, 4};
    auto j = to_json(part);
    auto back = partition_from_json(j);
    CHECK(to_json(back) == j);

    PrefixCertificate cert;
    cert.step_count = 3;
    cert.streams = {path({0, 1}, 0)};
    cert.coverage_bound = 2;
    cert.witnesses = {std::nullopt};
    cert.params.colouring = "parity";
    cert.params.horizon = 30;
    auto cj = to_json(cert);
    auto cback = certificate_from_json(cj);
    CHECK(to_json(cback) == cj);
}

TEST_CASE("closed loop: solver witnesses always verify") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        int r = 1 + static_cast<int>(rng() % 3);
        auto g = build_finite("random:seed=" + std::to_string(rng()) + ",r=" + std::to_string(r),
                              n);
        for (auto mode : {PartitionMode::any_colours, PartitionMode::distinct_colours}) {
            auto res = min_partition(g, mode);
            if (!res.feasible) continue;
            auto rep = verify_partition(g, res.witness);
            INFO("trial " << trial << " mode " << to_string(mode));
            CHECK(rep.ok());
        }
    }
}

TEST_CASE("mutation sensitivity (sampled)") {
    std::mt19937_64 rng(23);
    int rejected = 0, total = 0;
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        auto g = build_finite("random:seed=" + std::to_string(rng()) + ",r=2", n);
        auto res = min_partition(g, PartitionMode::any_colours);
        REQUIRE(res.feasible);

        // duplicate a vertex of one path inside another
        auto mutated = res.witness;
        if (mutated.paths.size() >= 2) {
            Vertex v = mutated.paths[0].vertices.front();
            mutated.paths[1].vertices[0] = v;
            ++total;
            if (!verify_partition(g, mutated).ok()) ++rejected;
        }
        // relabel a non-degenerate path
        for (auto& p : res.witness.paths) {
            if (p.size() >= 2) {
                auto m2 = res.witness;
                for (auto& q : m2.paths)
                    if (q.vertices == p.vertices) q.colour = (*q.colour + 1) % 2;
                ++total;
                if (!verify_partition(g, m2).ok()) ++rejected;
                break;
            }
        }
        // delete a vertex
        auto m3 = res.witness;
        m3.paths[0].vertices.pop_back();
        ++total;
        if (!verify_partition(g, m3).ok()) ++rejected;
    }
    CHECK(rejected == total);
}
