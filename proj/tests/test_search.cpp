#include <doctest.h>

#include <algorithm>

#include "cubeknot/fixtures.hpp"
#include "cubeknot/search.hpp"
#include "oracles.hpp"

using namespace cubeknot;

namespace {

KnotDiagram shifted_sphere() {
    const std::array<std::int32_t, 1> e1{1};
    return translated(make_sphere(), e1);
}

}  // namespace

TEST_CASE("canonical keys") {
    const auto sphere = make_sphere();
    const std::array<std::int32_t, 4> delta{2, 0, 0, 0};
    const auto moved = translated(sphere, delta);

    CHECK(canonical_key(sphere) == canonical_key(sphere));
    CHECK(canonical_key(sphere, true) == canonical_key(moved, true));
    CHECK_FALSE(canonical_key(sphere, false) == canonical_key(moved, false));
}

TEST_CASE("search: trivial and single-step certificates") {
    const auto sphere = make_sphere();
    SUBCASE("source equals target") {
        const auto res = bfs_search(sphere, sphere, 5, 1000);
        REQUIRE(res.certificate.has_value());
        CHECK(res.certificate->steps.empty());
        CHECK(replay(*res.certificate).ok);
    }
    SUBCASE("one exchange away") {
        const auto moves = enumerate_face_moves(sphere);
        const auto target = apply_move(sphere, moves.front());
        const auto res = bfs_search(sphere, target, 4, 10000);
        REQUIRE(res.certificate.has_value());
        CHECK(res.certificate->steps.size() == 1);
        CHECK(replay(*res.certificate).ok);
    }
    SUBCASE("zero move budget is inconclusive for distinct diagrams") {
        const auto res = bfs_search(sphere, shifted_sphere(), 0, 1000);
        CHECK_FALSE(res.certificate.has_value());
        CHECK(res.stats.move_budget_exhausted);
    }
}

TEST_CASE("search: translated sphere") {
    const auto sphere = make_sphere();
    const auto target = shifted_sphere();

    // Minimal length recorded by the exhaustive reference search.
    const int reference = oracle::shortest_path_scan(sphere, target, 3);
    REQUIRE(reference == 2);

    SUBCASE("without normalization the exchange path is found") {
        const auto res = bfs_search(sphere, target, 12, 100000);
        REQUIRE(res.certificate.has_value());
        CHECK(res.certificate->steps.size() == static_cast<std::size_t>(reference));
        CHECK(replay(*res.certificate).ok);
        CHECK(res.certificate->final_digest == diagram_digest(target));
    }
    SUBCASE("with normalization source and target already match") {
        const auto res = bfs_search(sphere, target, 12, 100000, true);
        REQUIRE(res.certificate.has_value());
        CHECK(res.certificate->steps.empty());
        CHECK(replay(*res.certificate).ok);
    }
    SUBCASE("normalization finds a translate of a genuinely different target") {
        // Distinct shapes: sphere vs a 10-square box two units away.
        const auto moves = enumerate_face_moves(sphere);
        const auto box = apply_move(sphere, moves.front());
        const std::array<std::int32_t, 2> far{0, 3};
        const auto far_box = translated(box, far);
        const auto res = bfs_search(sphere, far_box, 6, 100000, true);
        REQUIRE(res.certificate.has_value());
        CHECK(res.certificate->steps.size() == 1);
        const auto rep = replay(*res.certificate);
        CHECK(rep.ok);
    }
}

TEST_CASE("search result is shortest: agreement with the reference search") {
    const auto sphere = make_sphere();
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        const auto walk = random_walk(sphere, 3, seed);
        const int reference = oracle::shortest_path_scan(sphere, walk.final, 3);
        REQUIRE(reference >= 0);
        const auto res = bfs_search(sphere, walk.final, 6, 100000);
        REQUIRE(res.certificate.has_value());
        CHECK(static_cast<int>(res.certificate->steps.size()) == reference);
    }
}

TEST_CASE("replay detects corruption") {
    const auto sphere = make_sphere();
    const auto walk = random_walk(sphere, 4, 99);
    REQUIRE(replay(walk.certificate).ok);

    SUBCASE("a swapped step fails at its index") {
        MoveSequence bad = walk.certificate;
        auto& step = std::get<FaceBoundaryMove>(bad.steps[2]);
        step = invert(step);
        const auto rep = replay(bad);
        CHECK_FALSE(rep.ok);
        CHECK(rep.failed_step == 2);
    }
    SUBCASE("empty certificate with a wrong digest fails at the trailer") {
        MoveSequence bad;
        bad.initial = sphere;
        bad.final_digest = "sha256:0000";
        const auto rep = replay(bad);
        CHECK_FALSE(rep.ok);
        CHECK(rep.failed_step == 0);
        CHECK(rep.message.find("digest") != std::string::npos);
    }
    SUBCASE("invalid initial diagram is rejected") {
        MoveSequence bad;
        bad.initial = make_pinched_spheres();
        bad.final_digest = diagram_digest(bad.initial);
        CHECK_FALSE(replay(bad).ok);
    }
}

TEST_CASE("random walks are reproducible and reversible") {
    const auto sphere = make_sphere();
    SUBCASE("zero steps") {
        const auto walk = random_walk(sphere, 0, 1);
        CHECK(walk.final.cells() == sphere.cells());
        CHECK(walk.certificate.steps.empty());
    }
    SUBCASE("same seed, same walk") {
        const auto a = random_walk(sphere, 10, 12345);
        const auto b = random_walk(sphere, 10, 12345);
        CHECK(a.final.cells() == b.final.cells());
        const auto c = random_walk(sphere, 10, 54321);
        CHECK((c.final.cells() != a.final.cells()));
    }
    SUBCASE("walk endpoints are reachable within the walk length") {
        for (int s = 1; s <= 4; ++s) {
            const auto walk = random_walk(sphere, s, 1000 + static_cast<std::uint64_t>(s));
            const auto res = bfs_search(sphere, walk.final, s, 100000);
            REQUIRE(res.certificate.has_value());
            CHECK(res.certificate->steps.size() <= static_cast<std::size_t>(s));
            CHECK(replay(*res.certificate).ok);
        }
    }
}

TEST_CASE("every stored search state is a valid diagram") {
    // Small search; rebuild diagrams from scratch along the certificate.
    const auto sphere = make_sphere();
    const auto walk = random_walk(sphere, 2, 7);
    const auto res = bfs_search(sphere, walk.final, 2, 5000);
    REQUIRE(res.certificate.has_value());
    KnotDiagram cur = res.certificate->initial;
    CHECK(cur.valid());
    for (const auto& step : res.certificate->steps) {
        cur = apply_move(cur, std::get<FaceBoundaryMove>(step));
        CHECK(cur.valid());
    }
}
