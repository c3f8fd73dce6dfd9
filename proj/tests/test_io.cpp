#include <doctest.h>

#include "cubeknot/digest.hpp"
#include "cubeknot/fixtures.hpp"
#include "cubeknot/io.hpp"
#include "cubeknot/search.hpp"

using namespace cubeknot;

TEST_CASE("cell files round-trip canonically") {
    const auto sphere = make_sphere();
    const std::string text = to_text(sphere.complex());
    const auto parsed = parse_cells(text);
    CHECK(parsed.cells() == sphere.cells());
    CHECK(to_text(parsed) == text);

    // Comments, blank lines and shuffled order collapse to the same form.
    const std::string messy =
        "# a sphere\n\ncubeknot 2 4 1\n"
        "cell 1 0 0 0 : 2 3\n"
        "cell 0 0 0 0 : 1 2   # bottom\n"
        "cell 0 0 0 0 : 1 3\n"
        "cell 0 0 1 0 : 1 2\n"
        "cell 0 0 0 0 : 2 3\n"
        "cell 0 1 0 0 : 1 3\n";
    CHECK(to_text(parse_cells(messy)) == text);
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("unsorted axes") {
        const std::string bad = "cubeknot 2 4 1\ncell 0 0 0 0 : 2 1\n";
        try {
            parse_cells(bad);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("ascending") != std::string::npos);
        }
    }
    SUBCASE("duplicate cell") {
        const std::string bad =
            "cubeknot 2 4 1\ncell 0 0 0 0 : 1 2\ncell 0 0 0 0 : 1 2\n";
        try {
            parse_cells(bad);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(parse_cells("cubeknot 2 4 1\ncell 0 0 0 0 : 1\n"), ParseError);
        CHECK_THROWS_AS(parse_cells("cubeknot 2 4 1\ncell 0 0 0 : 1 2\n"), ParseError);
    }
    SUBCASE("bad header") {
        CHECK_THROWS_AS(parse_cells("cubeknot 2 9 1\n"), ParseError);
        CHECK_THROWS_AS(parse_cells("knot 2 4 1\n"), ParseError);
        CHECK_THROWS_AS(parse_cells(""), ParseError);
    }
}

TEST_CASE("vertex cells serialize with an empty axis list") {
    const CellComplex points(make_context(3), 0,
                             {Cell::vertex(std::array<std::int32_t, 3>{1, 2, 3})});
    const std::string text = to_text(points);
    CHECK(text.find("cell 1 2 3 :") != std::string::npos);
    CHECK(parse_cells(text).cells() == points.cells());
}

TEST_CASE("digests are stable") {
    // Frozen: any change to the canonical serialization is a format break.
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const auto digest = diagram_digest(make_sphere());
    CHECK(digest.rfind("sha256:", 0) == 0);
    CHECK(digest == diagram_digest(make_sphere()));
}

TEST_CASE("certificates round-trip through text and replay") {
    const auto walk = random_walk(make_sphere(), 5, 2024);
    const std::string text = to_text(walk.certificate);
    const MoveSequence parsed = parse_certificate(text);
    CHECK(parsed.final_digest == walk.certificate.final_digest);
    CHECK(parsed.steps.size() == walk.certificate.steps.size());
    CHECK(to_text(parsed) == text);
    CHECK(replay(parsed).ok);

    SUBCASE("subdivision steps survive the round trip") {
        MoveSequence seq;
        seq.initial = make_sphere();
        seq.steps.emplace_back(SubdivisionStep{3});
        const auto fine = subdivide_knot(make_sphere(), 3);
        seq.final_digest = diagram_digest(fine);
        const auto back = parse_certificate(to_text(seq));
        CHECK(replay(back).ok);
    }
    SUBCASE("malformed certificates are rejected") {
        CHECK_THROWS_AS(parse_certificate("cubeknot-cert\n"), ParseError);
        CHECK_THROWS_AS(parse_certificate(text + "cell 0 0 0 0 : 1 2\n"), ParseError);
        const std::string no_digest = text.substr(0, text.rfind("digest"));
        CHECK_THROWS_AS(parse_certificate(no_digest), ParseError);
    }
}
