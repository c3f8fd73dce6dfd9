#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubeknot/fixtures.hpp"
#include "cubeknot/knot.hpp"
#include "cubeknot/moves.hpp"
#include "oracles.hpp"

using namespace cubeknot;

namespace {

Cell cell(std::initializer_list<std::int32_t> anchor, std::initializer_list<int> axes) {
    return Cell::make(std::span<const std::int32_t>(anchor.begin(), anchor.size()),
                      std::span<const int>(axes.begin(), axes.size()));
}

KnotDiagram diagram4(std::vector<Cell> cells) {
    return KnotDiagram(make_context(4), 2, std::move(cells));
}

}  // namespace

TEST_CASE("euler characteristic of basic complexes") {
    CHECK(euler_characteristic(make_sphere().complex()) == 2);
    CHECK(euler_characteristic(make_torus().complex()) == 0);
    CHECK(euler_characteristic(make_square_knot().complex()) == 0);

    // Window-scan oracle agreement.
    CHECK(euler_characteristic(make_sphere().complex()) ==
          oracle::euler_scan(make_sphere().complex()));
    CHECK(euler_characteristic(make_torus().complex()) ==
          oracle::euler_scan(make_torus().complex()));

    // Subdivision invariance.
    const auto fine = subdivide_knot(make_sphere(), 2);
    CHECK(fine.cells().size() == 24);
    CHECK(euler_characteristic(fine.complex()) == 2);
    for (int m = 2; m <= 4; ++m) {
        CHECK(euler_characteristic(subdivide_knot(make_sphere(), m).complex()) == 2);
        CHECK(euler_characteristic(subdivide_knot(make_square_knot(), m).complex()) == 0);
    }
}

TEST_CASE("closed surface validation") {
    SUBCASE("cube boundary is a closed surface") {
        const auto rep = validate_closed_surface(make_sphere().complex());
        CHECK(rep.edge_closed);
        CHECK(rep.vertex_regular);
        CHECK(rep.connected);
        CHECK(rep.closed_surface());
    }
    SUBCASE("a single square fails edge closure") {
        const CellComplex one(make_context(4), 2, {cell({0, 0, 0, 0}, {1, 2})});
        const auto rep = validate_closed_surface(one);
        CHECK_FALSE(rep.edge_closed);
        CHECK(rep.offending_edges.size() == 4);
    }
    SUBCASE("two disjoint cube boundaries are closed and regular but disconnected") {
        auto cells = make_sphere().cells();
        const std::array<std::int32_t, 3> far{5, 0, 0};
        const auto moved = translated(make_sphere(), far);
        for (const Cell& c : moved.cells()) cells.push_back(c);
        const auto rep = validate_closed_surface(CellComplex(make_context(4), 2, cells));
        CHECK(rep.edge_closed);
        CHECK(rep.vertex_regular);
        CHECK_FALSE(rep.connected);
    }
    SUBCASE("vertex-sharing spheres fail vertex regularity") {
        const auto rep = validate_closed_surface(make_pinched_spheres().complex());
        CHECK(rep.edge_closed);
        CHECK_FALSE(rep.vertex_regular);
        REQUIRE(rep.offending_vertices.size() == 1);
        CHECK(rep.offending_vertices[0] == cell({1, 1, 1, 0}, {}));
    }
}

TEST_CASE("knot validation") {
    CHECK(make_sphere().valid());
    CHECK(make_sphere().report().orientable);
    CHECK(make_sphere().report().euler == 2);

    const auto torus = make_torus();
    CHECK_FALSE(torus.valid());
    CHECK(torus.report().closed);
    CHECK(torus.report().connected);
    CHECK(torus.report().orientable);
    CHECK(torus.report().euler == 0);

    CHECK_FALSE(make_pinched_spheres().valid());
    CHECK(make_square_knot().valid());

    // A path of edges is not a 1-knot.
    const CellComplex path(make_context(3), 1,
                           {cell({0, 0, 0}, {1}), cell({1, 0, 0}, {1})});
    CHECK_FALSE(validate_knot(path).valid);
}

TEST_CASE("boundary of any (k+1)-cell validates at every scale") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::array<std::int32_t, 4> a{};
        for (auto& v : a) v = static_cast<std::int32_t>(gen() % 7) - 3;

        std::vector<int> axes{1, 2, 3, 4};
        std::shuffle(axes.begin(), axes.end(), gen);
        axes.resize(3);
        std::sort(axes.begin(), axes.end());
        const Cell cube = Cell::make(std::span<const std::int32_t>(a.data(), 4), axes);
        for (std::int32_t scale : {1, 2, 3}) {
            const KnotDiagram d(CellComplex(LatticeContext{4, scale}, 2, boundary_cells(cube)));
            CHECK(d.valid());
        }

        const std::array<std::int32_t, 3> b{a[0], a[1], a[2]};
        const std::array<int, 2> sq_axes{1, 3};
        const Cell square = Cell::make(b, sq_axes);
        const KnotDiagram d1(CellComplex(make_context(3), 1, boundary_cells(square)));
        CHECK(d1.valid());
    }
}

TEST_CASE("orientability verdict does not depend on traversal order") {
    // Same cell set presented in different orders must give one verdict.
    auto cells = subdivide_knot(make_sphere(), 2).cells();
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(cells.begin(), cells.end(), gen);
        CHECK(orientable_surface(cells));
    }
}

TEST_CASE("neighborhood") {
    SUBCASE("empty complex") {
        const KnotDiagram empty(make_context(4), 2, {});
        CHECK(build_neighborhood(empty).empty());
    }
    SUBCASE("single square: every touching top cell, window scan agrees") {
        // 4 top cells contain the square itself; the rest touch its edges
        // and corners. Classification of the extras is Vertex/Edge, never
        // Empty, so they belong to the neighborhood.
        const KnotDiagram one(make_context(4), 2, {cell({0, 0, 0, 0}, {1, 2})});
        const auto hood = build_neighborhood(one);
        CHECK(hood == oracle::neighborhood_scan(one));
        CHECK(hood.size() == 36);
        int containing = 0;
        for (const Cell& q : hood)
            if (classify_intersection(q, one).cls == IntersectionClass::OneSquare) ++containing;
        CHECK(containing == 4);
        for (const Cell& q : hood)
            CHECK(classify_intersection(q, one).cls != IntersectionClass::Empty);
    }
    SUBCASE("sphere neighborhood matches the window scan") {
        const auto got = build_neighborhood(make_sphere());
        CHECK(got == oracle::neighborhood_scan(make_sphere()));
        CHECK(got.size() == 54);
    }
    SUBCASE("1-knot neighborhood matches the window scan") {
        const auto d = make_square_knot();
        CHECK(build_neighborhood(d) == oracle::neighborhood_scan(d));
    }
}

TEST_CASE("intersection classification") {
    const auto sphere = make_sphere();
    SUBCASE("empty iff outside the neighborhood, over a whole window") {
        const auto hood = build_neighborhood(sphere);
        const auto window =
            oracle::window_cells(oracle::bounding_window(sphere.cells(), 4, 2), 4, 4);
        for (const Cell& q : window) {
            const bool inside = std::binary_search(hood.begin(), hood.end(), q);
            const bool empty = classify_intersection(q, sphere).cls == IntersectionClass::Empty;
            CHECK(inside != empty);
        }
    }
    SUBCASE("one square") {
        // Top cell extruded along axis 4 from the bottom face.
        const Cell q = cell({0, 0, 0, 0}, {1, 2, 3, 4});
        const KnotDiagram one = diagram4({cell({0, 0, 0, 0}, {1, 2})});
        CHECK(classify_intersection(q, one).cls == IntersectionClass::OneSquare);
    }
    SUBCASE("corner vertex only") {
        const Cell q = cell({-1, -1, -1, 0}, {1, 2, 3, 4});
        const auto got = classify_intersection(q, sphere);
        CHECK(got.cls == IntersectionClass::Vertex);
    }
    SUBCASE("bare edge") {
        const Cell q = cell({0, -1, -1, 0}, {1, 2, 3, 4});
        CHECK(classify_intersection(q, sphere).cls == IntersectionClass::Edge);
    }
    SUBCASE("two squares sharing only a vertex give Other") {
        const KnotDiagram bad = diagram4({cell({0, 0, 0, 0}, {1, 2}), cell({1, 1, 0, 0}, {3, 4})});
        const Cell q = cell({0, 0, 0, 0}, {1, 2, 3, 4});
        const auto got = classify_intersection(q, bad);
        CHECK(got.cls == IntersectionClass::Other);
        CHECK_FALSE(got.witness.empty());
    }
    SUBCASE("three squares around a corner") {
        const KnotDiagram corner = diagram4(
            {cell({0, 0, 0, 0}, {1, 2}), cell({0, 0, 0, 0}, {1, 3}), cell({0, 0, 0, 0}, {2, 3})});
        const Cell q = cell({0, 0, 0, 0}, {1, 2, 3, 4});
        CHECK(classify_intersection(q, corner).cls == IntersectionClass::ThreeChainedSquares);
    }
}

TEST_CASE("tubularity") {
    SUBCASE("sphere at scale 1 is not tubular, after 3-fold subdivision it is") {
        const auto coarse = is_tubular(make_sphere());
        CHECK(coarse.tubular == oracle::tubular_scan(make_sphere()));
        CHECK_FALSE(coarse.tubular);
        CHECK_FALSE(coarse.offending.empty());

        const auto fine = subdivide_knot(make_sphere(), 3);
        const auto verdict = is_tubular(fine);
        CHECK(verdict.tubular == oracle::tubular_scan(fine));
        CHECK(verdict.tubular);
    }
    SUBCASE("1-knot square after 3-fold subdivision is tubular") {
        const auto fine = subdivide_knot(make_square_knot(), 3);
        const auto verdict = is_tubular(fine);
        CHECK(verdict.tubular == oracle::tubular_scan(fine));
        CHECK(verdict.tubular);
    }
}
