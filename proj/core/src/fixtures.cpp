#include "cubeknot/fixtures.hpp"

#include <algorithm>
#include <unordered_map>

namespace cubeknot {

namespace {

Cell cube4(std::int32_t x, std::int32_t y, std::int32_t z) {
    const std::array<std::int32_t, 4> anchor{x, y, z, 0};
    const std::array<int, 3> axes{1, 2, 3};
    return Cell::make(anchor, axes);
}

std::vector<Cell> vertical_slab(const KnotDiagram& base, int slab) {
    std::vector<Cell> out;
    out.reserve(base.cells().size());
    for (const Cell& s : base.cells()) {
        auto axes = s.axes();
        axes.push_back(5);
        auto anchor = s.anchor_raw();
        anchor[4] = slab;
        out.push_back(Cell::make(anchor, axes));
    }
    return out;
}

Cell level_cube(const Cell& cube, int level) {
    auto anchor = cube.anchor_raw();
    anchor[4] = level;
    return Cell::make(anchor, cube.axes());
}

}  // namespace

std::vector<Cell> solid_boundary(std::span<const Cell> solids) {
    std::unordered_map<Cell, int, CellHash> uses;
    for (const Cell& solid : solids)
        for (const Cell& f : boundary_cells(solid)) uses[f] += 1;
    std::vector<Cell> out;
    for (const auto& [f, n] : uses)
        if (n == 1) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

KnotDiagram translated(const KnotDiagram& d, std::span<const std::int32_t> delta) {
    std::vector<Cell> cells;
    cells.reserve(d.cells().size());
    for (const Cell& c : d.cells()) {
        auto anchor = c.anchor_raw();
        for (std::size_t i = 0; i < delta.size(); ++i) anchor[i] += delta[i];
        cells.push_back(Cell::make(anchor, c.axes()));
    }
    return KnotDiagram(d.context(), d.dim(), std::move(cells));
}

KnotDiagram make_sphere() {
    const std::array<Cell, 1> cube{cube4(0, 0, 0)};
    return KnotDiagram(make_context(4), 2, solid_boundary(cube));
}

KnotDiagram make_square_knot() {
    const std::array<std::int32_t, 3> anchor{0, 0, 0};
    const std::array<int, 2> axes{1, 2};
    return KnotDiagram(make_context(3), 1, boundary_cells(Cell::make(anchor, axes)));
}

KnotDiagram make_torus() {
    std::vector<Cell> ring;
    for (std::int32_t x = 0; x < 3; ++x)
        for (std::int32_t y = 0; y < 3; ++y)
            if (x != 1 || y != 1) ring.push_back(cube4(x, y, 0));
    return KnotDiagram(make_context(4), 2, solid_boundary(ring));
}

KnotDiagram make_pinched_spheres() {
    const std::array<Cell, 1> a{cube4(0, 0, 0)};
    const std::array<Cell, 1> b{cube4(1, 1, 1)};
    auto cells = solid_boundary(a);
    const auto other = solid_boundary(b);
    cells.insert(cells.end(), other.begin(), other.end());
    return KnotDiagram(make_context(4), 2, std::move(cells));
}

SlicedComplex make_product_cylinder(int slabs) {
    if (slabs < 1) throw std::invalid_argument("product cylinder needs at least one slab");
    const KnotDiagram sphere = make_sphere();
    std::vector<Cell> cells;
    for (int slab = 0; slab < slabs; ++slab) {
        const auto layer = vertical_slab(sphere, slab);
        cells.insert(cells.end(), layer.begin(), layer.end());
    }
    return SlicedComplex(CellComplex(make_context(5), 3, std::move(cells)));
}

SlicedComplex make_shift_cylinder() {
    const KnotDiagram sphere = make_sphere();
    const std::array<std::int32_t, 1> e1{1};
    const KnotDiagram shifted = translated(sphere, e1);

    std::vector<Cell> cells = vertical_slab(sphere, 0);
    cells.push_back(level_cube(cube4(0, 0, 0), 1));
    cells.push_back(level_cube(cube4(1, 0, 0), 1));
    const auto upper = vertical_slab(shifted, 1);
    cells.insert(cells.end(), upper.begin(), upper.end());
    return SlicedComplex(CellComplex(make_context(5), 3, std::move(cells)));
}

SlicedComplex make_bulge_cylinder() {
    const KnotDiagram sphere = make_sphere();
    const std::array<Cell, 3> column{cube4(0, 0, -1), cube4(0, 0, 0), cube4(0, 0, 1)};
    const KnotDiagram bulged(make_context(4), 2, solid_boundary(column));

    std::vector<Cell> cells = vertical_slab(sphere, 0);
    cells.push_back(level_cube(cube4(0, 0, 1), 1));
    cells.push_back(level_cube(cube4(0, 0, -1), 1));
    const auto upper = vertical_slab(bulged, 1);
    cells.insert(cells.end(), upper.begin(), upper.end());
    return SlicedComplex(CellComplex(make_context(5), 3, std::move(cells)));
}

}  // namespace cubeknot
