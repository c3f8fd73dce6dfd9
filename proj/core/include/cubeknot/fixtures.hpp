#pragma once

#include "cubeknot/slicer.hpp"

namespace cubeknot {

/// k-faces used by exactly one of the solid (k+1)-cells.
std::vector<Cell> solid_boundary(std::span<const Cell> solids);

/// Translate every cell by the given per-axis offsets (1-based axes).
KnotDiagram translated(const KnotDiagram& d, std::span<const std::int32_t> delta);

/// Boundary of the unit cube in the hyperplane x4 = 0: the six-square 2-knot.
KnotDiagram make_sphere();

/// The four edges of the unit square in Z^3: the smallest 1-knot.
KnotDiagram make_square_knot();

/// Boundary of a 3x3x1 block with a 1x1 through hole: a closed orientable
/// surface with euler characteristic 0, rejected as a 2-knot.
KnotDiagram make_torus();

/// Two cube boundaries sharing exactly one vertex: edge-closed but pinched.
KnotDiagram make_pinched_spheres();

/// The sphere crossed with `slabs` unit intervals: every slice equal, no
/// level solids.
SlicedComplex make_product_cylinder(int slabs = 3);

/// A cylinder whose middle level shifts the sphere by one unit along the
/// first axis through a two-cube collar.
SlicedComplex make_shift_cylinder();

/// A cylinder whose middle level grows the sphere by one cube above and one
/// below: a two-component level solid joined through fixed shared squares.
SlicedComplex make_bulge_cylinder();

}  // namespace cubeknot
