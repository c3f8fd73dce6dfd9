#include "cubeknot/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace cubeknot {

namespace {

constexpr int kTimeAxis = 5;

// The square a vertical cell cuts out of its slab, in base coordinates.
Cell slab_square(const Cell& vertical) {
    auto axes = vertical.axes();
    std::erase(axes, kTimeAxis);
    auto anchor = vertical.anchor_raw();
    anchor[kTimeAxis - 1] = 0;
    return Cell::make(anchor, axes);
}

std::vector<Cell> projected(std::span<const Cell> cells) {
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (const Cell& c : cells) out.push_back(slab_square(c));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CellOrientation cell_orientation(const Cell& c) {
    return c.spans(kTimeAxis) ? CellOrientation::Vertical : CellOrientation::Horizontal;
}

Cell project_to_base(const Cell& c) {
    if (c.spans(kTimeAxis))
        throw std::invalid_argument("cannot project a vertical cell to the base lattice");
    auto anchor = c.anchor_raw();
    anchor[kTimeAxis - 1] = 0;
    return Cell::make(anchor, c.axes());
}

Cell lift_to_level(const Cell& c, int level) {
    if (c.spans(kTimeAxis) || c.anchor(kTimeAxis) != 0)
        throw std::invalid_argument("cell is not a base-lattice cell");
    auto anchor = c.anchor_raw();
    anchor[kTimeAxis - 1] = level;
    return Cell::make(anchor, c.axes());
}

SlicedComplex::SlicedComplex(CellComplex complex) : complex_(std::move(complex)) {
    if (complex_.context().ambient_dim != kTimeAxis || complex_.dim() != 3) {
        report_.message = "sliced complexes are 3-complexes in ambient dimension 5";
        return;
    }

    for (const Cell& c : complex_.cells()) {
        if (cell_orientation(c) == CellOrientation::Vertical)
            by_slab_[c.anchor(kTimeAxis)].push_back(c);
        else
            by_level_[c.anchor(kTimeAxis)].push_back(c);
    }
    if (by_slab_.empty()) {
        report_.message = "no vertical cells: the complex has no slices";
        return;
    }
    level_min_ = by_slab_.begin()->first;
    level_max_ = by_slab_.rbegin()->first + 1;

    for (const auto& [level, cells] : by_level_) {
        (void)cells;
        if (level <= level_min_ || level >= level_max_) {
            report_.message = "horizontal cells at level " + std::to_string(level) +
                              " outside the open level range (" + std::to_string(level_min_) +
                              ", " + std::to_string(level_max_) + ")";
            return;
        }
    }

    bool all_valid = true;
    for (int slab = level_min_; slab < level_max_; ++slab) {
        const auto it = by_slab_.find(slab);
        const std::vector<Cell> base =
            it == by_slab_.end() ? std::vector<Cell>{} : projected(it->second);
        const auto rep = validate_knot(
            CellComplex(LatticeContext{4, complex_.context().scale}, 2, base));
        if (!rep.valid) {
            all_valid = false;
            report_.bad_slabs.push_back(slab);
        }
    }
    if (!all_valid) {
        report_.message = "some slices are not valid 2-knots";
        return;
    }
    report_.ok = true;
}

std::span<const Cell> SlicedComplex::vertical_cells(int slab) const {
    const auto it = by_slab_.find(slab);
    if (it == by_slab_.end()) return {};
    return it->second;
}

std::span<const Cell> SlicedComplex::horizontal_cells(int level) const {
    const auto it = by_level_.find(level);
    if (it == by_level_.end()) return {};
    return it->second;
}

KnotDiagram slice_slab(const SlicedComplex& J, int slab) {
    if (J.level_max() <= J.level_min())
        throw std::invalid_argument("complex has no slices: " + J.report().message);
    const int clamped = std::clamp(slab, J.level_min(), J.level_max() - 1);
    KnotDiagram d(LatticeContext{4, J.context().scale}, 2, projected(J.vertical_cells(clamped)));
    if (!d.valid()) throw InvalidSlice(clamped, d.report());
    return d;
}

KnotDiagram slice_at(const SlicedComplex& J, double t) {
    const double floor_t = std::floor(t);
    if (floor_t == t)
        throw std::invalid_argument("slice parameter must be non-integer");
    return slice_slab(J, static_cast<int>(floor_t));
}

LevelSolid level_solid(const SlicedComplex& J, int level) {
    if (level < J.level_min() || level > J.level_max())
        throw std::invalid_argument("level " + std::to_string(level) + " outside range [" +
                                    std::to_string(J.level_min()) + ", " +
                                    std::to_string(J.level_max()) + "]");
    LevelSolid out;
    const auto solid = J.horizontal_cells(level);
    out.solid.assign(solid.begin(), solid.end());
    std::sort(out.solid.begin(), out.solid.end());

    std::unordered_set<Cell, CellHash> skin;
    for (const Cell& cube : out.solid)
        for (const Cell& f : boundary_cells(cube)) skin.insert(f);
    for (const Cell& v : J.vertical_cells(level - 1)) {
        auto axes = v.axes();
        std::erase(axes, kTimeAxis);
        auto anchor = v.anchor_raw();
        anchor[kTimeAxis - 1] = level;  // upper face of the slab below
        skin.insert(Cell::make(anchor, axes));
    }
    for (const Cell& v : J.vertical_cells(level)) {
        auto axes = v.axes();
        std::erase(axes, kTimeAxis);
        skin.insert(Cell::make(v.anchor_raw(), axes));  // lower face of the slab above
    }
    out.skin.assign(skin.begin(), skin.end());
    std::sort(out.skin.begin(), out.skin.end());
    return out;
}

const char* to_string(SquareType t) {
    switch (t) {
        case SquareType::TMinus: return "T-";
        case SquareType::TPlus: return "T+";
        case SquareType::TBoth: return "T+-";
        case SquareType::TNone: return "T";
    }
    return "?";
}

std::vector<std::pair<Cell, SquareType>> classify_square_types(const SlicedComplex& J,
                                                               int level) {
    const LevelSolid ls = level_solid(J, level);

    std::unordered_set<Cell, CellHash> below, above;
    for (const Cell& v : J.vertical_cells(level - 1)) {
        auto axes = v.axes();
        std::erase(axes, kTimeAxis);
        auto anchor = v.anchor_raw();
        anchor[kTimeAxis - 1] = level;
        below.insert(Cell::make(anchor, axes));
    }
    for (const Cell& v : J.vertical_cells(level)) {
        auto axes = v.axes();
        std::erase(axes, kTimeAxis);
        above.insert(Cell::make(v.anchor_raw(), axes));
    }

    std::vector<std::pair<Cell, SquareType>> out;
    out.reserve(ls.skin.size());
    for (const Cell& s : ls.skin) {
        const bool minus = below.count(s) > 0;
        const bool plus = above.count(s) > 0;
        SquareType t = SquareType::TNone;
        if (minus && plus) t = SquareType::TBoth;
        else if (minus) t = SquareType::TMinus;
        else if (plus) t = SquareType::TPlus;
        out.emplace_back(s, t);
    }
    return out;
}

namespace {

// Connected walk through one solid component, preferring low anchors along
// the sweep axis: start at the least cube, then repeatedly take the least
// unvisited cube sharing a square with the current one, falling back to any
// cube adjacent to the visited prefix.
std::vector<Cell> order_component(std::vector<Cell> cubes, int sweep_axis) {
    std::sort(cubes.begin(), cubes.end(), [sweep_axis](const Cell& a, const Cell& b) {
        if (a.anchor(sweep_axis) != b.anchor(sweep_axis))
            return a.anchor(sweep_axis) < b.anchor(sweep_axis);
        return a < b;
    });
    std::vector<Cell> out;
    std::vector<bool> used(cubes.size(), false);

    const auto adjacent = [](const Cell& a, const Cell& b) {
        return cells_adjacent(a, b).shared_dim == 2;
    };

    std::size_t current = 0;
    used[0] = true;
    out.push_back(cubes[0]);
    while (out.size() < cubes.size()) {
        std::size_t pick = cubes.size();
        for (std::size_t i = 0; i < cubes.size(); ++i) {
            if (!used[i] && adjacent(cubes[current], cubes[i])) {
                pick = i;
                break;
            }
        }
        if (pick == cubes.size()) {
            for (std::size_t i = 0; i < cubes.size() && pick == cubes.size(); ++i) {
                if (used[i]) continue;
                for (const Cell& prev : out) {
                    if (adjacent(prev, cubes[i])) {
                        pick = i;
                        break;
                    }
                }
            }
        }
        if (pick == cubes.size()) break;  // cannot happen for a facet component
        used[pick] = true;
        out.push_back(cubes[pick]);
        current = pick;
    }
    return out;
}

}  // namespace

CarryResult carry_level(const SlicedComplex& J, int level, const SweepOptions& options) {
    if (level <= J.level_min() || level >= J.level_max())
        throw std::invalid_argument("carry level must lie strictly inside the level range");
    CarryResult res;
    res.level = level;
    if (!J.report().ok) {
        res.status = CarryStatus::StructureError;
        res.message = J.report().message;
        return res;
    }

    const KnotDiagram lower = slice_slab(J, level - 1);
    const KnotDiagram upper = slice_slab(J, level);
    if (lower.cells() == upper.cells()) {
        res.status = CarryStatus::Ok;
        res.certificate = make_sequence(lower, {}, lower);
        return res;
    }

    const auto solid5 = J.horizontal_cells(level);
    if (solid5.empty()) {
        res.status = CarryStatus::StructureError;
        res.message = "slices differ at level " + std::to_string(level) +
                      " but the level carries no solid cells";
        return res;
    }

    std::vector<Cell> solid4;
    solid4.reserve(solid5.size());
    for (const Cell& c : solid5) solid4.push_back(project_to_base(c));
    std::sort(solid4.begin(), solid4.end());

    // Shared squares that bound no solid cube must stay in place; shared
    // squares on the solid may be exchanged away and restored by the sweep.
    std::vector<Cell> shared;
    std::set_intersection(lower.cells().begin(), lower.cells().end(), upper.cells().begin(),
                          upper.cells().end(), std::back_inserter(shared));
    std::unordered_set<Cell, CellHash> solid_faces;
    for (const Cell& cube : solid4)
        for (const Cell& f : boundary_cells(cube)) solid_faces.insert(f);
    SweepOptions sweep_options = options;
    sweep_options.frozen.clear();
    for (const Cell& s : shared)
        if (!solid_faces.count(s)) sweep_options.frozen.push_back(s);

    const auto labels = facet_components(solid4, 3);
    const int n_components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<Cell> ordered;
    for (int comp = 0; comp < n_components; ++comp) {
        std::vector<Cell> cubes;
        for (std::size_t i = 0; i < solid4.size(); ++i)
            if (labels[i] == comp) cubes.push_back(solid4[i]);
        const auto walk = order_component(std::move(cubes), options.sweep_axis);
        ordered.insert(ordered.end(), walk.begin(), walk.end());
    }

    auto swept = sweep(lower, ordered, upper, sweep_options);
    if (!swept) {
        res.status = CarryStatus::Stuck;
        res.message = swept.stuck->diagnostic;
        res.solid_index = swept.stuck->solid_index;
        return res;
    }
    res.status = CarryStatus::Ok;
    res.certificate = std::move(swept.certificate);
    return res;
}

CarryResult carry_full(const SlicedComplex& J, const SweepOptions& options) {
    CarryResult res;
    if (!J.report().ok) {
        res.status = CarryStatus::StructureError;
        res.message = J.report().message;
        return res;
    }

    const KnotDiagram start = slice_slab(J, J.level_min());
    KnotDiagram current = start;
    std::vector<MoveStep> steps;
    for (int level = J.level_min() + 1; level < J.level_max(); ++level) {
        CarryResult part = carry_level(J, level, options);
        if (!part) return part;
        if (part.certificate->initial.cells() != current.cells()) {
            res.status = CarryStatus::StructureError;
            res.level = level;
            res.message = "consecutive slices disagree between levels " +
                          std::to_string(level - 1) + " and " + std::to_string(level);
            return res;
        }
        steps.insert(steps.end(), part.certificate->steps.begin(),
                     part.certificate->steps.end());
        current = slice_slab(J, level);
    }
    res.status = CarryStatus::Ok;
    res.certificate = make_sequence(start, std::move(steps), current);
    return res;
}

}  // namespace cubeknot
