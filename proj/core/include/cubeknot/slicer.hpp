#pragma once

#include <map>
#include <optional>
#include <utility>

#include "cubeknot/moves.hpp"

namespace cubeknot {

enum class CellOrientation { Horizontal, Vertical };

/// Vertical iff the cell spans the last coordinate axis; vertices and cells
/// inside a fixed level are horizontal. Ambient dimension must be 5.
CellOrientation cell_orientation(const Cell& c);

class InvalidSlice : public std::runtime_error {
public:
    InvalidSlice(int slab, KnotReport report)
        : std::runtime_error("slice over [" + std::to_string(slab) + ", " +
                             std::to_string(slab + 1) + "] is not a knot: " + report.summary()),
          slab_(slab),
          report_(std::move(report)) {}

    int slab() const noexcept { return slab_; }
    const KnotReport& report() const noexcept { return report_; }

private:
    int slab_;
    KnotReport report_;
};

struct SlicedReport {
    bool ok = false;
    std::string message;         // first structural problem, empty when ok
    std::vector<int> bad_slabs;  // slabs whose slice fails knot validation
};

/// A 3-complex in the cubulation of Z^5 treated as a cylinder over the last
/// coordinate. Slices over the open unit slabs of [level_min, level_max] are
/// expected to be 2-knots; slices outside the range are constant and equal
/// the nearest slab's slice. Structure and per-slab validity are checked once
/// at construction.
class SlicedComplex {
public:
    explicit SlicedComplex(CellComplex complex);

    const CellComplex& complex() const noexcept { return complex_; }
    const LatticeContext& context() const noexcept { return complex_.context(); }
    int level_min() const noexcept { return level_min_; }
    int level_max() const noexcept { return level_max_; }
    const SlicedReport& report() const noexcept { return report_; }

    /// Vertical cells spanning [slab, slab + 1]; empty outside the range.
    std::span<const Cell> vertical_cells(int slab) const;
    /// Horizontal cells lying in the level hyperplane.
    std::span<const Cell> horizontal_cells(int level) const;

private:
    CellComplex complex_;
    int level_min_ = 0;
    int level_max_ = 0;
    std::map<int, std::vector<Cell>> by_slab_;
    std::map<int, std::vector<Cell>> by_level_;
    SlicedReport report_;
};

/// Drop the last coordinate of a horizontal cell / embed a base cell at a
/// level.
Cell project_to_base(const Cell& c);
Cell lift_to_level(const Cell& c, int level);

/// The 2-knot cut out over the open slab (slab, slab + 1): one square per
/// vertical cell, with the last coordinate dropped. Throws InvalidSlice when
/// the result fails knot validation.
KnotDiagram slice_slab(const SlicedComplex& J, int slab);

/// Slice at a non-integer parameter; only the containing slab matters, and
/// parameters outside the level range clamp to the boundary slabs.
KnotDiagram slice_at(const SlicedComplex& J, double t);

struct LevelSolid {
    std::vector<Cell> solid;  // horizontal 3-cells at the level
    std::vector<Cell> skin;   // level squares bounding the complex there
};

/// Requires level_min <= level <= level_max.
LevelSolid level_solid(const SlicedComplex& J, int level);

enum class SquareType { TMinus, TPlus, TBoth, TNone };

const char* to_string(SquareType t);

/// Type of every skin square at the level: TMinus squares bound vertical
/// cells from below only, TPlus from above only, TBoth from both sides, and
/// TNone squares are faces of the solid alone. TMinus + TBoth project to the
/// lower slice and TPlus + TBoth to the upper one.
std::vector<std::pair<Cell, SquareType>> classify_square_types(const SlicedComplex& J, int level);

enum class CarryStatus { Ok, Stuck, StructureError };

struct CarryResult {
    CarryStatus status = CarryStatus::StructureError;
    std::optional<MoveSequence> certificate;
    std::string message;
    int level = 0;               // offending level when not Ok
    std::size_t solid_index = 0; // offending solid for Stuck

    explicit operator bool() const { return status == CarryStatus::Ok; }
};

/// Carries the lower slice of an interior level onto the upper one by
/// sweeping the level solid, component by component, with shared squares that
/// bound no solid cube pinned in place.
CarryResult carry_level(const SlicedComplex& J, int level, const SweepOptions& options = {});

/// Concatenates carry_level over every interior level: a certificate from the
/// first slab's knot to the last slab's knot.
CarryResult carry_full(const SlicedComplex& J, const SweepOptions& options = {});

}  // namespace cubeknot
