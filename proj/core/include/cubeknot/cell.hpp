#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubeknot {

// Axis indices are 1-based throughout (axis n is the last coordinate).
inline constexpr int kMaxAmbientDim = 5;

/// Ambient parameters shared by every cell of a complex. A complex at scale s
/// lives in (1/s)*Z^n; a subdivision move multiplies the scale.
struct LatticeContext {
    int ambient_dim = 4;
    std::int32_t scale = 1;

    friend bool operator==(const LatticeContext&, const LatticeContext&) = default;
};

/// Throws std::invalid_argument unless 3 <= n <= 5 and scale >= 1.
LatticeContext make_context(int ambient_dim, std::int32_t scale = 1);

/// An axis-aligned lattice k-cell, stored as its minimal corner plus the set
/// of axes along which it extends by one unit. The representation is
/// canonical: two cells are equal iff anchor and axis set are equal. Cells are
/// immutable values and safe to share freely.
class Cell {
public:
    Cell() = default;

    /// Build a cell from its minimal-corner coordinates and ascending 1-based
    /// axis list. Throws std::invalid_argument on out-of-range, unsorted or
    /// duplicate axes.
    static Cell make(std::span<const std::int32_t> anchor, std::span<const int> axes);
    static Cell vertex(std::span<const std::int32_t> anchor);

    /// Unchecked construction from raw representation.
    static Cell from_raw(const std::array<std::int32_t, kMaxAmbientDim>& anchor,
                         std::uint8_t axis_mask) noexcept {
        Cell c;
        c.anchor_ = anchor;
        c.mask_ = axis_mask;
        return c;
    }

    int dim() const noexcept { return std::popcount(static_cast<unsigned>(mask_)); }
    bool spans(int axis) const noexcept { return (mask_ >> (axis - 1)) & 1u; }
    std::uint8_t axis_mask() const noexcept { return mask_; }

    /// Ascending 1-based axis indices.
    std::vector<int> axes() const;

    std::int32_t anchor(int axis) const noexcept { return anchor_[axis - 1]; }
    const std::array<std::int32_t, kMaxAmbientDim>& anchor_raw() const noexcept { return anchor_; }

    /// Closed interval covered along `axis`: [anchor, anchor + extent].
    std::int32_t low(int axis) const noexcept { return anchor_[axis - 1]; }
    std::int32_t high(int axis) const noexcept { return anchor_[axis - 1] + (spans(axis) ? 1 : 0); }

    Cell translated(int axis, std::int32_t delta) const;

    friend bool operator==(const Cell&, const Cell&) = default;
    // Canonical order: anchor lexicographic, then axis list lexicographic.
    friend bool operator<(const Cell& a, const Cell& b);

private:
    std::array<std::int32_t, kMaxAmbientDim> anchor_{};
    std::uint8_t mask_ = 0;
};

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ c.axis_mask();
        for (std::int32_t v : c.anchor_raw())
            h ^= static_cast<std::uint32_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

enum class AdjacencyKind { Disjoint, SharedFace, Equal };

/// Largest common face of two closed cells. shared_dim is -1 when disjoint
/// and the common dimension otherwise (== dim for Equal).
struct Adjacency {
    AdjacencyKind kind = AdjacencyKind::Disjoint;
    int shared_dim = -1;
};

/// The 2k facets of a k-cell (k >= 1): for each spanned axis, the two
/// opposite (k-1)-faces. Sorted canonically. Throws for vertices.
std::vector<Cell> boundary_cells(const Cell& cell);

/// All j-cells of the full cubulation whose closure contains `cell`.
/// Count is C(n-k, j-k) * 2^(j-k). Requires k < j <= ctx.ambient_dim.
std::vector<Cell> cofaces(const Cell& cell, int j, const LatticeContext& ctx);

/// The m^k congruent sub-cells of `cell` in the lattice rescaled by m.
/// Requires m >= 2; coordinate overflow is reported via std::overflow_error.
std::vector<Cell> subdivide_cell(const Cell& cell, int m);

/// Adjacency of two same-dimension cells: dimension of the largest common
/// closed face, Disjoint, or Equal. Throws on dimension mismatch.
Adjacency cells_adjacent(const Cell& a, const Cell& b);

/// Intersection of two closed cells, which in a common cubulation is either
/// empty or again a cell (of any dimension). No dimension restriction.
std::optional<Cell> common_face(const Cell& a, const Cell& b);

/// True iff closure(inner) is contained in closure(outer).
bool closure_contains(const Cell& outer, const Cell& inner);

/// Every face of the closed cell with dimension <= max_dim, including the
/// cell itself when it qualifies. 3^k cells in total for max_dim >= k.
std::vector<Cell> closure_cells(const Cell& cell, int max_dim);

/// The 2^k corner vertices.
std::vector<Cell> cell_vertices(const Cell& cell);

std::string to_text(const Cell& cell, int ambient_dim);

}  // namespace cubeknot
