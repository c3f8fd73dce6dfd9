#include "cubeknot/cell.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cubeknot {

LatticeContext make_context(int ambient_dim, std::int32_t scale) {
    if (ambient_dim < 3 || ambient_dim > kMaxAmbientDim)
        throw std::invalid_argument("ambient dimension must be 3, 4 or 5");
    if (scale < 1)
        throw std::invalid_argument("scale must be a positive integer");
    return LatticeContext{ambient_dim, scale};
}

Cell Cell::make(std::span<const std::int32_t> anchor, std::span<const int> axes) {
    if (anchor.size() > kMaxAmbientDim)
        throw std::invalid_argument("anchor has more than " + std::to_string(kMaxAmbientDim) + " coordinates");
    Cell c;
    std::copy(anchor.begin(), anchor.end(), c.anchor_.begin());
    int prev = 0;
    for (int a : axes) {
        if (a < 1 || a > static_cast<int>(anchor.size()))
            throw std::invalid_argument("axis index " + std::to_string(a) + " out of range");
        if (a <= prev)
            throw std::invalid_argument("axes must be strictly ascending");
        prev = a;
        c.mask_ = static_cast<std::uint8_t>(c.mask_ | (1u << (a - 1)));
    }
    return c;
}

Cell Cell::vertex(std::span<const std::int32_t> anchor) {
    return make(anchor, {});
}

std::vector<int> Cell::axes() const {
    std::vector<int> out;
    out.reserve(dim());
    for (int a = 1; a <= kMaxAmbientDim; ++a)
        if (spans(a)) out.push_back(a);
    return out;
}

Cell Cell::translated(int axis, std::int32_t delta) const {
    Cell c = *this;
    c.anchor_[axis - 1] += delta;
    return c;
}

namespace {

// Rank of each axis mask under lexicographic order of the ascending axis
// list; missing trailing axes compare low, so prefixes come first.
constexpr std::array<std::uint16_t, 32> kMaskRank = [] {
    std::array<std::uint16_t, 32> rank{};
    for (unsigned mask = 0; mask < 32; ++mask) {
        std::uint16_t key = 0;
        int filled = 0;
        for (int a = 1; a <= kMaxAmbientDim; ++a) {
            if (mask & (1u << (a - 1))) {
                key = static_cast<std::uint16_t>(key | (a << (3 * (4 - filled))));
                ++filled;
            }
        }
        rank[mask] = key;
    }
    return rank;
}();

}  // namespace

bool operator<(const Cell& a, const Cell& b) {
    if (a.anchor_ != b.anchor_) return a.anchor_ < b.anchor_;
    return kMaskRank[a.mask_] < kMaskRank[b.mask_];
}

std::vector<Cell> boundary_cells(const Cell& cell) {
    if (cell.dim() == 0)
        throw std::invalid_argument("vertex has no boundary");
    std::vector<Cell> out;
    out.reserve(2 * cell.dim());
    const std::uint8_t mask = cell.axis_mask();
    for (int a = 1; a <= kMaxAmbientDim; ++a) {
        if (!(mask & (1u << (a - 1)))) continue;
        const auto facet_mask = static_cast<std::uint8_t>(mask & ~(1u << (a - 1)));
        const Cell f0 = Cell::from_raw(cell.anchor_raw(), facet_mask);
        out.push_back(f0);
        out.push_back(f0.translated(a, 1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_cell_in_context(const Cell& cell, const LatticeContext& ctx) {
    for (int a = ctx.ambient_dim + 1; a <= kMaxAmbientDim; ++a)
        if (cell.spans(a) || cell.anchor(a) != 0)
            throw std::invalid_argument("cell does not fit ambient dimension " + std::to_string(ctx.ambient_dim));
}

}  // namespace

std::vector<Cell> cofaces(const Cell& cell, int j, const LatticeContext& ctx) {
    check_cell_in_context(cell, ctx);
    const int k = cell.dim();
    if (j <= k || j > ctx.ambient_dim)
        throw std::invalid_argument("coface dimension must satisfy k < j <= n");

    std::vector<int> free_axes;
    for (int a = 1; a <= ctx.ambient_dim; ++a)
        if (!cell.spans(a)) free_axes.push_back(a);

    const int extra = j - k;
    std::vector<Cell> out;
    std::vector<int> pick(extra);

    // Choose `extra` new axes, then extend by +1 or -1 along each.
    auto emit = [&](auto&& self, int start, int depth) -> void {
        if (depth == extra) {
            const int combos = 1 << extra;
            for (int bits = 0; bits < combos; ++bits) {
                auto anchor = cell.anchor_raw();
                std::uint8_t mask = cell.axis_mask();
                for (int i = 0; i < extra; ++i) {
                    mask = static_cast<std::uint8_t>(mask | (1u << (pick[i] - 1)));
                    if (bits & (1 << i)) anchor[pick[i] - 1] -= 1;
                }
                out.push_back(Cell::from_raw(anchor, mask));
            }
            return;
        }
        for (int i = start; i < static_cast<int>(free_axes.size()); ++i) {
            pick[depth] = free_axes[i];
            self(self, i + 1, depth + 1);
        }
    };
    emit(emit, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cell> subdivide_cell(const Cell& cell, int m) {
    if (m < 2)
        throw std::invalid_argument("subdivision factor must be at least 2");
    const auto axes = cell.axes();
    const int k = cell.dim();

    std::array<std::int32_t, kMaxAmbientDim> base{};
    for (int i = 0; i < kMaxAmbientDim; ++i) {
        const std::int64_t scaled = static_cast<std::int64_t>(cell.anchor_raw()[i]) * m;
        if (scaled < std::numeric_limits<std::int32_t>::min() ||
            scaled + m > std::numeric_limits<std::int32_t>::max())
            throw std::overflow_error("coordinate overflow during subdivision");
        base[i] = static_cast<std::int32_t>(scaled);
    }

    std::vector<Cell> out;
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) count *= static_cast<std::size_t>(m);
    out.reserve(count);

    std::vector<int> offset(k, 0);
    for (;;) {
        auto anchor = base;
        for (int i = 0; i < k; ++i) anchor[axes[i] - 1] += offset[i];
        out.push_back(Cell::make(anchor, axes));
        int pos = 0;
        while (pos < k && ++offset[pos] == m) offset[pos++] = 0;
        if (pos == k) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Cell> common_face(const Cell& a, const Cell& b) {
    std::array<std::int32_t, kMaxAmbientDim> anchor{};
    std::vector<int> axes;
    for (int axis = 1; axis <= kMaxAmbientDim; ++axis) {
        const std::int32_t lo = std::max(a.low(axis), b.low(axis));
        const std::int32_t hi = std::min(a.high(axis), b.high(axis));
        if (lo > hi) return std::nullopt;
        anchor[axis - 1] = lo;
        if (hi > lo) axes.push_back(axis);
    }
    return Cell::make(anchor, axes);
}

Adjacency cells_adjacent(const Cell& a, const Cell& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("cells_adjacent requires equal dimensions");
    if (a == b) return {AdjacencyKind::Equal, a.dim()};
    int shared = 0;
    for (int axis = 1; axis <= kMaxAmbientDim; ++axis) {
        const std::int32_t lo = std::max(a.low(axis), b.low(axis));
        const std::int32_t hi = std::min(a.high(axis), b.high(axis));
        if (lo > hi) return {AdjacencyKind::Disjoint, -1};
        shared += hi > lo;
    }
    return {AdjacencyKind::SharedFace, shared};
}

bool closure_contains(const Cell& outer, const Cell& inner) {
    for (int axis = 1; axis <= kMaxAmbientDim; ++axis)
        if (inner.low(axis) < outer.low(axis) || inner.high(axis) > outer.high(axis))
            return false;
    return true;
}

std::vector<Cell> closure_cells(const Cell& cell, int max_dim) {
    const int k = cell.dim();
    std::array<int, kMaxAmbientDim> axes{};
    {
        int i = 0;
        for (int a = 1; a <= kMaxAmbientDim; ++a)
            if (cell.spans(a)) axes[i++] = a;
    }
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(std::max(1, (max_dim >= k ? 27 : 19))));

    // Per spanned axis: keep spanning, pin low, or pin high.
    std::array<int, kMaxAmbientDim> choice{};
    for (;;) {
        auto anchor = cell.anchor_raw();
        std::uint8_t mask = 0;
        int dim = 0;
        for (int i = 0; i < k; ++i) {
            if (choice[i] == 0) {
                mask = static_cast<std::uint8_t>(mask | (1u << (axes[i] - 1)));
                ++dim;
            } else if (choice[i] == 2) {
                anchor[axes[i] - 1] += 1;
            }
        }
        if (dim <= max_dim) out.push_back(Cell::from_raw(anchor, mask));
        int pos = 0;
        while (pos < k && ++choice[pos] == 3) choice[pos++] = 0;
        if (pos == k) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cell> cell_vertices(const Cell& cell) {
    return closure_cells(cell, 0);
}

std::string to_text(const Cell& cell, int ambient_dim) {
    std::ostringstream os;
    for (int a = 1; a <= ambient_dim; ++a) {
        if (a > 1) os << ' ';
        os << cell.anchor(a);
    }
    os << " :";
    for (int a : cell.axes()) os << ' ' << a;
    return os.str();
}

}  // namespace cubeknot
