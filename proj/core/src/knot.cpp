#include "cubeknot/knot.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace cubeknot {

namespace {

// Edges of `square` incident to vertex `v` (exactly two for a corner vertex).
std::array<Cell, 2> corner_edges(const Cell& square, const Cell& v) {
    const auto axes = square.axes();
    std::array<Cell, 2> out;
    for (int i = 0; i < 2; ++i) {
        const int a = axes[i];
        auto anchor = v.anchor_raw();
        anchor[a - 1] = square.low(a);  // edge spans [low, low+1] along a
        const std::array<int, 1> ax{a};
        out[i] = Cell::make(anchor, ax);
    }
    return out;
}

constexpr std::size_t kMaxWitnesses = 16;

}  // namespace

// The link of `v` inside `squares` is a single closed cycle when every
// v-incident edge of a star square lies in exactly two star squares and the
// squares form one connected 2-regular graph. Stars are tiny, so everything
// runs over flat arrays.
bool vertex_link_is_cycle(const Cell& v, std::span<const Cell> squares) {
    const std::size_t n = squares.size();
    if (n == 0 || n > 64) return false;

    std::array<std::array<Cell, 2>, 64> edges;
    for (std::size_t i = 0; i < n; ++i) edges[i] = corner_edges(squares[i], v);

    // Each corner edge must pair its square with exactly one other.
    std::array<std::array<int, 2>, 64> other;
    for (std::size_t i = 0; i < n; ++i) {
        for (int s = 0; s < 2; ++s) {
            int found = -1;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (int t = 0; t < 2; ++t) {
                    if (edges[j][t] == edges[i][s]) {
                        if (found != -1) return false;  // edge in three squares
                        found = static_cast<int>(j);
                    }
                }
            }
            if (found == -1) return false;  // dangling edge
            other[i][s] = found;
        }
    }

    std::uint64_t seen = 1;
    std::array<int, 64> stack;
    int top = 0;
    stack[top++] = 0;
    std::size_t visited = 1;
    while (top > 0) {
        const int i = stack[--top];
        for (int s = 0; s < 2; ++s) {
            const int j = other[i][s];
            if (!(seen >> j & 1)) {
                seen |= 1ull << j;
                ++visited;
                stack[top++] = j;
            }
        }
    }
    return visited == n;
}

SurfaceReport validate_closed_surface(const CellComplex& complex) {
    if (complex.dim() != 2)
        throw std::invalid_argument("closed-surface validation requires a complex of squares");
    const auto index = ClosureIndex::build(complex);
    return validate_closed_surface(index, complex.cells());
}

SurfaceReport validate_closed_surface(const ClosureIndex& index, std::span<const Cell> cells) {
    SurfaceReport rep;
    rep.edge_closed = true;
    for (const auto& [edge, n] : index.count_by_dim[1]) {
        if (n != 2) {
            rep.edge_closed = false;
            if (rep.offending_edges.size() < kMaxWitnesses) rep.offending_edges.push_back(edge);
        }
    }
    std::sort(rep.offending_edges.begin(), rep.offending_edges.end());

    rep.vertex_regular = !cells.empty();
    for (const auto& [v, star] : index.vertex_star) {
        if (!vertex_link_is_cycle(v, star)) {
            rep.vertex_regular = false;
            if (rep.offending_vertices.size() < kMaxWitnesses) rep.offending_vertices.push_back(v);
        }
    }
    std::sort(rep.offending_vertices.begin(), rep.offending_vertices.end());

    rep.connected = !cells.empty() && facet_connected(cells, 2);
    return rep;
}

bool orientable_surface(std::span<const Cell> cells) {
    if (cells.empty()) return false;

    // Boundary traversal sign of `edge` in the conventional orientation of
    // `square`: along the lower axis at offset 0 and the higher axis at
    // offset 1 the edge is traversed positively.
    const auto base_sign = [](const Cell& square, const Cell& edge) -> int {
        const auto axes = square.axes();
        const int a = axes[0], b = axes[1];
        if (edge.spans(a)) return edge.low(b) == square.low(b) ? 1 : -1;
        return edge.low(a) == square.low(a) + 1 ? 1 : -1;
    };

    std::unordered_map<Cell, std::vector<int>, CellHash> edge_to_squares;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i)
        for (const Cell& e : boundary_cells(cells[i])) edge_to_squares[e].push_back(i);
    for (const auto& [e, inc] : edge_to_squares)
        if (inc.size() != 2) return false;

    std::vector<int> sign(cells.size(), 0);
    for (std::size_t seed = 0; seed < cells.size(); ++seed) {
        if (sign[seed] != 0) continue;
        sign[seed] = 1;
        std::vector<int> stack{static_cast<int>(seed)};
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (const Cell& e : boundary_cells(cells[i])) {
                const auto& inc = edge_to_squares[e];
                const int j = inc[0] == i ? inc[1] : inc[0];
                // Coherent orientations induce opposite signs on a shared edge.
                const int need = -sign[i] * base_sign(cells[i], e) * base_sign(cells[j], e);
                if (sign[j] == 0) {
                    sign[j] = need;
                    stack.push_back(j);
                } else if (sign[j] != need) {
                    return false;
                }
            }
        }
    }
    return true;
}

KnotReport validate_knot(const CellComplex& complex) {
    KnotReport rep;
    rep.dim = complex.dim();
    const int n = complex.context().ambient_dim;
    rep.dims_ok = (rep.dim == 2 && n == 4) || (rep.dim == 1 && n == 3);
    if (!rep.dims_ok) return rep;
    if (complex.empty()) return rep;

    const auto index = ClosureIndex::build(complex);
    rep.euler = index.euler();

    if (rep.dim == 2) {
        const auto surf = validate_closed_surface(index, complex.cells());
        rep.closed = surf.edge_closed;
        rep.regular = surf.vertex_regular;
        rep.connected = surf.connected;
        rep.offenders = surf.offending_edges;
        rep.offenders.insert(rep.offenders.end(), surf.offending_vertices.begin(),
                             surf.offending_vertices.end());
        rep.orientable = rep.closed && orientable_surface(complex.cells());
        rep.valid = surf.closed_surface() && rep.euler == 2 && rep.orientable;
        return rep;
    }

    // 1-knot: one connected cycle, every vertex in exactly two edges.
    rep.closed = true;
    for (const auto& [v, n_inc] : index.count_by_dim[0]) {
        if (n_inc != 2) {
            rep.closed = false;
            if (rep.offenders.size() < kMaxWitnesses) rep.offenders.push_back(v);
        }
    }
    std::sort(rep.offenders.begin(), rep.offenders.end());
    rep.regular = rep.closed;
    rep.connected = facet_connected(complex.cells(), 1);
    rep.orientable = rep.closed && rep.connected;
    rep.valid = rep.closed && rep.connected;
    return rep;
}

std::string KnotReport::summary() const {
    std::ostringstream os;
    if (!dims_ok) {
        os << "unsupported (k, n) pairing for a knot diagram";
        return os.str();
    }
    os << (dim == 2 ? "2-knot" : "1-knot") << " check:"
       << " closed=" << (closed ? "yes" : "no")
       << " regular=" << (regular ? "yes" : "no")
       << " connected=" << (connected ? "yes" : "no")
       << " orientable=" << (orientable ? "yes" : "no")
       << " euler=" << euler
       << " -> " << (valid ? "valid" : "invalid");
    if (dim == 2 && closed && regular && connected && orientable && euler != 2)
        os << " (euler=" << euler << " != 2)";
    return os.str();
}

KnotDiagram::KnotDiagram(CellComplex complex) : complex_(std::move(complex)) {
    index_ = std::make_shared<const ClosureIndex>(ClosureIndex::build(complex_));
    auto rep = validate_knot(complex_);
    report_ = std::make_shared<const KnotReport>(std::move(rep));
}

KnotDiagram::KnotDiagram(LatticeContext ctx, int dim, std::vector<Cell> cells)
    : KnotDiagram(CellComplex(ctx, dim, std::move(cells))) {}

std::vector<Cell> build_neighborhood(const KnotDiagram& d) {
    const int n = d.context().ambient_dim;
    std::unordered_set<Cell, CellHash> seen;
    // A nonempty intersection of closed cells contains a vertex of both, so
    // the neighborhood is the union of top-cell stars over closure vertices.
    for (const auto& [v, star] : d.index().vertex_star) {
        (void)star;
        for (const Cell& q : cofaces(v, n, d.context())) seen.insert(q);
    }
    std::vector<Cell> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

const char* to_string(IntersectionClass c) {
    switch (c) {
        case IntersectionClass::Empty: return "Empty";
        case IntersectionClass::Vertex: return "Vertex";
        case IntersectionClass::Edge: return "Edge";
        case IntersectionClass::OneSquare: return "OneSquare";
        case IntersectionClass::TwoAdjacentSquares: return "TwoAdjacentSquares";
        case IntersectionClass::ThreeChainedSquares: return "ThreeChainedSquares";
        case IntersectionClass::Other: return "Other";
    }
    return "?";
}

IntersectionReport classify_intersection(const Cell& q, const KnotDiagram& d) {
    const int n = d.context().ambient_dim;
    if (q.dim() != n)
        throw std::invalid_argument("classification requires a top-dimensional cell");

    const int k = d.dim();
    std::vector<Cell> hit;  // closure(d) meet closure(q), all dimensions
    std::vector<Cell> tops;
    for (const Cell& f : closure_cells(q, k)) {
        if (d.index().contains(f)) {
            hit.push_back(f);
            if (f.dim() == k) tops.push_back(f);
        }
    }
    if (hit.empty()) return {IntersectionClass::Empty, {}};

    const auto equals_closure_of_tops = [&]() {
        std::unordered_set<Cell, CellHash> closure;
        for (const Cell& t : tops)
            for (const Cell& f : closure_cells(t, k)) closure.insert(f);
        if (closure.size() != hit.size()) return false;
        return std::all_of(hit.begin(), hit.end(),
                           [&](const Cell& f) { return closure.count(f) > 0; });
    };

    if (tops.empty()) {
        if (hit.size() == 1 && hit[0].dim() == 0) return {IntersectionClass::Vertex, {}};
        if (hit.size() == 3) {
            // One edge with both endpoints, nothing else.
            const auto edge = std::find_if(hit.begin(), hit.end(),
                                           [](const Cell& f) { return f.dim() == 1; });
            if (edge != hit.end()) {
                std::unordered_set<Cell, CellHash> closure;
                for (const Cell& f : closure_cells(*edge, 1)) closure.insert(f);
                if (std::all_of(hit.begin(), hit.end(),
                                [&](const Cell& f) { return closure.count(f) > 0; }))
                    return {IntersectionClass::Edge, {}};
            }
        }
        return {IntersectionClass::Other, hit};
    }

    if (!equals_closure_of_tops()) return {IntersectionClass::Other, hit};

    switch (tops.size()) {
        case 1:
            return {IntersectionClass::OneSquare, {}};
        case 2:
            if (cells_adjacent(tops[0], tops[1]).shared_dim == k - 1)
                return {IntersectionClass::TwoAdjacentSquares, {}};
            return {IntersectionClass::Other, tops};
        case 3: {
            bool pairwise = true;
            for (int i = 0; i < 3 && pairwise; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (cells_adjacent(tops[i], tops[j]).shared_dim != k - 1) {
                        pairwise = false;
                        break;
                    }
            if (pairwise) return {IntersectionClass::ThreeChainedSquares, {}};
            return {IntersectionClass::Other, tops};
        }
        default:
            return {IntersectionClass::Other, tops};
    }
}

TubularityReport is_tubular(const KnotDiagram& d) {
    TubularityReport rep;
    rep.tubular = true;
    for (const Cell& q : build_neighborhood(d)) {
        const auto cls = classify_intersection(q, d);
        if (cls.cls == IntersectionClass::Other) {
            rep.tubular = false;
            rep.offending.push_back(q);
        }
    }
    return rep;
}

}  // namespace cubeknot
