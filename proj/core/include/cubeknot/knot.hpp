#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cubeknot/complex.hpp"

namespace cubeknot {

/// Closed-surface conditions for a complex of squares (k = 2).
struct SurfaceReport {
    bool edge_closed = false;     // every edge lies in exactly two squares
    bool vertex_regular = false;  // every vertex link is a single cycle
    bool connected = false;       // square adjacency graph (shared edges) is connected
    std::vector<Cell> offending_edges;
    std::vector<Cell> offending_vertices;

    bool closed_surface() const { return edge_closed && vertex_regular && connected; }
};

/// Result of validating a diagram as a knot: a sphere certificate for k = 2
/// (closed + connected + euler 2 + orientable) or a single degree-2 cycle for
/// k = 1.
struct KnotReport {
    int dim = 0;
    bool dims_ok = false;  // (k, n) is (2, 4) or (1, 3)
    bool closed = false;   // k=2: edge-closed; k=1: every vertex in exactly two edges
    bool regular = false;  // k=2: vertex links are single cycles; k=1: same as closed
    bool connected = false;
    bool orientable = false;
    long long euler = 0;
    bool valid = false;
    std::vector<Cell> offenders;

    std::string summary() const;
};

/// A complex claimed to be a cubical knot, with its validation report and
/// face-incidence index computed once at construction and then shared.
class KnotDiagram {
public:
    KnotDiagram() = default;
    explicit KnotDiagram(CellComplex complex);
    KnotDiagram(LatticeContext ctx, int dim, std::vector<Cell> cells);

    const CellComplex& complex() const noexcept { return complex_; }
    const LatticeContext& context() const noexcept { return complex_.context(); }
    int dim() const noexcept { return complex_.dim(); }
    const std::vector<Cell>& cells() const noexcept { return complex_.cells(); }
    bool contains(const Cell& c) const { return complex_.contains(c); }

    const KnotReport& report() const noexcept { return *report_; }
    bool valid() const noexcept { return report_->valid; }
    const ClosureIndex& index() const noexcept { return *index_; }

private:
    CellComplex complex_;
    std::shared_ptr<const ClosureIndex> index_;
    std::shared_ptr<const KnotReport> report_;
};

SurfaceReport validate_closed_surface(const CellComplex& complex);
SurfaceReport validate_closed_surface(const ClosureIndex& index, std::span<const Cell> cells);

KnotReport validate_knot(const CellComplex& complex);

/// Whether a coherent orientation of all squares exists. Requires the complex
/// to be edge-closed; the verdict does not depend on the propagation root.
bool orientable_surface(std::span<const Cell> cells);

/// Whether the squares around `v` close up into one cycle through the edges
/// incident to `v`.
bool vertex_link_is_cycle(const Cell& v, std::span<const Cell> squares);

/// All top-dimensional cells of the cubulation whose closure meets the
/// closure of the diagram.
std::vector<Cell> build_neighborhood(const KnotDiagram& d);

enum class IntersectionClass {
    Empty,
    Vertex,
    Edge,
    OneSquare,
    TwoAdjacentSquares,
    ThreeChainedSquares,
    Other,
};

const char* to_string(IntersectionClass c);

/// Classification of closure(d) meet closure(q) for a top cell q. The square
/// classes read on the diagram's top cells (squares for 2-knots, edges for
/// 1-knots); Edge is a bare closure edge without its square. Anything not in
/// the allowed taxonomy is Other, with the offending cells as witness.
struct IntersectionReport {
    IntersectionClass cls = IntersectionClass::Empty;
    std::vector<Cell> witness;
};

IntersectionReport classify_intersection(const Cell& q, const KnotDiagram& d);

struct TubularityReport {
    bool tubular = false;
    std::vector<Cell> offending;  // neighborhood cells classified Other

    explicit operator bool() const { return tubular; }
};

/// True iff every neighborhood cell meets the knot in one of the allowed
/// configurations (vertex, edge, one square, two edge-adjacent squares, three
/// pairwise-adjacent squares). A failing diagram can be subdivided and
/// re-tested.
TubularityReport is_tubular(const KnotDiagram& d);

}  // namespace cubeknot
