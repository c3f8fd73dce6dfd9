#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "cubeknot/cell.hpp"

namespace cubeknot {

/// A finite pure k-dimensional subcomplex of the cubulation: a sorted,
/// duplicate-free set of k-cells sharing one context. Immutable after
/// construction; all queries are const and safe to run concurrently.
class CellComplex {
public:
    CellComplex() = default;
    CellComplex(LatticeContext ctx, int dim, std::vector<Cell> cells);

    const LatticeContext& context() const noexcept { return ctx_; }
    int dim() const noexcept { return dim_; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }
    bool empty() const noexcept { return cells_.empty(); }

    bool contains(const Cell& c) const;

private:
    LatticeContext ctx_{};
    int dim_ = 0;
    std::vector<Cell> cells_;
};

/// Face incidence of a pure complex: for each dimension d <= k, the distinct
/// d-cells of the closure together with the number of top cells whose closure
/// contains them, plus the star of top cells around every vertex.
struct ClosureIndex {
    int top_dim = 0;
    std::array<std::unordered_map<Cell, int, CellHash>, kMaxAmbientDim + 1> count_by_dim;
    std::unordered_map<Cell, std::vector<Cell>, CellHash> vertex_star;

    static ClosureIndex build(const CellComplex& complex);
    static ClosureIndex build(std::span<const Cell> top_cells, int top_dim);

    bool contains(const Cell& c) const {
        const int d = c.dim();
        return d <= top_dim && count_by_dim[d].count(c) > 0;
    }
    int facet_count(const Cell& facet) const {
        auto it = count_by_dim[top_dim - 1].find(facet);
        return it == count_by_dim[top_dim - 1].end() ? 0 : it->second;
    }
    std::size_t cells_of_dim(int d) const { return count_by_dim[d].size(); }

    long long euler() const;
};

/// V - E + F - ... over the closure of the complex.
long long euler_characteristic(const CellComplex& complex);

/// Component label per cell, where two k-cells are adjacent when they share a
/// (k-1)-face. Labels are assigned in first-seen order over the input span.
std::vector<int> facet_components(std::span<const Cell> cells, int dim);

/// True when the facet-adjacency graph of the cells is connected (or empty).
bool facet_connected(std::span<const Cell> cells, int dim);

}  // namespace cubeknot
