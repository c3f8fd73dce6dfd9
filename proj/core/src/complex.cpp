#include "cubeknot/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubeknot {

CellComplex::CellComplex(LatticeContext ctx, int dim, std::vector<Cell> cells)
    : ctx_(make_context(ctx.ambient_dim, ctx.scale)), dim_(dim), cells_(std::move(cells)) {
    if (dim_ < 0 || dim_ > ctx_.ambient_dim)
        throw std::invalid_argument("complex dimension out of range");
    for (const Cell& c : cells_) {
        if (c.dim() != dim_)
            throw std::invalid_argument("cell dimension mismatch in complex");
        for (int a = ctx_.ambient_dim + 1; a <= kMaxAmbientDim; ++a)
            if (c.spans(a) || c.anchor(a) != 0)
                throw std::invalid_argument("cell outside ambient dimension");
    }
    std::sort(cells_.begin(), cells_.end());
    if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
        throw std::invalid_argument("duplicate cell in complex");
}

bool CellComplex::contains(const Cell& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

ClosureIndex ClosureIndex::build(const CellComplex& complex) {
    return build(complex.cells(), complex.dim());
}

ClosureIndex ClosureIndex::build(std::span<const Cell> top_cells, int top_dim) {
    ClosureIndex idx;
    idx.top_dim = top_dim;
    for (const Cell& top : top_cells) {
        for (const Cell& f : closure_cells(top, top_dim)) {
            idx.count_by_dim[f.dim()][f] += 1;
            if (f.dim() == 0) idx.vertex_star[f].push_back(top);
        }
    }
    return idx;
}

long long ClosureIndex::euler() const {
    long long chi = 0;
    for (int d = 0; d <= top_dim; ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(count_by_dim[d].size());
    return chi;
}

long long euler_characteristic(const CellComplex& complex) {
    return ClosureIndex::build(complex).euler();
}

std::vector<int> facet_components(std::span<const Cell> cells, int dim) {
    std::vector<int> label(cells.size(), -1);
    if (cells.empty()) return label;

    // facet -> indices of incident cells
    std::unordered_map<Cell, std::vector<int>, CellHash> incident;
    if (dim >= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (const Cell& f : boundary_cells(cells[i]))
                incident[f].push_back(static_cast<int>(i));
    }

    int next = 0;
    std::vector<int> stack;
    for (std::size_t seed = 0; seed < cells.size(); ++seed) {
        if (label[seed] != -1) continue;
        label[seed] = next;
        stack.push_back(static_cast<int>(seed));
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            if (dim == 0) continue;
            for (const Cell& f : boundary_cells(cells[i])) {
                for (int j : incident[f]) {
                    if (label[j] == -1) {
                        label[j] = next;
                        stack.push_back(j);
                    }
                }
            }
        }
        ++next;
    }
    return label;
}

bool facet_connected(std::span<const Cell> cells, int dim) {
    const auto labels = facet_components(cells, dim);
    return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

}  // namespace cubeknot
