#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace cubeknot::oracle {

Window bounding_window(std::span<const Cell> cells, int ambient_dim, std::int32_t margin) {
    Window w;
    if (cells.empty()) return w;
    w.lo = cells.front().anchor_raw();
    w.hi = cells.front().anchor_raw();
    for (const Cell& c : cells) {
        for (int i = 0; i < kMaxAmbientDim; ++i) {
            w.lo[i] = std::min(w.lo[i], c.anchor_raw()[i]);
            w.hi[i] = std::max(w.hi[i], c.anchor_raw()[i]);
        }
    }
    for (int i = 0; i < ambient_dim; ++i) {
        w.lo[i] -= margin;
        w.hi[i] += margin;
    }
    return w;
}

std::vector<Cell> window_cells(const Window& w, int dim, int ambient_dim) {
    std::vector<int> all_axes(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) all_axes[i] = i + 1;

    // All axis subsets of the requested size.
    std::vector<std::vector<int>> axis_sets;
    std::vector<int> pick;
    const auto choose = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == dim) {
            axis_sets.push_back(pick);
            return;
        }
        for (int i = start; i < ambient_dim; ++i) {
            pick.push_back(all_axes[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    choose(choose, 0);

    std::vector<Cell> out;
    std::array<std::int32_t, kMaxAmbientDim> anchor = w.lo;
    for (;;) {
        for (const auto& axes : axis_sets)
            out.push_back(Cell::make(std::span<const std::int32_t>(anchor.data(), ambient_dim), axes));
        int i = 0;
        while (i < ambient_dim && ++anchor[i] > w.hi[i]) anchor[i] = w.lo[i], ++i;
        if (i == ambient_dim) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool boxes_meet(const Cell& a, const Cell& b) {
    for (int axis = 1; axis <= kMaxAmbientDim; ++axis) {
        if (a.high(axis) < b.low(axis) || b.high(axis) < a.low(axis)) return false;
    }
    return true;
}

bool box_inside(const Cell& outer, const Cell& inner) {
    for (int axis = 1; axis <= kMaxAmbientDim; ++axis) {
        if (inner.low(axis) < outer.low(axis) || inner.high(axis) > outer.high(axis)) return false;
    }
    return true;
}

std::vector<Cell> neighborhood_scan(const KnotDiagram& d) {
    const int n = d.context().ambient_dim;
    std::vector<Cell> out;
    if (d.cells().empty()) return out;
    const Window w = bounding_window(d.cells(), n, 1);
    for (const Cell& q : window_cells(w, n, n)) {
        for (const Cell& c : d.cells()) {
            if (boxes_meet(q, c)) {
                out.push_back(q);
                break;
            }
        }
    }
    return out;
}

std::vector<Cell> cofaces_scan(const Cell& c, int j, int ambient_dim) {
    const std::array<Cell, 1> one{c};
    const Window w = bounding_window(one, ambient_dim, 1);
    std::vector<Cell> out;
    for (const Cell& q : window_cells(w, j, ambient_dim))
        if (box_inside(q, c)) out.push_back(q);
    return out;
}

std::vector<Cell> closure_faces_scan(const CellComplex& complex, int d) {
    std::vector<Cell> out;
    if (complex.cells().empty()) return out;
    const Window w = bounding_window(complex.cells(), complex.context().ambient_dim, 0);
    for (const Cell& f : window_cells(w, d, complex.context().ambient_dim)) {
        for (const Cell& c : complex.cells()) {
            if (box_inside(c, f)) {
                out.push_back(f);
                break;
            }
        }
    }
    return out;
}

long long euler_scan(const CellComplex& complex) {
    long long chi = 0;
    for (int d = 0; d <= complex.dim(); ++d) {
        const auto faces = closure_faces_scan(complex, d);
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(faces.size());
    }
    return chi;
}

std::vector<FaceBoundaryMove> enumerate_moves_scan(const KnotDiagram& d) {
    const int k = d.dim();
    std::unordered_set<Cell, CellHash> carrier_set;
    for (const Cell& c : d.cells())
        for (const Cell& f : cofaces(c, k + 1, d.context())) carrier_set.insert(f);
    std::vector<Cell> carriers(carrier_set.begin(), carrier_set.end());
    std::sort(carriers.begin(), carriers.end());

    std::vector<FaceBoundaryMove> out;
    for (const Cell& carrier : carriers) {
        const auto boundary = boundary_cells(carrier);
        const unsigned full = (1u << boundary.size()) - 1u;
        for (unsigned bits = 1; bits < full; ++bits) {
            FaceBoundaryMove mv;
            mv.carrier = carrier;
            for (std::size_t i = 0; i < boundary.size(); ++i) {
                if (bits & (1u << i))
                    mv.removed.push_back(boundary[i]);
                else
                    mv.inserted.push_back(boundary[i]);
            }
            if (is_legal(d, mv)) out.push_back(std::move(mv));
        }
    }
    return out;
}

int shortest_path_scan(const KnotDiagram& source, const KnotDiagram& target, int max_depth,
                       bool normalize_translation) {
    const auto key = [&](const KnotDiagram& d) {
        return canonical_key(d, normalize_translation).bytes;
    };
    const std::string goal = key(target);
    if (key(source) == goal) return 0;

    struct Entry {
        KnotDiagram diagram;
        int depth;
    };
    std::deque<Entry> queue{{source, 0}};
    std::unordered_set<std::string> seen{key(source)};
    while (!queue.empty()) {
        Entry e = std::move(queue.front());
        queue.pop_front();
        if (e.depth == max_depth) continue;
        for (const FaceBoundaryMove& mv : enumerate_face_moves(e.diagram)) {
            KnotDiagram next = apply_move(e.diagram, mv);
            std::string k = key(next);
            if (k == goal) return e.depth + 1;
            if (seen.insert(std::move(k)).second)
                queue.push_back({std::move(next), e.depth + 1});
        }
    }
    return -1;
}

bool tubular_scan(const KnotDiagram& d) {
    for (const Cell& q : neighborhood_scan(d))
        if (classify_intersection(q, d).cls == IntersectionClass::Other) return false;
    return true;
}

}  // namespace cubeknot::oracle
