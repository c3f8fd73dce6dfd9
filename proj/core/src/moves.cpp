#include "cubeknot/moves.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cubeknot {

namespace {

std::string describe(const Cell& c) {
    return to_text(c, kMaxAmbientDim);
}

std::vector<Cell> sorted_copy(std::span<const Cell> cells) {
    std::vector<Cell> out(cells.begin(), cells.end());
    std::sort(out.begin(), out.end());
    return out;
}

// (sorted base \ sorted removed) merged with sorted inserted.
std::vector<Cell> exchange_cells(const std::vector<Cell>& base, const std::vector<Cell>& removed,
                                 const std::vector<Cell>& inserted) {
    std::vector<Cell> kept;
    kept.reserve(base.size() - removed.size() + inserted.size());
    std::set_difference(base.begin(), base.end(), removed.begin(), removed.end(),
                        std::back_inserter(kept));
    std::vector<Cell> out;
    out.reserve(kept.size() + inserted.size());
    std::merge(kept.begin(), kept.end(), inserted.begin(), inserted.end(),
               std::back_inserter(out));
    return out;
}

}  // namespace

bool is_cubical_disk(std::span<const Cell> cells, int dim) {
    if (cells.empty()) return false;
    const auto idx = ClosureIndex::build(cells, dim);
    for (const auto& [facet, n] : idx.count_by_dim[dim - 1])
        if (n > 2) return false;
    return idx.euler() == 1 && facet_connected(cells, dim);
}

namespace {

// Facet-adjacency connectivity for the handful of cells in a carrier
// boundary. Within a carrier boundary, "connected" and "connected
// complement" together are equivalent to both sides being cubical disks
// (exercised exhaustively in the tests).
bool connected_in_boundary(std::span<const Cell> cells, int k) {
    const std::size_t n = cells.size();
    if (n == 0) return false;
    std::uint32_t seen = 1;
    std::array<int, 16> stack;
    int top = 0;
    stack[top++] = 0;
    std::size_t visited = 1;
    while (top > 0) {
        const int i = stack[--top];
        for (std::size_t j = 0; j < n; ++j) {
            if ((seen >> j & 1) == 0 &&
                cells_adjacent(cells[i], cells[j]).shared_dim == k - 1) {
                seen |= 1u << j;
                ++visited;
                stack[top++] = static_cast<int>(j);
            }
        }
    }
    return visited == n;
}

}  // namespace

std::optional<std::string> move_structure_error(const FaceBoundaryMove& mv, int k) {
    if (mv.carrier.dim() != k + 1)
        return "carrier must be a (k+1)-cell";
    if (mv.removed.empty()) return "removed set is empty";
    if (mv.inserted.empty()) return "inserted set is empty";
    for (const auto* part : {&mv.removed, &mv.inserted}) {
        if (!std::is_sorted(part->begin(), part->end()))
            return "move cell lists must be sorted";
    }
    // The two sorted lists must merge into exactly the carrier boundary.
    const auto boundary = boundary_cells(mv.carrier);
    {
        std::size_t r = 0, i = 0;
        for (const Cell& f : boundary) {
            if (r < mv.removed.size() && mv.removed[r] == f) {
                ++r;
            } else if (i < mv.inserted.size() && mv.inserted[i] == f) {
                ++i;
            } else {
                return "removed and inserted sets must partition the carrier boundary";
            }
        }
        if (r != mv.removed.size() || i != mv.inserted.size())
            return "removed and inserted sets must partition the carrier boundary";
    }
    if (!connected_in_boundary(mv.removed, k)) return "removed set is not a cubical disk";
    if (!connected_in_boundary(mv.inserted, k)) return "inserted set is not a cubical disk";
    return std::nullopt;
}

namespace {

// Clause (b) on a valid diagram: re-check closedness on the carrier's
// (k-1)-faces and, for surfaces, the vertex links at the carrier's corners.
// Everything away from the carrier is untouched by the exchange.
bool replaced_diagram_locally_valid(const KnotDiagram& d, const FaceBoundaryMove& mv,
                                    std::string& why) {
    const int k = d.dim();
    const auto in_list = [](const std::vector<Cell>& list, const Cell& c) {
        return std::binary_search(list.begin(), list.end(), c);
    };

    for (const Cell& f : closure_cells(mv.carrier, k - 1)) {
        if (f.dim() != k - 1) continue;
        int count = d.index().facet_count(f);
        for (const Cell& a : mv.removed)
            if (closure_contains(a, f)) --count;
        for (const Cell& b : mv.inserted)
            if (closure_contains(b, f)) ++count;
        if (count != 0 && count != 2) {
            why = "replaced diagram is not closed at " + describe(f);
            return false;
        }
    }
    if (k != 2) return true;

    for (const Cell& v : cell_vertices(mv.carrier)) {
        std::array<Cell, 64> star;
        std::size_t count = 0;
        if (auto it = d.index().vertex_star.find(v); it != d.index().vertex_star.end()) {
            for (const Cell& s : it->second)
                if (!in_list(mv.removed, s) && count < star.size()) star[count++] = s;
        }
        for (const Cell& b : mv.inserted)
            if (closure_contains(b, v) && count < star.size()) star[count++] = b;
        if (count > 0 && !vertex_link_is_cycle(v, std::span<const Cell>(star.data(), count))) {
            why = "replaced diagram pinches at " + describe(v);
            return false;
        }
    }
    return true;
}

}  // namespace

Legality is_legal(const KnotDiagram& d, const FaceBoundaryMove& mv) {
    const int k = d.dim();
    if (auto err = move_structure_error(mv, k))
        return {false, *err};

    for (const Cell& a : mv.removed)
        if (!d.contains(a))
            return {false, "clause (a): removed cell " + describe(a) + " is not in the diagram"};

    // Clause (a): closure(d) meets the closed carrier in exactly closure(A).
    const auto in_removed_closure = [&mv](const Cell& f) {
        for (const Cell& a : mv.removed)
            if (closure_contains(a, f)) return true;
        return false;
    };
    for (const Cell& f : closure_cells(mv.carrier, k)) {
        const bool in_knot = d.index().contains(f);
        if (in_knot == in_removed_closure(f)) continue;
        if (in_knot)
            return {false, "clause (a): diagram touches the carrier at " + describe(f) +
                               " outside the removed disk"};
        return {false,
                "clause (a): removed disk face " + describe(f) + " is not in the diagram"};
    }

    // Clause (b): the replaced diagram must validate as a knot.
    if (d.valid()) {
        std::string why;
        if (!replaced_diagram_locally_valid(d, mv, why))
            return {false, "clause (b): " + why};
        return {true, ""};
    }
    const auto cells = exchange_cells(d.cells(), mv.removed, mv.inserted);
    const auto rep = validate_knot(CellComplex(d.context(), k, cells));
    if (!rep.valid)
        return {false, "clause (b): replaced diagram fails validation (" + rep.summary() + ")"};
    return {true, ""};
}

FaceBoundaryMove candidate_move(const KnotDiagram& d, const Cell& carrier) {
    FaceBoundaryMove mv;
    mv.carrier = carrier;
    for (const Cell& f : boundary_cells(carrier)) {
        if (d.contains(f))
            mv.removed.push_back(f);
        else
            mv.inserted.push_back(f);
    }
    return mv;
}

std::vector<FaceBoundaryMove> enumerate_face_moves(const KnotDiagram& d) {
    if (!d.valid())
        throw std::invalid_argument("move enumeration requires a valid diagram");
    const int n = d.context().ambient_dim;

    // Candidate carriers: every (k+1)-cell containing a diagram cell.
    std::unordered_set<Cell, CellHash> carrier_set;
    carrier_set.reserve(d.cells().size() * 4);
    for (const Cell& c : d.cells()) {
        for (int a = 1; a <= n; ++a) {
            if (c.spans(a)) continue;
            const auto mask = static_cast<std::uint8_t>(c.axis_mask() | (1u << (a - 1)));
            carrier_set.insert(Cell::from_raw(c.anchor_raw(), mask));
            auto anchor = c.anchor_raw();
            anchor[a - 1] -= 1;
            carrier_set.insert(Cell::from_raw(anchor, mask));
        }
    }
    std::vector<Cell> carriers(carrier_set.begin(), carrier_set.end());
    std::sort(carriers.begin(), carriers.end());

    std::vector<FaceBoundaryMove> out;
    for (const Cell& carrier : carriers) {
        FaceBoundaryMove mv = candidate_move(d, carrier);
        if (mv.removed.empty() || mv.inserted.empty()) continue;
        if (is_legal(d, mv)) out.push_back(std::move(mv));
    }
    return out;
}

KnotDiagram apply_move(const KnotDiagram& d, const FaceBoundaryMove& mv) {
    if (const auto verdict = is_legal(d, mv); !verdict)
        throw IllegalMove(verdict.reason);
    return KnotDiagram(d.context(), d.dim(), exchange_cells(d.cells(), mv.removed, mv.inserted));
}

FaceBoundaryMove invert(FaceBoundaryMove mv) {
    std::swap(mv.removed, mv.inserted);
    return mv;
}

KnotDiagram subdivide_knot(const KnotDiagram& d, int m) {
    if (m < 2)
        throw std::invalid_argument("subdivision factor must be at least 2");
    if (!d.valid())
        throw std::invalid_argument("subdivision requires a valid diagram");
    const std::int64_t scale = static_cast<std::int64_t>(d.context().scale) * m;
    if (scale > std::numeric_limits<std::int32_t>::max())
        throw std::overflow_error("scale overflow during subdivision");
    std::vector<Cell> cells;
    for (const Cell& c : d.cells()) {
        auto sub = subdivide_cell(c, m);
        cells.insert(cells.end(), sub.begin(), sub.end());
    }
    return KnotDiagram(LatticeContext{d.context().ambient_dim, static_cast<std::int32_t>(scale)},
                       d.dim(), std::move(cells));
}

MoveTable::MoveTable(KnotDiagram diagram) : diagram_(std::move(diagram)) {
    for (FaceBoundaryMove& mv : enumerate_face_moves(diagram_)) {
        Cell carrier = mv.carrier;
        legal_by_carrier_.emplace(std::move(carrier), std::move(mv));
    }
}

const std::vector<FaceBoundaryMove>& MoveTable::moves() const {
    if (flat_dirty_) {
        flat_.clear();
        flat_.reserve(legal_by_carrier_.size());
        for (const auto& [carrier, mv] : legal_by_carrier_) {
            (void)carrier;
            flat_.push_back(mv);
        }
        flat_dirty_ = false;
    }
    return flat_;
}

void MoveTable::apply(std::size_t index) {
    const auto& table = moves();
    if (index >= table.size()) throw std::out_of_range("move index out of range");
    const FaceBoundaryMove mv = table[index];
    diagram_ = apply_move(diagram_, mv);
    refresh_window(mv.carrier);
    flat_dirty_ = true;
}

void MoveTable::refresh_window(const Cell& around) {
    // Carriers whose closure meets the closure of `around` are exactly those
    // containing one of its closure vertices.
    std::unordered_set<Cell, CellHash> window;
    const int j = around.dim();
    for (const Cell& v : cell_vertices(around))
        for (const Cell& g : cofaces(v, j, diagram_.context())) window.insert(g);

    for (const Cell& g : window) {
        FaceBoundaryMove candidate = candidate_move(diagram_, g);
        if (!candidate.removed.empty() && !candidate.inserted.empty() &&
            is_legal(diagram_, candidate)) {
            legal_by_carrier_[g] = std::move(candidate);
        } else {
            legal_by_carrier_.erase(g);
        }
    }
}

MoveSequence make_sequence(KnotDiagram initial, std::vector<MoveStep> steps,
                           const KnotDiagram& final_diagram) {
    MoveSequence seq;
    seq.initial = std::move(initial);
    seq.steps = std::move(steps);
    seq.final_digest = diagram_digest(final_diagram);
    return seq;
}

namespace {

std::string cells_key(const std::vector<Cell>& cells) {
    std::string key;
    key.reserve(cells.size() * (kMaxAmbientDim * 4 + 1));
    for (const Cell& c : cells) {
        for (std::int32_t v : c.anchor_raw())
            key.append(reinterpret_cast<const char*>(&v), sizeof v);
        key.push_back(static_cast<char>(c.axis_mask()));
    }
    return key;
}

// (k+1)-cells whose closure meets the closure of `solid`.
std::vector<Cell> carrier_star(const Cell& solid, const LatticeContext& ctx) {
    std::unordered_set<Cell, CellHash> set;
    for (const Cell& v : cell_vertices(solid))
        for (const Cell& g : cofaces(v, solid.dim(), ctx)) set.insert(g);
    std::vector<Cell> out(set.begin(), set.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool removes_frozen(const FaceBoundaryMove& mv, const std::vector<Cell>& frozen) {
    return std::any_of(mv.removed.begin(), mv.removed.end(), [&](const Cell& c) {
        return std::binary_search(frozen.begin(), frozen.end(), c);
    });
}

std::vector<Cell> pending_cells(const KnotDiagram& w, const Cell& solid,
                                const KnotDiagram& target) {
    std::vector<Cell> pending;
    for (const Cell& f : boundary_cells(solid))
        if (w.contains(f) && !target.contains(f)) pending.push_back(f);
    return pending;
}

std::size_t distance_to(const KnotDiagram& d, const KnotDiagram& target) {
    std::vector<Cell> diff;
    std::set_symmetric_difference(d.cells().begin(), d.cells().end(), target.cells().begin(),
                                  target.cells().end(), std::back_inserter(diff));
    return diff.size();
}

// Breadth-first unlock: find at most max_aux_moves exchanges inside the
// solid's star after which the solid either carries no off-target cells or
// admits the direct exchange (appended to the plan). A plan counts only if
// it strictly shrinks the symmetric difference to the target; without that
// requirement any neighboring bump would "unlock" the solid while walking
// the diagram away from the target.
std::optional<std::vector<FaceBoundaryMove>> unlock_solid(const KnotDiagram& start,
                                                          const Cell& solid,
                                                          const KnotDiagram& target,
                                                          const SweepOptions& options,
                                                          const std::vector<Cell>& frozen) {
    struct Node {
        KnotDiagram diagram;
        int parent = -1;
        FaceBoundaryMove via;
        int depth = 0;
    };

    const std::size_t start_distance = distance_to(start, target);

    const auto goal_plan = [&](const Node& node) -> std::optional<std::vector<FaceBoundaryMove>> {
        if (pending_cells(node.diagram, solid, target).empty()) {
            if (distance_to(node.diagram, target) >= start_distance) return std::nullopt;
            return std::vector<FaceBoundaryMove>{};
        }
        FaceBoundaryMove direct = candidate_move(node.diagram, solid);
        if (direct.removed.empty() || direct.inserted.empty()) return std::nullopt;
        if (removes_frozen(direct, frozen)) return std::nullopt;
        if (!is_legal(node.diagram, direct)) return std::nullopt;
        if (distance_to(apply_move(node.diagram, direct), target) >= start_distance)
            return std::nullopt;
        return std::vector<FaceBoundaryMove>{std::move(direct)};
    };

    std::vector<Node> nodes;
    nodes.push_back({start, -1, {}, 0});
    if (auto plan = goal_plan(nodes[0])) return plan;

    const auto star = carrier_star(solid, start.context());
    std::unordered_set<std::string> seen{cells_key(start.cells())};
    std::deque<int> queue{0};

    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        if (nodes[id].depth >= options.max_aux_moves) continue;
        for (const Cell& g : star) {
            FaceBoundaryMove mv = candidate_move(nodes[id].diagram, g);
            if (mv.removed.empty() || mv.inserted.empty()) continue;
            if (removes_frozen(mv, frozen)) continue;
            if (!is_legal(nodes[id].diagram, mv)) continue;
            KnotDiagram next = apply_move(nodes[id].diagram, mv);
            auto key = cells_key(next.cells());
            if (!seen.insert(std::move(key)).second) continue;
            nodes.push_back({std::move(next), id, mv, nodes[id].depth + 1});
            const int nid = static_cast<int>(nodes.size()) - 1;
            if (auto plan = goal_plan(nodes[nid])) {
                std::vector<FaceBoundaryMove> path;
                for (int cur = nid; cur > 0; cur = nodes[cur].parent)
                    path.push_back(nodes[cur].via);
                std::reverse(path.begin(), path.end());
                path.insert(path.end(), plan->begin(), plan->end());
                return path;
            }
            if (nodes.size() > options.max_aux_states) return std::nullopt;
            queue.push_back(nid);
        }
    }
    return std::nullopt;
}

}  // namespace

SweepResult sweep(const KnotDiagram& d, std::span<const Cell> solids, const KnotDiagram& target,
                  const SweepOptions& options) {
    if (!d.valid() || !target.valid())
        throw std::invalid_argument("sweep requires valid source and target diagrams");
    if (!(d.context() == target.context()) || d.dim() != target.dim())
        throw std::invalid_argument("sweep requires matching contexts");
    const int k = d.dim();
    for (const Cell& s : solids)
        if (s.dim() != k + 1)
            throw std::invalid_argument("sweep solids must be (k+1)-cells");

    const auto frozen = sorted_copy(options.frozen);

    KnotDiagram current = d;
    std::vector<MoveStep> steps;
    for (std::size_t i = 0; i < solids.size(); ++i) {
        if (pending_cells(current, solids[i], target).empty()) continue;
        auto plan = unlock_solid(current, solids[i], target, options, frozen);
        if (!plan) {
            std::ostringstream os;
            os << "no exchange sequence within " << options.max_aux_moves
               << " auxiliary moves unlocks solid " << describe(solids[i]);
            return {std::nullopt, SweepStuck{i, os.str()}};
        }
        for (FaceBoundaryMove& mv : *plan) {
            current = apply_move(current, mv);
            steps.emplace_back(std::move(mv));
        }
    }

    if (current.cells() != target.cells()) {
        std::ostringstream os;
        os << "solids exhausted with " << current.cells().size() << " cells, "
           << "diagram still differs from the target";
        return {std::nullopt, SweepStuck{solids.size(), os.str()}};
    }
    return {make_sequence(d, std::move(steps), current), std::nullopt};
}

}  // namespace cubeknot
