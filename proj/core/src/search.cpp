#include "cubeknot/search.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

namespace cubeknot {

namespace {

void append_int(std::string& out, std::int32_t v) {
    out.append(reinterpret_cast<const char*>(&v), sizeof v);
}

std::string key_bytes(const std::vector<Cell>& sorted_cells, const LatticeContext& ctx, int dim,
                      bool normalize) {
    std::array<std::int32_t, kMaxAmbientDim> shift{};
    if (normalize && !sorted_cells.empty()) {
        shift = sorted_cells.front().anchor_raw();
        for (const Cell& c : sorted_cells)
            for (int i = 0; i < kMaxAmbientDim; ++i)
                shift[i] = std::min(shift[i], c.anchor_raw()[i]);
    }
    std::string out;
    out.reserve(16 + sorted_cells.size() * (kMaxAmbientDim * 4 + 1));
    append_int(out, ctx.ambient_dim);
    append_int(out, ctx.scale);
    append_int(out, dim);
    append_int(out, static_cast<std::int32_t>(sorted_cells.size()));
    for (const Cell& c : sorted_cells) {
        for (int i = 0; i < kMaxAmbientDim; ++i) append_int(out, c.anchor_raw()[i] - shift[i]);
        out.push_back(static_cast<char>(c.axis_mask()));
    }
    return out;
}

std::vector<Cell> exchange_cells(const std::vector<Cell>& base, const FaceBoundaryMove& mv) {
    std::vector<Cell> kept;
    kept.reserve(base.size() - mv.removed.size() + mv.inserted.size());
    std::set_difference(base.begin(), base.end(), mv.removed.begin(), mv.removed.end(),
                        std::back_inserter(kept));
    std::vector<Cell> out;
    out.reserve(kept.size() + mv.inserted.size());
    std::merge(kept.begin(), kept.end(), mv.inserted.begin(), mv.inserted.end(),
               std::back_inserter(out));
    return out;
}

Cell translate_cell(const Cell& c, const std::array<std::int32_t, kMaxAmbientDim>& delta) {
    auto anchor = c.anchor_raw();
    for (int i = 0; i < kMaxAmbientDim; ++i) anchor[i] += delta[i];
    return Cell::make(anchor, c.axes());
}

FaceBoundaryMove translate_move(const FaceBoundaryMove& mv,
                                const std::array<std::int32_t, kMaxAmbientDim>& delta) {
    FaceBoundaryMove out;
    out.carrier = translate_cell(mv.carrier, delta);
    for (const Cell& c : mv.removed) out.removed.push_back(translate_cell(c, delta));
    for (const Cell& c : mv.inserted) out.inserted.push_back(translate_cell(c, delta));
    std::sort(out.removed.begin(), out.removed.end());
    std::sort(out.inserted.begin(), out.inserted.end());
    return out;
}

std::array<std::int32_t, kMaxAmbientDim> min_corner(const std::vector<Cell>& cells) {
    std::array<std::int32_t, kMaxAmbientDim> corner{};
    if (cells.empty()) return corner;
    corner = cells.front().anchor_raw();
    for (const Cell& c : cells)
        for (int i = 0; i < kMaxAmbientDim; ++i) corner[i] = std::min(corner[i], c.anchor_raw()[i]);
    return corner;
}

std::string encode_moves(const std::vector<FaceBoundaryMove>& moves) {
    std::string out;
    for (const FaceBoundaryMove& mv : moves) {
        for (std::int32_t v : mv.carrier.anchor_raw()) append_int(out, v);
        out.push_back(static_cast<char>(mv.carrier.axis_mask()));
        append_int(out, static_cast<std::int32_t>(mv.removed.size()));
        for (const Cell& c : mv.removed) {
            for (std::int32_t v : c.anchor_raw()) append_int(out, v);
            out.push_back(static_cast<char>(c.axis_mask()));
        }
    }
    return out;
}

struct Node {
    std::vector<Cell> cells;
    int parent = -1;
    FaceBoundaryMove via;
    int depth = 0;
};

struct Side {
    std::vector<Node> nodes;
    std::unordered_map<std::string, int> by_key;
    std::vector<int> layer;  // node ids at the current depth
    int depth = 0;
};

std::vector<FaceBoundaryMove> path_moves(const Side& side, int id) {
    std::vector<FaceBoundaryMove> out;
    for (int cur = id; cur > 0; cur = side.nodes[cur].parent) out.push_back(side.nodes[cur].via);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

CanonicalKey canonical_key(const KnotDiagram& d, bool normalize_translation) {
    return {key_bytes(d.cells(), d.context(), d.dim(), normalize_translation)};
}

SearchResult bfs_search(const KnotDiagram& source, const KnotDiagram& target, int max_moves,
                        std::size_t max_states, bool normalize_translation) {
    if (!source.valid() || !target.valid())
        throw std::invalid_argument("search requires valid diagrams");
    if (!(source.context() == target.context()) || source.dim() != target.dim())
        throw std::invalid_argument(
            "search requires one context; subdivide to a common scale first");
    if (max_moves < 0) throw std::invalid_argument("max_moves must be nonnegative");

    const LatticeContext ctx = source.context();
    const int k = source.dim();
    const auto key_of = [&](const std::vector<Cell>& cells) {
        return key_bytes(cells, ctx, k, normalize_translation);
    };

    SearchResult result;
    if (key_of(source.cells()) == key_of(target.cells())) {
        result.certificate = make_sequence(source, {}, source);
        result.stats.states_stored = 1;
        return result;
    }

    Side fwd, bwd;
    fwd.nodes.push_back({source.cells(), -1, {}, 0});
    fwd.by_key.emplace(key_of(source.cells()), 0);
    fwd.layer = {0};
    bwd.nodes.push_back({target.cells(), -1, {}, 0});
    bwd.by_key.emplace(key_of(target.cells()), 0);
    bwd.layer = {0};

    struct Meet {
        int total;
        int fwd_id;
        int bwd_id;
    };
    std::vector<Meet> meets;
    int best_total = std::numeric_limits<int>::max();

    auto& stats = result.stats;
    stats.states_stored = 2;

    while (best_total > fwd.depth + bwd.depth) {
        if (fwd.depth + bwd.depth >= max_moves) {
            if (meets.empty()) stats.move_budget_exhausted = true;
            break;
        }
        Side& self = (fwd.layer.size() <= bwd.layer.size()) ? fwd : bwd;
        Side& other = (&self == &fwd) ? bwd : fwd;
        if (self.layer.empty()) break;  // component exhausted

        std::vector<int> next_layer;
        for (const int id : self.layer) {
            const KnotDiagram diagram(ctx, k, self.nodes[id].cells);
            ++stats.states_expanded;
            for (const FaceBoundaryMove& mv : enumerate_face_moves(diagram)) {
                auto cells = exchange_cells(self.nodes[id].cells, mv);
                auto key = key_of(cells);
                if (self.by_key.count(key)) continue;
                if (stats.states_stored >= max_states) {
                    stats.state_budget_exhausted = true;
                    break;
                }
                self.nodes.push_back({std::move(cells), id, mv, self.nodes[id].depth + 1});
                const int nid = static_cast<int>(self.nodes.size()) - 1;
                ++stats.states_stored;
                next_layer.push_back(nid);
                if (auto it = other.by_key.find(key); it != other.by_key.end()) {
                    const int total =
                        self.nodes[nid].depth + other.nodes[it->second].depth;
                    const bool self_is_fwd = (&self == &fwd);
                    meets.push_back({total, self_is_fwd ? nid : it->second,
                                     self_is_fwd ? it->second : nid});
                    best_total = std::min(best_total, total);
                }
                self.by_key.emplace(std::move(key), nid);
            }
            if (stats.state_budget_exhausted) break;
        }
        if (stats.state_budget_exhausted && meets.empty()) break;
        self.layer = std::move(next_layer);
        self.depth += 1;
        if (stats.state_budget_exhausted) break;
    }

    stats.forward_depth = fwd.depth;
    stats.backward_depth = bwd.depth;
    if (meets.empty() || best_total > max_moves) return result;

    // Deterministic tie-break among shortest meets: smallest encoded move
    // sequence wins.
    std::optional<std::vector<FaceBoundaryMove>> best_moves;
    std::string best_encoding;
    std::array<std::int32_t, kMaxAmbientDim> best_delta{};
    for (const Meet& meet : meets) {
        if (meet.total != best_total) continue;
        std::array<std::int32_t, kMaxAmbientDim> delta{};
        const auto fwd_corner = min_corner(fwd.nodes[meet.fwd_id].cells);
        const auto bwd_corner = min_corner(bwd.nodes[meet.bwd_id].cells);
        for (int i = 0; i < kMaxAmbientDim; ++i) delta[i] = fwd_corner[i] - bwd_corner[i];

        std::vector<FaceBoundaryMove> moves = path_moves(fwd, meet.fwd_id);
        std::vector<FaceBoundaryMove> back = path_moves(bwd, meet.bwd_id);
        std::reverse(back.begin(), back.end());
        for (const FaceBoundaryMove& mv : back)
            moves.push_back(translate_move(invert(mv), delta));

        std::string enc = encode_moves(moves);
        if (!best_moves || enc < best_encoding) {
            best_moves = std::move(moves);
            best_encoding = std::move(enc);
            best_delta = delta;
        }
    }

    std::vector<Cell> final_cells;
    final_cells.reserve(target.cells().size());
    for (const Cell& c : target.cells()) final_cells.push_back(translate_cell(c, best_delta));
    const KnotDiagram final_diagram(ctx, k, std::move(final_cells));

    std::vector<MoveStep> steps;
    steps.reserve(best_moves->size());
    for (FaceBoundaryMove& mv : *best_moves) steps.emplace_back(std::move(mv));
    result.certificate = make_sequence(source, std::move(steps), final_diagram);
    return result;
}

ReplayResult replay(const MoveSequence& seq) {
    KnotDiagram current = seq.initial;
    if (!current.valid())
        return {false, 0, "initial diagram is not a valid knot: " + current.report().summary()};
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        try {
            if (const auto* m1 = std::get_if<SubdivisionStep>(&seq.steps[i])) {
                current = subdivide_knot(current, m1->factor);
            } else {
                current = apply_move(current, std::get<FaceBoundaryMove>(seq.steps[i]));
            }
        } catch (const std::exception& e) {
            return {false, i, e.what()};
        }
        if (!current.valid())
            return {false, i, "intermediate diagram invalid: " + current.report().summary()};
    }
    if (diagram_digest(current) != seq.final_digest)
        return {false, seq.steps.size(), "final digest mismatch"};
    return {true, seq.steps.size(), ""};
}

WalkResult random_walk(const KnotDiagram& d, int steps, std::uint64_t seed) {
    if (!d.valid()) throw std::invalid_argument("random walk requires a valid diagram");
    if (steps < 0) throw std::invalid_argument("steps must be nonnegative");

    std::mt19937_64 gen(seed);
    MoveTable table(d);
    std::vector<MoveStep> trail;
    trail.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const auto& moves = table.moves();
        if (moves.empty())
            throw std::runtime_error("no legal move available during random walk");
        const std::size_t pick = static_cast<std::size_t>(gen() % moves.size());
        trail.emplace_back(moves[pick]);
        table.apply(pick);
    }
    MoveSequence cert = make_sequence(d, std::move(trail), table.diagram());
    return {table.diagram(), std::move(cert)};
}

}  // namespace cubeknot
