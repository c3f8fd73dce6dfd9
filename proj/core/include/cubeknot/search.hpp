#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cubeknot/moves.hpp"

namespace cubeknot {

/// Exact canonical state encoding: context plus the sorted cell list,
/// optionally after translating the minimal anchor corner to the origin.
/// Equal keys mean equal normalized cell sets; nothing is hashed away.
struct CanonicalKey {
    std::string bytes;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
        return a.bytes < b.bytes;
    }
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        return std::hash<std::string>()(k.bytes);
    }
};

CanonicalKey canonical_key(const KnotDiagram& d, bool normalize_translation = false);

struct SearchStats {
    std::size_t states_stored = 0;
    std::size_t states_expanded = 0;
    int forward_depth = 0;
    int backward_depth = 0;
    bool state_budget_exhausted = false;
    bool move_budget_exhausted = false;
};

struct SearchResult {
    std::optional<MoveSequence> certificate;
    SearchStats stats;

    explicit operator bool() const { return certificate.has_value(); }
};

/// Breadth-first search over the exchange-move graph, run from both ends so
/// the state budget covers useful depths. Returns a shortest certificate
/// within max_moves/max_states, chosen deterministically among ties;
/// absence is inconclusive, never a disproof. With translation normalization
/// the certificate ends at a translate of the target. Both diagrams must be
/// valid and share one context.
SearchResult bfs_search(const KnotDiagram& source, const KnotDiagram& target, int max_moves,
                        std::size_t max_states, bool normalize_translation = false);

struct ReplayResult {
    bool ok = false;
    std::size_t failed_step = 0;  // steps.size() means the digest trailer failed
    std::string message;

    explicit operator bool() const { return ok; }
};

/// Re-checks every step's legality from the initial diagram and compares the
/// final digest. Certificates from bfs_search, sweep and the slicer replay to
/// true by construction.
ReplayResult replay(const MoveSequence& seq);

struct WalkResult {
    KnotDiagram final;
    MoveSequence certificate;
};

/// Applies `steps` uniformly chosen legal exchanges with a seeded generator;
/// identical seeds replay identical walks on every platform.
WalkResult random_walk(const KnotDiagram& d, int steps, std::uint64_t seed);

}  // namespace cubeknot
