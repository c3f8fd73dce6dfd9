#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cubeknot/knot.hpp"

namespace cubeknot {

/// Exchange of one boundary disk of a (k+1)-cell for the complementary disk:
/// removed and inserted partition the carrier's boundary, and each is a
/// cubical disk, so |removed| + |inserted| = 2(k+1).
struct FaceBoundaryMove {
    Cell carrier;
    std::vector<Cell> removed;   // sorted
    std::vector<Cell> inserted;  // sorted

    friend bool operator==(const FaceBoundaryMove&, const FaceBoundaryMove&) = default;
};

struct SubdivisionStep {
    int factor = 2;

    friend bool operator==(const SubdivisionStep&, const SubdivisionStep&) = default;
};

using MoveStep = std::variant<SubdivisionStep, FaceBoundaryMove>;

/// A replayable equivalence certificate: starting diagram, ordered moves, and
/// the digest of the resulting diagram's canonical serialization.
struct MoveSequence {
    KnotDiagram initial;
    std::vector<MoveStep> steps;
    std::string final_digest;
};

class IllegalMove : public std::runtime_error {
public:
    explicit IllegalMove(const std::string& reason) : std::runtime_error(reason) {}
};

/// Connected, every interior (k-1)-face in at most two cells, euler 1.
bool is_cubical_disk(std::span<const Cell> cells, int dim);

/// Empty when the move satisfies the type invariants for diagram dimension k;
/// otherwise a description of the violation.
std::optional<std::string> move_structure_error(const FaceBoundaryMove& mv, int k);

struct Legality {
    bool legal = false;
    std::string reason;

    explicit operator bool() const { return legal; }
};

/// A move is legal iff (a) the diagram meets the closed carrier in exactly
/// the closure of the removed disk, and (b) the replaced diagram validates as
/// a knot. On an already valid diagram, (b) reduces to closedness and link
/// checks around the carrier: the exchange is a disk swap along a fixed
/// boundary circle, which cannot change the component count, euler
/// characteristic or orientability.
Legality is_legal(const KnotDiagram& d, const FaceBoundaryMove& mv);

/// The unique exchange candidate at `carrier`: removed = diagram cells in the
/// carrier boundary, inserted = the rest. Not necessarily legal.
FaceBoundaryMove candidate_move(const KnotDiagram& d, const Cell& carrier);

/// All legal exchanges at the current scale, ordered by carrier (anchor
/// lexicographic, then axes). Requires a valid diagram.
std::vector<FaceBoundaryMove> enumerate_face_moves(const KnotDiagram& d);

/// Applies a legal move; throws IllegalMove with the legality reason.
KnotDiagram apply_move(const KnotDiagram& d, const FaceBoundaryMove& mv);

FaceBoundaryMove invert(FaceBoundaryMove mv);

/// Global refinement: every cell replaced by its m^k congruent sub-cells,
/// scale multiplied by m. Requires m >= 2 and a valid diagram.
KnotDiagram subdivide_knot(const KnotDiagram& d, int m);

/// Legal-move table maintained across a walk. An exchange only perturbs
/// legality at carriers whose closure meets the closed carrier of the applied
/// move, so long walks re-examine a constant-size window per step instead of
/// re-enumerating the whole diagram. The table always equals
/// enumerate_face_moves(diagram()).
class MoveTable {
public:
    explicit MoveTable(KnotDiagram diagram);

    const KnotDiagram& diagram() const noexcept { return diagram_; }
    const std::vector<FaceBoundaryMove>& moves() const;

    /// Applies moves()[index] and updates the table.
    void apply(std::size_t index);

private:
    void refresh_window(const Cell& around);

    KnotDiagram diagram_;
    std::map<Cell, FaceBoundaryMove> legal_by_carrier_;
    mutable std::vector<FaceBoundaryMove> flat_;
    mutable bool flat_dirty_ = true;
};

/// Certificate digest for a diagram ("sha256:<hex>" of its canonical text).
/// Defined in digest.cpp.
std::string diagram_digest(const KnotDiagram& d);

MoveSequence make_sequence(KnotDiagram initial, std::vector<MoveStep> steps,
                           const KnotDiagram& final_diagram);

struct SweepOptions {
    int max_aux_moves = 8;           // auxiliary unlock moves per solid
    std::size_t max_aux_states = 4096;
    int sweep_axis = 1;              // level ordering axis for solid walks
    std::vector<Cell> frozen;        // cells no move may remove
};

struct SweepStuck {
    std::size_t solid_index = 0;
    std::string diagnostic;
};

struct SweepResult {
    std::optional<MoveSequence> certificate;
    std::optional<SweepStuck> stuck;

    explicit operator bool() const { return certificate.has_value(); }
};

/// Walks the solids in order. At each (k+1)-cell whose boundary still carries
/// diagram cells outside `target`, exchanges the full boundary intersection
/// for its complement, using a bounded breadth-first search over moves in the
/// solid's star when the direct exchange is illegal. Reports Stuck when a
/// solid cannot be unlocked within the budget or the walk ends away from the
/// target; the caller may subdivide and retry.
SweepResult sweep(const KnotDiagram& d, std::span<const Cell> solids, const KnotDiagram& target,
                  const SweepOptions& options = {});

}  // namespace cubeknot
