#pragma once

#include "gentle/surface.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gentle {

// Closed walk along arcs of the dissection, turning at marked points. A step
// traverses its arc starting from the given end (0 or 1).
struct EdgeCycle {
    struct Step {
        int arc = -1;
        int dep = 0; // departure end, 0 or 1
        auto operator<=>(const Step&) const = default;
    };
    std::vector<Step> steps;

    auto operator<=>(const EdgeCycle&) const = default;
};

EdgeCycle reverse_cycle(const EdgeCycle& cycle);

// Cyclic rotation/reversal-invariant key, used for deduplication.
EdgeCycle canonical_cycle(const EdgeCycle& cycle);

// Checks the steps chain through marked points.
void validate_cycle(const SurfaceModel& model, const EdgeCycle& cycle);

// A closed transverse curve cut into chords by the arcs it crosses. Each
// chord runs inside one polygon from the side occurrence it enters through to
// the one it leaves through; consecutive chords meet across the two
// occurrences of a shared arc. A chord may enter and leave through the same
// occurrence at different positions; the positions (ordered along the side
// traversal, -1 = unspecified midpoint) disambiguate which piece is cut off.
struct DualWalk {
    struct Chord {
        int poly = -1;
        int entry_side = -1;
        int exit_side = -1;
        long long entry_pos = -1;
        long long exit_pos = -1;
    };
    std::vector<Chord> chords;
};

DualWalk reverse_walk(const SurfaceModel& model, const DualWalk& walk);

// Winding number against the implicit line field: each chord contributes
// +-(1 - m + sum of angle degrees) over the sub-polygon cut off away from the
// boundary segment, the sign given by which side the segment lies on.
// Validates gluing consistency.
long long winding_of_dual_walk(const SurfaceModel& model, const DualWalk& walk);

// Per-chord contributions, in walk order (same validation).
std::vector<long long> walk_chord_windings(const SurfaceModel& model, const DualWalk& walk);

// True iff the steps use pairwise distinct arcs and the canonical transverse
// realization has no self-crossings, i.e. the cycle is a simple closed curve.
bool is_embedded(const SurfaceModel& model, const EdgeCycle& cycle);

// Canonical transverse push-off of an embedded cycle. Throws NotEmbedded.
DualWalk push_off(const SurfaceModel& model, const EdgeCycle& cycle);

// Transverse curve parallel to a boundary component, pushed into the surface.
// Its winding equals boundary_winding(model, i).
DualWalk push_in_walk(const SurfaceModel& model, int boundary_index);

// Algebraic intersection number in the capped surface, computed by realizing
// both curves transversally and counting signed chord crossings polygon by
// polygon. Antisymmetric.
long long intersection_number(const SurfaceModel& model, const EdgeCycle& c1, const EdgeCycle& c2);

// Independent oracle for tests: realizes every polygon as a convex region
// with explicit coordinates and counts signed straight-segment crossings.
long long intersection_number_geometric(const SurfaceModel& model, const EdgeCycle& c1,
                                        const EdgeCycle& c2);

// First homology of the capped surface, from the cellular chain complex
// (points; arcs + boundary segments; polygons + capping disks) via Smith
// normal form. Rank must be 2g and torsion must vanish.
class HomologyBasis {
public:
    int rank() const { return rank_; }

    friend HomologyBasis homology(const SurfaceModel& model);
    friend std::vector<long long> homology_class_of_chain(const SurfaceModel& model,
                                                          const HomologyBasis& basis,
                                                          const std::vector<long long>& chain);

private:
    int rank_ = 0;
    int n_edges_ = 0;
    std::vector<std::vector<long long>> v_inv_;     // inverse column transform of d1's SNF
    std::vector<int> kernel_cols_;                  // columns of V spanning ker d1
    std::vector<std::vector<long long>> u_quot_;    // row transform of the quotient SNF
    std::vector<int> free_rows_;                    // rows of u_quot_ giving free coordinates
};

HomologyBasis homology(const SurfaceModel& model);

// Chain vector layout: arcs first (one entry per arc, + means end0 -> end1),
// then one entry per boundary segment indexed by polygon (+ means tail->head).
std::vector<long long> homology_class_of_chain(const SurfaceModel& model, const HomologyBasis& basis,
                                               const std::vector<long long>& chain);

std::vector<long long> homology_class(const SurfaceModel& model, const HomologyBasis& basis,
                                      const EdgeCycle& cycle);

std::vector<long long> boundary_chain(const SurfaceModel& model, int boundary_index);

// Intersection matrix of the homology basis, recovered from fundamental graph
// cycles; skew-symmetric and unimodular on a healthy model.
std::vector<std::vector<long long>> h1_intersection_matrix(const SurfaceModel& model,
                                                           const HomologyBasis& basis);

// All embedded cycles with at most max_len arcs, deduplicated up to rotation
// and reversal, in deterministic (length, lexicographic) order.
std::vector<EdgeCycle> enumerate_embedded_cycles(const SurfaceModel& model, int max_len);

struct SymplecticCurveBasis {
    std::vector<std::pair<EdgeCycle, EdgeCycle>> pairs;          // (s_i, t_i)
    std::vector<std::pair<long long, long long>> windings;      // (w(s_i), w(t_i))
};

// Searches enumerate_embedded_cycles for 2g cycles with the standard pairing
// <s_i, t_j> = delta_ij, <s_i, s_j> = <t_i, t_j> = 0. The seed permutes the
// candidate order only; the invariants computed downstream do not depend on
// it. max_len <= 0 means the number of arcs. Throws SymplecticBasisNotFound.
SymplecticCurveBasis find_symplectic_basis(const SurfaceModel& model, int max_len = 0,
                                           uint64_t seed = 0);

// The standard handle curves of a chain-form algebra: s_i along the second
// arc of block i, t_i along the first, oriented so that the windings are
// a_i - 1 and b_i - 1.
SymplecticCurveBasis an_canonical_basis(const SurfaceModel& model);

// Resolves chords given as (polygon, entry arc, exit arc) triples, picking
// occurrences that glue consistently. Throws InconsistentWalk.
DualWalk resolve_dual_walk(const SurfaceModel& model,
                           const std::vector<std::array<int, 3>>& triples);

} // namespace gentle
