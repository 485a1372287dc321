#pragma once

#include "gentle/algebra.hpp"

#include <string>
#include <vector>

namespace gentle {

// Combinatorial surface model of a smooth proper gentle algebra: arcs are the
// quiver vertices, marked points are the fans of arc ends chained by arrows,
// polygons are the faces of the induced structure (one boundary segment each),
// and the line field is carried implicitly by the arrow degrees.
//
// Arc ends are indexed by 2*arc + k for k in {0,1}. Each end has at most one
// departing angle (arrow) and at most one arriving angle. Two arrows through a
// vertex compose to zero exactly when they meet the arc at different ends.
struct SurfaceModel {
    struct Fan {
        std::vector<int> ends;   // arc ends in rotational order; front = head, back = tail
        std::vector<int> angles; // angles[i] is the arrow between ends[i] and ends[i+1]
    };

    struct Side {
        int arc = -1;
        int dep_end = -1; // global end index the traversal departs from
    };

    // Perimeter in trace order: sides[0] .. sides[k-1] with corners[i] between
    // sides[i] and sides[i+1], and the single boundary segment between the
    // last side (at tail_end) and the first (departing head_end).
    struct Polygon {
        std::vector<Side> sides;
        std::vector<int> corners; // arrows; size = sides.size() - 1
        int head_end = -1;
        int tail_end = -1;
    };

    struct OccRef {
        int poly = -1;
        int side = -1;
    };

    struct BoundaryComponent {
        std::vector<int> polys; // polygons whose boundary segment lies here, in boundary order
        int marked = 0;
        long long winding = 0;
    };

    GentleAlgebra algebra;

    std::vector<int> angle_out;      // end -> departing arrow or -1
    std::vector<int> angle_in;       // end -> arriving arrow or -1
    std::vector<int> arrow_dep_end;  // arrow -> end it departs from
    std::vector<int> arrow_arr_end;  // arrow -> end it arrives at

    std::vector<Fan> points;
    std::vector<int> point_of_end;
    std::vector<int> fan_pos_of_end;

    std::vector<Polygon> polygons;
    std::vector<OccRef> occ_of_dep_end; // end -> the side occurrence departing it
    std::vector<int> corner_poly;       // arrow -> polygon owning that corner
    std::vector<int> corner_index;      // arrow -> corner position in that polygon

    std::vector<BoundaryComponent> boundaries;
    std::vector<int> boundary_of_poly;

    int genus = 0;
    int euler = 0;

    int end_index(int arc, int k) const { return 2 * arc + k; }
    int arc_of_end(int e) const { return e / 2; }
    int other_end(int e) const { return e ^ 1; }
    int marked_count() const { return static_cast<int>(points.size()); }

    // Occurrence arriving at end e (the one departing the opposite end).
    OccRef occ_arriving(int e) const { return occ_of_dep_end[other_end(e)]; }
};

// Requires validate_gentle + check_proper + check_smooth and a connected,
// loop-free quiver. Deterministic for a fixed input.
SurfaceModel build_surface(const GentleAlgebra& alg);

// Maximal paths whose consecutive pairs are all relations, plus one trivial
// thread per missing arc-side occurrence. In bijection with the polygons.
struct Thread {
    int vertex = -1;          // for trivial threads; otherwise source of arrows[0]
    std::vector<int> arrows;  // empty for trivial threads
};

std::vector<Thread> forbidden_threads(const GentleAlgebra& alg);

struct TopologySummary {
    int genus = 0;
    int boundary_count = 0;
    std::vector<int> marked_per_boundary;
};

TopologySummary topology_summary(const SurfaceModel& model);

// Winding number of the i-th boundary component against the line field.
long long boundary_winding(const SurfaceModel& model, int i);

// DOT rendering: the marked-point/arc incidence graph and the dual polygon
// graph, with fan orders and angle degrees in the labels.
std::string emit_dot(const SurfaceModel& model);

// Relabel-invariant encoding of the polygon complex with gradings. Two models
// are isomorphic iff their certificates are equal (connected models).
std::string canonical_certificate(const SurfaceModel& model);

} // namespace gentle
