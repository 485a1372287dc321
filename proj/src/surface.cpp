#include "gentle/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace gentle {

namespace {

[[noreturn]] void inconsistent(const std::string& what) {
    fail(ErrorCode::InternalInconsistency, "surface construction: " + what);
}

// Assigns each arrow to one end of its source arc (departure) and one end of
// its target arc (arrival). Constraints at a vertex j: the two in-arrows use
// different ends, the two out-arrows use different ends, and an in/out pair
// shares an end iff its composition is nonzero. Gentleness guarantees a
// solution; ties are broken by arrow order so the result is deterministic.
struct EndAssignment {
    std::vector<int> dep_end, arr_end;  // arrow -> global end index
    std::vector<int> angle_out, angle_in; // end -> arrow or -1
};

EndAssignment assign_ends(const GentleAlgebra& alg) {
    EndAssignment ea;
    ea.dep_end.assign(alg.arrow_count(), -1);
    ea.arr_end.assign(alg.arrow_count(), -1);
    ea.angle_out.assign(2 * alg.vertex_count(), -1);
    ea.angle_in.assign(2 * alg.vertex_count(), -1);

    for (int v = 0; v < alg.vertex_count(); ++v) {
        const auto& ins = alg.in_arrows(v);
        const auto& outs = alg.out_arrows(v);
        int e0 = 2 * v, e1 = 2 * v + 1;
        auto place_in = [&](int a, int e) {
            ea.arr_end[a] = e;
            ea.angle_in[e] = a;
        };
        auto place_out = [&](int a, int e) {
            ea.dep_end[a] = e;
            ea.angle_out[e] = a;
        };
        int next_end = e0;
        for (int a : ins) {
            int e = next_end++;
            place_in(a, e);
            int partner = alg.comp_succ(a); // unique out-arrow with nonzero composition
            if (partner != -1 && alg.arrow(partner).src == v) place_out(partner, e);
        }
        for (int b : outs) {
            if (ea.dep_end[b] != -1) continue;
            // Unpartnered out-arrow: it is in relation with every in-arrow
            // present (there is at most one), so it goes to an end without an
            // in-arrow.
            int e = -1;
            for (int cand : {e0, e1})
                if (ea.angle_out[cand] == -1 && ea.angle_in[cand] == -1) {
                    e = cand;
                    break;
                }
            if (e == -1)
                inconsistent("no consistent end for arrow '" + alg.arrow(b).id + "'");
            place_out(b, e);
        }
    }

    // Every relation must meet its middle arc at different ends, every nonzero
    // composition at the same end.
    for (int a = 0; a < alg.arrow_count(); ++a) {
        int b = alg.rel_succ(a);
        if (b != -1 && ea.arr_end[a] == ea.dep_end[b])
            inconsistent("relation meets its arc at one end");
        int c = alg.comp_succ(a);
        if (c != -1 && ea.arr_end[a] != ea.dep_end[c])
            inconsistent("nonzero composition split across ends");
    }
    return ea;
}

} // namespace

SurfaceModel build_surface(const GentleAlgebra& alg) {
    if (alg.has_loops())
        fail(ErrorCode::UnsupportedLoop, "presentations with loop arrows have no supported surface model");
    if (!check_proper(alg))
        fail(ErrorCode::NotProper, "surface model requires a proper algebra (cyclic fan found)");
    if (!check_smooth(alg))
        fail(ErrorCode::NotSmooth, "surface model requires a smooth algebra (cyclic forbidden thread)");
    if (!is_connected(alg))
        fail(ErrorCode::NotConnected, "surface model requires a connected quiver");

    SurfaceModel m;
    m.algebra = alg;
    const int n_ends = 2 * alg.vertex_count();

    auto ea = assign_ends(alg);
    m.angle_out = ea.angle_out;
    m.angle_in = ea.angle_in;
    m.arrow_dep_end = ea.dep_end;
    m.arrow_arr_end = ea.arr_end;

    // Marked points: chains of arc ends under "follow the departing angle".
    // A chain head has no arriving angle. Cyclic chains would mean the algebra
    // is not proper, which was excluded above.
    m.point_of_end.assign(n_ends, -1);
    m.fan_pos_of_end.assign(n_ends, -1);
    for (int e = 0; e < n_ends; ++e) {
        if (m.angle_in[e] != -1) continue;
        SurfaceModel::Fan fan;
        int cur = e;
        while (true) {
            m.point_of_end[cur] = static_cast<int>(m.points.size());
            m.fan_pos_of_end[cur] = static_cast<int>(fan.ends.size());
            fan.ends.push_back(cur);
            int a = m.angle_out[cur];
            if (a == -1) break;
            fan.angles.push_back(a);
            cur = m.arrow_arr_end[a];
        }
        m.points.push_back(std::move(fan));
    }
    for (int e = 0; e < n_ends; ++e)
        if (m.point_of_end[e] == -1) inconsistent("cyclic fan despite properness check");
    if (m.marked_count() != 2 * alg.vertex_count() - alg.arrow_count())
        inconsistent("marked point count mismatch");

    // Polygons: from each head, traverse the departed arc, then turn through
    // the departing angle at the far end, until a tail is reached. Consecutive
    // corners automatically form relation pairs, so polygons match the
    // forbidden threads.
    m.occ_of_dep_end.assign(n_ends, {});
    m.corner_poly.assign(alg.arrow_count(), -1);
    m.corner_index.assign(alg.arrow_count(), -1);
    std::vector<char> departed(n_ends, 0);
    for (const auto& fan : m.points) {
        int head = fan.ends.front();
        SurfaceModel::Polygon poly;
        poly.head_end = head;
        int pidx = static_cast<int>(m.polygons.size());
        int dep = head;
        while (true) {
            if (departed[dep]) inconsistent("arc side departed twice");
            departed[dep] = 1;
            m.occ_of_dep_end[dep] = {pidx, static_cast<int>(poly.sides.size())};
            poly.sides.push_back({m.arc_of_end(dep), dep});
            int arrival = m.other_end(dep);
            int turn = m.angle_out[arrival];
            if (turn == -1) {
                poly.tail_end = arrival;
                break;
            }
            m.corner_poly[turn] = pidx;
            m.corner_index[turn] = static_cast<int>(poly.corners.size());
            poly.corners.push_back(turn);
            dep = m.arrow_arr_end[turn];
        }
        m.polygons.push_back(std::move(poly));
    }
    for (int e = 0; e < n_ends; ++e)
        if (!departed[e]) inconsistent("unreached arc side (cyclic thread despite smoothness check)");

    // Boundary components: the segment of a polygon runs from its tail point
    // to its head point; the next segment along the boundary is the one whose
    // tail sits at that head point.
    m.boundary_of_poly.assign(m.polygons.size(), -1);
    std::vector<int> poly_of_tail_point(m.marked_count(), -1);
    for (size_t p = 0; p < m.polygons.size(); ++p) {
        int tp = m.point_of_end[m.polygons[p].tail_end];
        if (poly_of_tail_point[tp] != -1) inconsistent("two boundary segments leave one point");
        poly_of_tail_point[tp] = static_cast<int>(p);
    }
    for (size_t p0 = 0; p0 < m.polygons.size(); ++p0) {
        if (m.boundary_of_poly[p0] != -1) continue;
        SurfaceModel::BoundaryComponent comp;
        int bidx = static_cast<int>(m.boundaries.size());
        int p = static_cast<int>(p0);
        while (m.boundary_of_poly[p] == -1) {
            m.boundary_of_poly[p] = bidx;
            comp.polys.push_back(p);
            int head_point = m.point_of_end[m.polygons[p].head_end];
            p = poly_of_tail_point[head_point];
        }
        comp.marked = static_cast<int>(comp.polys.size());
        m.boundaries.push_back(std::move(comp));
    }

    m.euler = m.marked_count() - alg.vertex_count();
    int b = static_cast<int>(m.boundaries.size());
    int twice_genus = 2 - b - m.euler;
    if (twice_genus < 0 || twice_genus % 2 != 0) inconsistent("non-integral genus");
    m.genus = twice_genus / 2;
    if (alg.vertex_count() != m.marked_count() + b + 2 * m.genus - 2)
        inconsistent("arc count identity violated");

    for (size_t i = 0; i < m.boundaries.size(); ++i)
        m.boundaries[i].winding = boundary_winding(m, static_cast<int>(i));
    return m;
}

std::vector<Thread> forbidden_threads(const GentleAlgebra& alg) {
    if (!check_smooth(alg))
        fail(ErrorCode::NotSmooth, "cyclic forbidden thread");
    std::vector<Thread> threads;
    std::vector<int> occurrences(alg.vertex_count(), 0);
    for (int a0 = 0; a0 < alg.arrow_count(); ++a0) {
        if (alg.rel_pred(a0) != -1) continue; // not maximal
        Thread t;
        t.vertex = alg.arrow(a0).src;
        int a = a0;
        while (a != -1) {
            t.arrows.push_back(a);
            occurrences[alg.arrow(a).src]++;
            a = alg.rel_succ(a);
        }
        occurrences[alg.arrow(t.arrows.back()).tgt]++;
        threads.push_back(std::move(t));
    }
    for (int v = 0; v < alg.vertex_count(); ++v) {
        for (int k = occurrences[v]; k < 2; ++k) {
            Thread t;
            t.vertex = v;
            threads.push_back(std::move(t));
        }
        if (occurrences[v] > 2)
            fail(ErrorCode::InternalInconsistency, "arc with more than two side occurrences");
    }
    return threads;
}

TopologySummary topology_summary(const SurfaceModel& model) {
    TopologySummary s;
    s.genus = model.genus;
    s.boundary_count = static_cast<int>(model.boundaries.size());
    for (const auto& c : model.boundaries) s.marked_per_boundary.push_back(c.marked);
    return s;
}

long long boundary_winding(const SurfaceModel& model, int i) {
    if (i < 0 || i >= static_cast<int>(model.boundaries.size()))
        fail(ErrorCode::IndexOutOfRange, "boundary index out of range");
    // Push the component into the interior: each polygon with a segment here
    // contributes its near-boundary chord 1 - m + sum(angles), and every angle
    // in a fan along the component is hugged once, contributing -|angle|.
    long long w = 0;
    for (int p : model.boundaries[i].polys) {
        const auto& poly = model.polygons[p];
        w += 1 - static_cast<long long>(poly.corners.size());
        for (int a : poly.corners) w += model.algebra.arrow(a).deg;
        const auto& fan = model.points[model.point_of_end[poly.tail_end]];
        for (int a : fan.angles) w -= model.algebra.arrow(a).deg;
    }
    return w;
}

std::string emit_dot(const SurfaceModel& model) {
    const auto& alg = model.algebra;
    std::ostringstream out;
    out << "graph incidence {\n";
    out << "  // marked points and arcs\n";
    for (int p = 0; p < model.marked_count(); ++p) {
        const auto& fan = model.points[p];
        out << "  q" << p << " [label=\"q" << p << " fan:";
        for (size_t k = 0; k < fan.ends.size(); ++k) {
            int e = fan.ends[k];
            out << " " << alg.vertex_name(model.arc_of_end(e)) << "." << (e & 1);
            if (k < fan.angles.size()) {
                const auto& a = alg.arrow(fan.angles[k]);
                out << " -(" << a.id << ":" << a.deg << ")-";
            }
        }
        out << "\"];\n";
    }
    for (int v = 0; v < alg.vertex_count(); ++v) {
        out << "  q" << model.point_of_end[model.end_index(v, 0)] << " -- q"
            << model.point_of_end[model.end_index(v, 1)] << " [label=\"" << alg.vertex_name(v)
            << "\"];\n";
    }
    out << "}\n";
    out << "graph dual {\n";
    out << "  // polygons glued along arcs\n";
    for (size_t p = 0; p < model.polygons.size(); ++p) {
        const auto& poly = model.polygons[p];
        out << "  P" << p << " [label=\"P" << p << " sides:";
        for (size_t s = 0; s < poly.sides.size(); ++s) {
            out << " " << alg.vertex_name(poly.sides[s].arc);
            if (s < poly.corners.size()) {
                const auto& a = alg.arrow(poly.corners[s]);
                out << " (" << a.id << ":" << a.deg << ")";
            }
        }
        out << " | bseg on c" << model.boundary_of_poly[p] << "\"];\n";
    }
    for (int v = 0; v < alg.vertex_count(); ++v) {
        auto o0 = model.occ_of_dep_end[model.end_index(v, 0)];
        auto o1 = model.occ_of_dep_end[model.end_index(v, 1)];
        out << "  P" << o0.poly << " -- P" << o1.poly << " [label=\"" << alg.vertex_name(v)
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string canonical_certificate(const SurfaceModel& model) {
    const auto& alg = model.algebra;
    const int np = static_cast<int>(model.polygons.size());
    std::string best;
    // Relabel arcs in discovery order starting from each polygon; the minimal
    // encoding over all starts is the certificate.
    for (int start = 0; start < np; ++start) {
        std::vector<int> arc_newid(alg.vertex_count(), -1);
        std::vector<int> arc_first_dep(alg.vertex_count(), -1);
        std::vector<int> poly_order;
        std::vector<int> poly_seen(np, 0);
        int next_arc = 0;
        std::ostringstream enc;
        std::vector<int> queue{start};
        poly_seen[start] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int p = queue[qi];
            poly_order.push_back(p);
            const auto& poly = model.polygons[p];
            enc << "P[";
            for (size_t s = 0; s < poly.sides.size(); ++s) {
                int arc = poly.sides[s].arc;
                if (arc_newid[arc] == -1) {
                    arc_newid[arc] = next_arc++;
                    arc_first_dep[arc] = poly.sides[s].dep_end;
                }
                int dir = (poly.sides[s].dep_end == arc_first_dep[arc]) ? 0 : 1;
                enc << "a" << arc_newid[arc] << "." << dir;
                if (s < poly.corners.size()) enc << ":" << alg.arrow(poly.corners[s]).deg;
                enc << ";";
                int partner = model.occ_of_dep_end[model.other_end(poly.sides[s].dep_end)].poly;
                if (!poly_seen[partner]) {
                    poly_seen[partner] = 1;
                    queue.push_back(partner);
                }
            }
            enc << "]";
        }
        // Boundary structure: successor polygon along each component.
        std::vector<int> pos_in_order(np, -1);
        for (size_t k = 0; k < poly_order.size(); ++k) pos_in_order[poly_order[k]] = static_cast<int>(k);
        enc << "B[";
        for (int p : poly_order) {
            int head_point = model.point_of_end[model.polygons[p].head_end];
            for (size_t q = 0; q < model.polygons.size(); ++q)
                if (model.point_of_end[model.polygons[q].tail_end] == head_point)
                    enc << pos_in_order[static_cast<int>(q)] << ";";
        }
        enc << "]";
        std::string s = enc.str();
        if (best.empty() || s < best) best = s;
    }
    return best;
}

} // namespace gentle
