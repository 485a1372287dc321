#include "gentle/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gentle {

namespace {

constexpr long long kLocalBig = 1'000'000;
constexpr long long kSideKey = 4'000'000;

[[noreturn]] void inconsistent(const std::string& what) {
    fail(ErrorCode::InternalInconsistency, what);
}

struct SplitMix64 {
    uint64_t s;
    explicit SplitMix64(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
};

// ---------------------------------------------------------------------------
// Transverse realization
//
// A cycle is pushed off the dissection graph: each step runs beside the arc
// along the occurrence traversed in the same direction, and each turn sweeps
// monotonically across the fan. Sweeping towards larger fan positions crosses
// the strictly intermediate rays; sweeping backwards additionally crosses the
// two end rays, because the stretches hug fixed flanks.
// ---------------------------------------------------------------------------

struct Crossing {
    int ray = -1;    // global end index; the crossing sits on arc(ray) near it
    int extent = 0;  // swept sector count, orders crossings radially at a point
    int tag = 0;
    int seq = 0;
    SurfaceModel::OccRef exit_occ, entry_occ;
};

struct RealizedCurve {
    std::vector<Crossing> crossings; // in curve order
};

RealizedCurve realize(const SurfaceModel& m, const EdgeCycle& cycle, int tag) {
    validate_cycle(m, cycle);
    RealizedCurve rc;
    const int k = static_cast<int>(cycle.steps.size());

    struct Turn {
        int pos_in = 0, pos_out = 0, dir = 0, point = 0;
    };
    std::vector<Turn> turns(k);
    for (int i = 0; i < k; ++i) {
        const auto& cur = cycle.steps[i];
        const auto& nxt = cycle.steps[(i + 1) % k];
        int arr = m.end_index(cur.arc, 1 - cur.dep);
        int dep = m.end_index(nxt.arc, nxt.dep);
        turns[i].point = m.point_of_end[arr];
        turns[i].pos_in = m.fan_pos_of_end[arr];
        turns[i].pos_out = m.fan_pos_of_end[dep];
        turns[i].dir = turns[i].pos_out > turns[i].pos_in ? +1 : -1;
    }

    for (int i = 0; i < k; ++i) {
        const Turn& t = turns[i];
        const auto& fan = m.points[t.point];
        // The stretch arriving here hugs the flank demanded by the previous
        // sweep; when the sweep direction flips, the curve changes sides of
        // the arc and must cross it once near this end.
        bool cross_entry_ray = turns[(i + k - 1) % k].dir != t.dir;
        int extent = std::abs(t.pos_out - t.pos_in) + (cross_entry_ray ? 1 : 0);
        auto add = [&](int ray) {
            Crossing c;
            c.ray = ray;
            c.extent = extent;
            c.tag = tag;
            c.seq = static_cast<int>(rc.crossings.size());
            if (t.dir > 0) {
                c.exit_occ = m.occ_of_dep_end[ray];
                c.entry_occ = m.occ_arriving(ray);
            } else {
                c.exit_occ = m.occ_arriving(ray);
                c.entry_occ = m.occ_of_dep_end[ray];
            }
            rc.crossings.push_back(c);
        };
        if (cross_entry_ray) add(fan.ends[t.pos_in]);
        if (t.dir > 0) {
            for (int j = t.pos_in + 1; j <= t.pos_out - 1; ++j) add(fan.ends[j]);
        } else {
            for (int j = t.pos_in - 1; j >= t.pos_out + 1; --j) add(fan.ends[j]);
        }
    }
    return rc;
}

struct PlacedChord {
    int poly = -1;
    int entry_side = -1, exit_side = -1;
    long long entry_key = 0, exit_key = 0;
};

// Assigns radial ranks per ray across all curves at once and cuts the curves
// into chords with exact perimeter positions.
std::vector<std::vector<PlacedChord>> place_chords(const SurfaceModel& m,
                                                   std::vector<RealizedCurve>& curves) {
    std::map<int, std::vector<Crossing*>> by_ray;
    for (auto& rc : curves)
        for (auto& c : rc.crossings) by_ray[c.ray].push_back(&c);
    std::map<const Crossing*, long long> rank;
    for (auto& [ray, group] : by_ray) {
        std::sort(group.begin(), group.end(), [](const Crossing* a, const Crossing* b) {
            return std::tie(a->extent, a->tag, a->seq) < std::tie(b->extent, b->tag, b->seq);
        });
        long long d = 1;
        for (auto* c : group) rank[c] = d++;
    }
    auto key_on = [&](const Crossing& c, const SurfaceModel::OccRef& occ) {
        int dep_end = m.polygons[occ.poly].sides[occ.side].dep_end;
        long long local = (c.ray == dep_end) ? rank.at(&c) : kLocalBig - rank.at(&c);
        return occ.side * kSideKey + local;
    };
    std::vector<std::vector<PlacedChord>> out;
    for (auto& rc : curves) {
        std::vector<PlacedChord> chords;
        const int n = static_cast<int>(rc.crossings.size());
        if (n == 0) inconsistent("transverse realization crosses no arc");
        for (int i = 0; i < n; ++i) {
            const Crossing& a = rc.crossings[i];
            const Crossing& b = rc.crossings[(i + 1) % n];
            if (a.entry_occ.poly != b.exit_occ.poly)
                inconsistent("chord endpoints in different polygons");
            PlacedChord pc;
            pc.poly = a.entry_occ.poly;
            pc.entry_side = a.entry_occ.side;
            pc.exit_side = b.exit_occ.side;
            pc.entry_key = key_on(a, a.entry_occ);
            pc.exit_key = key_on(b, b.exit_occ);
            chords.push_back(pc);
        }
        out.push_back(std::move(chords));
    }
    return out;
}

bool in_open_cyclic(long long a, long long x, long long b) {
    if (a < b) return a < x && x < b;
    return x > a || x < b;
}

// +1 when the cyclic perimeter order is (A.in, B.in, A.out, B.out), -1 for the
// mirrored pattern, 0 when the chords do not cross.
int chord_crossing_sign(const PlacedChord& a, const PlacedChord& b) {
    if (a.poly != b.poly) return 0;
    bool bin = in_open_cyclic(a.entry_key, b.entry_key, a.exit_key);
    bool bout = in_open_cyclic(a.entry_key, b.exit_key, a.exit_key);
    if (bin == bout) return 0;
    return bin ? +1 : -1;
}

long long signed_crossings(const std::vector<PlacedChord>& c1, const std::vector<PlacedChord>& c2) {
    long long total = 0;
    for (const auto& a : c1)
        for (const auto& b : c2) total += chord_crossing_sign(a, b);
    return total;
}

int unsigned_self_crossings(const std::vector<PlacedChord>& chords) {
    int total = 0;
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = i + 1; j < chords.size(); ++j)
            total += chord_crossing_sign(chords[i], chords[j]) != 0;
    return total;
}

DualWalk to_dual_walk(const std::vector<PlacedChord>& chords) {
    DualWalk w;
    for (const auto& c : chords)
        w.chords.push_back({c.poly, c.entry_side, c.exit_side, c.entry_key % kSideKey,
                            c.exit_key % kSideKey});
    return w;
}

bool arcs_distinct(const EdgeCycle& cycle) {
    std::set<int> arcs;
    for (const auto& s : cycle.steps)
        if (!arcs.insert(s.arc).second) return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// Cycles and dual walks
// ---------------------------------------------------------------------------

EdgeCycle reverse_cycle(const EdgeCycle& cycle) {
    EdgeCycle out;
    for (auto it = cycle.steps.rbegin(); it != cycle.steps.rend(); ++it)
        out.steps.push_back({it->arc, 1 - it->dep});
    return out;
}

EdgeCycle canonical_cycle(const EdgeCycle& cycle) {
    EdgeCycle best = cycle;
    auto consider = [&](EdgeCycle c) {
        const size_t n = c.steps.size();
        for (size_t r = 0; r < n; ++r) {
            std::rotate(c.steps.begin(), c.steps.begin() + 1, c.steps.end());
            if (c.steps < best.steps) best = c;
        }
    };
    consider(cycle);
    consider(reverse_cycle(cycle));
    return best;
}

void validate_cycle(const SurfaceModel& model, const EdgeCycle& cycle) {
    if (cycle.steps.empty()) fail(ErrorCode::InconsistentWalk, "empty cycle");
    const int k = static_cast<int>(cycle.steps.size());
    for (int i = 0; i < k; ++i) {
        const auto& s = cycle.steps[i];
        if (s.arc < 0 || s.arc >= model.algebra.vertex_count() || (s.dep != 0 && s.dep != 1))
            fail(ErrorCode::IndexOutOfRange, "bad cycle step");
        const auto& nxt = cycle.steps[(i + 1) % k];
        int arr = model.end_index(s.arc, 1 - s.dep);
        int dep = model.end_index(nxt.arc, nxt.dep);
        if (arr == dep)
            fail(ErrorCode::InconsistentWalk, "cycle backtracks along an arc");
        if (model.point_of_end[arr] != model.point_of_end[dep])
            fail(ErrorCode::InconsistentWalk, "consecutive steps do not meet at a marked point");
    }
}

DualWalk reverse_walk(const SurfaceModel&, const DualWalk& walk) {
    DualWalk out;
    for (auto it = walk.chords.rbegin(); it != walk.chords.rend(); ++it)
        out.chords.push_back({it->poly, it->exit_side, it->entry_side, it->exit_pos, it->entry_pos});
    return out;
}

namespace {

void validate_walk(const SurfaceModel& m, const DualWalk& walk) {
    if (walk.chords.empty()) fail(ErrorCode::InconsistentWalk, "empty dual walk");
    const int n = static_cast<int>(walk.chords.size());
    for (int i = 0; i < n; ++i) {
        const auto& c = walk.chords[i];
        if (c.poly < 0 || c.poly >= static_cast<int>(m.polygons.size()))
            fail(ErrorCode::InconsistentWalk, "chord polygon out of range");
        const auto& poly = m.polygons[c.poly];
        if (c.entry_side < 0 || c.entry_side >= static_cast<int>(poly.sides.size()) ||
            c.exit_side < 0 || c.exit_side >= static_cast<int>(poly.sides.size()))
            fail(ErrorCode::InconsistentWalk, "chord side out of range");
        if (c.entry_side == c.exit_side &&
            (c.entry_pos < 0 || c.exit_pos < 0 || c.entry_pos == c.exit_pos))
            fail(ErrorCode::InconsistentWalk,
                 "chord through one occurrence needs two distinct positions");
        const auto& next = walk.chords[(i + 1) % n];
        int arc = poly.sides[c.exit_side].arc;
        SurfaceModel::OccRef a = m.occ_of_dep_end[m.end_index(arc, 0)];
        SurfaceModel::OccRef b = m.occ_of_dep_end[m.end_index(arc, 1)];
        auto is = [](const SurfaceModel::OccRef& o, int poly, int side) {
            return o.poly == poly && o.side == side;
        };
        bool ok = (is(a, c.poly, c.exit_side) && is(b, next.poly, next.entry_side)) ||
                  (is(b, c.poly, c.exit_side) && is(a, next.poly, next.entry_side));
        if (!ok)
            fail(ErrorCode::InconsistentWalk,
                 "consecutive chords do not glue across the two sides of an arc");
    }
}

long long eval_chord(const SurfaceModel& m, const DualWalk::Chord& c) {
    const auto& P = m.polygons[c.poly];
    const int k = static_cast<int>(P.sides.size());
    // Perimeter coordinates: side s spans [s, s+1) * kLocalBig, the boundary
    // segment spans the final unit, corner j sits at (j+1) * kLocalBig.
    auto coord = [&](int side, long long pos) {
        long long local = pos >= 0 ? pos : kLocalBig / 2;
        return side * kLocalBig + local;
    };
    long long x_in = coord(c.entry_side, c.entry_pos);
    long long x_out = coord(c.exit_side, c.exit_pos);
    long long bseg_marker = static_cast<long long>(k) * kLocalBig + 1;
    // The piece from exit to entry in trace order; the boundary segment lies
    // on the left of the chord exactly when this piece contains it.
    bool bseg_left = in_open_cyclic(x_out, bseg_marker, x_in);
    long long from = bseg_left ? x_in : x_out;
    long long to = bseg_left ? x_out : x_in;
    long long count = 0, sum = 0;
    for (int j = 0; j < k - 1; ++j) {
        long long corner_coord = static_cast<long long>(j + 1) * kLocalBig;
        if (in_open_cyclic(from, corner_coord, to)) {
            ++count;
            sum += m.algebra.arrow(P.corners[j]).deg;
        }
    }
    long long value = 1 - count + sum;
    return bseg_left ? value : -value;
}

} // namespace

std::vector<long long> walk_chord_windings(const SurfaceModel& model, const DualWalk& walk) {
    validate_walk(model, walk);
    std::vector<long long> out;
    for (const auto& c : walk.chords) out.push_back(eval_chord(model, c));
    return out;
}

long long winding_of_dual_walk(const SurfaceModel& model, const DualWalk& walk) {
    auto parts = walk_chord_windings(model, walk);
    return std::accumulate(parts.begin(), parts.end(), 0LL);
}

bool is_embedded(const SurfaceModel& model, const EdgeCycle& cycle) {
    if (!arcs_distinct(cycle)) return false;
    validate_cycle(model, cycle);
    std::vector<RealizedCurve> curves{realize(model, cycle, 0)};
    if (curves[0].crossings.empty()) return false;
    auto placed = place_chords(model, curves);
    return unsigned_self_crossings(placed[0]) == 0;
}

DualWalk push_off(const SurfaceModel& model, const EdgeCycle& cycle) {
    if (!is_embedded(model, cycle))
        fail(ErrorCode::NotEmbedded, "cycle is not a simple closed curve");
    std::vector<RealizedCurve> curves{realize(model, cycle, 0)};
    auto placed = place_chords(model, curves);
    DualWalk w = to_dual_walk(placed[0]);
    validate_walk(model, w);
    return w;
}

DualWalk push_in_walk(const SurfaceModel& model, int boundary_index) {
    if (boundary_index < 0 || boundary_index >= static_cast<int>(model.boundaries.size()))
        fail(ErrorCode::IndexOutOfRange, "boundary index out of range");
    std::vector<int> poly_of_head_point(model.marked_count(), -1);
    for (size_t p = 0; p < model.polygons.size(); ++p)
        poly_of_head_point[model.point_of_end[model.polygons[p].head_end]] = static_cast<int>(p);

    DualWalk walk;
    int start_point = model.point_of_end[model.polygons[model.boundaries[boundary_index].polys[0]].head_end];
    int q = start_point;
    do {
        const auto& fan = model.points[q];
        // Sweep the fan from tail to head, hugging each angle corner.
        for (int j = static_cast<int>(fan.ends.size()) - 1; j >= 1; --j) {
            int a = fan.angles[j - 1];
            int p = model.corner_poly[a];
            int c = model.corner_index[a];
            walk.chords.push_back({p, c + 1, c, 1, kLocalBig - 1});
        }
        // Then run beside the boundary segment arriving at this point. On a
        // monogon this chord enters and leaves through the one side.
        int p = poly_of_head_point[q];
        walk.chords.push_back(
            {p, 0, static_cast<int>(model.polygons[p].sides.size()) - 1, 1, kLocalBig - 1});
        q = model.point_of_end[model.polygons[p].tail_end];
    } while (q != start_point);
    validate_walk(model, walk);
    return walk;
}

long long intersection_number(const SurfaceModel& model, const EdgeCycle& c1, const EdgeCycle& c2) {
    if (!is_embedded(model, c1) || !is_embedded(model, c2))
        fail(ErrorCode::NotEmbedded, "intersection number needs simple closed curves");
    std::vector<RealizedCurve> curves{realize(model, c1, 0), realize(model, c2, 1)};
    auto placed = place_chords(model, curves);
    return signed_crossings(placed[0], placed[1]);
}

long long intersection_number_geometric(const SurfaceModel& model, const EdgeCycle& c1,
                                        const EdgeCycle& c2) {
    if (!is_embedded(model, c1) || !is_embedded(model, c2))
        fail(ErrorCode::NotEmbedded, "intersection number needs simple closed curves");
    std::vector<RealizedCurve> curves{realize(model, c1, 0), realize(model, c2, 1)};
    auto placed = place_chords(model, curves);

    // Straight-segment realization: the polygon perimeter (sides plus the
    // boundary segment) is laid out on the unit circle, so every chord is a
    // genuine straight chord in strictly convex position.
    const double pi = std::acos(-1.0);
    auto point_of = [&](int poly, long long key) {
        int side = static_cast<int>(key / kSideKey);
        double t = static_cast<double>(key % kSideKey) / static_cast<double>(kLocalBig);
        int n = static_cast<int>(model.polygons[poly].sides.size()) + 1;
        double ang = 2.0 * pi * (side + t) / n;
        return std::array<double, 2>{std::cos(ang), std::sin(ang)};
    };
    auto cross2 = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    long long total = 0;
    for (const auto& a : placed[0]) {
        auto p1 = point_of(a.poly, a.entry_key), p2 = point_of(a.poly, a.exit_key);
        for (const auto& b : placed[1]) {
            if (b.poly != a.poly) continue;
            auto q1 = point_of(b.poly, b.entry_key), q2 = point_of(b.poly, b.exit_key);
            double d1 = cross2(p1, p2, q1), d2 = cross2(p1, p2, q2);
            double d3 = cross2(q1, q2, p1), d4 = cross2(q1, q2, p2);
            if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) {
                // b crosses a; the layout runs the perimeter counterclockwise,
                // which mirrors the combinatorial trace order.
                total += (d1 > 0) ? -1 : +1;
            }
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Integer homology via Smith normal form
// ---------------------------------------------------------------------------

namespace {

using Mat = std::vector<std::vector<long long>>;

Mat identity(int n) {
    Mat m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    int k = n ? static_cast<int>(a[0].size()) : 0;
    int m = k ? static_cast<int>(b[0].size()) : 0;
    Mat out(n, std::vector<long long>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            long long s = 0;
            for (int t = 0; t < k; ++t) s += a[i][t] * b[t][j];
            out[i][j] = s;
        }
    return out;
}

std::vector<long long> mat_vec(const Mat& a, const std::vector<long long>& x) {
    std::vector<long long> out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
    return out;
}

struct Smith {
    Mat d, u, v, v_inv; // d = u * a * v
    int rank = 0;
};

Smith smith_normal_form(Mat a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Smith s;
    s.u = identity(rows);
    s.v = identity(cols);
    s.v_inv = identity(cols);

    auto row_add = [&](int dst, int src, long long c) { // R_dst += c R_src
        for (int j = 0; j < cols; ++j) a[dst][j] += c * a[src][j];
        for (int j = 0; j < rows; ++j) s.u[dst][j] += c * s.u[src][j];
    };
    auto col_add = [&](int dst, int src, long long c) { // C_dst += c C_src
        for (int i = 0; i < rows; ++i) a[i][dst] += c * a[i][src];
        for (int i = 0; i < cols; ++i) s.v[i][dst] += c * s.v[i][src];
        for (int j = 0; j < cols; ++j) s.v_inv[src][j] -= c * s.v_inv[dst][j];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(a[i], a[j]);
        std::swap(s.u[i], s.u[j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (int r = 0; r < cols; ++r) std::swap(s.v[r][i], s.v[r][j]);
        std::swap(s.v_inv[i], s.v_inv[j]);
    };

    int t = 0;
    const int lim = std::min(rows, cols);
    while (t < lim) {
        int pi = -1, pj = -1;
        long long best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pi == -1 || std::abs(a[i][j]) < best)) {
                    pi = i;
                    pj = j;
                    best = std::abs(a[i][j]);
                }
        if (pi == -1) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i)
            if (a[i][t] != 0) {
                row_add(i, t, -(a[i][t] / a[t][t]));
                if (a[i][t] != 0) clean = false;
            }
        for (int j = t + 1; j < cols; ++j)
            if (a[t][j] != 0) {
                col_add(j, t, -(a[t][j] / a[t][t]));
                if (a[t][j] != 0) clean = false;
            }
        if (!clean) continue;
        ++t;
    }
    s.rank = 0;
    for (int i = 0; i < lim; ++i)
        if (a[i][i] != 0) ++s.rank;
    // Nonzero pivots sit in the leading positions by construction.
    s.d = std::move(a);
    return s;
}

int chain_length(const SurfaceModel& m) {
    return m.algebra.vertex_count() + static_cast<int>(m.polygons.size());
}

std::vector<long long> cycle_chain(const SurfaceModel& m, const EdgeCycle& cycle) {
    std::vector<long long> chain(chain_length(m), 0);
    for (const auto& s : cycle.steps) chain[s.arc] += (s.dep == 0) ? 1 : -1;
    return chain;
}

} // namespace

HomologyBasis homology(const SurfaceModel& model) {
    const int n_arcs = model.algebra.vertex_count();
    const int n_poly = static_cast<int>(model.polygons.size());
    const int n_bnd = static_cast<int>(model.boundaries.size());
    const int n0 = model.marked_count();
    const int n1 = n_arcs + n_poly;
    const int n2 = n_poly + n_bnd;

    Mat d1(n0, std::vector<long long>(n1, 0));
    for (int arc = 0; arc < n_arcs; ++arc) {
        d1[model.point_of_end[model.end_index(arc, 1)]][arc] += 1;
        d1[model.point_of_end[model.end_index(arc, 0)]][arc] -= 1;
    }
    for (int p = 0; p < n_poly; ++p) {
        d1[model.point_of_end[model.polygons[p].head_end]][n_arcs + p] += 1;
        d1[model.point_of_end[model.polygons[p].tail_end]][n_arcs + p] -= 1;
    }

    Mat d2(n1, std::vector<long long>(n2, 0));
    for (int p = 0; p < n_poly; ++p) {
        for (const auto& side : model.polygons[p].sides)
            d2[side.arc][p] += (side.dep_end % 2 == 0) ? 1 : -1;
        d2[n_arcs + p][p] += 1;
    }
    for (int b = 0; b < n_bnd; ++b)
        for (int p : model.boundaries[b].polys) d2[n_arcs + p][n_poly + b] += 1;

    Smith s1 = smith_normal_form(d1);

    HomologyBasis basis;
    basis.n_edges_ = n1;
    basis.v_inv_ = s1.v_inv;
    for (int j = s1.rank; j < n1; ++j) basis.kernel_cols_.push_back(j);
    const int kdim = static_cast<int>(basis.kernel_cols_.size());

    Mat quot(kdim, std::vector<long long>(n2, 0));
    for (int c = 0; c < n2; ++c) {
        std::vector<long long> col(n1);
        for (int r = 0; r < n1; ++r) col[r] = d2[r][c];
        auto y = mat_vec(s1.v_inv, col);
        for (int r = 0; r < s1.rank; ++r)
            if (y[r] != 0) inconsistent("2-cell boundary is not a 1-cycle");
        for (int r = 0; r < kdim; ++r) quot[r][c] = y[basis.kernel_cols_[r]];
    }
    Smith s2 = smith_normal_form(quot);
    for (int i = 0; i < s2.rank; ++i)
        if (std::abs(s2.d[i][i]) != 1) inconsistent("torsion in first homology");
    basis.u_quot_ = s2.u;
    for (int r = s2.rank; r < kdim; ++r) basis.free_rows_.push_back(r);
    basis.rank_ = kdim - s2.rank;
    if (basis.rank_ != 2 * model.genus) inconsistent("homology rank is not twice the genus");
    return basis;
}

std::vector<long long> homology_class_of_chain(const SurfaceModel&, const HomologyBasis& basis,
                                               const std::vector<long long>& chain) {
    if (static_cast<int>(chain.size()) != basis.n_edges_)
        fail(ErrorCode::IndexOutOfRange, "chain vector has the wrong length");
    auto y = mat_vec(basis.v_inv_, chain);
    const int rank_d1 = basis.n_edges_ - static_cast<int>(basis.kernel_cols_.size());
    for (int r = 0; r < rank_d1; ++r)
        if (y[r] != 0) fail(ErrorCode::InconsistentWalk, "chain is not a cycle");
    std::vector<long long> x(basis.kernel_cols_.size());
    for (size_t r = 0; r < basis.kernel_cols_.size(); ++r) x[r] = y[basis.kernel_cols_[r]];
    auto z = mat_vec(basis.u_quot_, x);
    std::vector<long long> out;
    for (int r : basis.free_rows_) out.push_back(z[r]);
    return out;
}

std::vector<long long> homology_class(const SurfaceModel& model, const HomologyBasis& basis,
                                      const EdgeCycle& cycle) {
    validate_cycle(model, cycle);
    return homology_class_of_chain(model, basis, cycle_chain(model, cycle));
}

std::vector<long long> boundary_chain(const SurfaceModel& model, int boundary_index) {
    if (boundary_index < 0 || boundary_index >= static_cast<int>(model.boundaries.size()))
        fail(ErrorCode::IndexOutOfRange, "boundary index out of range");
    std::vector<long long> chain(chain_length(model), 0);
    for (int p : model.boundaries[boundary_index].polys)
        chain[model.algebra.vertex_count() + p] += 1;
    return chain;
}

// ---------------------------------------------------------------------------
// Fundamental cycles and the pairing on homology
// ---------------------------------------------------------------------------

namespace {

std::vector<EdgeCycle> fundamental_cycles(const SurfaceModel& m) {
    const int n_pts = m.marked_count();
    const int n_arcs = m.algebra.vertex_count();
    std::vector<int> parent_point(n_pts, -1), parent_arc(n_pts, -1), parent_dep(n_pts, -1), depth(n_pts, -1);
    std::vector<char> in_tree(n_arcs, 0);
    std::vector<int> queue{0};
    depth[0] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int p = queue[qi];
        for (int arc = 0; arc < n_arcs; ++arc) {
            for (int k = 0; k < 2; ++k) {
                if (m.point_of_end[m.end_index(arc, k)] != p) continue;
                int other = m.point_of_end[m.end_index(arc, 1 - k)];
                if (depth[other] != -1 || other == p) continue;
                depth[other] = depth[p] + 1;
                parent_point[other] = p;
                parent_arc[other] = arc;
                parent_dep[other] = k; // traversing dep=k goes p -> other
                in_tree[arc] = 1;
                queue.push_back(other);
            }
        }
    }
    auto path_up = [&](int p) {
        std::vector<EdgeCycle::Step> steps; // child -> root direction
        while (parent_point[p] != -1) {
            steps.push_back({parent_arc[p], 1 - parent_dep[p]}); // traverse other -> p reversed
            p = parent_point[p];
        }
        return steps;
    };
    std::vector<EdgeCycle> cycles;
    for (int arc = 0; arc < n_arcs; ++arc) {
        if (in_tree[arc]) continue;
        int pa = m.point_of_end[m.end_index(arc, 0)];
        int pb = m.point_of_end[m.end_index(arc, 1)];
        EdgeCycle c;
        c.steps.push_back({arc, 0}); // pa -> pb
        if (pa != pb) {
            auto up_b = path_up(pb); // pb -> root
            auto up_a = path_up(pa); // pa -> root
            // Trim the common tail beyond the meeting point.
            while (!up_b.empty() && !up_a.empty()) {
                const auto& lb = up_b.back();
                const auto& la = up_a.back();
                if (lb.arc == la.arc && lb.dep == la.dep) {
                    up_b.pop_back();
                    up_a.pop_back();
                } else {
                    break;
                }
            }
            for (const auto& s : up_b) c.steps.push_back(s);
            for (auto it = up_a.rbegin(); it != up_a.rend(); ++it)
                c.steps.push_back({it->arc, 1 - it->dep});
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

long long mat_det(Mat a) {
    // Fraction-free Gaussian elimination (Bareiss).
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    long long sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { swap_row = i; break; }
            if (swap_row == -1) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

} // namespace

std::vector<std::vector<long long>> h1_intersection_matrix(const SurfaceModel& model,
                                                           const HomologyBasis& basis) {
    auto gens = fundamental_cycles(model);
    const int k = static_cast<int>(gens.size());
    const int r = basis.rank();
    Mat pairing(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            long long v = intersection_number(model, gens[i], gens[j]);
            pairing[i][j] = v;
            pairing[j][i] = -v;
        }
    Mat classes(r, std::vector<long long>(k, 0));
    for (int j = 0; j < k; ++j) {
        auto cls = homology_class(model, basis, gens[j]);
        for (int i = 0; i < r; ++i) classes[i][j] = cls[i];
    }
    Smith s = smith_normal_form(classes);
    if (s.rank != r) inconsistent("fundamental cycles do not span homology");
    std::vector<long long> diag(r);
    for (int i = 0; i < r; ++i) {
        diag[i] = s.d[i][i];
        if (std::abs(diag[i]) != 1) inconsistent("fundamental cycles span a proper sublattice");
    }
    // h_i = sum_k V[k][i] g_k has class coordinates d_i * Uinv e_i; transform
    // the pairing of the h_i back to the chosen basis.
    Mat q(r, std::vector<long long>(r, 0));
    Mat vtpv = mat_mul(mat_mul([&] {
        Mat vt(k, std::vector<long long>(k, 0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) vt[i][j] = s.v[j][i];
        return vt;
    }(), pairing), s.v);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) q[i][j] = diag[i] * diag[j] * vtpv[i][j];
    Mat ut(r, std::vector<long long>(r, 0));
    Mat u_r(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            u_r[i][j] = s.u[i][j];
            ut[i][j] = s.u[j][i];
        }
    Mat result = mat_mul(mat_mul(ut, q), u_r);
    long long det = mat_det(result);
    if (det != 1 && det != -1) inconsistent("intersection pairing is not unimodular");
    return result;
}

// ---------------------------------------------------------------------------
// Cycle enumeration and symplectic basis search
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<EdgeCycle::Step>> steps_at_point(const SurfaceModel& m) {
    std::vector<std::vector<EdgeCycle::Step>> at(m.marked_count());
    for (int arc = 0; arc < m.algebra.vertex_count(); ++arc)
        for (int k = 0; k < 2; ++k)
            at[m.point_of_end[m.end_index(arc, k)]].push_back({arc, k});
    return at;
}

// Emits deduplicated embedded cycles of exactly the given length, in
// lexicographic order of their canonical forms, up to `cap` of them.
std::vector<EdgeCycle> enumerate_length(const SurfaceModel& m,
                                        const std::vector<std::vector<EdgeCycle::Step>>& at,
                                        int len, size_t cap) {
    std::set<std::vector<EdgeCycle::Step>> seen;
    std::vector<EdgeCycle> out;
    EdgeCycle cur;
    std::vector<char> used(m.algebra.vertex_count(), 0);

    auto close_point = [&](const EdgeCycle::Step& s) {
        return m.point_of_end[m.end_index(s.arc, 1 - s.dep)];
    };

    std::function<void(int)> extend = [&](int depth) {
        if (out.size() >= cap) return;
        if (depth == len) {
            const auto& first = cur.steps.front();
            if (close_point(cur.steps.back()) != m.point_of_end[m.end_index(first.arc, first.dep)])
                return;
            int arr = m.end_index(cur.steps.back().arc, 1 - cur.steps.back().dep);
            int dep = m.end_index(first.arc, first.dep);
            if (arr == dep) return;
            EdgeCycle canon = canonical_cycle(cur);
            if (!seen.insert(canon.steps).second) return;
            if (is_embedded(m, canon)) out.push_back(canon);
            return;
        }
        int p = close_point(cur.steps.back());
        for (const auto& s : at[p]) {
            if (used[s.arc]) continue;
            int arr = m.end_index(cur.steps.back().arc, 1 - cur.steps.back().dep);
            if (m.end_index(s.arc, s.dep) == arr) continue;
            cur.steps.push_back(s);
            used[s.arc] = 1;
            extend(depth + 1);
            used[s.arc] = 0;
            cur.steps.pop_back();
        }
    };

    for (int arc = 0; arc < m.algebra.vertex_count() && out.size() < cap; ++arc)
        for (int k = 0; k < 2; ++k) {
            cur.steps.assign(1, {arc, k});
            used[arc] = 1;
            extend(1);
            used[arc] = 0;
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<EdgeCycle> enumerate_embedded_cycles(const SurfaceModel& model, int max_len) {
    int cap_len = max_len > 0 ? max_len : model.algebra.vertex_count();
    cap_len = std::min(cap_len, model.algebra.vertex_count());
    auto at = steps_at_point(model);
    std::vector<EdgeCycle> out;
    for (int len = 1; len <= cap_len; ++len) {
        auto batch = enumerate_length(model, at, len, 1'000'000);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

namespace {

struct BasisSearch {
    const SurfaceModel& m;
    std::vector<EdgeCycle> pool;
    std::map<std::pair<int, int>, long long> pairing_cache;
    long long nodes = 0;
    static constexpr long long kNodeCap = 200'000;

    long long pairing(int i, int j) {
        if (i == j) return 0;
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = pairing_cache.find({i, j});
        long long v;
        if (it != pairing_cache.end()) {
            v = it->second;
        } else {
            v = intersection_number(m, pool[i], pool[j]);
            pairing_cache[{i, j}] = v;
        }
        return flip ? -v : v;
    }

    bool dfs(const std::vector<int>& order, std::vector<std::pair<int, int>>& chosen, int need) {
        if (static_cast<int>(chosen.size()) == need) return true;
        if (++nodes > kNodeCap) return false;
        std::vector<int> candidates;
        for (int idx : order) {
            bool ok = true;
            for (auto [s, t] : chosen)
                if (pairing(idx, s) != 0 || pairing(idx, t) != 0) { ok = false; break; }
            if (ok) candidates.push_back(idx);
        }
        for (size_t xi = 0; xi < candidates.size(); ++xi) {
            for (size_t yi = 0; yi < candidates.size(); ++yi) {
                if (xi == yi) continue;
                int x = candidates[xi], y = candidates[yi];
                if (pairing(x, y) != 1) continue;
                chosen.emplace_back(x, y);
                if (dfs(order, chosen, need)) return true;
                chosen.pop_back();
                if (nodes > kNodeCap) return false;
            }
        }
        return false;
    }
};

} // namespace

SymplecticCurveBasis find_symplectic_basis(const SurfaceModel& model, int max_len, uint64_t seed) {
    SymplecticCurveBasis basis;
    const int g = model.genus;
    if (g == 0) return basis;

    int cap_len = max_len > 0 ? max_len : model.algebra.vertex_count();
    cap_len = std::min(cap_len, model.algebra.vertex_count());
    auto at = steps_at_point(model);

    BasisSearch search{model, {}, {}, 0};
    constexpr size_t kPerLenCap = 4000;
    for (int len = 1; len <= cap_len; ++len) {
        auto batch = enumerate_length(model, at, len, kPerLenCap);
        search.pool.insert(search.pool.end(), batch.begin(), batch.end());
        if (static_cast<int>(search.pool.size()) < 2 * g) continue;

        std::vector<int> order(search.pool.size());
        std::iota(order.begin(), order.end(), 0);
        if (seed != 0) {
            SplitMix64 rng(seed);
            for (size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[rng.below(i)]);
        }
        std::vector<std::pair<int, int>> chosen;
        search.nodes = 0;
        if (search.dfs(order, chosen, g)) {
            for (auto [s, t] : chosen) {
                basis.pairs.emplace_back(search.pool[s], search.pool[t]);
                basis.windings.emplace_back(
                    winding_of_dual_walk(model, push_off(model, search.pool[s])),
                    winding_of_dual_walk(model, push_off(model, search.pool[t])));
            }
            return basis;
        }
    }
    std::ostringstream msg;
    msg << "no symplectic basis of simple cycles found (genus " << g << ", pool "
        << search.pool.size() << ", max length " << cap_len << ")";
    fail(ErrorCode::SymplecticBasisNotFound, msg.str());
}

SymplecticCurveBasis an_canonical_basis(const SurfaceModel& model) {
    auto roles = an_roles_of(model.algebra);
    if (!roles)
        fail(ErrorCode::IndexOutOfRange, "algebra is not of chain form");
    SymplecticCurveBasis basis;
    for (int i = 0; i < roles->n; ++i) {
        EdgeCycle s, t;
        // s_i runs along the second arc of the block, departing where the
        // degree-a arrow lands; t_i along the first arc, departing where the
        // return arrow lands.
        int w_end = model.arrow_arr_end[roles->alpha[i]];
        s.steps.push_back({model.arc_of_end(w_end), w_end & 1});
        int z_end = model.arrow_arr_end[roles->beta[i]];
        t.steps.push_back({model.arc_of_end(z_end), z_end & 1});
        basis.pairs.emplace_back(s, t);
        basis.windings.emplace_back(winding_of_dual_walk(model, push_off(model, s)),
                                    winding_of_dual_walk(model, push_off(model, t)));
    }
    return basis;
}

DualWalk resolve_dual_walk(const SurfaceModel& model,
                           const std::vector<std::array<int, 3>>& triples) {
    if (triples.empty()) fail(ErrorCode::InconsistentWalk, "empty dual walk");
    const int n = static_cast<int>(triples.size());
    std::vector<std::vector<DualWalk::Chord>> options(n);
    for (int i = 0; i < n; ++i) {
        auto [poly, arc_in, arc_out] = triples[i];
        if (poly < 0 || poly >= static_cast<int>(model.polygons.size()))
            fail(ErrorCode::InconsistentWalk, "chord polygon out of range");
        const auto& sides = model.polygons[poly].sides;
        for (int si = 0; si < static_cast<int>(sides.size()); ++si)
            for (int so = 0; so < static_cast<int>(sides.size()); ++so)
                if (si != so && sides[si].arc == arc_in && sides[so].arc == arc_out)
                    options[i].push_back({poly, si, so});
        if (options[i].empty())
            fail(ErrorCode::InconsistentWalk, "no occurrence of the requested arcs in the polygon");
    }
    DualWalk walk;
    walk.chords.resize(n);
    std::function<bool(int)> pick = [&](int i) -> bool {
        if (i == n) {
            try {
                validate_walk(model, walk);
                return true;
            } catch (const DomainError&) {
                return false;
            }
        }
        for (const auto& c : options[i]) {
            walk.chords[i] = c;
            if (pick(i + 1)) return true;
        }
        return false;
    };
    if (!pick(0)) fail(ErrorCode::InconsistentWalk, "chord occurrences cannot be glued consistently");
    return walk;
}

} // namespace gentle
