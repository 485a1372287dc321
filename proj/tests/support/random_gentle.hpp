#pragma once

#include "gentle/algebra.hpp"

#include <cstdint>
#include <vector>

namespace gentle::testsupport {

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 0x2545f4914f6cdd1dULL) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return n <= 0 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); } // inclusive
    bool flip() { return next() & 1; }
};

// Random loop-free gentle presentation. Degree bounds inclusive. The per
// vertex relation pattern is drawn from the valid ones, so the result always
// validates.
inline Presentation random_gentle_presentation(Rng& rng, int max_vertices, int deg_lo, int deg_hi) {
    Presentation pres;
    const int nv = rng.range(1, max_vertices);
    for (int v = 0; v < nv; ++v) pres.quiver.vertices.push_back("v" + std::to_string(v));

    std::vector<int> outdeg(nv, 0), indeg(nv, 0);
    const int attempts = rng.range(nv, 5 * nv);
    for (int t = 0; t < attempts; ++t) {
        int u = rng.below(nv), w = rng.below(nv);
        if (u == w || outdeg[u] >= 2 || indeg[w] >= 2) continue;
        int id = static_cast<int>(pres.quiver.arrows.size());
        pres.quiver.arrows.push_back({"x" + std::to_string(id), u, w,
                                      static_cast<long long>(rng.range(deg_lo, deg_hi))});
        outdeg[u]++;
        indeg[w]++;
    }

    // Per vertex, pick relations among the composable pairs. With two arrows
    // on either side a perfect matching is forced; otherwise a relation is
    // optional for the single pair.
    for (int v = 0; v < nv; ++v) {
        std::vector<int> ins, outs;
        for (size_t a = 0; a < pres.quiver.arrows.size(); ++a) {
            if (pres.quiver.arrows[a].tgt == v) ins.push_back(static_cast<int>(a));
            if (pres.quiver.arrows[a].src == v) outs.push_back(static_cast<int>(a));
        }
        if (ins.empty() || outs.empty()) continue;
        if (ins.size() == 1 && outs.size() == 1) {
            if (rng.flip()) pres.relations.emplace_back(ins[0], outs[0]);
        } else if (ins.size() == 1) {
            pres.relations.emplace_back(ins[0], outs[rng.below(2)]);
        } else if (outs.size() == 1) {
            pres.relations.emplace_back(ins[rng.below(2)], outs[0]);
        } else {
            int k = rng.below(2);
            pres.relations.emplace_back(ins[0], outs[k]);
            pres.relations.emplace_back(ins[1], outs[1 - k]);
        }
    }
    return pres;
}

// Retries until the sample is connected, proper and smooth.
inline GentleAlgebra random_smooth_proper_connected(Rng& rng, int max_vertices, int deg_lo,
                                                    int deg_hi) {
    while (true) {
        auto alg = validate_gentle(random_gentle_presentation(rng, max_vertices, deg_lo, deg_hi));
        if (!check_proper(alg) || !check_smooth(alg)) continue;
        if (!is_connected(alg)) continue;
        return alg;
    }
}

// Chain quiver with a random degree split realizing the given pair sums; the
// middle and connecting arrows get nonzero degrees too.
inline GentleAlgebra random_an_realization(Rng& rng, const AnForm& form) {
    auto pres = make_an(form).presentation();
    const int n = form.n();
    for (int i = 0; i < n; ++i) {
        long long beta = rng.range(-3, 3);
        // arrows are laid out as a_i, b_i, g_i, (d_i) per block
        int ai = 4 * i, bi = 4 * i + 1, gi = 4 * i + 2;
        pres.quiver.arrows[bi].deg = beta;
        pres.quiver.arrows[ai].deg = form.pairs[i].first - beta;
        pres.quiver.arrows[gi].deg = form.pairs[i].second - beta;
        if (i < n - 1) pres.quiver.arrows[4 * i + 3].deg = rng.range(-3, 3);
    }
    return validate_gentle(pres);
}

inline AnForm random_an_form(Rng& rng, int n, int lo, int hi) {
    AnForm form;
    for (int i = 0; i < n; ++i)
        form.pairs.emplace_back(rng.range(lo, hi), rng.range(lo, hi));
    return form;
}

} // namespace gentle::testsupport
