#include "gentle/curves.hpp"

#include "support/random_gentle.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace gentle;
using namespace gentle::testsupport;

namespace {

GentleAlgebra from_text(const std::string& text) {
    return validate_gentle(parse_presentation_text(text));
}

GentleAlgebra zigzag_algebra(long long deg = 0) {
    Presentation pres;
    for (int v = 1; v <= 4; ++v) pres.quiver.vertices.push_back(std::to_string(v));
    auto add = [&](const std::string& id, int s, int t) {
        pres.quiver.arrows.push_back({id, s - 1, t - 1, deg});
        return static_cast<int>(pres.quiver.arrows.size()) - 1;
    };
    int a1 = add("a1", 1, 2), b1 = add("b1", 1, 2);
    int a2 = add("a2", 2, 3), b2 = add("b2", 2, 3);
    int a3 = add("a3", 3, 4), b3 = add("b3", 3, 4);
    int d = add("d", 4, 1);
    pres.relations = {{a1, b2}, {b1, a2}, {a2, b3}, {b2, a3}, {d, a1}, {b3, d}};
    return validate_gentle(pres);
}

bool cyclically_equal(std::vector<long long> a, const std::vector<long long>& b) {
    if (a.size() != b.size()) return false;
    for (size_t r = 0; r < a.size(); ++r) {
        if (a == b) return true;
        std::rotate(a.begin(), a.begin() + 1, a.end());
    }
    return a == b;
}

} // namespace

TEST_CASE("push-in walk reproduces the octagon boundary decomposition") {
    // distinct powers of two so every segment value is recognizable
    auto pres = make_an(parse_an_form("0,0;0,0")).presentation();
    const long long degs[7] = {1, 2, 4, 8, 16, 32, 64}; // a1 b1 g1 d1 a2 b2 g2
    for (int a = 0; a < 7; ++a) pres.quiver.arrows[a].deg = degs[a];
    auto model = build_surface(validate_gentle(pres));
    auto walk = push_in_walk(model, 0);
    REQUIRE(walk.chords.size() == 8);

    auto values = walk_chord_windings(model, walk);
    CHECK(std::accumulate(values.begin(), values.end(), 0LL) == -6);
    CHECK(winding_of_dual_walk(model, walk) == -6);
    CHECK(boundary_winding(model, 0) == -6);

    // the worked decomposition: seven corner segments and the long segment
    std::vector<long long> expected = {-4, -2, -1, -8, -64, -32, -16, -6 + 127};
    std::vector<long long> reversed(values.rbegin(), values.rend());
    CHECK(cyclically_equal(reversed, expected));
    std::multiset<long long> got(values.begin(), values.end());
    CHECK(got == std::multiset<long long>(expected.begin(), expected.end()));
}

TEST_CASE("push-in walks match the closed boundary formula everywhere") {
    Rng rng(31);
    int done = 0;
    while (done < 200) {
        auto alg = random_smooth_proper_connected(rng, 8, -5, 5);
        if (alg.has_loops()) continue;
        auto model = build_surface(alg);
        for (int i = 0; i < static_cast<int>(model.boundaries.size()); ++i) {
            auto walk = push_in_walk(model, i);
            CHECK(winding_of_dual_walk(model, walk) == boundary_winding(model, i));
            CHECK(winding_of_dual_walk(model, reverse_walk(model, walk)) ==
                  -boundary_winding(model, i));
        }
        ++done;
    }
}

TEST_CASE("canonical handle curves wind a_i - 1 and b_i - 1") {
    Rng rng(13);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            auto form = random_an_form(rng, n, -5, 5);
            auto model = build_surface(random_an_realization(rng, form));
            auto basis = an_canonical_basis(model);
            REQUIRE(static_cast<int>(basis.pairs.size()) == n);
            for (int i = 0; i < n; ++i) {
                CHECK(basis.windings[i].first == form.pairs[i].first - 1);
                CHECK(basis.windings[i].second == form.pairs[i].second - 1);
            }
        }
    }
}

TEST_CASE("canonical handle curves pair symplectically") {
    auto model = build_surface(make_an(parse_an_form("1,1;2,3;0,0")));
    auto basis = an_canonical_basis(model);
    REQUIRE(basis.pairs.size() == 3);
    std::vector<EdgeCycle> curves;
    for (const auto& [s, t] : basis.pairs) {
        curves.push_back(s);
        curves.push_back(t);
    }
    for (size_t i = 0; i < curves.size(); ++i)
        for (size_t j = 0; j < curves.size(); ++j) {
            long long expect = 0;
            if (i / 2 == j / 2) {
                if (i + 1 == j && j % 2 == 1) expect = 1;
                if (j + 1 == i && i % 2 == 1) expect = -1;
            }
            CHECK(intersection_number(model, curves[i], curves[j]) == expect);
        }
}

TEST_CASE("push_off negates under reversal and needs embedded input") {
    Rng rng(21);
    auto model = build_surface(random_an_realization(rng, parse_an_form("3,-2;0,5")));
    for (const auto& cycle : enumerate_embedded_cycles(model, 2)) {
        auto walk = push_off(model, cycle);
        auto w = winding_of_dual_walk(model, walk);
        CHECK(winding_of_dual_walk(model, reverse_walk(model, walk)) == -w);
        auto wr = winding_of_dual_walk(model, push_off(model, reverse_cycle(cycle)));
        CHECK(w == -wr);
    }
    // a walk repeating an arc is rejected
    EdgeCycle bad;
    bad.steps = {{0, 0}, {0, 0}};
    CHECK_THROWS_AS(push_off(model, bad), DomainError);
}

TEST_CASE("intersection numbers on the one-block chain") {
    auto model = build_surface(make_an(parse_an_form("1,1")));
    auto cycles = enumerate_embedded_cycles(model, 1);
    REQUIRE(cycles.size() == 2); // one loop per arc, up to reversal
    long long p = intersection_number(model, cycles[0], cycles[1]);
    CHECK((p == 1 || p == -1));
    CHECK(intersection_number(model, cycles[0], cycles[0]) == 0);
    CHECK(intersection_number(model, cycles[1], cycles[1]) == 0);
    CHECK(intersection_number(model, cycles[1], cycles[0]) == -p);
}

TEST_CASE("intersection numbers match the geometric oracle") {
    Rng rng(77);
    int done = 0;
    while (done < 60) {
        auto alg = random_smooth_proper_connected(rng, 6, -3, 3);
        if (alg.has_loops()) continue;
        auto model = build_surface(alg);
        auto cycles = enumerate_embedded_cycles(model, 3);
        if (cycles.size() > 12) cycles.resize(12);
        for (size_t i = 0; i < cycles.size(); ++i)
            for (size_t j = 0; j < cycles.size(); ++j) {
                long long main = intersection_number(model, cycles[i], cycles[j]);
                long long oracle = intersection_number_geometric(model, cycles[i], cycles[j]);
                CHECK(main == oracle);
                CHECK(main == -intersection_number(model, cycles[j], cycles[i]));
            }
        ++done;
    }
}

TEST_CASE("all pairings vanish on genus-zero models") {
    Rng rng(55);
    int done = 0;
    while (done < 40) {
        auto alg = random_smooth_proper_connected(rng, 7, -3, 3);
        if (alg.has_loops()) continue;
        auto model = build_surface(alg);
        if (model.genus != 0) continue;
        auto cycles = enumerate_embedded_cycles(model, 4);
        if (cycles.size() > 8) cycles.resize(8);
        for (size_t i = 0; i < cycles.size(); ++i)
            for (size_t j = 0; j < cycles.size(); ++j)
                CHECK(intersection_number(model, cycles[i], cycles[j]) == 0);
        ++done;
    }
}

TEST_CASE("homology ranks equal twice the genus") {
    CHECK(homology(build_surface(make_an(parse_an_form("1,1")))).rank() == 2);
    CHECK(homology(build_surface(from_text("vertex 1\n"))).rank() == 0);
    CHECK(homology(build_surface(make_an(parse_an_form("1,1;1,1;1,1")))).rank() == 6);
    CHECK(homology(build_surface(zigzag_algebra())).rank() == 4);
}

TEST_CASE("homology classes: boundaries vanish, reversal negates, loops span") {
    auto model = build_surface(make_an(parse_an_form("2,3")));
    auto basis = homology(model);

    for (int i = 0; i < static_cast<int>(model.boundaries.size()); ++i) {
        auto cls = homology_class_of_chain(model, basis, boundary_chain(model, i));
        for (long long c : cls) CHECK(c == 0);
    }

    auto cycles = enumerate_embedded_cycles(model, 1);
    REQUIRE(cycles.size() == 2);
    auto c0 = homology_class(model, basis, cycles[0]);
    auto c0r = homology_class(model, basis, reverse_cycle(cycles[0]));
    for (size_t k = 0; k < c0.size(); ++k) CHECK(c0[k] == -c0r[k]);

    // the two loops form a basis: |det| of their class matrix is 1
    auto c1 = homology_class(model, basis, cycles[1]);
    long long det = c0[0] * c1[1] - c0[1] * c1[0];
    CHECK((det == 1 || det == -1));
}

TEST_CASE("the homology pairing is skew and unimodular") {
    Rng rng(42);
    int done = 0;
    while (done < 30) {
        auto alg = random_smooth_proper_connected(rng, 7, -3, 3);
        if (alg.has_loops()) continue;
        auto model = build_surface(alg);
        if (model.genus == 0) continue;
        auto basis = homology(model);
        auto mat = h1_intersection_matrix(model, basis); // throws if not unimodular
        REQUIRE(static_cast<int>(mat.size()) == basis.rank());
        for (size_t i = 0; i < mat.size(); ++i)
            for (size_t j = 0; j < mat.size(); ++j) CHECK(mat[i][j] == -mat[j][i]);
        ++done;
    }
}

TEST_CASE("enumerate_embedded_cycles: worked examples and monotonicity") {
    auto torus = build_surface(make_an(parse_an_form("1,1")));
    auto len1 = enumerate_embedded_cycles(torus, 1);
    CHECK(len1.size() == 2);
    auto len2 = enumerate_embedded_cycles(torus, 2);
    CHECK(len2.size() > len1.size()); // the two-arc curves appear

    auto disk = build_surface(from_text("vertex 1\n"));
    CHECK(enumerate_embedded_cycles(disk, 3).empty());

    Rng rng(9);
    auto model = build_surface(random_an_realization(rng, parse_an_form("1,1;1,1")));
    size_t prev = 0;
    for (int cap = 1; cap <= 4; ++cap) {
        auto cur = enumerate_embedded_cycles(model, cap).size();
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("find_symplectic_basis produces the standard pairing") {
    Rng rng(4);
    for (int n = 1; n <= 3; ++n) {
        auto model = build_surface(random_an_realization(rng, random_an_form(rng, n, -4, 4)));
        auto basis = find_symplectic_basis(model);
        REQUIRE(static_cast<int>(basis.pairs.size()) == n);
        std::vector<EdgeCycle> curves;
        for (const auto& [s, t] : basis.pairs) {
            curves.push_back(s);
            curves.push_back(t);
        }
        for (size_t i = 0; i < curves.size(); ++i)
            for (size_t j = i + 1; j < curves.size(); ++j) {
                long long expect = (j == i + 1 && i % 2 == 0) ? 1 : 0;
                CHECK(intersection_number(model, curves[i], curves[j]) == expect);
            }
    }

    auto disk = build_surface(from_text("vertex 1\nvertex 2\narrow a 1 2 0\n"));
    CHECK(find_symplectic_basis(disk).pairs.empty());

    // the zigzag model needs walks through the single marked point
    auto zig = build_surface(zigzag_algebra());
    auto basis = find_symplectic_basis(zig);
    CHECK(basis.pairs.size() == 2);
}

TEST_CASE("basis search succeeds on random smooth proper models") {
    Rng rng(1234);
    int done = 0;
    while (done < 150) {
        auto alg = random_smooth_proper_connected(rng, 8, -4, 4);
        if (alg.has_loops()) continue;
        auto model = build_surface(alg);
        if (model.genus == 0) { ++done; continue; }
        auto basis = find_symplectic_basis(model);
        CHECK(static_cast<int>(basis.pairs.size()) == model.genus);
        ++done;
    }
}

TEST_CASE("pairing and homology classes are mutually consistent") {
    Rng rng(68);
    int done = 0;
    while (done < 25) {
        auto alg = random_smooth_proper_connected(rng, 7, -3, 3);
        if (alg.has_loops()) continue;
        auto model = build_surface(alg);
        if (model.genus == 0) continue;
        SymplecticCurveBasis basis;
        try {
            basis = find_symplectic_basis(model);
        } catch (const DomainError&) {
            continue;
        }
        auto h = homology(model);
        std::vector<std::vector<long long>> s_class, t_class;
        for (const auto& [s, t] : basis.pairs) {
            s_class.push_back(homology_class(model, h, s));
            t_class.push_back(homology_class(model, h, t));
        }
        auto pool = enumerate_embedded_cycles(model, 3);
        if (pool.size() > 10) pool.resize(10);
        for (const auto& z : pool) {
            auto zc = homology_class(model, h, z);
            std::vector<long long> recon(zc.size(), 0);
            for (size_t i = 0; i < basis.pairs.size(); ++i) {
                long long lambda = intersection_number(model, z, basis.pairs[i].second);
                long long mu = -intersection_number(model, z, basis.pairs[i].first);
                for (size_t k = 0; k < zc.size(); ++k)
                    recon[k] += lambda * s_class[i][k] + mu * t_class[i][k];
            }
            CHECK(recon == zc);
        }
        ++done;
    }
}

TEST_CASE("chain-form winding gcd and parities are basis independent") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int n = rng.range(1, 3);
        auto form = random_an_form(rng, n, -5, 5);
        auto model = build_surface(random_an_realization(rng, form));
        auto basis = find_symplectic_basis(model, 0, rng.next());

        std::vector<long long> found = {boundary_winding(model, 0) + 2};
        std::multiset<int> found_parity;
        for (const auto& [ws, wt] : basis.windings) {
            found.push_back(ws);
            found.push_back(wt);
            found_parity.insert(static_cast<int>(((ws % 2) + 2) % 2));
            found_parity.insert(static_cast<int>(((wt % 2) + 2) % 2));
        }
        std::vector<long long> canonical = {2 - 4LL * n + 2};
        std::multiset<int> canon_parity;
        for (const auto& [a, b] : form.pairs) {
            canonical.push_back(a - 1);
            canonical.push_back(b - 1);
            canon_parity.insert(static_cast<int>((((a - 1) % 2) + 2) % 2));
            canon_parity.insert(static_cast<int>((((b - 1) % 2) + 2) % 2));
        }
        auto gcd_of = [](const std::vector<long long>& v) {
            long long g = 0;
            for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
            return g;
        };
        CHECK(gcd_of(found) == gcd_of(canonical));
        CHECK(found_parity == canon_parity);
    }
}

TEST_CASE("resolve_dual_walk reconstructs chords from arc triples") {
    auto model = build_surface(make_an(parse_an_form("3,5")));
    // the curve crossing the first arc once: both occurrences in polygon 0
    auto walk = resolve_dual_walk(model, {{0, 0, 0}});
    long long w = winding_of_dual_walk(model, walk);
    CHECK((w == 2 || w == -2)); // a - 1 up to direction
    CHECK_THROWS_AS(resolve_dual_walk(model, {{0, 1, 1}, {0, 0, 0}}), DomainError);
}
