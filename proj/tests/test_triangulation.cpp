#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "branchflip/builders.hpp"
#include "branchflip/triangulation.hpp"

using namespace branchflip;

namespace {

// Brute-force pair scan used as the oracle for nutshell detection: every
// (unordered) triangle pair with exactly two cross gluings whose glued
// edges meet at a valence-2 vertex.
std::vector<std::pair<std::pair<int, int>, int>> nutshell_oracle(const Triangulation& t) {
    std::vector<std::pair<std::pair<int, int>, int>> out;
    for (int a = 0; a < t.triangle_count(); ++a)
        for (int b = a + 1; b < t.triangle_count(); ++b) {
            std::set<int> shared;
            for (int s = 0; s < 3; ++s) {
                Slot p = t.partner(Slot{a, s});
                if (p.valid() && p.tri == b) shared.insert(t.edge_of(Slot{a, s}));
            }
            if (shared.size() != 2) continue;
            for (int v = 0; v < t.vertex_count(); ++v) {
                if (t.vertex_valence(v) != 2) continue;
                bool in_pair = true;
                for (const Corner& c : t.corners_of_vertex(v))
                    if (c.tri != a && c.tri != b) in_pair = false;
                if (!in_pair) continue;
                int touching = 0;
                for (int e : shared) {
                    auto ends = t.slot_endpoints(t.edge_slot(e, 0));
                    if (t.vertex_of(ends[0]) == v || t.vertex_of(ends[1]) == v) ++touching;
                }
                if (touching == 2) out.push_back({{a, b}, v});
            }
        }
    return out;
}

// Random triangle/corner relabeling of a closed triangulation.
TriPtr relabel(const Triangulation& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int F = t.triangle_count();
    std::vector<int> tri_perm(F);
    for (int i = 0; i < F; ++i) tri_perm[i] = i;
    for (int i = F - 1; i > 0; --i) std::swap(tri_perm[i], tri_perm[rng() % (i + 1)]);
    static const std::array<std::array<int, 3>, 6> perms{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::vector<std::array<int, 3>> cp(F);
    for (int i = 0; i < F; ++i) cp[i] = perms[rng() % 6];

    auto map_slot = [&](Slot s) { return Slot{tri_perm[s.tri], cp[s.tri][s.slot]}; };
    auto order_kept = [&](Slot s) {
        // endpoint order preserved iff corner s+1 maps to (new slot)+1
        return cp[s.tri][(s.slot + 1) % 3] == (cp[s.tri][s.slot] + 1) % 3;
    };
    std::vector<GluingSpec> g;
    for (const GluingSpec& old : t.gluing_list()) {
        int bit = old.bit ^ (order_kept(old.a) ? 0 : 1) ^ (order_kept(old.b) ? 0 : 1);
        g.push_back(GluingSpec{map_slot(old.a), map_slot(old.b), bit});
    }
    return Triangulation::build(t.triangle_count(), g);
}

}  // namespace

TEST_CASE("two triangles glued along their boundary form the three-vertex sphere") {
    auto s = sphere3();
    CHECK(s.tri->triangle_count() == 2);
    CHECK(s.tri->edge_count() == 3);
    CHECK(s.tri->vertex_count() == 3);
    SurfaceClass c = classify_surface(*s.tri);
    CHECK(c.orientable);
    CHECK(c.genus_or_crosscaps == 0);
    CHECK(c.euler == 2);
    CHECK(trapped_edges(*s.tri).empty());
}

TEST_CASE("one-vertex torus") {
    auto s = torus1();
    CHECK(s.tri->vertex_count() == 1);
    CHECK(s.tri->euler_characteristic() == 0);
    CHECK(classify_surface(*s.tri).orientable);
    CHECK(find_nutshells(*s.tri).empty());
}

TEST_CASE("projective plane with two vertices") {
    auto s = projective2();
    SurfaceClass c = classify_surface(*s.tri);
    CHECK_FALSE(c.orientable);
    CHECK(c.genus_or_crosscaps == 1);
    CHECK(c.euler == 1);
    CHECK(c.n_vertices == 2);
    // slot scan finds no trapped edges in this build
    CHECK(trapped_edges(*s.tri).empty());
}

TEST_CASE("klein bottle builds") {
    auto kb = klein_bigons();
    SurfaceClass cb = classify_surface(*kb.tri);
    CHECK_FALSE(cb.orientable);
    CHECK(cb.euler == 0);
    CHECK(cb.n_vertices == 1);
    CHECK(trapped_edges(*kb.tri).size() == 2);

    auto kq = klein_quad();
    SurfaceClass cq = classify_surface(*kq.tri);
    CHECK_FALSE(cq.orientable);
    CHECK(cq.euler == 0);
    CHECK(cq.n_vertices == 1);
    CHECK(trapped_edges(*kq.tri).empty());
}

TEST_CASE("build rejects bad gluing lists") {
    std::vector<GluingSpec> missing{{Slot{0, 0}, Slot{1, 0}, 0}, {Slot{0, 1}, Slot{1, 1}, 0}};
    CHECK_THROWS_AS(Triangulation::build(2, missing), NonPerfectMatching);

    std::vector<GluingSpec> self{{Slot{0, 0}, Slot{0, 0}, 0}};
    CHECK_THROWS_AS(Triangulation::build(2, self), SlotSelfMatch);

    // two disjoint one-triangle...: build two independent sphere3 tables
    std::vector<GluingSpec> disc;
    for (int i = 0; i < 3; ++i) {
        disc.push_back({Slot{0, i}, Slot{1, i}, 0});
        disc.push_back({Slot{2, i}, Slot{3, i}, 0});
    }
    CHECK_THROWS_AS(Triangulation::build(4, disc), Disconnected);
}

TEST_CASE("euler relation holds on every builder output") {
    for (const auto& name : builder_names()) {
        auto b = build_by_name(name);
        const Triangulation& t = *b.tri;
        CHECK(t.edge_count() * 2 == 3 * t.triangle_count());
        CHECK(t.vertex_count() - t.edge_count() + t.triangle_count() ==
              classify_surface(t).euler);
    }
}

TEST_CASE("nutshell and star detection agree with the brute-force scan") {
    for (const auto& name : builder_names()) {
        auto b = build_by_name(name);
        auto found = find_nutshells(*b.tri);
        auto oracle = nutshell_oracle(*b.tri);
        CHECK(found.size() == oracle.size());
    }
    // sphere3: each pair shares three edges, so no nutshell
    CHECK(find_nutshells(*sphere3().tri).empty());
    CHECK(find_nutshells(*torus1().tri).empty());
    CHECK(find_triangular_stars(*sphere3().tri).empty());

    // tetrahedron boundary has four stars
    SurfaceClass sph{true, 0, 2, 4};
    TriPtr tetra = distinguished(sph, 4);
    CHECK(tetra->triangle_count() == 4);
    CHECK(tetra->vertex_count() == 4);
    CHECK(find_triangular_stars(*tetra).size() == 4);
}

TEST_CASE("canonical key is invariant under relabeling and separates classes") {
    for (const auto& name : builder_names()) {
        auto b = build_by_name(name);
        std::string k = canonical_key(*b.tri, false);
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            CHECK(canonical_key(*relabel(*b.tri, seed), false) == k);
    }
    CHECK(canonical_key(*sphere3().tri, false) != canonical_key(*torus1().tri, false));
    CHECK(canonical_key(*torus1().tri, false) != canonical_key(*klein_quad().tri, false));
    CHECK(canonical_key(*klein_bigons().tri, false) != canonical_key(*klein_quad().tri, false));
}

TEST_CASE("label-respecting keys distinguish label swaps") {
    auto p = projective2();
    // same complex, swapped labels
    auto swapped = Triangulation::build(2, p.tri->gluing_list(), {1, 0});
    CHECK(canonical_key(*p.tri, false) == canonical_key(*swapped, false));
    CHECK(canonical_key(*p.tri, true) != canonical_key(*swapped, true));
}

namespace {

// Brute-force isomorphism decision over all triangle and corner
// relabelings; the oracle for canonical-key soundness.
bool brute_isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.triangle_count() != b.triangle_count()) return false;
    const int F = a.triangle_count();
    static const std::array<std::array<int, 3>, 6> perms{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::vector<int> tri_perm(F);
    for (int i = 0; i < F; ++i) tri_perm[i] = i;
    do {
        std::vector<int> corner_choice(F, 0);
        while (true) {
            // test this relabeling
            bool match = true;
            auto order_kept = [&](Slot s) {
                const auto& cp = perms[corner_choice[s.tri]];
                return cp[(s.slot + 1) % 3] == (cp[s.slot] + 1) % 3;
            };
            for (int t = 0; t < F && match; ++t)
                for (int sl = 0; sl < 3 && match; ++sl) {
                    Slot s{t, sl};
                    Slot img{tri_perm[t], perms[corner_choice[t]][sl]};
                    Slot p = a.partner(s);
                    Slot q = b.partner(img);
                    if (p.valid() != q.valid()) { match = false; break; }
                    if (!p.valid()) continue;
                    Slot pimg{tri_perm[p.tri], perms[corner_choice[p.tri]][p.slot]};
                    if (!(pimg == q)) { match = false; break; }
                    int want = a.gluing_bit(s) ^ (order_kept(s) ? 0 : 1) ^
                               (order_kept(p) ? 0 : 1);
                    if (want != b.gluing_bit(img)) match = false;
                }
            if (match) return true;
            // next corner choice
            int k = 0;
            while (k < F && ++corner_choice[k] == 6) corner_choice[k++] = 0;
            if (k == F) break;
        }
    } while (std::next_permutation(tri_perm.begin(), tri_perm.end()));
    return false;
}

}  // namespace

TEST_CASE("canonical keys decide isomorphism on all two-triangle complexes") {
    // enumerate every closed 2-triangle complex (matchings on 6 slots with
    // bits) and compare key equality against the brute-force oracle
    std::vector<TriPtr> all;
    std::vector<int> slots{0, 1, 2, 3, 4, 5};
    std::function<void(std::vector<int>&, std::vector<std::pair<int, int>>&)> rec =
        [&](std::vector<int>& pool, std::vector<std::pair<int, int>>& pairs) {
            if (pool.empty()) {
                for (int mask = 0; mask < 8; ++mask) {
                    std::vector<GluingSpec> g;
                    for (size_t k = 0; k < 3; ++k)
                        g.push_back({Slot{pairs[k].first / 3, pairs[k].first % 3},
                                     Slot{pairs[k].second / 3, pairs[k].second % 3},
                                     (mask >> k) & 1});
                    try {
                        all.push_back(Triangulation::build(2, g));
                    } catch (const Error&) {}
                }
                return;
            }
            int a = pool[0];
            for (size_t j = 1; j < pool.size(); ++j) {
                std::vector<int> rest;
                for (size_t k = 1; k < pool.size(); ++k)
                    if (k != j) rest.push_back(pool[k]);
                pairs.push_back({a, pool[j]});
                rec(rest, pairs);
                pairs.pop_back();
            }
        };
    std::vector<std::pair<int, int>> pairs;
    rec(slots, pairs);
    REQUIRE(all.size() > 20);
    std::vector<std::string> keys;
    for (const auto& t : all) keys.push_back(canonical_key(*t, false));
    int agree = 0;
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            bool iso = brute_isomorphic(*all[i], *all[j]);
            CHECK(iso == (keys[i] == keys[j]));
            if (iso) ++agree;
        }
    CHECK(agree > 0);  // some distinct tables are isomorphic
}
