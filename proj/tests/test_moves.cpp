#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "branchflip/builders.hpp"
#include "branchflip/moves.hpp"

using namespace branchflip;

namespace {

// Free-boundary quadrilateral: two triangles sharing a diagonal.
TriPtr free_quad(int bit) {
    return Triangulation::build_with_boundary(2, {{Slot{0, 0}, Slot{1, 0}, bit}});
}

// Labeled 1-corner counts (label -> count); on closed surfaces this is
// twice the d-vector, and unlike d_vector it is meaningful on boundary
// complexes too.
std::map<long long, int> labeled_d(const Branching& b) {
    std::map<long long, int> out;
    for (int v = 0; v < b.owner().vertex_count(); ++v) out[b.owner().vertex_label(v)] = 0;
    for (int tri = 0; tri < b.owner().triangle_count(); ++tri) {
        int mid = one_labelled_corner(b, tri);
        out[b.owner().vertex_label(b.owner().vertex_of(Corner{tri, mid}))]++;
    }
    return out;
}

}  // namespace

TEST_CASE("naked flip: involution up to canonical key, trapped edges refused") {
    auto s = sphere3();
    for (int e = 0; e < 3; ++e) {
        TriPtr once = flip_naked(s.tri, e);
        FlipData d = flip_naked_data(s.tri, e);
        TriPtr twice = flip_naked(once, d.new_edge);
        CHECK(canonical_key(*twice, true) == canonical_key(*s.tri, true));
    }
    auto kb = klein_bigons();
    for (int e : trapped_edges(*kb.tri)) CHECK_THROWS_AS(flip_naked(kb.tri, e), TrappedEdge);
}

TEST_CASE("flipping a nutshell's internal edge produces a trapped edge") {
    auto t = torus1();
    Branching b = enumerate_branchings(t.tri)[0];
    Branching bubbled = bubble_plus(b, 0, 0);
    auto nuts = find_nutshells(bubbled.owner());
    REQUIRE(nuts.size() == 1);
    CHECK(trapped_edges(bubbled.owner()).empty());
    TriPtr flipped = flip_naked(bubbled.owner_ptr(), nuts[0].internal_edges[0]);
    CHECK(trapped_edges(*flipped).size() == 1);
}

TEST_CASE("every naked flip admits one or two branched enhancements") {
    for (const auto& name : builder_names()) {
        auto s = build_by_name(name);
        for (const Branching& b : enumerate_branchings(s.tri)) {
            for (int e = 0; e < s.tri->edge_count(); ++e) {
                if (s.tri->edge_is_trapped(e)) continue;
                auto res = enumerate_bflips(b, e);
                CHECK(res.size() >= 1);
                CHECK(res.size() <= 2);
                // persistent edges keep their orientations
                FlipData d = flip_naked_data(s.tri, e);
                for (const Branching& nb : res)
                    for (int oe = 0; oe < s.tri->edge_count(); ++oe)
                        if (d.edge_map[oe] >= 0)
                            CHECK(nb.orientation(d.edge_map[oe]) ==
                                  (b.orientation(oe) ^ d.edge_flip[oe]));
            }
        }
    }
}

TEST_CASE("abstract quadrilateral census: the three families partition all branched flips") {
    for (int bit = 0; bit < 2; ++bit) {
        TriPtr quad = free_quad(bit);
        int diag = quad->edge_of(Slot{0, 0});
        auto branchings = enumerate_branchings(quad);
        CHECK(branchings.size() == 18);

        int n_na = 0, n_fa = 0, n_bump = 0;
        for (const Branching& b : branchings) {
            auto choices = bflip_choices(b, diag);
            FlipClass c = classify_bflip(b, diag, choices[0]);
            (c == FlipClass::NonAmbiguous ? n_na : c == FlipClass::ForcedAmbiguous ? n_fa : n_bump)++;

            // classification is invariant under total inversion
            Branching nb = total_inversion(b);
            CHECK(classify_bflip(nb, diag, bflip_choices(nb, diag)[0]) == c);

            // forcedness bookkeeping matches the class
            bool fwd = flip_is_forced(b, diag);
            BFlipResult r = apply_bflip(b, diag, choices[0]);
            bool bwd = flip_is_forced(r.result, r.new_edge);
            if (c == FlipClass::NonAmbiguous) CHECK((fwd && bwd));
            if (c == FlipClass::Bump) CHECK((!fwd && !bwd));
            if (c == FlipClass::ForcedAmbiguous) CHECK(fwd != bwd);

            // apex vertices: off-diagonal corners of the two triangles
            int apex0 = quad->vertex_of(Corner{0, 0});
            int apex1 = quad->vertex_of(Corner{1, 0});
            bool p0 = vertex_is_pit_or_source(b, apex0);
            bool p1 = vertex_is_pit_or_source(b, apex1);
            if (p0 && p1) {
                // one pit and one source force the flip; two pits or two
                // sources make it a bump
                int ins0 = 0;
                for (const Corner& cc : quad->corners_of_vertex(apex0))
                    if (b.forward_in_slot(Slot{cc.tri, (cc.corner + 1) % 3})) ++ins0;
                int ins1 = 0;
                for (const Corner& cc : quad->corners_of_vertex(apex1))
                    if (b.forward_in_slot(Slot{cc.tri, (cc.corner + 1) % 3})) ++ins1;
                bool same_kind = (ins0 == 0) == (ins1 == 0);
                CHECK(c == (same_kind ? FlipClass::Bump : FlipClass::ForcedAmbiguous));
            }

            // the diagonal is ambiguous iff the inverse flip is not forced
            CHECK(is_ambiguous(b, diag) == !bwd);

            // sliding iff the labeled d-vector is preserved (census level)
            for (int ch : choices) {
                Branching after = apply_bflip(b, diag, ch).result;
                bool d_same = labeled_d(after) == labeled_d(b);
                CHECK(d_same == is_sliding(c));
            }
        }
        CHECK(n_na + n_fa + n_bump == 18);
        CHECK(n_na > 0);
        CHECK(n_fa > 0);
        CHECK(n_bump > 0);
    }
}

TEST_CASE("two-flip inversion of an untrapped ambiguous edge") {
    for (const auto& name : builder_names()) {
        auto s = build_by_name(name);
        for (const Branching& b : enumerate_branchings(s.tri)) {
            for (int e : ambiguous_edges(b)) {
                if (s.tri->edge_is_trapped(e)) continue;
                Branching target = invert_edge(b, e);
                // flip e with any enhancement, then flip the new diagonal
                // back selecting the inverted orientation
                BFlipResult first = apply_bflip(b, e, bflip_choices(b, e)[0]);
                bool reached = false;
                for (int c : bflip_choices(first.result, first.new_edge)) {
                    Branching back = apply_bflip(first.result, first.new_edge, c).result;
                    if (branched_key(back, true) == branched_key(target, true)) reached = true;
                }
                CHECK(reached);
            }
        }
    }
}

TEST_CASE("bubble: inverse pair, vertex bookkeeping, choice count") {
    auto t = torus1();
    Branching b = enumerate_branchings(t.tri)[2];
    for (int e = 0; e < t.tri->edge_count(); ++e) {
        for (int choice : {0, 1, 2, 3}) {
            bool valid = true;
            try {
                Branching after = bubble_plus(b, e, choice);
                CHECK(after.owner().vertex_count() == t.tri->vertex_count() + 1);
                CHECK(after.owner().euler_characteristic() == t.tri->euler_characteristic());
                auto nuts = find_nutshells(after.owner());
                REQUIRE(nuts.size() == 1);
                CHECK(nutshell_is_good(after, nuts[0]));
                Branching back = bubble_minus(after, nuts[0]);
                CHECK(branched_key(back, true) == branched_key(b, true));
            } catch (const InvalidMove&) {
                valid = false;
            }
            (void)valid;
        }
    }
    // exactly three of the four internal-orientation choices are valid
    int valid = 0;
    for (int choice : {0, 1, 2, 3}) {
        try {
            bubble_plus(b, 0, choice);
            ++valid;
        } catch (const InvalidMove&) {}
    }
    CHECK(valid == 3);
}

TEST_CASE("bad nutshells have pit or source centers; good pairs connect by inversions") {
    // local census: free-boundary nutshell (two triangles glued along two
    // edges, mirror layout)
    TriPtr shell = Triangulation::build_with_boundary(
        2, {{Slot{0, 0}, Slot{1, 0}, 0}, {Slot{0, 1}, Slot{1, 1}, 0}});
    auto nuts = find_nutshells(*shell);
    REQUIRE(nuts.size() == 1);
    auto branchings = enumerate_branchings(shell);
    int n_bad = 0;
    std::map<std::pair<int, int>, std::vector<Branching>> by_boundary;
    for (const Branching& b : branchings) {
        if (!nutshell_is_good(b, nuts[0])) {
            ++n_bad;
            CHECK(vertex_is_pit_or_source(b, nuts[0].center_vertex));
        } else {
            int e0 = shell->edge_of(Slot{0, 2});
            int e1 = shell->edge_of(Slot{1, 2});
            by_boundary[{b.orientation(e0), b.orientation(e1)}].push_back(b);
        }
    }
    CHECK(n_bad > 0);
    // good nutshells sharing the oriented boundary connect by at most two
    // inversions of internal ambiguous edges
    for (auto& [key, group] : by_boundary) {
        for (const Branching& x : group)
            for (const Branching& y : group) {
                int dist = delta(x, y).size();
                CHECK(dist <= 2);
                if (dist == 1) {
                    int e = delta(x, y).edges[0];
                    CHECK(is_ambiguous(x, e));
                    CHECK(invert_edge(x, e) == y);
                } else if (dist == 2) {
                    bool two_step = false;
                    for (int e : delta(x, y).edges) {
                        if (!is_ambiguous(x, e)) continue;
                        Branching mid = invert_edge(x, e);
                        int e2 = delta(mid, y).edges[0];
                        if (is_ambiguous(mid, e2) && invert_edge(mid, e2) == y) two_step = true;
                    }
                    CHECK(two_step);
                }
            }
    }
}

TEST_CASE("stellar moves: inward subdivision is good, inverse restores, bad centers") {
    auto s = sphere3();
    for (const Branching& b : enumerate_branchings(s.tri)) {
        for (int tri = 0; tri < 2; ++tri) {
            Stellar13Result r = apply_stellar_13(b, tri, 0);  // all edges toward center
            CHECK(vertex_is_pit_or_source(r.result, r.data.center_vertex));
            auto stars = find_triangular_stars(r.result.owner());
            bool found = false;
            for (const auto& st : stars)
                if (st.center_vertex == r.data.center_vertex) {
                    found = true;
                    CHECK(star_is_good(r.result, st));
                    Branching back = stellar_31(r.result, st);
                    CHECK(branched_key(back, true) == branched_key(b, true));
                }
            CHECK(found);
        }
    }

    // full local census on a free star: bad ones have pit or source centers
    TriPtr fan = Triangulation::build_with_boundary(
        3, {{Slot{0, 0}, Slot{1, 1}, 1}, {Slot{1, 0}, Slot{2, 1}, 1}, {Slot{2, 0}, Slot{0, 1}, 1}});
    auto stars = find_triangular_stars(*fan);
    REQUIRE(stars.size() == 1);
    int n_bad = 0;
    for (const Branching& b : enumerate_branchings(fan)) {
        if (!star_is_good(b, stars[0])) {
            ++n_bad;
            CHECK(vertex_is_pit_or_source(b, stars[0].center_vertex));
            CHECK_THROWS_AS(stellar_31(b, stars[0]), BadStar);
        } else {
            Branching merged = stellar_31(b, stars[0]);
            CHECK(merged.owner().triangle_count() == 1);
        }
    }
    CHECK(n_bad > 0);
}

TEST_CASE("replay: empty log is the identity, log plus inverse log restores") {
    auto t = torus1();
    Branching b = enumerate_branchings(t.tri)[1];
    MoveLog empty{hex_key(branched_key(b, true)), {}};
    CHECK(replay(b, empty) == b);

    std::vector<Move> script{MvBubblePlus{1, 0}, MvStellar13{0, 0}, MvBFlip{0, 0}};
    Branching cur = b;
    std::vector<Move> done;
    std::vector<Move> undo;
    for (Move m : script) {
        if (std::holds_alternative<MvBFlip>(m)) {
            int e = std::get<MvBFlip>(m).edge;
            if (cur.owner().edge_is_trapped(e)) continue;
            m = MvBFlip{e, bflip_choices(cur, e)[0]};
        }
        Branching next = branchflip::apply(cur, m);
        undo.push_back(inverse_of(m, cur, next));
        done.push_back(m);
        cur = next;
    }
    std::reverse(undo.begin(), undo.end());
    MoveLog round{hex_key(branched_key(b, true)), done};
    round.moves.insert(round.moves.end(), undo.begin(), undo.end());
    Branching final = replay(b, round);
    CHECK(branched_key(final, true) == branched_key(b, true));

    MoveLog bad{"00", {}};
    CHECK_THROWS_AS(replay(b, bad), Error);
}
