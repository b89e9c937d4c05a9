#include "branchflip/builders.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "branchflip/moves.hpp"

namespace branchflip {

PolygonComplex polygon_complex(const std::vector<PolygonSide>& word, bool allow_boundary) {
    const int m = static_cast<int>(word.size());
    if (m < 3) throw Error("polygon needs at least three sides");
    const int F = m - 2;

    // Fan from corner 0: T_j = (Q0, Q_{j+1}, Q_{j+2}).  Side 0 sits on
    // T_0 slot 2; side i (1 <= i <= m-2) on T_{i-1} slot 0; side m-1 on
    // T_{m-3} slot 1.  All side slots run in the polygon direction.
    auto side_slot = [&](int i) -> Slot {
        if (i == 0) return Slot{0, 2};
        if (i == m - 1) return Slot{F - 1, 1};
        return Slot{i - 1, 0};
    };

    std::vector<GluingSpec> gluings;
    // diagonals Q0 -- Q_{j+1}: T_{j-1} slot 1 to T_j slot 2, bit 1
    for (int j = 1; j <= m - 3; ++j)
        gluings.push_back(GluingSpec{Slot{j - 1, 1}, Slot{j, 2}, 1});

    std::map<int, std::vector<int>> by_label;
    for (int i = 0; i < m; ++i) by_label[word[i].label].push_back(i);
    std::vector<std::pair<int, Slot>> boundary;
    for (const auto& [label, sides] : by_label) {
        if (sides.size() == 1) {
            if (!allow_boundary) throw Error("unmatched polygon label");
            boundary.emplace_back(label, side_slot(sides[0]));
        } else if (sides.size() == 2) {
            int i1 = sides[0], i2 = sides[1];
            int bit = (word[i1].inverted == word[i2].inverted) ? 0 : 1;
            gluings.push_back(GluingSpec{side_slot(i1), side_slot(i2), bit});
        } else {
            throw Error("label used more than twice");
        }
    }

    PolygonComplex out;
    out.tri = allow_boundary ? Triangulation::build_with_boundary(F, gluings)
                             : Triangulation::build(F, gluings);
    for (auto& [label, slot] : boundary) out.boundary.emplace_back(label, slot);
    if (m > 3) out.fan_diagonal_edge = out.tri->edge_of(Slot{0, 1});
    return out;
}

namespace {

Branching reference_branching(const TriPtr& t, const std::vector<Slot>& want_ambiguous) {
    for (const Branching& b : enumerate_branchings(t)) {
        bool ok = true;
        for (Slot s : want_ambiguous)
            if (!is_ambiguous(b, t->edge_of(s))) ok = false;
        if (ok) return b;
    }
    // Fall back to the first branching when no orientation makes every
    // requested edge ambiguous (the pierced projective plane).
    return first_branching(t);
}

}  // namespace

BuiltSurface sphere3() {
    std::vector<GluingSpec> g;
    for (int i = 0; i < 3; ++i) g.push_back(GluingSpec{Slot{0, i}, Slot{1, i}, 0});
    auto t = Triangulation::build(2, g);
    return BuiltSurface{t, first_branching(t), "sphere3"};
}

BuiltSurface torus1() {
    auto pc = polygon_complex({{1, false}, {2, false}, {1, true}, {2, true}}, false);
    return BuiltSurface{pc.tri, first_branching(pc.tri), "torus1"};
}

BuiltSurface projective2() {
    // Bigon with both sides identified by the antipodal map, coned from an
    // interior vertex: triangles (u, w, c) and (u, w, c); the bigon edge
    // glues slot 2 to slot 2 with a swap, the cone edges match up directly.
    std::vector<GluingSpec> g{
        GluingSpec{Slot{0, 2}, Slot{1, 2}, 1},
        GluingSpec{Slot{0, 1}, Slot{1, 1}, 0},
        GluingSpec{Slot{0, 0}, Slot{1, 0}, 0},
    };
    auto t = Triangulation::build(2, g);
    return BuiltSurface{t, first_branching(t), "projective2"};
}

BuiltSurface klein_bigons() {
    auto pc = polygon_complex({{1, false}, {1, false}, {2, false}, {2, false}}, false);
    return BuiltSurface{pc.tri, first_branching(pc.tri), "klein_bigons"};
}

BuiltSurface klein_quad() {
    auto pc = polygon_complex({{1, false}, {2, false}, {1, false}, {2, true}}, false);
    return BuiltSurface{pc.tri, first_branching(pc.tri), "klein_quad"};
}

Brick brick(BrickKind kind) {
    std::vector<PolygonSide> word;
    std::string name;
    switch (kind) {
        case BrickKind::torus_1p:
            word = {{1, false}, {2, false}, {1, true}, {2, true}, {9, false}};
            name = "torus_1p";
            break;
        case BrickKind::torus_2p:
            word = {{1, false}, {2, false}, {1, true}, {2, true},
                    {9, false}, {3, false}, {8, false}, {3, true}};
            name = "torus_2p";
            break;
        case BrickKind::klein_1p:
            word = {{1, false}, {2, false}, {1, false}, {2, true}, {9, false}};
            name = "klein_1p";
            break;
        case BrickKind::proj_1p:
            word = {{1, false}, {1, false}, {9, false}};
            name = "proj_1p";
            break;
    }
    auto pc = polygon_complex(word, true);
    Brick b{pc.tri, first_branching(pc.tri), {}, {}, name};
    for (auto& [label, slot] : pc.boundary) b.connection_slots.push_back(slot);
    std::sort(b.connection_slots.begin(), b.connection_slots.end());
    // Each boundary loop must close up at a single vertex.
    for (Slot s : b.connection_slots) {
        auto ends = pc.tri->slot_endpoints(s);
        if (pc.tri->vertex_of(ends[0]) != pc.tri->vertex_of(ends[1]))
            throw Error("brick boundary loop has two vertices");
    }
    b.reference = reference_branching(pc.tri, b.connection_slots);
    for (Slot s : b.connection_slots)
        b.connection_ambiguous.push_back(is_ambiguous(b.reference, pc.tri->edge_of(s)));
    return b;
}

namespace {

// Glue a row of bricks along their connection loops into one closed
// complex; each brick's triangles are offset into the common table.
ChainSurface assemble_chain(const std::vector<Brick>& bricks, bool want_orientable) {
    std::vector<GluingSpec> gluings;
    std::vector<int> offset(bricks.size(), 0);
    int total = 0;
    for (size_t i = 0; i < bricks.size(); ++i) {
        offset[i] = total;
        total += bricks[i].tri->triangle_count();
        for (const GluingSpec& g : bricks[i].tri->gluing_list())
            gluings.push_back(GluingSpec{Slot{g.a.tri + offset[i], g.a.slot},
                                         Slot{g.b.tri + offset[i], g.b.slot}, g.bit});
    }
    // Join consecutive bricks: caps expose one loop, middles two.
    std::vector<std::pair<Slot, Slot>> joins;
    Slot prev_slot{};
    for (size_t i = 0; i < bricks.size(); ++i) {
        std::vector<Slot> slots = bricks[i].connection_slots;
        for (Slot& s : slots) s = Slot{s.tri + offset[i], s.slot};
        if (slots.size() == 1 && i != 0 && i + 1 != bricks.size())
            throw Error("interior brick must expose two loops");
        if (i > 0) joins.emplace_back(prev_slot, slots.front());
        prev_slot = slots.back();
    }

    // Choose each join's bit: both loops are one-vertex so either bit
    // closes the surface; pick one matching the requested orientability.
    TriPtr best;
    for (unsigned mask = 0; mask < (1u << joins.size()); ++mask) {
        std::vector<GluingSpec> g = gluings;
        for (size_t j = 0; j < joins.size(); ++j)
            g.push_back(GluingSpec{joins[j].first, joins[j].second,
                                   static_cast<int>((mask >> j) & 1)});
        TriPtr cand = Triangulation::build(total, g);
        if (cand->orientable() == want_orientable) {
            best = cand;
            break;
        }
    }
    if (!best) throw Error("chain assembly cannot match requested orientability");

    std::vector<int> connection_edges;
    for (const auto& j : joins) connection_edges.push_back(best->edge_of(j.first));
    std::sort(connection_edges.begin(), connection_edges.end());
    std::vector<Slot> want;
    for (int e : connection_edges) want.push_back(best->edge_slot(e, 0));
    // The first cap is a pierced torus; refinements happen at the triangle
    // carrying its connection loop.
    Slot refine{bricks[0].connection_slots.back().tri + offset[0],
                bricks[0].connection_slots.back().slot};
    return ChainSurface{best, reference_branching(best, want), connection_edges, refine};
}

}  // namespace

ChainSurface chain_surface(bool orientable, int genus_or_crosscaps) {
    std::vector<Brick> bricks;
    if (orientable) {
        int g = genus_or_crosscaps;
        if (g < 2) throw UnsupportedSurface("chain surfaces need Euler characteristic < 0");
        bricks.push_back(brick(BrickKind::torus_1p));
        for (int i = 0; i < g - 2; ++i) bricks.push_back(brick(BrickKind::torus_2p));
        bricks.push_back(brick(BrickKind::torus_1p));
    } else {
        int r = genus_or_crosscaps;
        if (r < 3) throw UnsupportedSurface("chain surfaces need Euler characteristic < 0");
        // chi = 2 - r; the capped chain needs (r-1)/2 resp. (r-2)/2 handles,
        // one carried by the torus cap, the rest by twice-pierced tori.
        int g = (r % 2 == 1) ? (r - 1) / 2 : (r - 2) / 2;
        bricks.push_back(brick(BrickKind::torus_1p));
        for (int i = 0; i < g - 1; ++i) bricks.push_back(brick(BrickKind::torus_2p));
        bricks.push_back(brick(r % 2 == 1 ? BrickKind::proj_1p : BrickKind::klein_1p));
    }
    ChainSurface out = assemble_chain(bricks, orientable);
    SurfaceClass c = classify_surface(*out.tri);
    if (c.orientable != orientable || c.genus_or_crosscaps != genus_or_crosscaps)
        throw Error("chain assembly produced the wrong surface: " + c.describe());
    return out;
}

namespace {

// Subdivide the triangle owning `slot`; the tracked edge persists as slot 2
// of the sub-triangle opposite it (S_0 reuses the old id, S_1 and S_2 are
// the appended ids).
Slot refine_once(TriPtr& t, Slot slot) {
    int f_old = t->triangle_count();
    Stellar13Data d = stellar_13_naked(t, slot.tri);
    int id = (slot.slot == 0) ? slot.tri : (slot.slot == 1 ? f_old : f_old + 1);
    t = d.tri;
    return Slot{id, 2};
}

}  // namespace

TriPtr distinguished(const SurfaceClass& s, int n) {
    if (s.orientable && s.genus_or_crosscaps == 0) {
        if (n < 3) throw BadVertexCount("a sphere needs at least three vertices");
        TriPtr t = sphere3().tri;
        Slot track{0, 0};
        for (int k = 3; k < n; ++k) track = refine_once(t, track);
        return t;
    }
    if (s.orientable && s.genus_or_crosscaps == 1) {
        if (n < 1) throw BadVertexCount("at least one vertex required");
        auto pc = polygon_complex({{1, false}, {2, false}, {1, true}, {2, true}}, false);
        TriPtr t = pc.tri;
        Slot track = t->edge_slot(pc.fan_diagonal_edge, 1);  // diagonal in the top triangle
        for (int k = 1; k < n; ++k) track = refine_once(t, track);
        return t;
    }
    if (!s.orientable && s.genus_or_crosscaps == 1) {
        if (n < 2) throw BadVertexCount("the projective plane needs two vertices");
        TriPtr t = projective2().tri;
        if (n == 2) return t;
        // One bubble adds the third vertex; the nutshell triangle glued to
        // the top half carries the later subdivisions.
        BubblePlusData bd = bubble_plus_naked(t, t->edge_of(Slot{0, 1}));
        t = bd.tri;
        Slot track = t->edge_slot(bd.internal_q, 0);
        for (int k = 3; k < n; ++k) track = refine_once(t, track);
        return t;
    }
    if (!s.orientable && s.genus_or_crosscaps == 2) {
        if (n < 1) throw BadVertexCount("at least one vertex required");
        auto pc = polygon_complex({{1, false}, {2, false}, {1, false}, {2, true}}, false);
        TriPtr t = pc.tri;
        Slot track = t->edge_slot(pc.fan_diagonal_edge, 1);
        for (int k = 1; k < n; ++k) track = refine_once(t, track);
        return t;
    }
    if (n < 1) throw BadVertexCount("at least one vertex required");
    ChainSurface c = chain_surface(s.orientable, s.genus_or_crosscaps);
    // Each twice-pierced middle brick carries a base vertex of its own (no
    // 4-triangle pinched version exists), so refinement starts there.
    int base = c.tri->vertex_count();
    if (n < base)
        throw BadVertexCount("chain surface needs at least " + std::to_string(base) +
                             " vertices");
    TriPtr t = c.tri;
    Slot track = c.refine_slot;
    for (int k = base; k < n; ++k) track = refine_once(t, track);
    return t;
}

Branching random_branching(const TriPtr& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int E = t->edge_count();
    std::vector<int> order(E);
    for (int i = 0; i < E; ++i) order[i] = i;
    for (int i = E - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
    std::vector<int> prefer(E);
    for (int i = 0; i < E; ++i) prefer[i] = static_cast<int>(rng() & 1);

    std::vector<int> orient(E, -1);
    // Greedy with backtracking over the shuffled order.
    std::vector<int> stack;
    std::vector<int> tried(E, 0);
    int pos = 0;
    while (pos < E) {
        int e = order[pos];
        bool placed = false;
        for (int k = tried[pos]; k < 2; ++k) {
            orient[e] = prefer[e] ^ k;
            bool ok = true;
            for (int side = 0; side < 2 && ok; ++side) {
                Slot sl = t->edge_slot(e, side);
                if (!sl.valid()) continue;
                std::array<int, 3> d{};
                bool complete = true;
                for (int si = 0; si < 3; ++si) {
                    int ee = t->edge_of(Slot{sl.tri, si});
                    if (orient[ee] < 0) { complete = false; break; }
                    int r = orient[ee];
                    Slot fs = t->edge_slot(ee, 0);
                    bool fwd = (Slot{sl.tri, si} == fs) ? (r == 0) : ((r ^ t->edge_bit(ee)) == 0);
                    d[si] = fwd ? 1 : 0;
                }
                if (complete && d[0] == d[1] && d[1] == d[2]) ok = false;
            }
            if (ok) {
                tried[pos] = k + 1;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++pos;
            if (pos < E) tried[pos] = 0;
        } else {
            orient[e] = -1;
            tried[pos] = 0;
            --pos;
            if (pos < 0) throw Error("no branching exists");
            orient[order[pos]] = -1;
        }
    }
    return Branching(t, orient);
}

RandomInstance random_instance(std::uint64_t seed, const SurfaceClass& s, int n,
                               int walk_length, bool avoid_trapped) {
    TriPtr t = distinguished(s, n);
    std::mt19937_64 rng(seed);
    Branching b = random_branching(t, rng());
    for (int step = 0; step < walk_length; ++step) {
        std::vector<std::pair<int, int>> legal;  // (edge, choice)
        for (int e = 0; e < b.owner().edge_count(); ++e) {
            if (b.owner().edge_is_trapped(e)) continue;
            if (avoid_trapped) {
                FlipData d = flip_naked_data(b.owner_ptr(), e);
                if (!trapped_edges(*d.tri).empty()) continue;
            }
            for (int c : bflip_choices(b, e)) legal.emplace_back(e, c);
        }
        if (legal.empty()) break;
        auto [e, c] = legal[rng() % legal.size()];
        b = apply_bflip(b, e, c).result;
    }
    return RandomInstance{b.owner_ptr(), b};
}

std::vector<std::string> builder_names() {
    return {"sphere3", "torus1", "projective2", "klein_bigons", "klein_quad"};
}

BuiltSurface build_by_name(const std::string& name) {
    if (name == "sphere3") return sphere3();
    if (name == "torus1") return torus1();
    if (name == "projective2") return projective2();
    if (name == "klein_bigons") return klein_bigons();
    if (name == "klein_quad") return klein_quad();
    throw Error("unknown builder: " + name);
}

}  // namespace branchflip
