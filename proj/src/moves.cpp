#include "branchflip/moves.hpp"

#include <algorithm>
#include <sstream>

#include "rebuild.hpp"

namespace branchflip {

using detail::NewTriangle;
using detail::RebuildOut;
using detail::RebuildSpec;
using detail::SlotFill;

const char* to_string(FlipClass c) {
    switch (c) {
        case FlipClass::NonAmbiguous: return "non-ambiguous";
        case FlipClass::ForcedAmbiguous: return "forced-ambiguous";
        case FlipClass::Bump: return "bump";
    }
    return "?";
}

std::string describe(const Move& m) {
    std::ostringstream os;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MvNakedFlip>) os << "naked_flip e" << v.edge;
            else if constexpr (std::is_same_v<T, MvBFlip>) os << "bflip e" << v.edge << " c" << v.choice;
            else if constexpr (std::is_same_v<T, MvInvertEdge>) os << "invert e" << v.edge;
            else if constexpr (std::is_same_v<T, MvBubblePlus>) os << "bubble+ e" << v.edge << " c" << v.choice;
            else if constexpr (std::is_same_v<T, MvBubbleMinus>) os << "bubble- v" << v.vertex;
            else if constexpr (std::is_same_v<T, MvStellar13>) os << "1->3 t" << v.triangle << " c" << v.choice;
            else os << "3->1 v" << v.vertex;
        },
        m);
    return os.str();
}

namespace {

// Transport a branching through a move; new edges left unoriented (-1).
std::vector<int> transport_orientations(const Branching& b, const MoveData& r) {
    std::vector<int> o(r.tri->edge_count(), -1);
    for (int e = 0; e < b.owner().edge_count(); ++e)
        if (r.edge_map[e] >= 0) o[r.edge_map[e]] = b.orientation(e) ^ r.edge_flip[e];
    return o;
}

// Orientation bit for edge `e` of `t` pointing its head at vertex `head`.
int bit_with_head(const Triangulation& t, int e, int head) {
    Slot fs = t.edge_slot(e, 0);
    auto ends = t.slot_endpoints(fs);
    if (t.vertex_of(ends[1]) == head) return 0;
    if (t.vertex_of(ends[0]) == head) return 1;
    throw Error("edge does not touch the requested head vertex");
}

}  // namespace

// --- flip -------------------------------------------------------------

FlipData flip_naked_data(const TriPtr& tp, int edge) {
    const Triangulation& t = *tp;
    if (t.edge_is_boundary(edge)) throw InvalidMove("cannot flip a boundary edge");
    if (t.edge_is_trapped(edge)) throw TrappedEdge("cannot flip a trapped edge");
    Slot s0 = t.edge_slot(edge, 0), s1 = t.edge_slot(edge, 1);
    int beta = t.edge_bit(edge);
    int t1 = s0.tri, x = s0.slot;
    int t2 = s1.tri, y = s1.slot;

    Corner apex1{t1, x}, apex2{t2, y};
    Corner a1{t1, (x + 1) % 3}, b1{t1, (x + 2) % 3};
    Slot A1{t1, (x + 1) % 3}, A2{t1, (x + 2) % 3};
    Slot B1{t2, (y + 1) % 3}, B2{t2, (y + 2) % 3};

    // n1 = (apex1, apex2, a1-position), n2 = (apex2, apex1, b1-position).
    RebuildSpec spec;
    spec.removed = {std::min(t1, t2), std::max(t1, t2)};
    NewTriangle n1, n2;
    n1.witness = {apex1, apex2, a1};
    n2.witness = {apex2, apex1, b1};

    auto inherit = [&](NewTriangle& n, int slot, Slot old_slot) {
        n.fill[slot].kind = SlotFill::Inherit;
        n.fill[slot].old_slot = old_slot;
        n.fill[slot].flip = detail::inherit_flip(t, old_slot, n.witness[(slot + 1) % 3],
                                                 n.witness[(slot + 2) % 3]);
    };
    inherit(n1, 0, beta == 0 ? B2 : B1);  // edge (apex2, a-position)
    inherit(n1, 1, A2);                   // edge (a-position, apex1)
    inherit(n2, 0, A1);                   // edge (apex1, b-position)
    inherit(n2, 1, beta == 0 ? B1 : B2);  // edge (b-position, apex2)
    n1.fill[2] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * 1 + 2, 1};
    n2.fill[2] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * 0 + 2, 1};

    spec.tris = {n1, n2};
    RebuildOut r = detail::rebuild(t, spec);

    FlipData out;
    static_cast<MoveData&>(out) = MoveData{r.tri, r.tri_map, r.edge_map, r.edge_flip};
    out.new_edge = r.tri->edge_of(Slot{r.new_tri_ids[0], 2});
    return out;
}

TriPtr flip_naked(const TriPtr& t, int edge) { return flip_naked_data(t, edge).tri; }

std::vector<int> bflip_choices(const Branching& b, int edge) {
    FlipData d = flip_naked_data(b.owner_ptr(), edge);
    auto o = transport_orientations(b, d);
    std::vector<int> ok;
    for (int r = 0; r < 2; ++r) {
        o[d.new_edge] = r;
        if (is_branching(*d.tri, o)) ok.push_back(r);
    }
    if (ok.empty()) throw Error("naked flip admits no branched enhancement");
    return ok;
}

BFlipResult apply_bflip(const Branching& b, int edge, int choice) {
    FlipData d = flip_naked_data(b.owner_ptr(), edge);
    auto o = transport_orientations(b, d);
    o[d.new_edge] = choice;
    if (!is_branching(*d.tri, o)) throw InvalidMove("invalid branched flip choice");
    Branching res(d.tri, std::move(o));
    return BFlipResult{std::move(res), d.new_edge, std::move(d)};
}

std::vector<Branching> enumerate_bflips(const Branching& b, int edge) {
    std::vector<Branching> out;
    for (int c : bflip_choices(b, edge)) out.push_back(apply_bflip(b, edge, c).result);
    return out;
}

bool flip_is_forced(const Branching& b, int edge) {
    return bflip_choices(b, edge).size() == 1;
}

FlipClass classify_bflip(const Branching& b, int edge, int choice) {
    bool fwd_forced = flip_is_forced(b, edge);
    BFlipResult r = apply_bflip(b, edge, choice);
    bool bwd_forced = flip_is_forced(r.result, r.new_edge);
    if (fwd_forced && bwd_forced) return FlipClass::NonAmbiguous;
    if (fwd_forced || bwd_forced) return FlipClass::ForcedAmbiguous;
    return FlipClass::Bump;
}

// --- bubbles ------------------------------------------------------------

BubblePlusData bubble_plus_naked(const TriPtr& tp, int edge) {
    const Triangulation& t = *tp;
    if (t.edge_is_boundary(edge)) throw InvalidMove("cannot bubble a boundary edge");
    Slot s0 = t.edge_slot(edge, 0), s1 = t.edge_slot(edge, 1);
    int beta = t.edge_bit(edge);
    Corner p{s0.tri, (s0.slot + 1) % 3}, q{s0.tri, (s0.slot + 2) % 3};

    // Nutshell triangles n1 (against s0) and n2 (against s1), mirror-glued:
    // corners (p, q, center); slot 2 is the bigon edge, slots 0, 1 internal.
    RebuildSpec spec;
    spec.fresh_label = t.max_label() + 1;
    NewTriangle n1, n2;
    n1.witness = {p, q, Corner{}};
    n2.witness = {p, q, Corner{}};
    n1.fill[2] = SlotFill{SlotFill::Attach, s0, 0, -1, 0};
    n2.fill[2] = SlotFill{SlotFill::Attach, s1, 0, -1, beta};
    n1.fill[0] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * 1 + 0, 0};
    n2.fill[0] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * 0 + 0, 0};
    n1.fill[1] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * 1 + 1, 0};
    n2.fill[1] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * 0 + 1, 0};
    spec.tris = {n1, n2};

    RebuildOut r = detail::rebuild(t, spec);
    BubblePlusData out;
    static_cast<MoveData&>(out) = MoveData{r.tri, r.tri_map, r.edge_map, r.edge_flip};
    int id1 = r.new_tri_ids[0], id2 = r.new_tri_ids[1];
    out.edge_copy_a = r.tri->edge_of(Slot{id1, 2});
    out.edge_copy_b = r.tri->edge_of(Slot{id2, 2});
    out.internal_q = r.tri->edge_of(Slot{id1, 0});
    out.internal_p = r.tri->edge_of(Slot{id1, 1});
    out.center_vertex = r.tri->vertex_of(Corner{id1, 2});
    // The replaced edge is reported as mapping to its s0-side copy.
    out.edge_map[edge] = -1;
    return out;
}

BubblePlusResult apply_bubble_plus(const Branching& b, int edge, int choice) {
    const Triangulation& t = b.owner();
    BubblePlusData d = bubble_plus_naked(b.owner_ptr(), edge);
    auto o = transport_orientations(b, d);
    // Both bigon copies keep the direction of the old edge.
    Slot s0 = t.edge_slot(edge, 0);
    int r0 = b.forward_in_slot(s0) ? 0 : 1;  // direction relative s0's frame
    // copy_a: first slot is s0's image (kept triangle id < new ids).
    o[d.edge_copy_a] = (d.tri->edge_slot(d.edge_copy_a, 0).tri == d.tri_map[s0.tri])
                           ? r0
                           : r0 ^ d.tri->edge_bit(d.edge_copy_a);
    Slot s1 = t.edge_slot(edge, 1);
    int r1 = b.forward_in_slot(s1) ? 0 : 1;
    o[d.edge_copy_b] = (d.tri->edge_slot(d.edge_copy_b, 0).tri == d.tri_map[s1.tri])
                           ? r1
                           : r1 ^ d.tri->edge_bit(d.edge_copy_b);
    int toward_p = bit_with_head(*d.tri, d.internal_p, d.center_vertex);
    int toward_q = bit_with_head(*d.tri, d.internal_q, d.center_vertex);
    o[d.internal_p] = ((choice & 1) == 0) ? toward_p : toward_p ^ 1;
    o[d.internal_q] = ((choice & 2) == 0) ? toward_q : toward_q ^ 1;
    if (!is_branching(*d.tri, o)) throw InvalidMove("invalid bubble branching choice");
    Branching res(d.tri, std::move(o));
    return BubblePlusResult{std::move(res), std::move(d)};
}

Branching bubble_plus(const Branching& b, int edge, int choice) {
    return apply_bubble_plus(b, edge, choice).result;
}

namespace {

// Corner correspondence tri_a -> tri_b induced by the internal gluings of a
// nutshell (center to center, outer ends across).
std::array<int, 3> nutshell_corner_map(const Triangulation& t, const Nutshell& n) {
    std::array<int, 3> m{-1, -1, -1};
    for (int e : n.internal_edges) {
        Slot u = t.edge_slot(e, 0), v = t.edge_slot(e, 1);
        if (u.tri != n.tri_a) std::swap(u, v);
        auto eu = t.slot_endpoints(u), ev = t.slot_endpoints(v);
        int bit = t.edge_bit(e);
        m[eu[0].corner] = ev[bit].corner;
        m[eu[1].corner] = ev[1 - bit].corner;
    }
    for (int c = 0; c < 3; ++c)
        if (m[c] < 0)
            for (int c2 = 0; c2 < 3; ++c2) {
                bool used = false;
                for (int c3 = 0; c3 < 3; ++c3)
                    if (m[c3] == c2) used = true;
                if (!used) m[c] = c2;
            }
    return m;
}

}  // namespace

bool nutshell_is_good(const Branching& b, const Nutshell& n) {
    const Triangulation& t = b.owner();
    // Boundary slots: the slot of each triangle not on an internal edge.
    auto boundary_slot = [&](int tri) {
        for (int s = 0; s < 3; ++s) {
            int e = t.edge_of(Slot{tri, s});
            if (e != n.internal_edges[0] && e != n.internal_edges[1]) return Slot{tri, s};
        }
        throw Error("nutshell without boundary slot");
    };
    Slot sa = boundary_slot(n.tri_a), sb = boundary_slot(n.tri_b);
    auto m = nutshell_corner_map(t, n);
    int tail_a = (sa.slot + (b.forward_in_slot(sa) ? 1 : 2)) % 3;
    int tail_b = (sb.slot + (b.forward_in_slot(sb) ? 1 : 2)) % 3;
    // Good iff the two bigon edges run the same way between the shared
    // endpoints, i.e. the tails correspond under the nutshell identification.
    return m[tail_a] == tail_b;
}

Branching bubble_minus(const Branching& b, const Nutshell& n) {
    const Triangulation& t = b.owner();
    if (!nutshell_is_good(b, n)) throw BadNutshell("nutshell boundary is an oriented circle");
    auto boundary_slot = [&](int tri) {
        for (int s = 0; s < 3; ++s) {
            int e = t.edge_of(Slot{tri, s});
            if (e != n.internal_edges[0] && e != n.internal_edges[1]) return Slot{tri, s};
        }
        throw Error("nutshell without boundary slot");
    };
    Slot sa = boundary_slot(n.tri_a), sb = boundary_slot(n.tri_b);
    Slot pa = t.partner(sa), pb = t.partner(sb);
    if (!pa.valid() || !pb.valid()) throw InvalidMove("nutshell boundary is unglued");
    if (pa.tri == n.tri_a || pa.tri == n.tri_b || pb.tri == n.tri_a || pb.tri == n.tri_b)
        throw InvalidMove("nutshell boundary attaches to the nutshell itself");

    auto m = nutshell_corner_map(t, n);
    // Endpoint order of sb corresponding to sa's order.
    int gamma = (m[(sa.slot + 1) % 3] == (sb.slot + 1) % 3) ? 0 : 1;
    int bit_m = t.gluing_bit(sa) ^ gamma ^ t.gluing_bit(sb);

    RebuildSpec spec;
    spec.removed = {std::min(n.tri_a, n.tri_b), std::max(n.tri_a, n.tri_b)};
    spec.bridges.push_back(RebuildSpec::Bridge{pa, pb, bit_m});
    RebuildOut r = detail::rebuild(t, spec);

    MoveData md{r.tri, r.tri_map, r.edge_map, r.edge_flip};
    auto o = transport_orientations(b, md);
    // Merged edge keeps the common direction seen from pa's side.
    Slot mpa = r.map_slot(pa);
    int me = r.tri->edge_of(mpa);
    int rpa = b.forward_in_slot(pa) ? 0 : 1;
    o[me] = (r.tri->edge_slot(me, 0) == mpa) ? rpa : rpa ^ r.tri->edge_bit(me);
    if (!is_branching(*r.tri, o)) throw Error("bubble removal produced a non-branching");
    return Branching(r.tri, std::move(o));
}

// --- stellar moves -------------------------------------------------------

Stellar13Data stellar_13_naked(const TriPtr& tp, int tri) {
    const Triangulation& t = *tp;
    RebuildSpec spec;
    spec.removed = {tri};
    spec.fresh_label = t.max_label() + 1;
    // S_i = (old corner i+1, old corner i+2, center); slot 2 inherits old
    // slot i; internal edge (old corner j -- center) joins S_{j+1} slot 0
    // to S_{j+2} slot 1 with bit 1.
    for (int i = 0; i < 3; ++i) {
        NewTriangle s;
        s.witness = {Corner{tri, (i + 1) % 3}, Corner{tri, (i + 2) % 3}, Corner{}};
        s.fill[2] = SlotFill{SlotFill::Inherit, Slot{tri, i}, 0, -1, 0};
        s.fill[0] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * ((i + 1) % 3) + 1, 1};
        s.fill[1] = SlotFill{SlotFill::Internal, Slot{}, 0, 3 * ((i + 2) % 3) + 0, 1};
        spec.tris.push_back(s);
    }
    RebuildOut r = detail::rebuild(t, spec);
    Stellar13Data out;
    static_cast<MoveData&>(out) = MoveData{r.tri, r.tri_map, r.edge_map, r.edge_flip};
    for (int j = 0; j < 3; ++j)
        out.new_edges[j] = r.tri->edge_of(Slot{r.new_tri_ids[(j + 1) % 3], 0});
    out.center_vertex = r.tri->vertex_of(Corner{r.new_tri_ids[0], 2});
    return out;
}

Stellar13Result apply_stellar_13(const Branching& b, int tri, int choice) {
    Stellar13Data d = stellar_13_naked(b.owner_ptr(), tri);
    auto o = transport_orientations(b, d);
    for (int j = 0; j < 3; ++j) {
        int toward = bit_with_head(*d.tri, d.new_edges[j], d.center_vertex);
        o[d.new_edges[j]] = (((choice >> j) & 1) == 0) ? toward : toward ^ 1;
    }
    if (!is_branching(*d.tri, o)) throw InvalidMove("invalid stellar 1->3 choice");
    Branching res(d.tri, std::move(o));
    return Stellar13Result{std::move(res), std::move(d)};
}

Branching stellar_13(const Branching& b, int tri, int choice) {
    return apply_stellar_13(b, tri, choice).result;
}

namespace {

// Developed picture of a star: A is its least triangle, with outer corners
// u1, u2; X sits across A's internal edge through u2, Y across the one
// through u1; xw/yw are the third outer corners.  The merged triangle is
// (third, u1, u2) with slot 0 from A, slot 1 from X, slot 2 from Y.
struct StarGeometry {
    int A, X, Y;
    Slot sA, sX, sY;  // outer slots
    Corner u1, u2, xu2, xw, yu1, yw;
    int flip_X, flip_Y;  // endpoint-order flips of the inherited slots
};

StarGeometry star_geometry(const Triangulation& t, const TriangularStar& st) {
    StarGeometry g{};
    g.A = st.tris[0];
    int cA = -1;
    for (int c = 0; c < 3; ++c)
        if (t.vertex_of(Corner{g.A, c}) == st.center_vertex) cA = c;
    if (cA < 0) throw Error("star center not on its first triangle");
    g.sA = Slot{g.A, cA};
    g.u1 = Corner{g.A, (cA + 1) % 3};
    g.u2 = Corner{g.A, (cA + 2) % 3};

    auto across = [&](int slot_idx, Corner shared_outer) {
        Slot from{g.A, slot_idx};
        Slot to = t.partner(from);
        if (!to.valid()) throw Error("star internal edge unglued");
        auto ef = t.slot_endpoints(from);
        auto et = t.slot_endpoints(to);
        int bit = t.gluing_bit(from);
        Corner far_outer = (ef[0] == shared_outer) ? et[bit] : et[1 - bit];
        Corner far_center = (ef[0] == shared_outer) ? et[1 - bit] : et[bit];
        return std::tuple<int, Corner, Corner>(to.tri, far_outer, far_center);
    };
    auto [Xtri, xu2, xcenter] = across((cA + 1) % 3, g.u2);
    auto [Ytri, yu1, ycenter] = across((cA + 2) % 3, g.u1);
    if (Xtri == g.A || Ytri == g.A || Xtri == Ytri) throw Error("degenerate star");
    g.X = Xtri;
    g.Y = Ytri;
    g.xu2 = xu2;
    g.yu1 = yu1;
    auto third_corner = [&](int tri, Corner k1, Corner k2) {
        for (int c = 0; c < 3; ++c)
            if (c != k1.corner && c != k2.corner) return Corner{tri, c};
        throw Error("no third corner");
    };
    g.xw = third_corner(Xtri, xu2, xcenter);
    g.yw = third_corner(Ytri, yu1, ycenter);
    g.sX = Slot{Xtri, xcenter.corner};
    g.sY = Slot{Ytri, ycenter.corner};
    // Merged slot 1 runs (u2, third); slot 2 runs (third, u1).
    g.flip_X = (g.xu2.corner == (g.sX.slot + 1) % 3) ? 0 : 1;
    g.flip_Y = (g.yw.corner == (g.sY.slot + 1) % 3) ? 0 : 1;
    return g;
}

}  // namespace

bool vertex_is_pit_or_source(const Branching& b, int vertex) {
    const Triangulation& t = b.owner();
    int ins = 0, outs = 0;
    for (const Corner& c : t.corners_of_vertex(vertex)) {
        // slot c+1 ends at this corner, slot c+2 starts at it
        if (b.forward_in_slot(Slot{c.tri, (c.corner + 1) % 3})) ++ins; else ++outs;
        if (b.forward_in_slot(Slot{c.tri, (c.corner + 2) % 3})) ++outs; else ++ins;
    }
    return ins == 0 || outs == 0;
}

bool star_is_good(const Branching& b, const TriangularStar& st) {
    const Triangulation& t = b.owner();
    StarGeometry g = star_geometry(t, st);
    // Traverse the developed boundary u1 -> u2 -> third -> u1 and compare
    // each outer edge's b-direction with the traversal; the star is bad
    // iff all three agree or all three disagree.
    bool dA = b.forward_in_slot(g.sA);  // intrinsic order of sA is (u1, u2)
    bool dX = b.forward_in_slot(g.sX) == (g.flip_X == 0);
    bool dY = b.forward_in_slot(g.sY) == (g.flip_Y == 0);
    return !(dA == dX && dX == dY);
}

Branching stellar_31(const Branching& b, const TriangularStar& st) {
    const Triangulation& t = b.owner();
    if (!star_is_good(b, st)) throw BadStar("star boundary is an oriented circle");
    StarGeometry g = star_geometry(t, st);

    RebuildSpec spec;
    spec.removed = {st.tris[0], st.tris[1], st.tris[2]};
    NewTriangle m;
    m.witness = {g.xw, g.u1, g.u2};
    m.fill[0] = SlotFill{SlotFill::Inherit, g.sA, 0, -1, 0};
    m.fill[1] = SlotFill{SlotFill::Inherit, g.sX, g.flip_X, -1, 0};
    m.fill[2] = SlotFill{SlotFill::Inherit, g.sY, g.flip_Y, -1, 0};
    spec.tris = {m};
    RebuildOut r = detail::rebuild(t, spec);

    MoveData md{r.tri, r.tri_map, r.edge_map, r.edge_flip};
    auto o = transport_orientations(b, md);
    if (!is_branching(*r.tri, o)) throw BadStar("star removal produced a non-branching");
    return Branching(r.tri, std::move(o));
}

// --- apply / replay ------------------------------------------------------

Branching apply(const Branching& b, const Move& m) {
    return std::visit(
        [&](const auto& v) -> Branching {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MvNakedFlip>) {
                throw InvalidMove("naked flip applied to a branched state");
            } else if constexpr (std::is_same_v<T, MvBFlip>) {
                return apply_bflip(b, v.edge, v.choice).result;
            } else if constexpr (std::is_same_v<T, MvInvertEdge>) {
                return invert_edge(b, v.edge);
            } else if constexpr (std::is_same_v<T, MvBubblePlus>) {
                return bubble_plus(b, v.edge, v.choice);
            } else if constexpr (std::is_same_v<T, MvBubbleMinus>) {
                for (const Nutshell& n : find_nutshells(b.owner()))
                    if (n.center_vertex == v.vertex) return bubble_minus(b, n);
                throw InvalidMove("no nutshell at the requested vertex");
            } else if constexpr (std::is_same_v<T, MvStellar13>) {
                return stellar_13(b, v.triangle, v.choice);
            } else {
                for (const TriangularStar& s : find_triangular_stars(b.owner()))
                    if (s.center_vertex == v.vertex) return stellar_31(b, s);
                throw InvalidMove("no triangular star at the requested vertex");
            }
        },
        m);
}

TriPtr apply(const TriPtr& t, const Move& m) {
    return std::visit(
        [&](const auto& v) -> TriPtr {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MvNakedFlip>) {
                return flip_naked(t, v.edge);
            } else if constexpr (std::is_same_v<T, MvStellar13>) {
                return stellar_13_naked(t, v.triangle).tri;
            } else if constexpr (std::is_same_v<T, MvBubblePlus>) {
                return bubble_plus_naked(t, v.edge).tri;
            } else {
                throw InvalidMove("move requires a branched state");
            }
        },
        m);
}

Branching replay(const Branching& initial, const MoveLog& log) {
    if (!log.initial_key.empty() &&
        hex_key(branched_key(initial, true)) != log.initial_key)
        throw Error("replay: initial state does not match the log");
    Branching cur = initial;
    int step = 0;
    for (const Move& m : log.moves) {
        try {
            cur = branchflip::apply(cur, m);
        } catch (const Error& e) {
            throw Error("replay failed at step " + std::to_string(step) + " (" + describe(m) +
                        "): " + e.what());
        }
        ++step;
    }
    return cur;
}

Move inverse_of(const Move& m, const Branching& before, const Branching& after) {
    std::string target = branched_key(before, true);
    return std::visit(
        [&](const auto& v) -> Move {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MvBFlip>) {
                BFlipResult fr = apply_bflip(before, v.edge, v.choice);
                for (int c : bflip_choices(after, fr.new_edge)) {
                    BFlipResult back = apply_bflip(after, fr.new_edge, c);
                    if (branched_key(back.result, true) == target)
                        return MvBFlip{fr.new_edge, c};
                }
                throw Error("no inverse flip reproduces the source");
            } else if constexpr (std::is_same_v<T, MvInvertEdge>) {
                return MvInvertEdge{v.edge};
            } else if constexpr (std::is_same_v<T, MvBubblePlus>) {
                BubblePlusResult br = apply_bubble_plus(before, v.edge, v.choice);
                return MvBubbleMinus{br.data.center_vertex};
            } else if constexpr (std::is_same_v<T, MvBubbleMinus>) {
                // recover edge and choice by search over bubbles of `after`
                for (int e = 0; e < after.owner().edge_count(); ++e) {
                    if (after.owner().edge_is_boundary(e)) continue;
                    for (int c = 0; c < 4; ++c) {
                        try {
                            Branching cand = bubble_plus(after, e, c);
                            if (branched_key(cand, true) == branched_key(before, true))
                                return MvBubblePlus{e, c};
                        } catch (const Error&) {}
                    }
                }
                throw Error("no inverse bubble reproduces the source");
            } else if constexpr (std::is_same_v<T, MvStellar13>) {
                Stellar13Result sr = apply_stellar_13(before, v.triangle, v.choice);
                return MvStellar31{sr.data.center_vertex};
            } else if constexpr (std::is_same_v<T, MvStellar31>) {
                for (int tri = 0; tri < after.owner().triangle_count(); ++tri)
                    for (int c = 0; c < 8; ++c) {
                        try {
                            Branching cand = stellar_13(after, tri, c);
                            if (branched_key(cand, true) == target) return MvStellar13{tri, c};
                        } catch (const Error&) {}
                    }
                throw Error("no inverse stellar move reproduces the source");
            } else {
                throw InvalidMove("no branched inverse for this move");
            }
        },
        m);
}

}  // namespace branchflip
