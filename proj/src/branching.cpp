#include "branchflip/branching.hpp"

#include <algorithm>
#include <functional>

namespace branchflip {

namespace {

// Per-slot forward flags of one triangle under a (possibly partial)
// orientation vector; entry -1 when the edge is unassigned.
std::array<int, 3> slot_dirs(const Triangulation& t, const std::vector<int>& orient, int tri) {
    std::array<int, 3> out{};
    for (int s = 0; s < 3; ++s) {
        Slot sl{tri, s};
        int e = t.edge_of(sl);
        int r = orient[e];
        if (r < 0) {
            out[s] = -1;
            continue;
        }
        int fwd = (sl == t.edge_slot(e, 0)) ? (r == 0) : ((r ^ t.edge_bit(e)) == 0);
        out[s] = fwd ? 1 : 0;
    }
    return out;
}

bool triangle_acyclic(const std::array<int, 3>& d) {
    // The boundary walk traverses every slot in its intrinsic direction, so
    // the boundary is an oriented cycle iff all three flags agree.
    return !(d[0] == d[1] && d[1] == d[2]);
}

bool triangle_ok_partial(const std::array<int, 3>& d) {
    if (d[0] < 0 || d[1] < 0 || d[2] < 0) return true;
    return triangle_acyclic(d);
}

}  // namespace

Branching::Branching(TriPtr owner, std::vector<int> orientations)
    : owner_(std::move(owner)), orient_(std::move(orientations)) {
    if (static_cast<int>(orient_.size()) != owner_->edge_count())
        throw Error("orientation vector size mismatch");
    if (!is_branching(*owner_, orient_))
        throw Error("orientation assignment is not a branching");
}

bool Branching::forward_in_slot(Slot s) const {
    int e = owner_->edge_of(s);
    int r = orient_[e];
    return (s == owner_->edge_slot(e, 0)) ? (r == 0) : ((r ^ owner_->edge_bit(e)) == 0);
}

Corner Branching::head(int e) const {
    Slot s = owner_->edge_slot(e, 0);
    auto ends = owner_->slot_endpoints(s);
    return orient_[e] == 0 ? ends[1] : ends[0];
}

Corner Branching::tail(int e) const {
    Slot s = owner_->edge_slot(e, 0);
    auto ends = owner_->slot_endpoints(s);
    return orient_[e] == 0 ? ends[0] : ends[1];
}

bool DeltaSet::contains(int e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
}

bool is_branching(const Triangulation& t, const std::vector<int>& orient) {
    if (static_cast<int>(orient.size()) != t.edge_count()) return false;
    for (int tri = 0; tri < t.triangle_count(); ++tri)
        if (!triangle_acyclic(slot_dirs(t, orient, tri))) return false;
    return true;
}

namespace {

// Backtracking enumeration in lexicographic order of the orientation
// vector.  A triangle is checked as soon as its last edge is assigned.
void enumerate_impl(const TriPtr& t, const std::function<bool(std::vector<int>&)>& sink) {
    const int E = t->edge_count();
    std::vector<int> orient(E, -1);
    // Triangles whose maximal edge id is e, checked when e gets assigned.
    std::vector<std::vector<int>> check_at(E);
    for (int tri = 0; tri < t->triangle_count(); ++tri) {
        int m = 0;
        for (int s = 0; s < 3; ++s) m = std::max(m, t->edge_of(Slot{tri, s}));
        check_at[m].push_back(tri);
    }
    std::function<bool(int)> rec = [&](int e) -> bool {
        if (e == E) return sink(orient);
        for (int r = 0; r < 2; ++r) {
            orient[e] = r;
            bool ok = true;
            for (int tri : check_at[e])
                if (!triangle_ok_partial(slot_dirs(*t, orient, tri))) {
                    ok = false;
                    break;
                }
            if (ok && !rec(e + 1)) return false;
        }
        orient[e] = -1;
        return true;
    };
    rec(0);
}

}  // namespace

std::vector<Branching> enumerate_branchings(const TriPtr& t) {
    std::vector<Branching> out;
    enumerate_impl(t, [&](std::vector<int>& orient) {
        out.emplace_back(t, orient);
        return true;
    });
    return out;
}

Branching first_branching(const TriPtr& t) {
    std::vector<int> found;
    enumerate_impl(t, [&](std::vector<int>& orient) {
        found = orient;
        return false;
    });
    if (found.empty() && t->edge_count() > 0)
        throw Error("no branching found");
    return Branching(t, found);
}

std::array<int, 3> local_order(const Branching& b, int tri) {
    const Triangulation& t = b.owner();
    std::array<int, 3> out_deg{0, 0, 0};
    for (int s = 0; s < 3; ++s) {
        bool fwd = b.forward_in_slot(Slot{tri, s});
        // slot s runs corner s+1 -> corner s+2
        out_deg[(s + (fwd ? 1 : 2)) % 3]++;
    }
    std::array<int, 3> order{-1, -1, -1};
    for (int c = 0; c < 3; ++c) {
        if (out_deg[c] == 2) order[0] = c;
        else if (out_deg[c] == 1) order[1] = c;
        else order[2] = c;
    }
    if (order[0] < 0 || order[1] < 0 || order[2] < 0)
        throw Error("triangle boundary is an oriented cycle");
    (void)t;
    return order;
}

int one_labelled_corner(const Branching& b, int tri) { return local_order(b, tri)[1]; }

std::vector<int> d_vector(const Branching& b) {
    const Triangulation& t = b.owner();
    std::vector<int> count(t.vertex_count(), 0);
    for (int tri = 0; tri < t.triangle_count(); ++tri)
        count[t.vertex_of(Corner{tri, one_labelled_corner(b, tri)})]++;
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (count[v] % 2 != 0) throw Error("odd 1-corner count");
        count[v] /= 2;
    }
    return count;
}

int d_b(const Branching& b, int vertex) { return d_vector(b)[vertex]; }
int i_b(const Branching& b, int vertex) { return 1 - d_b(b, vertex); }

Branching total_inversion(const Branching& b) {
    std::vector<int> o = b.orientations();
    for (int& r : o) r ^= 1;
    return Branching(b.owner_ptr(), std::move(o));
}

bool is_ambiguous_in_triangle(const Branching& b, int edge, int tri) {
    const Triangulation& t = b.owner();
    std::array<int, 3> d{};
    for (int s = 0; s < 3; ++s) {
        Slot sl{tri, s};
        bool fwd = b.forward_in_slot(sl);
        if (t.edge_of(sl) == edge) fwd = !fwd;
        d[s] = fwd ? 1 : 0;
    }
    return triangle_acyclic(d);
}

bool is_ambiguous(const Branching& b, int edge) {
    const Triangulation& t = b.owner();
    Slot s0 = t.edge_slot(edge, 0);
    if (!is_ambiguous_in_triangle(b, edge, s0.tri)) return false;
    Slot s1 = t.edge_slot(edge, 1);
    if (s1.valid() && s1.tri != s0.tri && !is_ambiguous_in_triangle(b, edge, s1.tri))
        return false;
    return true;
}

std::vector<int> ambiguous_edges(const Branching& b) {
    std::vector<int> out;
    for (int e = 0; e < b.owner().edge_count(); ++e)
        if (is_ambiguous(b, e)) out.push_back(e);
    return out;
}

Branching invert_edge(const Branching& b, int edge) {
    if (!is_ambiguous(b, edge)) throw NotAmbiguous("edge is not ambiguous");
    std::vector<int> o = b.orientations();
    o[edge] ^= 1;
    return Branching(b.owner_ptr(), std::move(o));
}

DeltaSet delta(const Branching& b1, const Branching& b2) {
    if (!b1.owner().same_table(b2.owner()))
        throw DifferentOwner("branchings live on different triangulations");
    DeltaSet d;
    for (int e = 0; e < b1.owner().edge_count(); ++e)
        if (b1.orientation(e) != b2.orientation(e)) d.edges.push_back(e);
    return d;
}

std::vector<int> triangle_signs(const Branching& b, const std::vector<int>& global) {
    if (!b.owner().orientable()) throw NotOrientable("surface is not orientable");
    std::vector<int> out(b.owner().triangle_count());
    for (int tri = 0; tri < b.owner().triangle_count(); ++tri) {
        auto ord = local_order(b, tri);
        // parity of the corner permutation (v0,v1,v2)
        bool even = (ord[1] == (ord[0] + 1) % 3);
        out[tri] = (even ? 1 : -1) * global[tri];
    }
    return out;
}

std::vector<int> triangle_signs(const Branching& b) {
    if (!b.owner().orientable()) throw NotOrientable("surface is not orientable");
    return triangle_signs(b, b.owner().orientation_signs());
}

std::pair<int, int> epsilon_pm(const Branching& b) {
    auto signs = triangle_signs(b);
    int p = 0, m = 0;
    for (int s : signs) (s > 0 ? p : m)++;
    return {p, m};
}

SignPartition s_plus_minus(const Branching& b) {
    auto signs = triangle_signs(b);
    SignPartition part;
    for (int tri = 0; tri < static_cast<int>(signs.size()); ++tri)
        (signs[tri] > 0 ? part.plus : part.minus).push_back(tri);
    return part;
}

std::map<int, int> boundary_of_s_plus(const Branching& b) {
    const Triangulation& t = b.owner();
    auto signs = triangle_signs(b);
    const auto& global = t.orientation_signs();
    std::map<int, int> chain;
    for (int tri = 0; tri < t.triangle_count(); ++tri) {
        if (signs[tri] <= 0) continue;
        for (int s = 0; s < 3; ++s) {
            Slot sl{tri, s};
            int e = t.edge_of(sl);
            // The globally oriented boundary traverses the slot in its
            // intrinsic direction iff global[tri] = +1.
            int contrib = (b.forward_in_slot(sl) == (global[tri] > 0)) ? 1 : -1;
            chain[e] += contrib;
        }
    }
    for (auto it = chain.begin(); it != chain.end();)
        it = (it->second == 0) ? chain.erase(it) : std::next(it);
    return chain;
}

std::string branched_key(const Branching& b, bool fix_vertex_labels) {
    const Triangulation& t = b.owner();
    std::vector<char> fwd(3 * t.triangle_count(), 0);
    for (int tri = 0; tri < t.triangle_count(); ++tri)
        for (int s = 0; s < 3; ++s)
            fwd[3 * tri + s] = b.forward_in_slot(Slot{tri, s}) ? 1 : 0;
    return detail::canonical_key_ex(t, fix_vertex_labels, &fwd);
}

}  // namespace branchflip
