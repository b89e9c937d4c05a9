#include "branchflip/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace branchflip {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string SurfaceClass::describe() const {
    std::ostringstream os;
    if (orientable)
        os << "orientable genus " << genus_or_crosscaps;
    else
        os << "non-orientable, " << genus_or_crosscaps << " crosscap(s)";
    os << ", chi=" << euler << ", vertices=" << n_vertices;
    return os.str();
}

std::shared_ptr<const Triangulation> Triangulation::build(
    int triangle_count, const std::vector<GluingSpec>& gluings,
    std::vector<long long> vertex_labels) {
    return build_impl(triangle_count, gluings, std::move(vertex_labels), false);
}

std::shared_ptr<const Triangulation> Triangulation::build_with_boundary(
    int triangle_count, const std::vector<GluingSpec>& gluings,
    std::vector<long long> vertex_labels) {
    return build_impl(triangle_count, gluings, std::move(vertex_labels), true);
}

std::shared_ptr<const Triangulation> Triangulation::build_impl(
    int triangle_count, const std::vector<GluingSpec>& gluings,
    std::vector<long long> vertex_labels, bool allow_boundary) {
    if (triangle_count <= 0)
        throw NonPerfectMatching("triangle count must be positive");
    if (!allow_boundary && triangle_count % 2 != 0)
        throw NonPerfectMatching("a closed surface needs an even number of triangles");

    auto t = std::shared_ptr<Triangulation>(new Triangulation());
    t->tri_count_ = triangle_count;
    t->partner_.assign(3 * triangle_count, Slot{});
    t->slot_bit_.assign(3 * triangle_count, 0);

    std::vector<char> seen(3 * triangle_count, 0);
    auto check_slot = [&](Slot s) {
        if (s.tri < 0 || s.tri >= triangle_count || s.slot < 0 || s.slot > 2)
            throw NonPerfectMatching("slot out of range");
    };
    for (const auto& g : gluings) {
        check_slot(g.a);
        check_slot(g.b);
        if (g.a == g.b)
            throw SlotSelfMatch("a slot cannot be glued to itself");
        int ia = t->slot_index(g.a), ib = t->slot_index(g.b);
        if (seen[ia] || seen[ib])
            throw NonPerfectMatching("slot matched more than once");
        seen[ia] = seen[ib] = 1;
        t->partner_[ia] = g.b;
        t->partner_[ib] = g.a;
        t->slot_bit_[ia] = t->slot_bit_[ib] = (g.bit & 1);
    }
    if (!allow_boundary) {
        for (int i = 0; i < 3 * triangle_count; ++i)
            if (!seen[i]) throw NonPerfectMatching("unmatched slot (no edge may remain unglued)");
    }

    t->derive();

    if (!vertex_labels.empty()) {
        if (static_cast<int>(vertex_labels.size()) != t->vertex_count_)
            throw Error("vertex label count does not match vertex count");
        t->labels_ = std::move(vertex_labels);
    }
    return t;
}

void Triangulation::derive() {
    const int n_slots = 3 * tri_count_;

    // Edges: one per matched pair, ordered by their least slot.
    edge_of_slot_.assign(n_slots, -1);
    edge_first_.clear();
    edge_second_.clear();
    boundary_edge_count_ = 0;
    for (int i = 0; i < n_slots; ++i) {
        if (edge_of_slot_[i] >= 0) continue;
        Slot s{i / 3, i % 3};
        Slot p = partner_[i];
        int e = static_cast<int>(edge_first_.size());
        edge_first_.push_back(s);
        if (p.valid()) {
            edge_second_.push_back(p);
            edge_of_slot_[slot_index(p)] = e;
        } else {
            edge_second_.push_back(Slot{});
            ++boundary_edge_count_;
        }
        edge_of_slot_[i] = e;
    }

    // Vertices: corner orbits under the endpoint identifications of gluings.
    UnionFind uf(n_slots);  // corners indexed like slots: 3*tri + corner
    for (int i = 0; i < n_slots; ++i) {
        Slot s{i / 3, i % 3};
        Slot p = partner_[i];
        if (!p.valid() || slot_index(p) < i) continue;
        auto ea = slot_endpoints(s);
        auto eb = slot_endpoints(p);
        int bit = slot_bit_[i];
        uf.unite(3 * ea[0].tri + ea[0].corner, 3 * eb[bit].tri + eb[bit].corner);
        uf.unite(3 * ea[1].tri + ea[1].corner, 3 * eb[1 - bit].tri + eb[1 - bit].corner);
    }
    vertex_of_corner_.assign(n_slots, -1);
    vertex_corners_.clear();
    vertex_count_ = 0;
    for (int i = 0; i < n_slots; ++i) {
        int root = uf.find(i);
        if (vertex_of_corner_[root] < 0) {
            vertex_of_corner_[root] = vertex_count_++;
            vertex_corners_.emplace_back();
        }
        vertex_of_corner_[i] = vertex_of_corner_[root];
        vertex_corners_[vertex_of_corner_[i]].push_back(Corner{i / 3, i % 3});
    }
    vertex_valence_.assign(vertex_count_, 0);
    for (int v = 0; v < vertex_count_; ++v)
        vertex_valence_[v] = static_cast<int>(vertex_corners_[v].size());

    euler_ = vertex_count_ - edge_count() + tri_count_;

    // Connectivity over the triangle adjacency graph.
    {
        std::vector<char> vis(tri_count_, 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int s = 0; s < 3; ++s) {
                Slot p = partner_[3 * a + s];
                if (p.valid() && !vis[p.tri]) {
                    vis[p.tri] = 1;
                    ++reached;
                    q.push(p.tri);
                }
            }
        }
        if (reached != tri_count_) throw Disconnected("the complex is not connected");
    }

    // Orientability: propagate a reference orientation across gluings.  Two
    // triangles in the same orientation class traverse a shared edge in
    // opposite intrinsic directions, so bit 1 keeps the sign and bit 0 flips.
    orient_sign_.assign(tri_count_, 0);
    orientable_ = true;
    orient_sign_[0] = 1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty() && orientable_) {
        int a = q.front();
        q.pop();
        for (int s = 0; s < 3; ++s) {
            Slot p = partner_[3 * a + s];
            if (!p.valid()) continue;
            int want = slot_bit_[3 * a + s] ? orient_sign_[a] : -orient_sign_[a];
            if (orient_sign_[p.tri] == 0) {
                orient_sign_[p.tri] = want;
                q.push(p.tri);
            } else if (orient_sign_[p.tri] != want) {
                orientable_ = false;
                break;
            }
        }
    }
    if (!orientable_) orient_sign_.clear();

    // Default persistent labels follow vertex discovery order.
    labels_.resize(vertex_count_);
    std::iota(labels_.begin(), labels_.end(), 0LL);
}

long long Triangulation::max_label() const {
    long long m = -1;
    for (long long l : labels_) m = std::max(m, l);
    return m;
}

bool Triangulation::same_table(const Triangulation& other) const {
    return tri_count_ == other.tri_count_ && partner_ == other.partner_ &&
           slot_bit_ == other.slot_bit_ && labels_ == other.labels_;
}

std::vector<GluingSpec> Triangulation::gluing_list() const {
    std::vector<GluingSpec> out;
    for (int e = 0; e < edge_count(); ++e)
        if (edge_second_[e].valid())
            out.push_back(GluingSpec{edge_first_[e], edge_second_[e], edge_bit(e)});
    return out;
}

SurfaceClass classify_surface(const Triangulation& t) {
    SurfaceClass c;
    c.orientable = t.orientable();
    c.euler = t.euler_characteristic();
    c.n_vertices = t.vertex_count();
    c.genus_or_crosscaps = c.orientable ? (2 - c.euler) / 2 : (2 - c.euler);
    return c;
}

std::vector<int> trapped_edges(const Triangulation& t) {
    std::vector<int> out;
    for (int e = 0; e < t.edge_count(); ++e)
        if (t.edge_is_trapped(e)) out.push_back(e);
    return out;
}

std::vector<Nutshell> find_nutshells(const Triangulation& t) {
    std::vector<Nutshell> out;
    for (int a = 0; a < t.triangle_count(); ++a) {
        for (int b = a + 1; b < t.triangle_count(); ++b) {
            std::vector<int> shared;
            for (int s = 0; s < 3; ++s) {
                Slot p = t.partner(Slot{a, s});
                if (p.valid() && p.tri == b) shared.push_back(t.edge_of(Slot{a, s}));
            }
            if (shared.size() != 2) continue;
            // The internal vertex is a common endpoint of the two shared
            // edges whose whole star is the two corners inside the pair.
            for (int v = 0; v < t.vertex_count(); ++v) {
                if (t.vertex_valence(v) != 2) continue;
                const auto& cs = t.corners_of_vertex(v);
                if (!((cs[0].tri == a && cs[1].tri == b) || (cs[0].tri == b && cs[1].tri == a)))
                    continue;
                bool on_both = true;
                for (int e : shared) {
                    auto ends = t.slot_endpoints(t.edge_slot(e, 0));
                    if (t.vertex_of(ends[0]) != v && t.vertex_of(ends[1]) != v) on_both = false;
                }
                if (on_both)
                    out.push_back(Nutshell{a, b, {shared[0], shared[1]}, v});
            }
        }
    }
    return out;
}

std::vector<TriangularStar> find_triangular_stars(const Triangulation& t) {
    std::vector<TriangularStar> out;
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.vertex_valence(v) != 3) continue;
        const auto& cs = t.corners_of_vertex(v);
        std::array<int, 3> tris{cs[0].tri, cs[1].tri, cs[2].tri};
        std::sort(tris.begin(), tris.end());
        if (tris[0] == tris[1] || tris[1] == tris[2]) continue;
        // The six slots incident to v must pair up among themselves.
        std::vector<int> incident;
        bool ok = true;
        for (const Corner& c : cs) {
            for (int d = 1; d <= 2; ++d) {
                Slot s{c.tri, (c.corner + d) % 3};
                Slot p = t.partner(s);
                if (!p.valid()) { ok = false; break; }
                bool p_in_star = false;
                for (const Corner& c2 : cs)
                    if (p.tri == c2.tri) p_in_star = true;
                if (!p_in_star) { ok = false; break; }
                incident.push_back(t.edge_of(s));
            }
            if (!ok) break;
        }
        if (!ok) continue;
        std::sort(incident.begin(), incident.end());
        incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
        if (incident.size() != 3) continue;
        out.push_back(TriangularStar{tris, {incident[0], incident[1], incident[2]}, v});
    }
    return out;
}

namespace {

// Canonical relabeling grown from one starting flag.  Entering a triangle
// pins its entry slot to a fixed role; the two possible corner images are
// distinguished by the desired relabeled gluing bit, which we normalize to 1
// on tree gluings.  The encoding is therefore isomorphism-invariant, and the
// minimum over all 6F starting flags is a canonical form.
struct FlagEncoder {
    const Triangulation& t;

    // perm[tri] maps old corner -> new corner; inverse maps similarly.
    std::vector<std::array<int, 3>> perm;
    std::vector<int> new_id;   // old tri -> new tri
    std::vector<int> old_id;   // new tri -> old tri
    int assigned = 0;

    const std::vector<char>* slot_forward = nullptr;

    explicit FlagEncoder(const Triangulation& tr) : t(tr) {}

    // Whether the relabeling preserves the intrinsic direction of old slot s.
    bool pres(Slot s) const {
        int ns = perm[s.tri][s.slot];
        return perm[s.tri][(s.slot + 1) % 3] == (ns + 1) % 3;
    }

    static int apply3(const std::array<int, 3>& p, int c) { return p[c]; }

    // Relabel slot: slot s is opposite corner s, so new slot = perm[s].
    Slot relabel(Slot s) const {
        return Slot{new_id[s.tri], perm[s.tri][s.slot]};
    }

    std::string run(int start_tri, const std::array<int, 3>& start_perm, bool fix_labels) {
        const int F = t.triangle_count();
        perm.assign(F, {-1, -1, -1});
        new_id.assign(F, -1);
        old_id.assign(F, -1);
        assigned = 0;
        place(start_tri, start_perm);

        // Process relabeled slots in canonical order; the queue is the
        // relabeled slot sequence 0,1,2,... of triangles as they are placed.
        std::string enc;
        for (int pos = 0; pos < assigned; ++pos) {
            int ot = old_id[pos];
            // visit new slots 0,1,2 of this triangle
            std::array<int, 3> inv{};
            for (int c = 0; c < 3; ++c) inv[perm[ot][c]] = c;
            for (int ns = 0; ns < 3; ++ns) {
                Slot os{ot, inv[ns]};
                Slot p = t.partner(os);
                if (!p.valid()) {
                    enc += static_cast<char>(0xFE);  // boundary marker
                    if (slot_forward)
                        enc += static_cast<char>(
                            (*slot_forward)[3 * os.tri + os.slot] == (pres(os) ? 1 : 0));
                    continue;
                }
                if (new_id[p.tri] < 0) {
                    // Pin partner: its entry slot becomes new slot 0 with
                    // relabeled bit 1.
                    place_through(p, t.gluing_bit(os), os);
                }
                Slot rp = relabel(p);
                int old_bit = t.gluing_bit(os);
                int nb = relabeled_bit(os, p, old_bit);
                enc += static_cast<char>(rp.tri & 0xFF);
                enc += static_cast<char>((rp.tri >> 8) & 0xFF);
                enc += static_cast<char>(rp.slot);
                enc += static_cast<char>(nb);
                if (slot_forward)
                    enc += static_cast<char>(
                        (*slot_forward)[3 * os.tri + os.slot] == (pres(os) ? 1 : 0));
            }
        }
        if (fix_labels) {
            enc += '|';
            // Canonical vertex order: first appearance over relabeled corners.
            std::vector<long long> order;
            std::vector<int> seen(t.vertex_count(), 0);
            for (int pos = 0; pos < assigned; ++pos) {
                int ot = old_id[pos];
                std::array<int, 3> inv{};
                for (int c = 0; c < 3; ++c) inv[perm[ot][c]] = c;
                for (int nc = 0; nc < 3; ++nc) {
                    int v = t.vertex_of(Corner{ot, inv[nc]});
                    if (!seen[v]) {
                        seen[v] = 1;
                        order.push_back(t.vertex_label(v));
                    }
                }
            }
            for (long long l : order) {
                for (int byte = 0; byte < 8; ++byte)
                    enc += static_cast<char>((l >> (8 * byte)) & 0xFF);
            }
        }
        return enc;
    }

    // Relabeled bit of the gluing at old slots (os, p).  The bit flips when
    // exactly one side's intrinsic direction is reversed by the relabeling.
    int relabeled_bit(Slot os, Slot p, int old_bit) const {
        int flip = (pres(os) ? 0 : 1) ^ (pres(p) ? 0 : 1);
        return old_bit ^ flip;
    }

    void place(int tri, const std::array<int, 3>& p) {
        perm[tri] = p;
        new_id[tri] = assigned;
        old_id[assigned] = tri;
        ++assigned;
    }

    // Place the partner triangle entered through old slot `entry` from old
    // slot `from`: the entry slot gets new index 0, and of the two corner
    // permutations consistent with that, the one yielding relabeled bit 1
    // is chosen (switching them toggles the bit, so exactly one works).
    void place_through(Slot entry, int old_bit, Slot from) {
        std::array<int, 3> p{};
        p[entry.slot] = 0;
        p[(entry.slot + 1) % 3] = 1;
        p[(entry.slot + 2) % 3] = 2;
        perm[entry.tri] = p;
        if (relabeled_bit(from, entry, old_bit) != 1) {
            p[(entry.slot + 1) % 3] = 2;
            p[(entry.slot + 2) % 3] = 1;
            perm[entry.tri] = p;
        }
        place(entry.tri, perm[entry.tri]);
    }
};

}  // namespace

namespace detail {

std::string canonical_key_ex(const Triangulation& t, bool fix_vertex_labels,
                             const std::vector<char>* slot_forward) {
    // the encoding reserves byte 0xFE for boundary slots
    if (t.triangle_count() >= 0xFE)
        throw Error("canonical keys support fewer than 254 triangles");
    static const std::array<std::array<int, 3>, 6> perms{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::string best;
    for (int tri = 0; tri < t.triangle_count(); ++tri) {
        for (const auto& p : perms) {
            FlagEncoder enc(t);
            enc.slot_forward = slot_forward;
            std::string e = enc.run(tri, p, fix_vertex_labels);
            if (best.empty() || e < best) best = std::move(e);
        }
    }
    return best;
}

}  // namespace detail

std::string canonical_key(const Triangulation& t, bool fix_vertex_labels) {
    return detail::canonical_key_ex(t, fix_vertex_labels, nullptr);
}

std::string hex_key(const std::string& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * key.size());
    for (unsigned char c : key) {
        out += digits[c >> 4];
        out += digits[c & 0xF];
    }
    return out;
}

}  // namespace branchflip
