#include "rebuild.hpp"

#include <algorithm>
#include <map>

namespace branchflip {

// Friend of Triangulation: build and then install transported labels.
class TriangulationRebuilder {
public:
    static TriPtr make(int count, const std::vector<GluingSpec>& gluings,
                       const std::function<long long(const Triangulation&, int)>& label_of) {
        // Boundary-tolerant: moves on brick-like complexes keep their
        // unglued slots, and closed inputs stay closed anyway.
        auto t = std::const_pointer_cast<Triangulation>(
            Triangulation::build_with_boundary(count, gluings));
        for (int v = 0; v < t->vertex_count_; ++v) t->labels_[v] = label_of(*t, v);
        return t;
    }
};

namespace detail {

int inherit_flip(const Triangulation& old, Slot old_slot, Corner w_first, Corner w_second) {
    auto ends = old.slot_endpoints(old_slot);
    if (w_first == ends[0] || w_second == ends[1]) return 0;
    if (w_first == ends[1] || w_second == ends[0]) return 1;
    throw Error("inherit witness does not touch the inherited slot");
}

RebuildOut rebuild(const Triangulation& old, const RebuildSpec& spec) {
    const int old_count = old.triangle_count();
    const int n_removed = static_cast<int>(spec.removed.size());
    const int n_new = static_cast<int>(spec.tris.size());
    const int count = old_count - n_removed + n_new;

    RebuildOut out;
    out.tri_map.assign(old_count, 0);
    for (int i = 0; i < old_count; ++i) out.tri_map[i] = i;
    for (int r : spec.removed) out.tri_map[r] = -1;

    // New triangles claim removed ids in ascending order, then append.
    out.new_tri_ids.resize(n_new);
    for (int i = 0; i < n_new; ++i)
        out.new_tri_ids[i] = (i < n_removed) ? spec.removed[i] : old_count + (i - n_removed);
    // Surplus holes below the new count are filled by relocating the kept
    // ids that would fall off the end.
    if (n_removed > n_new) {
        std::vector<int> real_holes;
        for (int i = n_new; i < n_removed; ++i)
            if (spec.removed[i] < count) real_holes.push_back(spec.removed[i]);
        std::vector<int> movers;
        for (int i = 0; i < old_count; ++i)
            if (out.tri_map[i] >= count) movers.push_back(i);
        if (movers.size() != real_holes.size())
            throw Error("rebuild id compaction failed");
        for (size_t k = 0; k < movers.size(); ++k) out.tri_map[movers[k]] = real_holes[k];
    }

    // Substitution for slots of removed triangles; overrides on kept slots.
    std::map<Slot, std::pair<Slot, int>> subst;  // old slot -> (new slot, flip)
    std::map<Slot, char> overridden;             // kept slots re-glued by Attach/Bridge
    for (int i = 0; i < n_new; ++i) {
        for (int s = 0; s < 3; ++s) {
            const SlotFill& f = spec.tris[i].fill[s];
            Slot ns{out.new_tri_ids[i], s};
            if (f.kind == SlotFill::Inherit)
                subst[f.old_slot] = {ns, f.flip};
            else if (f.kind == SlotFill::Attach)
                overridden[f.old_slot] = 1;
        }
    }
    for (const auto& br : spec.bridges) {
        overridden[br.u] = 1;
        overridden[br.v] = 1;
    }

    std::vector<GluingSpec> gluings;

    // Old gluings, transported.
    struct Side {
        bool present = false;
        bool dropped = false;
        Slot slot{};
        int flip = 0;
    };
    auto resolve = [&](Slot s) -> Side {
        Side r;
        if (out.tri_map[s.tri] < 0) {
            auto it = subst.find(s);
            if (it == subst.end()) {
                r.dropped = true;
                return r;
            }
            r.present = true;
            r.slot = it->second.first;
            r.flip = it->second.second;
            return r;
        }
        if (overridden.count(s)) {
            r.dropped = true;
            return r;
        }
        r.present = true;
        r.slot = Slot{out.tri_map[s.tri], s.slot};
        return r;
    };

    const int E = old.edge_count();
    std::vector<std::pair<Slot, Slot>> new_sides(E, {Slot{}, Slot{}});
    std::vector<std::pair<int, int>> new_flips(E, {0, 0});
    std::vector<char> kept(E, 0);
    for (int e = 0; e < E; ++e) {
        Slot s0 = old.edge_slot(e, 0), s1 = old.edge_slot(e, 1);
        Side a = resolve(s0);
        if (!s1.valid()) {  // boundary edge
            if (a.present) {
                kept[e] = 1;
                new_sides[e] = {a.slot, Slot{}};
                new_flips[e] = {a.flip, 0};
            }
            continue;
        }
        Side b = resolve(s1);
        if (!a.present && !b.present) continue;
        if (a.present != b.present)
            throw Error("rebuild drops an edge one-sidedly");
        kept[e] = 1;
        gluings.push_back(GluingSpec{a.slot, b.slot, old.edge_bit(e) ^ a.flip ^ b.flip});
        new_sides[e] = {a.slot, b.slot};
        new_flips[e] = {a.flip, b.flip};
    }

    // Internal gluings among new slots (declared on both sides; emit once).
    for (int i = 0; i < n_new; ++i) {
        for (int s = 0; s < 3; ++s) {
            const SlotFill& f = spec.tris[i].fill[s];
            if (f.kind != SlotFill::Internal) continue;
            int self = 3 * i + s;
            if (f.internal_to < self) continue;
            int oi = f.internal_to / 3, os = f.internal_to % 3;
            const SlotFill& g = spec.tris[oi].fill[os];
            if (g.kind != SlotFill::Internal || g.internal_to != self || g.bit != f.bit)
                throw Error("rebuild internal gluing not mutual");
            gluings.push_back(GluingSpec{Slot{out.new_tri_ids[i], s},
                                         Slot{out.new_tri_ids[oi], os}, f.bit});
        }
    }
    // Attach gluings.
    for (int i = 0; i < n_new; ++i)
        for (int s = 0; s < 3; ++s) {
            const SlotFill& f = spec.tris[i].fill[s];
            if (f.kind == SlotFill::Attach)
                gluings.push_back(GluingSpec{Slot{out.new_tri_ids[i], s},
                                             Slot{out.tri_map[f.old_slot.tri], f.old_slot.slot},
                                             f.bit});
        }
    // Bridges.
    for (const auto& br : spec.bridges)
        gluings.push_back(GluingSpec{Slot{out.tri_map[br.u.tri], br.u.slot},
                                     Slot{out.tri_map[br.v.tri], br.v.slot}, br.bit});

    // Vertex labels via corner witnesses.
    std::vector<int> new_local(count, -1);  // new tri id -> local new index
    std::vector<int> old_of(count, -1);     // new tri id -> old tri id (kept)
    for (int i = 0; i < n_new; ++i) new_local[out.new_tri_ids[i]] = i;
    for (int o = 0; o < old_count; ++o)
        if (out.tri_map[o] >= 0) old_of[out.tri_map[o]] = o;
    auto label_of = [&](const Triangulation& t, int v) -> long long {
        long long found = spec.fresh_label;
        bool have = false;
        for (const Corner& c : t.corners_of_vertex(v)) {
            Corner w{};
            if (new_local[c.tri] >= 0)
                w = spec.tris[new_local[c.tri]].witness[c.corner];
            else
                w = Corner{old_of[c.tri], c.corner};
            if (!w.valid()) continue;  // fresh vertex corner
            long long l = old.vertex_label(old.vertex_of(w));
            if (have && l != found) throw Error("rebuild label transport inconsistent");
            found = l;
            have = true;
        }
        return found;
    };

    out.tri = TriangulationRebuilder::make(count, gluings, label_of);

    // Edge transport.
    out.edge_map.assign(E, -1);
    out.edge_flip.assign(E, 0);
    for (int e = 0; e < E; ++e) {
        if (!kept[e]) continue;
        Slot m0 = new_sides[e].first;
        int ne = out.tri->edge_of(m0);
        out.edge_map[e] = ne;
        if (out.tri->edge_slot(ne, 0) == m0)
            out.edge_flip[e] = new_flips[e].first;
        else
            out.edge_flip[e] = old.edge_bit(e) ^ new_flips[e].second;
    }
    return out;
}

}  // namespace detail
}  // namespace branchflip
