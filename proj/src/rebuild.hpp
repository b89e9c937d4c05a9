#pragma once

// Internal machinery shared by the moves: describe a local resurgery of a
// triangulation (remove triangles, add new ones whose slots inherit old
// gluings, attach to kept slots, or glue among themselves) and rebuild the
// complex together with the triangle/edge transport maps.

#include <array>
#include <functional>
#include <vector>

#include "branchflip/triangulation.hpp"

namespace branchflip::detail {

struct SlotFill {
    enum Kind { Unset, Inherit, Internal, Attach } kind = Unset;
    // Inherit: this new slot takes over old_slot's external gluing; flip
    // says whether the endpoint order reverses relative to old_slot.
    Slot old_slot{};
    int flip = 0;
    // Internal: glued to another new slot (flat index 3*local+slot).
    int internal_to = -1;
    int bit = 0;  // Internal/Attach gluing bit
};

struct NewTriangle {
    std::array<Corner, 3> witness{};  // old corner per corner; invalid = fresh vertex
    std::array<SlotFill, 3> fill{};
};

struct RebuildSpec {
    std::vector<int> removed;  // ascending old triangle ids
    std::vector<NewTriangle> tris;
    // Direct new gluings between kept slots, overriding their old ones.
    struct Bridge {
        Slot u, v;
        int bit;
    };
    std::vector<Bridge> bridges;
    long long fresh_label = -1;
};

struct RebuildOut {
    TriPtr tri;
    std::vector<int> tri_map;      // old tri -> new tri (-1 removed)
    std::vector<int> new_tri_ids;  // local new index -> new tri id
    std::vector<int> edge_map;     // old edge -> new edge (-1 gone)
    std::vector<int> edge_flip;    // orientation correction (xor) per kept edge
    Slot map_slot(Slot s) const { return Slot{tri_map[s.tri], s.slot}; }
};

RebuildOut rebuild(const Triangulation& old, const RebuildSpec& spec);

// Derive the endpoint-order flip of an inherited slot from corner
// witnesses; at least one witness must be an endpoint corner of old_slot.
int inherit_flip(const Triangulation& old, Slot old_slot, Corner w_first, Corner w_second);

}  // namespace branchflip::detail
