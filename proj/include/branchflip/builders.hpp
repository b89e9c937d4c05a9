#pragma once

// Constructors for the distinguished triangulations, branched bricks,
// chain assemblies and seeded random instances used by the test corpus.
//
// The small closed builders come from polygon identification words; each
// builder records the word it realizes.  Chain assemblies glue pierced
// bricks along their one-vertex boundary loops (connection edges).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchflip/branching.hpp"
#include "branchflip/triangulation.hpp"

namespace branchflip {

struct UnsupportedSurface : Error { using Error::Error; };
struct BadVertexCount : Error { using Error::Error; };

/// A polygon side: positive label, inverted flag.  Labels appearing twice
/// get glued; a label appearing once leaves a boundary slot.
struct PolygonSide {
    int label;
    bool inverted = false;
};

/// Fan-triangulated polygon quotient.  Returns the complex plus, per label,
/// the slot carrying it (boundary labels keep their single slot unglued).
struct PolygonComplex {
    TriPtr tri;
    std::vector<std::pair<int, Slot>> boundary;  // label -> unglued slot
    int fan_diagonal_edge = -1;  // first diagonal (corner0 -- corner2), -1 if none
};
PolygonComplex polygon_complex(const std::vector<PolygonSide>& word, bool allow_boundary);

struct BuiltSurface {
    TriPtr tri;
    Branching reference;
    std::string name;
};

BuiltSurface sphere3();       // two triangles glued along their boundary
BuiltSurface torus1();        // square a b a' b', one vertex
BuiltSurface projective2();   // bigon with an interior vertex, two vertices
BuiltSurface klein_bigons();  // two truncated bigons (word a a b b)
BuiltSurface klein_quad();    // square a b a b', one vertex

enum class BrickKind { torus_1p, torus_2p, klein_1p, proj_1p };

struct Brick {
    TriPtr tri;  // built with boundary slots
    Branching reference;
    std::vector<Slot> connection_slots;       // unglued one-vertex loops
    std::vector<bool> connection_ambiguous;   // per connection slot, in reference
    std::string name;
};

Brick brick(BrickKind kind);

struct ChainSurface {
    TriPtr tri;
    Branching reference;
    std::vector<int> connection_edges;  // merged connection edges, ascending
    Slot refine_slot;                   // where distinguished(S,n) subdivides
};

/// Closed chain assembly: caps and twice-pierced tori glued along their
/// connection loops.  Requires Euler characteristic < 0.
ChainSurface chain_surface(bool orientable, int genus_or_crosscaps);

/// The inductively refined distinguished triangulation of (S, n).
TriPtr distinguished(const SurfaceClass& s, int n);

struct RandomInstance {
    TriPtr tri;
    Branching branching;
};

/// distinguished(S, n) mutated by a seeded walk of legal branched flips.
/// With avoid_trapped set, flips that create trapped edges (or flips of
/// trapped edges) are excluded from the walk.
RandomInstance random_instance(std::uint64_t seed, const SurfaceClass& s, int n,
                               int walk_length, bool avoid_trapped = false);

/// Deterministic pseudo-random branching of t (seeded greedy assignment).
Branching random_branching(const TriPtr& t, std::uint64_t seed);

/// Builder registry for the CLI: named access to the closed builders.
std::vector<std::string> builder_names();
BuiltSurface build_by_name(const std::string& name);

}  // namespace branchflip
