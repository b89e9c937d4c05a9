#pragma once

// The move calculus: naked and branched flips, bubble and stellar moves,
// replayable move logs.
//
// Triangle ids after a move: new triangles claim the removed ids in
// ascending order; surplus new triangles append at the end; surplus holes
// are filled by relocating the highest kept ids.  Edge ids are recomputed
// from the new slot table (ordered by least slot).  All moves are
// deterministic functions of their arguments.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "branchflip/branching.hpp"
#include "branchflip/triangulation.hpp"

namespace branchflip {

struct TrappedEdge : Error { using Error::Error; };
struct BadNutshell : Error { using Error::Error; };
struct BadStar : Error { using Error::Error; };

/// Family classification of a branched flip by how many of the two
/// directions (the flip and its inverse) are forced: both, one, none.
enum class FlipClass { NonAmbiguous, ForcedAmbiguous, Bump };

inline bool is_sliding(FlipClass c) { return c != FlipClass::Bump; }
const char* to_string(FlipClass c);

// --- moves as values ---------------------------------------------------

struct MvNakedFlip { int edge; };
struct MvBFlip { int edge; int choice; };      // choice: orientation bit of the new diagonal
struct MvInvertEdge { int edge; };
struct MvBubblePlus { int edge; int choice; }; // bit0/bit1: p-/q-side internal edge, 0 = toward center
struct MvBubbleMinus { int vertex; };          // center vertex of the nutshell
struct MvStellar13 { int triangle; int choice; };  // bit j: new edge at corner j, 0 = toward center
struct MvStellar31 { int vertex; };            // center vertex of the star

using Move = std::variant<MvNakedFlip, MvBFlip, MvInvertEdge, MvBubblePlus,
                          MvBubbleMinus, MvStellar13, MvStellar31>;

std::string describe(const Move& m);

struct MoveLog {
    std::string initial_key;  // branched key (labels fixed), hex
    std::vector<Move> moves;
};

// --- naked moves -------------------------------------------------------

/// Shared bookkeeping for a move: the new complex plus transport maps.
struct MoveData {
    TriPtr tri;
    std::vector<int> tri_map;    // old tri -> new tri, -1 when removed
    std::vector<int> edge_map;   // old edge -> new edge, -1 when removed/replaced
    std::vector<int> edge_flip;  // orientation correction per surviving edge
};

struct FlipData : MoveData {
    int new_edge = -1;  // the other diagonal
};

FlipData flip_naked_data(const TriPtr& t, int edge);
TriPtr flip_naked(const TriPtr& t, int edge);

struct Stellar13Data : MoveData {
    std::array<int, 3> new_edges{-1, -1, -1};  // edge old-corner-j -- center
    int center_vertex = -1;
};
Stellar13Data stellar_13_naked(const TriPtr& t, int tri);

struct BubblePlusData : MoveData {
    int edge_copy_a = -1;  // on the first-slot side of the old edge
    int edge_copy_b = -1;
    int internal_p = -1;   // tail-side internal edge (p = intrinsic tail of the first slot)
    int internal_q = -1;
    int center_vertex = -1;
};
BubblePlusData bubble_plus_naked(const TriPtr& t, int edge);

// --- branched moves ----------------------------------------------------

/// Valid orientation bits for the new diagonal, ascending (size 1 or 2).
std::vector<int> bflip_choices(const Branching& b, int edge);

struct BFlipResult {
    Branching result;
    int new_edge;
    FlipData data;
};
BFlipResult apply_bflip(const Branching& b, int edge, int choice);

std::vector<Branching> enumerate_bflips(const Branching& b, int edge);

/// True iff the flip from b at e has a unique branched enhancement.
bool flip_is_forced(const Branching& b, int edge);

FlipClass classify_bflip(const Branching& b, int edge, int choice);

Branching bubble_plus(const Branching& b, int edge, int choice);
struct BubblePlusResult {
    Branching result;
    BubblePlusData data;
};
BubblePlusResult apply_bubble_plus(const Branching& b, int edge, int choice);

Branching bubble_minus(const Branching& b, const Nutshell& n);

Branching stellar_13(const Branching& b, int tri, int choice);
struct Stellar13Result {
    Branching result;
    Stellar13Data data;
};
Stellar13Result apply_stellar_13(const Branching& b, int tri, int choice);

Branching stellar_31(const Branching& b, const TriangularStar& s);

/// Whether a nutshell/star supports the negative move (boundary not an
/// oriented circle).
bool nutshell_is_good(const Branching& b, const Nutshell& n);
bool star_is_good(const Branching& b, const TriangularStar& s);
/// Bad centers are pits or sources; exposed for the local census checks.
bool vertex_is_pit_or_source(const Branching& b, int vertex);

// --- application and replay --------------------------------------------

Branching apply(const Branching& b, const Move& m);
TriPtr apply(const TriPtr& t, const Move& m);

Branching replay(const Branching& initial, const MoveLog& log);

/// The move undoing m, given the states before and after.
Move inverse_of(const Move& m, const Branching& before, const Branching& after);

}  // namespace branchflip
