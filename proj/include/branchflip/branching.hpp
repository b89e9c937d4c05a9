#pragma once

// Branchings on a fixed naked triangulation.
//
// A branching assigns an orientation to every edge such that on each
// abstract triangle the three induced orientations come from a total order
// of its corners (equivalently, no triangle boundary is an oriented cycle).
// The orientation of edge e is stored as one bit relative to the intrinsic
// direction of the edge's first slot; the view from the second slot flips
// with the gluing bit.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "branchflip/triangulation.hpp"

namespace branchflip {

struct NotAmbiguous : Error { using Error::Error; };
struct DifferentOwner : Error { using Error::Error; };
struct NotOrientable : Error { using Error::Error; };

class Branching {
public:
    Branching(TriPtr owner, std::vector<int> orientations);

    const TriPtr& owner_ptr() const { return owner_; }
    const Triangulation& owner() const { return *owner_; }
    const std::vector<int>& orientations() const { return orient_; }
    int orientation(int edge) const { return orient_[edge]; }

    /// True iff edge e runs along slot s's intrinsic direction.
    bool forward_in_slot(Slot s) const;
    Corner head(int edge) const;
    Corner tail(int edge) const;

    friend bool operator==(const Branching& a, const Branching& b) {
        return a.owner_->same_table(*b.owner_) && a.orient_ == b.orient_;
    }

private:
    TriPtr owner_;
    std::vector<int> orient_;  // per edge
};

/// Edge set on which two branchings of the same owner disagree.
struct DeltaSet {
    std::vector<int> edges;  // ascending
    int size() const { return static_cast<int>(edges.size()); }
    bool empty() const { return edges.empty(); }
    bool contains(int e) const;
};

bool is_branching(const Triangulation& t, const std::vector<int>& orientations);

/// All valid orientation assignments, in lexicographic order of the
/// orientation vector.  Backtracks with per-triangle acyclicity pruning.
std::vector<Branching> enumerate_branchings(const TriPtr& t);

/// First branching in the enumeration order, without materializing the rest.
Branching first_branching(const TriPtr& t);

/// Corners of t ordered by the local total order (v0 < v1 < v2).
std::array<int, 3> local_order(const Branching& b, int tri);

/// The middle corner of the local order (the corner spanned by the two
/// edges carrying the prevalent orientation).
int one_labelled_corner(const Branching& b, int tri);

/// Half the number of 1-labelled corners at v.
int d_b(const Branching& b, int vertex);
/// The index 1 - d_b(v); these sum to the Euler characteristic.
int i_b(const Branching& b, int vertex);
std::vector<int> d_vector(const Branching& b);

Branching total_inversion(const Branching& b);

/// Edges whose orientation reversal yields another valid branching.
std::vector<int> ambiguous_edges(const Branching& b);
bool is_ambiguous(const Branching& b, int edge);
/// Whether reversing e keeps this one triangle acyclic (e viewed in tri).
bool is_ambiguous_in_triangle(const Branching& b, int edge, int tri);
Branching invert_edge(const Branching& b, int edge);

DeltaSet delta(const Branching& b1, const Branching& b2);

// --- oriented-surface structure ---------------------------------------

/// Per-triangle sign: +1 iff the local order orients the triangle
/// consistently with the given coherent orientation (per-triangle signs).
std::vector<int> triangle_signs(const Branching& b, const std::vector<int>& global_orientation);
std::vector<int> triangle_signs(const Branching& b);  // reference: +1 on triangle 0

std::pair<int, int> epsilon_pm(const Branching& b);

struct SignPartition {
    std::vector<int> plus;   // triangle ids, ascending
    std::vector<int> minus;
};
SignPartition s_plus_minus(const Branching& b);

/// Boundary 1-chain of the 2-chain supported by S+, with coefficients in
/// the basis of b-oriented edges.
std::map<int, int> boundary_of_s_plus(const Branching& b);

/// Canonical byte string of the pair (owner, orientations); equal iff the
/// branched triangulations are isomorphic (labels respected when flagged).
std::string branched_key(const Branching& b, bool fix_vertex_labels);

}  // namespace branchflip
