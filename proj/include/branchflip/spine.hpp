#pragma once

// The dual transversely oriented train track of a branched triangulation:
// one switch per triangle, one branch per edge, with the large branch dual
// to the edge joining the minimal and maximal local vertices.  Switching
// cycles are exact-rational weight vectors with z(large) = z(small1) +
// z(small2) at every switch; nonnegative ones form the measure cone.
//
// All arithmetic in this module is exact (arbitrary-precision rationals).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "branchflip/branching.hpp"
#include "branchflip/moves.hpp"

namespace branchflip {

using Rational = boost::multiprecision::cpp_rational;

struct NotACycle : Error { using Error::Error; };
struct InconsistentTransport : Error { using Error::Error; };

struct TrainTrack {
    TriPtr owner;
    // per switch (= triangle): the branch at each slot and the large slot
    std::vector<std::array<int, 3>> branch_at;  // edge id per slot
    std::vector<int> large_slot;                // the 1-labelled corner index
    // per branch (= edge): head side when the surface is oriented; the
    // branch points into the triangle whose positive boundary walk
    // traverses the dual edge forwards (intersection number +1)
    std::vector<Slot> oriented_toward;  // empty slots when non-orientable
    int branch_count = 0;
};

struct SwitchingCycle {
    std::vector<Rational> weights;  // per branch
};

enum class ConePosition { Interior, Boundary, Outside };

TrainTrack dual_spine(const Branching& b);

/// True iff z satisfies every switching condition of the track.
bool is_switching_cycle(const TrainTrack& track, const std::vector<Rational>& z);

/// Basis of the rational solution space of the switching system.
std::vector<SwitchingCycle> cycle_space_basis(const TrainTrack& track);

ConePosition in_cone(const TrainTrack& track, const SwitchingCycle& z);

/// Exact feasibility of {switching conditions, z(e) >= 1 for all e} by
/// Fourier-Motzkin elimination over the cycle-space coordinates; returns a
/// strictly positive witness when the cone has interior points.
std::optional<SwitchingCycle> positive_cycle_exists(const TrainTrack& track);

/// Push a cycle through a branched flip: persistent branches keep their
/// weights, the new diagonal's weight is fixed by one new switch and
/// checked on the other.
SwitchingCycle transport_cycle(const Branching& b, int edge, int choice,
                               const SwitchingCycle& z);

/// Rank of a set of cycles (exact Gaussian elimination).
int cycle_rank(std::vector<SwitchingCycle> cycles);

struct LinkCorner {
    Corner corner;
    bool one_labelled;
};

/// The cyclic corner sequence around v (the developed link).
std::vector<LinkCorner> vertex_link(const Branching& b, int v);

struct LinkArc {
    int start_index;  // index into the link of the opening 1-corner
    int length;       // cyclic distance to the next 1-corner (>= 1)
    bool black;
};

/// Arcs between consecutive 1-labelled corners, colored alternately; 2 d_b(v)
/// arcs, empty when the link carries no 1-corner.
std::vector<LinkArc> bicolor_link(const Branching& b, int v);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace branchflip
