#pragma once

// Connectivity algorithms on branched triangulations: inversion graphs,
// trapped-edge removal, the delta-reducing paired connector on oriented
// surfaces, the complete (bubble/stellar) connector, and a bounded
// breadth-first census over branched flips.
//
// Every algorithm returns a TransitReport whose move log replays from the
// source to the claimed endpoint; reports are verified before they are
// returned.  Failures carry a diagnostic dump instead of a log.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branchflip/branching.hpp"
#include "branchflip/moves.hpp"

namespace branchflip {

struct TrappedEdgesPresent : Error { using Error::Error; };
struct BudgetExhausted : Error { using Error::Error; };

struct TransitStep {
    Move move;
    int side;  // 0 single-sided, 1/2 the paired sides
    std::string lemma_tag;
    int delta_size;  // |delta| after the step (-1 where not applicable)
};

struct TransitReport {
    bool success = false;
    bool symmetrized = false;  // endpoint is the total inversion of the target
    MoveLog log;               // flat source -> endpoint
    std::vector<TransitStep> steps;
    std::vector<int> delta_trace;
    std::string endpoint_key;  // hex branched key, labels fixed
    std::string diagnostics;
};

// --- inversion connectivity ---------------------------------------------

struct InversionGraph {
    std::vector<Branching> nodes;  // enumeration order
    std::vector<std::vector<int>> adjacency;  // via untrapped ambiguous inversions
};

InversionGraph inversion_graph(const TriPtr& t);

/// Connected components; in symmetrized mode nodes are first identified
/// with their total inversions.
std::vector<int> components(const InversionGraph& g, bool symmetrized);
std::vector<int> components(const TriPtr& t, bool symmetrized);
int component_count(const InversionGraph& g, bool symmetrized);

struct InversionOptions {
    bool symmetrized_retry = true;
    bool allow_trapped = false;  // strict: error when trapped edges exist
};

/// Breadth-first path of untrapped ambiguous inversions from b to target
/// (or to its total inversion when the symmetrized retry is allowed).
TransitReport connect_by_inversions(const Branching& b, const Branching& target,
                                    const InversionOptions& opts = {});

/// Flip away every trapped edge (dual loop) at its attaching edge.
TransitReport remove_trapped(const Branching& b);

// --- the paired delta-reducing connector (oriented surfaces) -------------

struct StrategyBOptions {
    int guard_factor = 50;      // guard = factor * E * (|delta0| + 1)
    int search_depth = 12;      // bounded star-local inversion search
};

TransitReport strategy_b_connect(const Branching& b, const Branching& target,
                                 const StrategyBOptions& opts = {});

/// Subdivide every triangle with an inward bump, invert the disagreement
/// edges (all ambiguous after the subdivision), undo the subdivisions.
/// Works on any surface; empty delta short-circuits to the empty log.
TransitReport complete_transit(const Branching& b, const Branching& target);

// --- bounded census -------------------------------------------------------

struct CensusSummary {
    int explored = 0;
    int frontier = 0;
    bool exhausted = false;           // stopped by the node budget
    std::vector<int> seed_component;  // component id per seed
    std::vector<std::string> seed_keys;
    bool connected(int i, int j) const { return seed_component[i] == seed_component[j]; }
};

/// Multi-seed BFS over all legal branched flips, states deduplicated by
/// the label-fixed branched key.
CensusSummary bounded_bflip_census(const std::vector<Branching>& seeds, int node_budget,
                                   int triangle_budget);

/// Worker cap honored by the census frontier and the verification runner.
int worker_count();

}  // namespace branchflip
