#pragma once

// The desk-scale verification corpus: every connectivity and invariant
// claim the engine is built around, run as machine-checkable rows.  Rows
// are either exact/finite checks ("verified") or budget-bounded searches
// ("evidence").

#include <optional>
#include <string>
#include <vector>

#include "branchflip/transit.hpp"

namespace branchflip {

struct CorpusSpec {
    int seeded_states = 1000;    // invariant-suite states
    int strategy_pairs = 200;    // paired-connector runs
    int mutations = 20;          // trapped-free mutations per surface
    int census_budget = 100000;  // node budget for the bounded census
    int transit_pair_cap = 100;  // per-surface pair sample for the complete connector
    // restrict to these claims; absent = all, empty = none (empty report)
    std::optional<std::vector<std::string>> claims;
};

/// Reduced corpus for smoke runs.
CorpusSpec quick_corpus();

struct VerifyRow {
    std::string claim;
    std::string kind;  // "verified" or "evidence"
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool all_verified_pass() const;
};

/// Run every corpus row; rows are independent and may run on parallel
/// workers, output order is fixed.
VerifyReport verify_theorems(const CorpusSpec& spec);

std::string emit_verify_report(const VerifyReport& rep);

}  // namespace branchflip
