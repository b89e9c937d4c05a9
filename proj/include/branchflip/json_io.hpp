#pragma once

// Single-file JSON documents for triangulations, branchings and move logs,
// plus report serialization and dot export.  Edge ids in documents refer to
// the owner's edge order (by least slot); moves in a log address the state
// reached by the preceding steps.

#include <map>
#include <optional>
#include <string>

#include "branchflip/builders.hpp"
#include "branchflip/spine.hpp"
#include "branchflip/transit.hpp"

namespace branchflip {

struct SchemaError : Error { using Error::Error; };

struct Document {
    int format_version = 1;
    TriPtr tri;
    std::optional<Branching> branching;
    std::optional<MoveLog> move_log;
    std::map<std::string, std::string> metadata;
};

std::string emit_document(const Document& doc);
Document parse_document(const std::string& text);

std::string emit_report(const TransitReport& rep);
std::string emit_move(const Move& m);

std::string emit_cycle(const SwitchingCycle& z);
SwitchingCycle parse_cycle(const std::string& text);

/// Graphviz text with nodes ordered by branched key.
std::string export_dot(const InversionGraph& g);

}  // namespace branchflip
