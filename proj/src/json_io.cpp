#include "branchflip/json_io.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace branchflip {

using nlohmann::json;

namespace {

json move_to_json(const Move& m) {
    json j;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MvNakedFlip>) {
                j = {{"type", "naked_flip"}, {"edge", v.edge}};
            } else if constexpr (std::is_same_v<T, MvBFlip>) {
                j = {{"type", "bflip"}, {"edge", v.edge}, {"choice", v.choice}};
            } else if constexpr (std::is_same_v<T, MvInvertEdge>) {
                j = {{"type", "invert"}, {"edge", v.edge}};
            } else if constexpr (std::is_same_v<T, MvBubblePlus>) {
                j = {{"type", "bubble_plus"}, {"edge", v.edge}, {"choice", v.choice}};
            } else if constexpr (std::is_same_v<T, MvBubbleMinus>) {
                j = {{"type", "bubble_minus"}, {"vertex", v.vertex}};
            } else if constexpr (std::is_same_v<T, MvStellar13>) {
                j = {{"type", "stellar_13"}, {"triangle", v.triangle}, {"choice", v.choice}};
            } else {
                j = {{"type", "stellar_31"}, {"vertex", v.vertex}};
            }
        },
        m);
    return j;
}

Move move_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "naked_flip") return MvNakedFlip{j.at("edge").get<int>()};
    if (type == "bflip") return MvBFlip{j.at("edge").get<int>(), j.at("choice").get<int>()};
    if (type == "invert") return MvInvertEdge{j.at("edge").get<int>()};
    if (type == "bubble_plus")
        return MvBubblePlus{j.at("edge").get<int>(), j.at("choice").get<int>()};
    if (type == "bubble_minus") return MvBubbleMinus{j.at("vertex").get<int>()};
    if (type == "stellar_13")
        return MvStellar13{j.at("triangle").get<int>(), j.at("choice").get<int>()};
    if (type == "stellar_31") return MvStellar31{j.at("vertex").get<int>()};
    throw SchemaError("unknown move type: " + type);
}

}  // namespace

std::string emit_move(const Move& m) { return move_to_json(m).dump(); }

std::string emit_document(const Document& doc) {
    json j;
    j["format_version"] = doc.format_version;
    json tri;
    tri["triangle_count"] = doc.tri->triangle_count();
    json gl = json::array();
    for (const GluingSpec& g : doc.tri->gluing_list())
        gl.push_back(json::array(
            {json::array({g.a.tri, g.a.slot}), json::array({g.b.tri, g.b.slot}), g.bit}));
    tri["gluings"] = gl;
    tri["vertex_labels"] = doc.tri->vertex_labels();
    j["triangulation"] = tri;
    if (doc.branching) j["branching"] = {{"orientations", doc.branching->orientations()}};
    if (doc.move_log) {
        json moves = json::array();
        for (const Move& m : doc.move_log->moves) moves.push_back(move_to_json(m));
        j["move_log"] = {{"initial_key", doc.move_log->initial_key}, {"moves", moves}};
    }
    if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
    return j.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    try {
        Document doc;
        doc.format_version = j.value("format_version", 1);
        const json& tri = j.at("triangulation");
        int count = tri.at("triangle_count").get<int>();
        std::vector<GluingSpec> gluings;
        for (const json& g : tri.at("gluings")) {
            if (!g.is_array() || g.size() != 3) throw SchemaError("gluing entry must be [[t,s],[t,s],bit]");
            gluings.push_back(GluingSpec{Slot{g[0][0].get<int>(), g[0][1].get<int>()},
                                         Slot{g[1][0].get<int>(), g[1][1].get<int>()},
                                         g[2].get<int>()});
        }
        std::vector<long long> labels;
        if (tri.contains("vertex_labels"))
            labels = tri.at("vertex_labels").get<std::vector<long long>>();
        doc.tri = Triangulation::build(count, gluings, labels);
        if (j.contains("branching")) {
            auto o = j.at("branching").at("orientations").get<std::vector<int>>();
            doc.branching = Branching(doc.tri, o);
        }
        if (j.contains("move_log")) {
            MoveLog log;
            log.initial_key = j.at("move_log").value("initial_key", std::string());
            for (const json& m : j.at("move_log").at("moves")) log.moves.push_back(move_from_json(m));
            doc.move_log = log;
        }
        if (j.contains("metadata"))
            doc.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        return doc;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("document schema: ") + e.what());
    }
}

std::string emit_report(const TransitReport& rep) {
    json j;
    j["success"] = rep.success;
    j["symmetrized"] = rep.symmetrized;
    json steps = json::array();
    for (const TransitStep& s : rep.steps)
        steps.push_back({{"move", move_to_json(s.move)},
                         {"side", s.side},
                         {"lemma_tag", s.lemma_tag},
                         {"delta_size", s.delta_size}});
    j["steps"] = steps;
    j["delta_trace"] = rep.delta_trace;
    j["endpoint_key"] = rep.endpoint_key;
    json moves = json::array();
    for (const Move& m : rep.log.moves) moves.push_back(move_to_json(m));
    j["log"] = {{"initial_key", rep.log.initial_key}, {"moves", moves}};
    if (!rep.diagnostics.empty()) j["diagnostics"] = rep.diagnostics;
    return j.dump(2) + "\n";
}

std::string emit_cycle(const SwitchingCycle& z) {
    json w = json::array();
    for (const Rational& r : z.weights) w.push_back(rational_to_string(r));
    return json{{"weights", w}}.dump(2) + "\n";
}

SwitchingCycle parse_cycle(const std::string& text) {
    try {
        json j = json::parse(text);
        SwitchingCycle z;
        for (const json& w : j.at("weights"))
            z.weights.push_back(rational_from_string(w.get<std::string>()));
        return z;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("cycle schema: ") + e.what());
    }
}

std::string export_dot(const InversionGraph& g) {
    // order nodes by branched key for a stable export
    std::vector<int> order(g.nodes.size());
    std::vector<std::string> keys(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        order[i] = static_cast<int>(i);
        keys[i] = branched_key(g.nodes[i], true);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<int> rank(g.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

    std::string out = "graph inversions {\n";
    for (size_t i = 0; i < order.size(); ++i) {
        out += "  n" + std::to_string(i) + " [key=\"" +
               hex_key(keys[order[i]]).substr(0, 16) + "\"];\n";
    }
    std::set<std::pair<int, int>> emitted;
    for (size_t i = 0; i < g.nodes.size(); ++i)
        for (int j : g.adjacency[i]) {
            int a = rank[i], b = rank[j];
            if (a > b) std::swap(a, b);
            if (a == b || !emitted.insert({a, b}).second) continue;
        }
    for (const auto& [a, b] : emitted)
        out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace branchflip
