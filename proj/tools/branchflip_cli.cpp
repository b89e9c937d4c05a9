// branchflip: branched ideal triangulations of closed surfaces, their move
// calculus and connectivity checks, from the command line.
//
// Exit codes: 0 success, 2 verification failure, 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "branchflip/json_io.hpp"
#include "branchflip/spine.hpp"
#include "branchflip/verify.hpp"

using namespace branchflip;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << text;
}

Document load(const std::string& path) { return parse_document(slurp(path)); }

Branching need_branching(const Document& doc, const std::string& path) {
    if (doc.branching) return *doc.branching;
    return first_branching(doc.tri);
    (void)path;
}

struct SurfaceArg {
    SurfaceClass cls;
    int default_n = 1;
};

SurfaceArg parse_surface(const std::string& name) {
    if (name.rfind("genus", 0) == 0)
        return {{true, std::stoi(name.substr(5)), 0, 0}, 1};
    if (name.rfind("crosscaps", 0) == 0)
        return {{false, std::stoi(name.substr(9)), 0, 0}, 1};
    throw SchemaError("unknown surface: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"branched ideal triangulations of closed surfaces"};
    app.require_subcommand(1);

    // ---- build
    auto* cmd_build = app.add_subcommand("build", "construct a named triangulation");
    std::string build_name = "torus1";
    int build_vertices = -1;
    int build_walk = 0;
    std::uint64_t build_seed = 1;
    bool build_trapped_free = false;
    int build_branching_index = -1;
    std::string build_out;
    cmd_build->add_option("--name", build_name,
                          "sphere3|torus1|projective2|klein_bigons|klein_quad|genus<k>|crosscaps<k>");
    cmd_build->add_option("--vertices", build_vertices, "refine to this vertex count");
    cmd_build->add_option("--walk", build_walk, "random branched-flip walk length");
    cmd_build->add_option("--seed", build_seed, "walk seed");
    cmd_build->add_flag("--trapped-free", build_trapped_free, "walk avoids trapped edges");
    cmd_build->add_option("--branching-index", build_branching_index,
                          "use the k-th enumerated branching instead of the reference");
    cmd_build->add_option("-o,--out", build_out, "output file (default stdout)");

    // ---- branchings
    auto* cmd_br = app.add_subcommand("branchings", "enumerate branchings of a triangulation");
    std::string br_file;
    bool br_count_only = false;
    cmd_br->add_option("file", br_file)->required();
    cmd_br->add_flag("--count-only", br_count_only);

    // ---- classify-flips
    auto* cmd_cf = app.add_subcommand("classify-flips", "classify every branched flip");
    std::string cf_file;
    cmd_cf->add_option("file", cf_file)->required();

    // ---- connect
    auto* cmd_conn = app.add_subcommand("connect", "connect two branchings of one triangulation");
    std::string conn_a, conn_b, conn_method = "inversions", conn_out;
    bool conn_symmetrized = false;
    cmd_conn->add_option("from", conn_a)->required();
    cmd_conn->add_option("to", conn_b)->required();
    cmd_conn->add_option("--method", conn_method, "inversions|strategy-b|complete");
    cmd_conn->add_flag("--symmetrized", conn_symmetrized, "allow the total inversion of the target");
    cmd_conn->add_option("-o,--out", conn_out, "report file");

    // ---- census
    auto* cmd_census = app.add_subcommand("census", "bounded branched-flip census over seeds");
    std::vector<std::string> census_files;
    int census_nodes = 100000, census_tris = 64;
    cmd_census->add_option("seeds", census_files)->required()->expected(-2);
    cmd_census->add_option("--node-budget", census_nodes);
    cmd_census->add_option("--triangle-budget", census_tris);

    // ---- dual
    auto* cmd_dual = app.add_subcommand("dual", "dual train track of a branching");
    std::string dual_file;
    bool dual_cycles = false, dual_cone = false;
    cmd_dual->add_option("file", dual_file)->required();
    cmd_dual->add_flag("--cycles", dual_cycles, "print a cycle-space basis");
    cmd_dual->add_flag("--cone", dual_cone, "decide whether the cone has interior points");

    // ---- export-dot
    auto* cmd_dot = app.add_subcommand("export-dot", "inversion graph in dot format");
    std::string dot_file, dot_out;
    cmd_dot->add_option("file", dot_file)->required();
    cmd_dot->add_option("-o,--out", dot_out);

    // ---- verify-theorems
    auto* cmd_verify = app.add_subcommand("verify-theorems", "run the verification corpus");
    bool verify_quick = false;
    std::string verify_json;
    CorpusSpec spec;
    cmd_verify->add_flag("--quick", verify_quick, "reduced corpus");
    cmd_verify->add_option("--json", verify_json, "write the machine-readable report here");
    cmd_verify->add_option("--seeded-states", spec.seeded_states);
    cmd_verify->add_option("--strategy-pairs", spec.strategy_pairs);
    cmd_verify->add_option("--mutations", spec.mutations);
    cmd_verify->add_option("--census-budget", spec.census_budget);
    std::vector<std::string> verify_claims;
    cmd_verify->add_option("--claim", verify_claims, "run only these claims (repeatable)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_build->parsed()) {
            Document doc;
            if (build_name.rfind("genus", 0) == 0 || build_name.rfind("crosscaps", 0) == 0) {
                SurfaceArg sa = parse_surface(build_name);
                int n = build_vertices > 0 ? build_vertices : sa.default_n;
                doc.tri = distinguished(sa.cls, n);
                if (build_walk > 0) {
                    RandomInstance inst =
                        random_instance(build_seed, sa.cls, n, build_walk, build_trapped_free);
                    doc.tri = inst.tri;
                    doc.branching = inst.branching;
                } else {
                    doc.branching = first_branching(doc.tri);
                }
            } else {
                BuiltSurface s = build_by_name(build_name);
                doc.tri = s.tri;
                doc.branching = s.reference;
                if (build_vertices > 0) {
                    SurfaceClass cls = classify_surface(*s.tri);
                    doc.tri = distinguished(cls, build_vertices);
                    doc.branching = first_branching(doc.tri);
                }
                if (build_walk > 0) {
                    SurfaceClass cls = classify_surface(*doc.tri);
                    RandomInstance inst = random_instance(
                        build_seed, cls, doc.tri->vertex_count(), build_walk, build_trapped_free);
                    doc.tri = inst.tri;
                    doc.branching = inst.branching;
                }
            }
            if (build_branching_index >= 0) {
                auto bs = enumerate_branchings(doc.tri);
                if (build_branching_index >= static_cast<int>(bs.size()))
                    throw SchemaError("branching index out of range (have " +
                                      std::to_string(bs.size()) + ")");
                doc.branching = bs[build_branching_index];
            }
            doc.metadata["built_from"] = build_name;
            write_out(build_out, emit_document(doc));
            return 0;
        }
        if (cmd_br->parsed()) {
            Document doc = load(br_file);
            auto bs = enumerate_branchings(doc.tri);
            std::cout << bs.size() << " branchings\n";
            if (!br_count_only)
                for (const Branching& b : bs) {
                    for (int r : b.orientations()) std::cout << r;
                    std::cout << "\n";
                }
            return 0;
        }
        if (cmd_cf->parsed()) {
            Document doc = load(cf_file);
            Branching b = need_branching(doc, cf_file);
            for (int e = 0; e < doc.tri->edge_count(); ++e) {
                if (doc.tri->edge_is_trapped(e)) {
                    std::cout << "edge " << e << ": trapped\n";
                    continue;
                }
                for (int c : bflip_choices(b, e))
                    std::cout << "edge " << e << " choice " << c << ": "
                              << to_string(classify_bflip(b, e, c)) << "\n";
            }
            return 0;
        }
        if (cmd_conn->parsed()) {
            Document da = load(conn_a), db = load(conn_b);
            if (!da.tri->same_table(*db.tri))
                throw SchemaError("the two documents carry different triangulations");
            Branching from = need_branching(da, conn_a);
            Branching to(da.tri, need_branching(db, conn_b).orientations());
            TransitReport rep;
            if (conn_method == "inversions") {
                InversionOptions opts;
                opts.symmetrized_retry = conn_symmetrized;
                rep = connect_by_inversions(from, to, opts);
            } else if (conn_method == "strategy-b") {
                rep = strategy_b_connect(from, to);
            } else if (conn_method == "complete") {
                rep = complete_transit(from, to);
            } else {
                throw SchemaError("unknown method: " + conn_method);
            }
            write_out(conn_out, emit_report(rep));
            return rep.success ? 0 : 2;
        }
        if (cmd_census->parsed()) {
            std::vector<Branching> seeds;
            TriPtr table;
            for (const std::string& f : census_files) {
                Document doc = load(f);
                if (!table) table = doc.tri;
                if (!table->same_table(*doc.tri))
                    throw SchemaError("census seeds must share one triangulation");
                seeds.push_back(Branching(table, need_branching(doc, f).orientations()));
            }
            CensusSummary sum = bounded_bflip_census(seeds, census_nodes, census_tris);
            std::cout << "explored " << sum.explored << " states, frontier " << sum.frontier
                      << (sum.exhausted ? " (budget exhausted)" : " (component complete)")
                      << "\n";
            for (size_t i = 0; i < seeds.size(); ++i)
                for (size_t j = i + 1; j < seeds.size(); ++j)
                    std::cout << "seed " << i << " and seed " << j << ": "
                              << (sum.connected(i, j) ? "connected" : "not connected") << "\n";
            return 0;
        }
        if (cmd_dual->parsed()) {
            Document doc = load(dual_file);
            Branching b = need_branching(doc, dual_file);
            TrainTrack tr = dual_spine(b);
            std::cout << "switches " << doc.tri->triangle_count() << ", branches "
                      << tr.branch_count << "\n";
            if (dual_cycles) {
                auto basis = cycle_space_basis(tr);
                std::cout << "cycle space dimension " << basis.size() << "\n";
                for (const auto& z : basis) std::cout << emit_cycle(z);
            }
            if (dual_cone) {
                auto w = positive_cycle_exists(tr);
                if (w) {
                    std::cout << "positive cycle exists\n" << emit_cycle(*w);
                } else {
                    std::cout << "no strictly positive cycle\n";
                }
            }
            return 0;
        }
        if (cmd_dot->parsed()) {
            Document doc = load(dot_file);
            write_out(dot_out, export_dot(inversion_graph(doc.tri)));
            return 0;
        }
        if (cmd_verify->parsed()) {
            CorpusSpec use = verify_quick ? quick_corpus() : spec;
            if (!verify_claims.empty()) use.claims = verify_claims;
            VerifyReport rep = verify_theorems(use);
            for (const VerifyRow& r : rep.rows)
                std::cout << (r.pass ? "PASS" : "FAIL") << " [" << r.kind << "] " << r.claim
                          << ": " << r.detail << "\n";
            if (!verify_json.empty()) write_out(verify_json, emit_verify_report(rep));
            return rep.all_verified_pass() ? 0 : 2;
        }
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
