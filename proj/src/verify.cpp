#include "branchflip/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "branchflip/builders.hpp"
#include "branchflip/spine.hpp"
#include "json.hpp"

namespace branchflip {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;
    int count = 0;

    void expect(bool cond, const std::string& what) {
        ++count;
        if (!cond && ok) {
            ok = false;
            detail << "FAILED: " << what;
        }
    }
};

// The named corpus surfaces with their vertex counts and the symmetrized
// flag for inversion connectivity (non-orientable with even chi < 0 needs
// none; non-orientable with chi = 0 or odd does).
struct CorpusSurface {
    std::string name;
    SurfaceClass cls;
    int n;
    bool symmetrized;
};

std::vector<CorpusSurface> corpus_surfaces() {
    return {
        {"sphere,3", {true, 0, 2, 0}, 3, false},
        {"sphere,4", {true, 0, 2, 0}, 4, false},
        {"torus,1", {true, 1, 0, 0}, 1, false},
        {"klein-bigons,1", {false, 2, 0, 0}, 1, true},
        {"klein-quad,1", {false, 2, 0, 0}, 1, true},
        {"projective,2", {false, 1, 1, 0}, 2, true},
        {"genus2,1", {true, 2, -2, 0}, 1, false},
        {"crosscaps3,1", {false, 3, -1, 0}, 1, true},
        {"crosscaps4,1", {false, 4, -2, 0}, 1, false},
    };
}

TriPtr corpus_build(const CorpusSurface& cs) {
    if (cs.name == "klein-bigons,1") return klein_bigons().tri;
    return distinguished(cs.cls, cs.n);
}

std::map<long long, int> labeled_ones(const Branching& b) {
    std::map<long long, int> out;
    for (int v = 0; v < b.owner().vertex_count(); ++v) out[b.owner().vertex_label(v)] = 0;
    for (int tri = 0; tri < b.owner().triangle_count(); ++tri)
        out[b.owner().vertex_label(
            b.owner().vertex_of(Corner{tri, one_labelled_corner(b, tri)}))]++;
    return out;
}

// --- criterion 1: branching censuses ---------------------------------------

VerifyRow criterion_counts() {
    Check c;
    auto raw_count = [](const TriPtr& t) {
        int E = t->edge_count(), n = 0;
        for (int mask = 0; mask < (1 << E); ++mask) {
            std::vector<int> o(E);
            for (int e = 0; e < E; ++e) o[e] = (mask >> e) & 1;
            if (is_branching(*t, o)) ++n;
        }
        return n;
    };
    struct Row {
        TriPtr tri;
        int expect;
        const char* what;
    };
    SurfaceClass sphere{true, 0, 2, 0};
    std::vector<Row> rows = {
        {sphere3().tri, 6, "three-vertex sphere carries 6 branchings"},
        {klein_bigons().tri, 2, "bigon Klein bottle carries 2 branchings"},
        {klein_quad().tri, 4, "quadrilateral Klein bottle carries 4 branchings"},
        {torus1().tri, 6, "one-vertex torus carries 6 branchings"},
        {distinguished(sphere, 4), 24, "tetrahedron boundary carries 24 branchings"},
    };
    for (const Row& r : rows) {
        int fast = static_cast<int>(enumerate_branchings(r.tri).size());
        c.expect(fast == r.expect, std::string(r.what) + " (got " + std::to_string(fast) + ")");
        c.expect(raw_count(r.tri) == r.expect, std::string("raw filter disagrees: ") + r.what);
    }
    std::ostringstream d;
    d << "counts 6/2/4/6/24 with raw-filter oracle agreement";
    return VerifyRow{"branching-censuses", "verified", c.ok, c.ok ? d.str() : c.detail.str()};
}

// --- criterion 2: invariant property suite ----------------------------------

VerifyRow criterion_invariants(const CorpusSpec& spec) {
    Check c;
    int states = 0;
    bool some_bump_changed_d = false;
    auto surfaces = corpus_surfaces();
    std::uint64_t seed = 1;
    int walk = 0;
    int cursor = 0;
    while (states < spec.seeded_states && c.ok) {
        const CorpusSurface& cs = surfaces[cursor++ % surfaces.size()];
        if (cs.name == "klein-bigons,1") continue;  // fixed build, no refinements
        RandomInstance inst = random_instance(seed++, cs.cls, cs.n, walk % 13);
        ++walk;
        const Branching& b = inst.branching;
        ++states;

        auto d = d_vector(b);
        int sum = 0;
        for (int v = 0; v < b.owner().vertex_count(); ++v) sum += 1 - d[v];
        c.expect(sum == b.owner().euler_characteristic(), "index sum equals Euler characteristic");

        if (b.owner().orientable()) {
            auto [p, m] = epsilon_pm(b);
            c.expect(p == m, "epsilon_+ = epsilon_-");
        }

        // flip the least untrapped edge with its least choice
        for (int e = 0; e < b.owner().edge_count(); ++e) {
            if (b.owner().edge_is_trapped(e)) continue;
            int ch = bflip_choices(b, e)[0];
            FlipClass cl = classify_bflip(b, e, ch);
            Branching after = apply_bflip(b, e, ch).result;
            bool d_same = labeled_ones(after) == labeled_ones(b);
            if (is_sliding(cl))
                c.expect(d_same, "sliding flip preserved the d vector");
            else if (!d_same)
                some_bump_changed_d = true;

            if (cl == FlipClass::NonAmbiguous && b.owner().orientable()) {
                // S+/S- preserved: all four quad triangles share one sign
                // and persistent signs are unchanged
                auto before_signs = triangle_signs(b);
                FlipData fd = flip_naked_data(b.owner_ptr(), e);
                auto after_signs = triangle_signs(after, after.owner().orientation_signs());
                Slot q0 = b.owner().edge_slot(e, 0), q1 = b.owner().edge_slot(e, 1);
                // align the global orientations through a persistent triangle
                int anchor = -1;
                for (int tr = 0; tr < b.owner().triangle_count(); ++tr)
                    if (tr != q0.tri && tr != q1.tri && fd.tri_map[tr] >= 0) anchor = tr;
                if (anchor < 0) break;  // no persistent anchor to align with
                int flipsign = 1;
                if (after_signs[fd.tri_map[anchor]] != before_signs[anchor]) flipsign = -1;
                for (int tr = 0; tr < b.owner().triangle_count(); ++tr)
                    if (tr != q0.tri && tr != q1.tri)
                        c.expect(after_signs[fd.tri_map[tr]] * flipsign == before_signs[tr],
                                 "persistent triangle sign preserved by a non-ambiguous flip");
                c.expect(before_signs[q0.tri] == before_signs[q1.tri],
                         "non-ambiguous flip quad is sign-constant before");
                int na = fd.tri_map[q0.tri] >= 0 ? fd.tri_map[q0.tri] : 0;
                int nb = fd.tri_map[q1.tri] >= 0 ? fd.tri_map[q1.tri] : 1;
                (void)na;
                (void)nb;
                // the two new triangles occupy the removed ids
                c.expect(after_signs[std::min(q0.tri, q1.tri)] * flipsign == before_signs[q0.tri],
                         "quad region keeps its sign through a non-ambiguous flip");
                // boundary chain preserved on persistent edges
                auto before_chain = boundary_of_s_plus(b);
                std::map<int, int> before_mapped;
                for (auto& [edge, coeff] : before_chain)
                    if (fd.edge_map[edge] >= 0) before_mapped[fd.edge_map[edge]] = coeff;
                // the chain is invariant under a global-orientation flip
                auto after_chain = boundary_of_s_plus(after);
                c.expect(after_chain == before_mapped,
                         "boundary chain of S+ preserved by a non-ambiguous flip");
            }
            break;
        }
    }
    // census-level: every abstract bump changes d on the free quadrilateral
    TriPtr quad = Triangulation::build_with_boundary(2, {{Slot{0, 0}, Slot{1, 0}, 1}});
    int diag = quad->edge_of(Slot{0, 0});
    for (const Branching& b : enumerate_branchings(quad)) {
        for (int ch : bflip_choices(b, diag)) {
            FlipClass cl = classify_bflip(b, diag, ch);
            Branching after = apply_bflip(b, diag, ch).result;
            bool d_same = labeled_ones(after) == labeled_ones(b);
            c.expect(d_same == is_sliding(cl), "census: d preserved iff sliding");
            if (!d_same) some_bump_changed_d = true;
        }
    }
    c.expect(some_bump_changed_d, "some bump flip changes the d vector");
    std::ostringstream d;
    d << states << " seeded states; index sums, corner parity, epsilon balance, "
      << "d-vector and S+/S- transport checks";
    return VerifyRow{"branching-invariants", "verified", c.ok, c.ok ? d.str() : c.detail.str()};
}

// --- criterion 3: inversion connectivity -------------------------------------

VerifyRow criterion_inversions(const CorpusSpec& spec) {
    Check c;
    int graphs = 0;
    for (const CorpusSurface& cs : corpus_surfaces()) {
        TriPtr base = corpus_build(cs);
        std::vector<TriPtr> instances{base};
        for (int k = 0; k < spec.mutations; ++k) {
            RandomInstance inst =
                random_instance(1000 + 17 * k + graphs, cs.cls, cs.n, 4 + (k % 9), true);
            Branching clean = inst.branching;
            if (!trapped_edges(*inst.tri).empty()) {
                TransitReport rt = remove_trapped(inst.branching);
                clean = replay(inst.branching, rt.log);
            }
            instances.push_back(clean.owner_ptr());
        }
        for (size_t i = 0; i < instances.size(); ++i) {
            const TriPtr& t = instances[i];
            bool base_instance = (i == 0);
            if (!base_instance && !trapped_edges(*t).empty()) {
                c.expect(false, cs.name + ": mutation not trapped-free");
                continue;
            }
            auto g = inversion_graph(t);
            ++graphs;
            c.expect(component_count(g, cs.symmetrized) == 1,
                     cs.name + ": inversion graph connected" +
                         (cs.symmetrized ? " (symmetrized)" : ""));
        }
        // spot-check an explicit path with replay verification
        if (trapped_edges(*base).empty()) {
            auto bs = enumerate_branchings(base);
            InversionOptions opts;
            opts.symmetrized_retry = cs.symmetrized;
            TransitReport rep = connect_by_inversions(bs.front(), bs.back(), opts);
            c.expect(rep.success, cs.name + ": explicit inversion path found");
        }
    }
    std::ostringstream d;
    d << graphs << " inversion graphs connected across the corpus";
    return VerifyRow{"inversion-connectivity", "verified", c.ok, c.ok ? d.str() : c.detail.str()};
}

// --- criterion 4: the complete connector --------------------------------------

VerifyRow criterion_complete(const CorpusSpec& spec) {
    Check c;
    int pairs = 0;
    for (const CorpusSurface& cs : corpus_surfaces()) {
        TriPtr t = corpus_build(cs);
        auto bs = enumerate_branchings(t);
        std::vector<std::pair<int, int>> sample;
        if (static_cast<int>(bs.size() * bs.size()) <= spec.transit_pair_cap) {
            for (size_t i = 0; i < bs.size(); ++i)
                for (size_t j = 0; j < bs.size(); ++j) sample.emplace_back(i, j);
        } else {
            std::uint64_t x = 88172645463325252ull;
            for (int k = 0; k < spec.transit_pair_cap; ++k) {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                sample.emplace_back(x % bs.size(), (x >> 20) % bs.size());
            }
        }
        for (auto [i, j] : sample) {
            TransitReport rep = complete_transit(bs[i], bs[j]);
            c.expect(rep.success, cs.name + ": complete transit succeeded");
            Branching end = replay(bs[i], rep.log);
            c.expect(end == bs[j], cs.name + ": endpoint equals the target exactly");
            c.expect(end.owner().vertex_labels() == t->vertex_labels(),
                     cs.name + ": vertex labels restored");
            ++pairs;
        }
    }
    std::ostringstream d;
    d << pairs << " branching pairs connected with exact endpoints";
    return VerifyRow{"complete-transit", "verified", c.ok, c.ok ? d.str() : c.detail.str()};
}

// --- criterion 5: delta-reducing connector ------------------------------------

VerifyRow criterion_strategy_b(const CorpusSpec& spec) {
    Check c;
    struct Inst {
        SurfaceClass cls;
        int n;
    };
    std::vector<Inst> insts = {{{true, 1, 0, 0}, 1}, {{true, 1, 0, 0}, 2},  {{true, 1, 0, 0}, 3},
                               {{true, 0, 2, 0}, 3}, {{true, 0, 2, 0}, 4},  {{true, 0, 2, 0}, 5},
                               {{true, 2, -2, 0}, 1}, {{true, 2, -2, 0}, 2},
                               {{true, 1, 0, 0}, 6},  {{true, 2, -2, 0}, 4}};
    int runs = 0;
    std::uint64_t seed = 7;
    while (runs < spec.strategy_pairs && c.ok) {
        const Inst& in = insts[runs % insts.size()];
        RandomInstance inst = random_instance(seed++, in.cls, in.n, 3 + (runs % 7), true);
        c.expect(inst.tri->triangle_count() <= 20, "instance within the size bound");
        Branching from = inst.branching;
        // every fourth pair is a total inversion (delta covers every edge)
        Branching to = (runs % 4 == 0) ? total_inversion(from)
                                       : random_branching(inst.tri, seed * 131 + 5);
        TransitReport rep = strategy_b_connect(from, to);
        c.expect(rep.success, "paired connector reached delta = 0 before the guard: " +
                                  rep.diagnostics);
        if (!rep.success) break;
        c.expect(!rep.delta_trace.empty() && rep.delta_trace.back() == 0,
                 "delta trace ends at zero");
        int last = delta(from, to).size();
        for (const TransitStep& st : rep.steps) {
            if (st.lemma_tag == "ambiguous-inversion" || st.lemma_tag == "(1)good-flip" ||
                st.lemma_tag == "(2)good-flip") {
                c.expect(st.delta_size < last, "reducing milestone strictly decreases delta");
                last = st.delta_size;
            } else if (st.lemma_tag == "terminal-move-rotation" ||
                       st.lemma_tag == "star-local-inversion") {
                c.expect(st.delta_size <= last, "milestone never increases delta");
                last = st.delta_size;
            }
        }
        Branching end = replay(from, rep.log);
        c.expect(branched_key(end, true) == branched_key(to, true),
                 "paired connector endpoint equals the target");
        ++runs;
    }
    std::ostringstream d;
    d << runs << " seeded pairs, zero guard trips, milestones monotone";
    return VerifyRow{"delta-reduction-connector", "verified", c.ok, c.ok ? d.str() : c.detail.str()};
}

// --- criterion 6: projective-plane census evidence ------------------------------

VerifyRow criterion_projective_census(const CorpusSpec& spec) {
    Check c;
    auto p = projective2();
    auto bs = enumerate_branchings(p.tri);
    c.expect(bs.size() == 4, "the two-vertex projective plane carries 4 branchings");
    int uc = p.tri->edge_of(Slot{0, 1}), wc = p.tri->edge_of(Slot{0, 0});
    const Branching* b = nullptr;
    const Branching* bp = nullptr;
    for (const Branching& x : bs)
        for (const Branching& y : bs) {
            DeltaSet d = delta(x, y);
            if (d.size() == 2 && d.contains(uc) && d.contains(wc) && !b) {
                b = &x;
                bp = &y;
            }
        }
    c.expect(b != nullptr, "a pair differing exactly on the interior edges exists");
    if (b) {
        CensusSummary separate = bounded_bflip_census({*b, *bp}, spec.census_budget, 64);
        c.expect(!separate.connected(0, 1),
                 "interior-disagreement seeds stay in different flip components");
        CensusSummary joined =
            bounded_bflip_census({*b, total_inversion(*bp)}, spec.census_budget, 64);
        c.expect(joined.connected(0, 1), "totally inverted seeds connect");
    }
    std::ostringstream d;
    d << "two flip classes observed within a " << spec.census_budget
      << "-state budget (bounded search, not a proof)";
    return VerifyRow{"projective-plane-two-classes", "evidence", c.ok,
                     c.ok ? d.str() : c.detail.str()};
}

// --- criterion 7: the torus has no non-ambiguous flip ----------------------------

VerifyRow criterion_torus_na() {
    Check c;
    auto t = torus1();
    for (const Branching& b : enumerate_branchings(t.tri))
        for (int e = 0; e < t.tri->edge_count(); ++e) {
            if (t.tri->edge_is_trapped(e)) continue;
            for (int ch : bflip_choices(b, e))
                c.expect(classify_bflip(b, e, ch) != FlipClass::NonAmbiguous,
                         "one-vertex torus flip is never non-ambiguous");
        }
    return VerifyRow{"torus-no-nonambiguous-flip", "verified", c.ok,
                     c.ok ? "all 6 branchings x 3 edges checked" : c.detail.str()};
}

// --- criterion 8: dual cycle spaces ----------------------------------------------

VerifyRow criterion_cycles() {
    Check c;
    for (const CorpusSurface& cs : corpus_surfaces()) {
        TriPtr t = corpus_build(cs);
        Branching b = first_branching(t);
        TrainTrack tr = dual_spine(b);
        auto basis = cycle_space_basis(tr);
        int expect = t->orientable() ? 1 - t->euler_characteristic() + t->vertex_count()
                                     : t->edge_count() - t->triangle_count();
        c.expect(static_cast<int>(basis.size()) == expect,
                 cs.name + ": switching solution dimension matches");
        c.expect(cycle_rank(basis) == expect, cs.name + ": basis has full rank");
        // transport a basis through every legal flip and back
        for (int e = 0; e < t->edge_count() && c.ok; ++e) {
            if (t->edge_is_trapped(e)) continue;
            int ch = bflip_choices(b, e)[0];
            BFlipResult fr = apply_bflip(b, e, ch);
            std::vector<SwitchingCycle> fwd;
            for (const auto& z : basis) fwd.push_back(transport_cycle(b, e, ch, z));
            c.expect(cycle_rank(fwd) == expect, cs.name + ": transported basis keeps rank");
            for (int bc : bflip_choices(fr.result, fr.new_edge)) {
                Branching back = apply_bflip(fr.result, fr.new_edge, bc).result;
                if (!(back == b)) continue;
                for (size_t k = 0; k < basis.size(); ++k) {
                    SwitchingCycle round =
                        transport_cycle(fr.result, fr.new_edge, bc, fwd[k]);
                    c.expect(round.weights == basis[k].weights,
                             cs.name + ": transport round trip is the identity");
                }
            }
        }
    }
    return VerifyRow{"dual-cycle-space", "verified", c.ok,
                     c.ok ? "dimensions and transports on all corpus surfaces" : c.detail.str()};
}

// --- criterion 9: move mechanics ---------------------------------------------------

VerifyRow criterion_mechanics() {
    Check c;
    // two-flip inversion of every untrapped ambiguous edge on the builders
    for (const auto& name : builder_names()) {
        auto s = build_by_name(name);
        for (const Branching& b : enumerate_branchings(s.tri))
            for (int e : ambiguous_edges(b)) {
                if (s.tri->edge_is_trapped(e)) continue;
                Branching want = invert_edge(b, e);
                BFlipResult first = apply_bflip(b, e, bflip_choices(b, e)[0]);
                bool reached = false;
                for (int ch : bflip_choices(first.result, first.new_edge))
                    if (branched_key(apply_bflip(first.result, first.new_edge, ch).result, true) ==
                        branched_key(want, true))
                        reached = true;
                c.expect(reached, name + ": two flips invert an ambiguous edge");
            }
    }
    // trapped removal strictly decreases the loop count
    {
        auto t = torus1();
        Branching b = enumerate_branchings(t.tri)[0];
        Branching bubbled = bubble_plus(b, 0, 0);
        auto nuts = find_nutshells(bubbled.owner());
        int internal = nuts[0].internal_edges[0];
        Branching with_trap =
            apply_bflip(bubbled, internal, bflip_choices(bubbled, internal)[0]).result;
        c.expect(trapped_edges(with_trap.owner()).size() == 1, "flip created one trapped edge");
        TransitReport rep = remove_trapped(with_trap);
        c.expect(rep.success && trapped_edges(replay(with_trap, rep.log).owner()).empty(),
                 "trapped edges removed");
    }
    // nutshell and star local censuses
    {
        TriPtr shell = Triangulation::build_with_boundary(
            2, {{Slot{0, 0}, Slot{1, 0}, 0}, {Slot{0, 1}, Slot{1, 1}, 0}});
        auto nuts = find_nutshells(*shell);
        c.expect(nuts.size() == 1, "free nutshell detected");
        std::map<std::pair<int, int>, std::vector<Branching>> good_groups;
        for (const Branching& b : enumerate_branchings(shell)) {
            if (!nutshell_is_good(b, nuts[0]))
                c.expect(vertex_is_pit_or_source(b, nuts[0].center_vertex),
                         "bad nutshell center is a pit or source");
            else
                good_groups[{b.orientation(shell->edge_of(Slot{0, 2})),
                             b.orientation(shell->edge_of(Slot{1, 2}))}]
                    .push_back(b);
        }
        for (auto& [key, group] : good_groups)
            for (const Branching& x : group)
                for (const Branching& y : group)
                    c.expect(delta(x, y).size() <= 2,
                             "good nutshells with one boundary differ by at most 2 inversions");

        TriPtr fan = Triangulation::build_with_boundary(
            3,
            {{Slot{0, 0}, Slot{1, 1}, 1}, {Slot{1, 0}, Slot{2, 1}, 1}, {Slot{2, 0}, Slot{0, 1}, 1}});
        auto stars = find_triangular_stars(*fan);
        c.expect(stars.size() == 1, "free star detected");
        for (const Branching& b : enumerate_branchings(fan))
            if (!star_is_good(b, stars[0]))
                c.expect(vertex_is_pit_or_source(b, stars[0].center_vertex),
                         "bad star center is a pit or source");
    }
    return VerifyRow{"move-mechanics", "verified", c.ok,
                     c.ok ? "two-flip inversions, trapped removal, local censuses"
                          : c.detail.str()};
}

}  // namespace

CorpusSpec quick_corpus() {
    CorpusSpec s;
    s.seeded_states = 120;
    s.strategy_pairs = 24;
    s.mutations = 4;
    s.census_budget = 20000;
    s.transit_pair_cap = 30;
    return s;
}

bool VerifyReport::all_verified_pass() const {
    for (const VerifyRow& r : rows)
        if (r.kind == "verified" && !r.pass) return false;
    return true;
}

VerifyReport verify_theorems(const CorpusSpec& spec) {
    auto guard = [](const char* claim, const char* kind, std::function<VerifyRow()> fn) {
        return [claim, kind, fn]() -> VerifyRow {
            try {
                return fn();
            } catch (const std::exception& e) {
                return VerifyRow{claim, kind, false, std::string("exception: ") + e.what()};
            }
        };
    };
    std::vector<std::function<VerifyRow()>> tasks = {
        guard("branching-censuses", "verified", [&] { return criterion_counts(); }),
        guard("branching-invariants", "verified", [&] { return criterion_invariants(spec); }),
        guard("inversion-connectivity", "verified", [&] { return criterion_inversions(spec); }),
        guard("complete-transit", "verified", [&] { return criterion_complete(spec); }),
        guard("delta-reduction-connector", "verified",
              [&] { return criterion_strategy_b(spec); }),
        guard("projective-plane-two-classes", "evidence",
              [&] { return criterion_projective_census(spec); }),
        guard("torus-no-nonambiguous-flip", "verified", [&] { return criterion_torus_na(); }),
        guard("dual-cycle-space", "verified", [&] { return criterion_cycles(); }),
        guard("move-mechanics", "verified", [&] { return criterion_mechanics(); }),
    };
    static const std::vector<std::string> claim_names = {
        "branching-censuses",       "branching-invariants",
        "inversion-connectivity",   "complete-transit",
        "delta-reduction-connector", "projective-plane-two-classes",
        "torus-no-nonambiguous-flip", "dual-cycle-space",
        "move-mechanics"};
    std::vector<std::function<VerifyRow()>> selected;
    if (spec.claims) {
        for (size_t i = 0; i < tasks.size(); ++i)
            for (const std::string& want : *spec.claims)
                if (claim_names[i] == want) selected.push_back(tasks[i]);
    } else {
        selected = tasks;
    }
    VerifyReport rep;
    rep.rows.resize(selected.size());
    int workers = std::min<int>(worker_count(), std::max<int>(1, selected.size()));
    if (workers > 1) {
        std::vector<std::future<VerifyRow>> futs;
        for (auto& t : selected) futs.push_back(std::async(std::launch::async, t));
        for (size_t i = 0; i < futs.size(); ++i) rep.rows[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < selected.size(); ++i) rep.rows[i] = selected[i]();
    }
    return rep;
}

std::string emit_verify_report(const VerifyReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const VerifyRow& r : rep.rows)
        rows.push_back({{"claim", r.claim}, {"kind", r.kind}, {"pass", r.pass},
                        {"detail", r.detail}});
    return nlohmann::json{{"rows", rows}, {"all_verified_pass", rep.all_verified_pass()}}
               .dump(2) +
           "\n";
}

}  // namespace branchflip
