#include "branchflip/transit.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace branchflip {

int worker_count() {
    if (const char* env = std::getenv("BRANCHFLIP_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

std::string dump_state(const Branching& s1, const Branching* s2, const std::string& why) {
    std::ostringstream os;
    os << "dump: " << why << "\n";
    os << "triangles=" << s1.owner().triangle_count() << " gluings:";
    for (const GluingSpec& g : s1.owner().gluing_list())
        os << " (" << g.a.tri << "," << g.a.slot << ")-(" << g.b.tri << "," << g.b.slot << ")/"
           << g.bit;
    os << "\nside1:";
    for (int r : s1.orientations()) os << r;
    if (s2) {
        os << "\nside2:";
        for (int r : s2->orientations()) os << r;
        os << "\ndelta:";
        for (int e : delta(s1, *s2).edges) os << " " << e;
    }
    os << "\n";
    return os.str();
}

void verify_report(const Branching& source, TransitReport& rep) {
    if (!rep.success) return;
    Branching end = replay(source, rep.log);
    if (hex_key(branched_key(end, true)) != rep.endpoint_key)
        throw Error("transit report log does not replay to its endpoint");
}

}  // namespace

// --- inversion connectivity ----------------------------------------------

InversionGraph inversion_graph(const TriPtr& t) {
    InversionGraph g;
    g.nodes = enumerate_branchings(t);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < g.nodes.size(); ++i)
        index[g.nodes[i].orientations()] = static_cast<int>(i);
    g.adjacency.resize(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        for (int e : ambiguous_edges(g.nodes[i])) {
            if (t->edge_is_trapped(e)) continue;
            std::vector<int> o = g.nodes[i].orientations();
            o[e] ^= 1;
            g.adjacency[i].push_back(index.at(o));
        }
    }
    return g;
}

namespace {

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<int> components(const InversionGraph& g, bool symmetrized) {
    DSU dsu(static_cast<int>(g.nodes.size()));
    for (size_t i = 0; i < g.nodes.size(); ++i)
        for (int j : g.adjacency[i]) dsu.unite(static_cast<int>(i), j);
    if (symmetrized) {
        std::map<std::vector<int>, int> index;
        for (size_t i = 0; i < g.nodes.size(); ++i)
            index[g.nodes[i].orientations()] = static_cast<int>(i);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            std::vector<int> o = g.nodes[i].orientations();
            for (int& r : o) r ^= 1;
            dsu.unite(static_cast<int>(i), index.at(o));
        }
    }
    std::vector<int> out(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) out[i] = dsu.find(static_cast<int>(i));
    return out;
}

std::vector<int> components(const TriPtr& t, bool symmetrized) {
    return components(inversion_graph(t), symmetrized);
}

int component_count(const InversionGraph& g, bool symmetrized) {
    auto c = components(g, symmetrized);
    std::set<int> s(c.begin(), c.end());
    return static_cast<int>(s.size());
}

TransitReport connect_by_inversions(const Branching& b, const Branching& target,
                                    const InversionOptions& opts) {
    if (!b.owner().same_table(target.owner()))
        throw DifferentOwner("branchings live on different triangulations");
    if (!opts.allow_trapped && !trapped_edges(b.owner()).empty())
        throw TrappedEdgesPresent("triangulation has trapped edges");

    const TriPtr& t = b.owner_ptr();
    std::vector<int> raw_target = target.orientations();
    std::vector<int> inv_target = raw_target;
    for (int& r : inv_target) r ^= 1;

    // The raw target takes precedence: stop early only on it, and fall back
    // to the total inversion after the component is exhausted.
    std::map<std::vector<int>, std::pair<std::vector<int>, int>> parent;
    std::deque<std::vector<int>> queue;
    parent[b.orientations()] = {{}, -1};
    queue.push_back(b.orientations());
    bool raw_found = (b.orientations() == raw_target);
    while (!raw_found && !queue.empty()) {
        std::vector<int> cur = queue.front();
        queue.pop_front();
        Branching nb(t, cur);
        for (int e : ambiguous_edges(nb)) {
            if (t->edge_is_trapped(e)) continue;
            std::vector<int> nxt = cur;
            nxt[e] ^= 1;
            if (parent.count(nxt)) continue;
            parent[nxt] = {cur, e};
            if (nxt == raw_target) {
                raw_found = true;
                break;
            }
            queue.push_back(nxt);
        }
    }

    TransitReport rep;
    rep.log.initial_key = hex_key(branched_key(b, true));
    std::vector<int> found;
    if (raw_found)
        found = raw_target;
    else if (opts.symmetrized_retry && parent.count(inv_target))
        found = inv_target;
    else {
        rep.success = false;
        std::ostringstream os;
        os << "not connected; reachable states: " << parent.size();
        rep.diagnostics = os.str();
        return rep;
    }
    std::vector<Move> path;
    std::vector<int> cur = found;
    while (true) {
        auto [prev, e] = parent.at(cur);
        if (e < 0) break;
        path.push_back(MvInvertEdge{e});
        cur = prev;
    }
    std::reverse(path.begin(), path.end());
    rep.success = true;
    rep.symmetrized = (found != raw_target);
    rep.log.moves = path;
    rep.endpoint_key = hex_key(branched_key(Branching(t, found), true));
    for (const Move& m : path) rep.steps.push_back(TransitStep{m, 0, "ambiguous-inversion", -1});
    verify_report(b, rep);
    return rep;
}

TransitReport remove_trapped(const Branching& b) {
    TransitReport rep;
    rep.log.initial_key = hex_key(branched_key(b, true));
    Branching cur = b;
    int loops = static_cast<int>(trapped_edges(cur.owner()).size());
    while (true) {
        auto trapped = trapped_edges(cur.owner());
        if (trapped.empty()) break;
        int e = trapped.front();
        Slot s0 = cur.owner().edge_slot(e, 0);
        // the loop attaches to the rest of the spine through the third slot
        int attach = -1;
        for (int s = 0; s < 3; ++s)
            if (cur.owner().edge_of(Slot{s0.tri, s}) != e)
                attach = cur.owner().edge_of(Slot{s0.tri, s});
        if (attach < 0 || cur.owner().edge_is_trapped(attach))
            throw Error("trapped loop without a flippable attaching edge");
        int choice = bflip_choices(cur, attach).front();
        cur = apply_bflip(cur, attach, choice).result;
        rep.log.moves.push_back(MvBFlip{attach, choice});
        rep.steps.push_back(TransitStep{MvBFlip{attach, choice}, 0, "trapped-removal", -1});
        int now = static_cast<int>(trapped_edges(cur.owner()).size());
        if (now >= loops) throw Error("trapped-edge removal did not reduce the loop count");
        loops = now;
    }
    rep.success = true;
    rep.endpoint_key = hex_key(branched_key(cur, true));
    verify_report(b, rep);
    return rep;
}

// --- strategy B ------------------------------------------------------------

namespace {

// Geometry of the quadrilateral around an untrapped edge: the boundary
// cycle runs C1 -> Pa -> C2 -> Pb where C1/C2 are the apexes and Pa/Pb the
// diagonal's endpoints; alignment records whether a slot's intrinsic order
// follows the cycle.
struct QuadView {
    int t1, t2;
    Slot A1, A2, B1, B2;
    std::array<Slot, 4> cycle_slots;
    std::array<bool, 4> cycle_aligned;
};

QuadView quad_view(const Triangulation& t, int e) {
    Slot s0 = t.edge_slot(e, 0), s1 = t.edge_slot(e, 1);
    int beta = t.edge_bit(e);
    QuadView q;
    q.t1 = s0.tri;
    q.t2 = s1.tri;
    q.A1 = Slot{s0.tri, (s0.slot + 1) % 3};
    q.A2 = Slot{s0.tri, (s0.slot + 2) % 3};
    q.B1 = Slot{s1.tri, (s1.slot + 1) % 3};
    q.B2 = Slot{s1.tri, (s1.slot + 2) % 3};
    q.cycle_slots = {q.A2, beta == 0 ? q.B2 : q.B1, beta == 0 ? q.B1 : q.B2, q.A1};
    q.cycle_aligned = {true, beta == 1, beta == 1, true};
    return q;
}

enum class EdgeCase { Good1, Bad1, Good2, Bad2, Anomaly };

const char* tag_of(EdgeCase c) {
    switch (c) {
        case EdgeCase::Good1: return "(1)good-flip";
        case EdgeCase::Good2: return "(2)good-flip";
        default: return "bad";
    }
}

struct Classified {
    EdgeCase kind = EdgeCase::Anomaly;
    std::string note;
};

bool long_in(const Branching& b, int e, int tri) {
    return !is_ambiguous_in_triangle(b, e, tri);
}

bool flip_creates_trapped(const TriPtr& t, int e) {
    FlipData d = flip_naked_data(t, e);
    return !trapped_edges(*d.tri).empty();
}

Classified classify_disoriented(const Branching& s1, const Branching& s2, int e) {
    const Triangulation& t = s1.owner();
    Classified out;
    if (t.edge_is_trapped(e)) {
        out.note = "trapped edge in delta";
        return out;
    }
    QuadView q = quad_view(t, e);
    bool lock1 = long_in(s1, e, q.t1) && long_in(s2, e, q.t1);
    bool lock2 = long_in(s1, e, q.t2) && long_in(s2, e, q.t2);
    if (lock1 || lock2) {
        int other = lock1 ? q.t2 : q.t1;
        DeltaSet d = delta(s1, s2);
        Slot e_slot = (other == q.t1) ? t.edge_slot(e, 0) : t.edge_slot(e, 1);
        int k = 0;
        for (int s = 0; s < 3; ++s) {
            if (s == e_slot.slot) continue;
            if (d.contains(t.edge_of(Slot{other, s}))) ++k;
        }
        bool bad = (k == 2) && is_ambiguous_in_triangle(s1, e, other);
        out.kind = bad ? EdgeCase::Bad1 : EdgeCase::Good1;
        return out;
    }
    // case (2): exactly one non-disoriented boundary edge per triangle
    DeltaSet d = delta(s1, s2);
    std::vector<int> free_idx;
    for (int i = 0; i < 4; ++i)
        if (!d.contains(t.edge_of(q.cycle_slots[i]))) free_idx.push_back(i);
    if (free_idx.size() != 2) {
        out.note = "case-2 pattern violated: free boundary count != 2";
        return out;
    }
    Slot fa = q.cycle_slots[free_idx[0]], fb = q.cycle_slots[free_idx[1]];
    if ((fa.tri == q.t1) == (fb.tri == q.t1)) {
        out.note = "case-2 pattern violated: free edges on one triangle";
        return out;
    }
    bool opposite = (free_idx[1] - free_idx[0]) == 2;
    if (opposite) {
        auto dir_along = [&](int i) {
            return s1.forward_in_slot(q.cycle_slots[i]) == q.cycle_aligned[i];
        };
        if (dir_along(free_idx[0]) != dir_along(free_idx[1])) {
            out.note = "case-2(ii) free pair not compatibly oriented";
            return out;
        }
        out.kind = EdgeCase::Bad2;
        return out;
    }
    out.kind = flip_creates_trapped(s1.owner_ptr(), e) ? EdgeCase::Bad2 : EdgeCase::Good2;
    return out;
}

// Paired evolution of the two sides over one shared naked triangulation.
// Side 2's moves are recorded forward together with the key of the state
// each was applied to; the return leg of the flat log is reconstructed by
// key-directed search afterwards (undoing a flip relabels triangles, so
// precomputed inverse moves could reference stale ids).
struct Paired {
    Branching s1;
    Branching s2;
    std::vector<Move> fwd1;
    std::vector<Move> fwd2;
    std::vector<std::string> keys2_before;  // branched key of s2 before each move
    TransitReport* rep;
    int committed = 0;

    int dsize() const { return delta(s1, s2).size(); }

    void record(const Move& m, int side, const std::string& tag) {
        rep->steps.push_back(TransitStep{m, side, tag, dsize()});
        rep->delta_trace.push_back(dsize());
        ++committed;
    }

    void invert_on(int side, int e, const std::string& tag) {
        if (side == 1) {
            s1 = invert_edge(s1, e);
            fwd1.push_back(MvInvertEdge{e});
        } else {
            keys2_before.push_back(branched_key(s2, true));
            s2 = invert_edge(s2, e);
            fwd2.push_back(MvInvertEdge{e});
        }
        record(MvInvertEdge{e}, side, tag);
    }

    // Invert a non-disoriented edge on both sides; delta is unchanged and
    // both steps carry the post-pair size.
    void paired_invert(int e, const std::string& tag) {
        s1 = invert_edge(s1, e);
        fwd1.push_back(MvInvertEdge{e});
        keys2_before.push_back(branched_key(s2, true));
        s2 = invert_edge(s2, e);
        fwd2.push_back(MvInvertEdge{e});
        record(MvInvertEdge{e}, 1, tag);
        record(MvInvertEdge{e}, 2, tag);
    }

    // Flip e on both sides with the delta-minimizing enhancement pair.
    void paired_flip(int e, const std::string& tag) {
        auto c1s = bflip_choices(s1, e);
        auto c2s = bflip_choices(s2, e);
        int best_c1 = -1, best_c2 = -1, best = -1;
        for (int c1 : c1s)
            for (int c2 : c2s) {
                Branching n1 = apply_bflip(s1, e, c1).result;
                Branching n2 = apply_bflip(s2, e, c2).result;
                int dz = delta(n1, n2).size();
                if (best < 0 || dz < best) {
                    best = dz;
                    best_c1 = c1;
                    best_c2 = c2;
                }
            }
        keys2_before.push_back(branched_key(s2, true));
        s1 = apply_bflip(s1, e, best_c1).result;
        s2 = apply_bflip(s2, e, best_c2).result;
        fwd1.push_back(MvBFlip{e, best_c1});
        fwd2.push_back(MvBFlip{e, best_c2});
        record(MvBFlip{e, best_c1}, 1, tag);
    }
};

// Undo side 2's moves from the meet state, matching recorded keys; the
// move kinds are known, only ids are re-resolved on the live states.
std::vector<Move> reverse_leg(Branching cur, const std::vector<Move>& fwd2,
                              const std::vector<std::string>& keys_before) {
    std::vector<Move> out;
    for (int j = static_cast<int>(fwd2.size()) - 1; j >= 0; --j) {
        const std::string& target = keys_before[j];
        bool done = false;
        if (std::holds_alternative<MvInvertEdge>(fwd2[j])) {
            for (int e = 0; e < cur.owner().edge_count() && !done; ++e) {
                if (!is_ambiguous(cur, e)) continue;
                Branching cand = invert_edge(cur, e);
                if (branched_key(cand, true) == target) {
                    cur = cand;
                    out.push_back(MvInvertEdge{e});
                    done = true;
                }
            }
        } else {
            for (int e = 0; e < cur.owner().edge_count() && !done; ++e) {
                if (cur.owner().edge_is_trapped(e)) continue;
                for (int c : bflip_choices(cur, e)) {
                    Branching cand = apply_bflip(cur, e, c).result;
                    if (branched_key(cand, true) == target) {
                        cur = cand;
                        out.push_back(MvBFlip{e, c});
                        done = true;
                        break;
                    }
                }
            }
        }
        if (!done) throw Error("reverse leg reconstruction failed");
    }
    return out;
}

}  // namespace

TransitReport strategy_b_connect(const Branching& b, const Branching& target,
                                 const StrategyBOptions& opts) {
    if (!b.owner().same_table(target.owner()))
        throw DifferentOwner("branchings live on different triangulations");
    if (!b.owner().orientable())
        throw NotOrientable("the paired connector needs an oriented owner");

    TransitReport rep;
    rep.log.initial_key = hex_key(branched_key(b, true));
    Paired st{b, target, {}, {}, {}, &rep, 0};

    const int E = b.owner().edge_count();
    const int guard = opts.guard_factor * E * (st.dsize() + 1);
    rep.delta_trace.push_back(st.dsize());

    auto fail = [&](const std::string& why) {
        rep.success = false;
        rep.diagnostics = dump_state(st.s1, &st.s2, why);
        return rep;
    };

    // Initial reduction: no trapped edges.
    while (!trapped_edges(st.s1.owner()).empty()) {
        if (st.committed > guard) return fail("guard exceeded during trapped removal");
        int e = trapped_edges(st.s1.owner()).front();
        Slot s0 = st.s1.owner().edge_slot(e, 0);
        int attach = -1;
        for (int s = 0; s < 3; ++s)
            if (st.s1.owner().edge_of(Slot{s0.tri, s}) != e)
                attach = st.s1.owner().edge_of(Slot{s0.tri, s});
        int before = static_cast<int>(trapped_edges(st.s1.owner()).size());
        st.paired_flip(attach, "trapped-removal");
        if (static_cast<int>(trapped_edges(st.s1.owner()).size()) >= before)
            return fail("trapped removal did not reduce the loop count");
    }

    while (true) {
        if (st.committed > guard) return fail("iteration guard exceeded");
        DeltaSet d = delta(st.s1, st.s2);
        if (d.empty()) break;

        // 1. invert an ambiguous disoriented edge (two-flip realizable)
        bool inverted = false;
        for (int e : d.edges) {
            if (st.s1.owner().edge_is_trapped(e)) continue;
            if (is_ambiguous(st.s1, e)) {
                st.invert_on(1, e, "ambiguous-inversion");
                inverted = true;
                break;
            }
            if (is_ambiguous(st.s2, e)) {
                st.invert_on(2, e, "ambiguous-inversion");
                inverted = true;
                break;
            }
        }
        if (inverted) continue;

        // 2. classify and flip the least good edge
        std::map<int, Classified> cls;
        for (int e : d.edges) cls[e] = classify_disoriented(st.s1, st.s2, e);
        int good = -1;
        for (int e : d.edges) {
            if (cls[e].kind == EdgeCase::Anomaly)
                return fail("classification anomaly: " + cls[e].note);
            if (cls[e].kind == EdgeCase::Good1 || cls[e].kind == EdgeCase::Good2) {
                good = e;
                break;
            }
        }
        if (good >= 0) {
            int before = d.size();
            st.paired_flip(good, tag_of(cls[good].kind));
            if (st.dsize() >= before) return fail("good flip failed to reduce delta");
            continue;
        }

        // all-bad state: every disoriented edge must be (2)bad
        for (int e : d.edges)
            if (cls[e].kind == EdgeCase::Bad1)
                return fail("(1)bad edge under the all-bad assumptions");

        // chains of (2)bad quadrilaterals: every touched triangle carries
        // exactly two disoriented edges, so components are cycles
        std::map<int, std::vector<int>> tri_edges;
        for (int e : d.edges) {
            tri_edges[st.s1.owner().edge_slot(e, 0).tri].push_back(e);
            tri_edges[st.s1.owner().edge_slot(e, 1).tri].push_back(e);
        }
        for (auto& [tri, es] : tri_edges)
            if (es.size() != 2) return fail("all-bad chain structure violated");
        DSU dsu(E);
        for (auto& [tri, es] : tri_edges) dsu.unite(es[0], es[1]);
        std::map<int, std::vector<int>> comps;
        for (int e : d.edges) comps[dsu.find(e)].push_back(e);

        // 3. rotate a non-terminal chain so that a good edge appears
        bool rotated = false;
        for (auto& [root, es] : comps) {
            if (es.size() <= 2) continue;  // terminal component
            for (int e : es) {
                Paired sim = st;
                TransitReport scratch;
                sim.rep = &scratch;
                sim.paired_flip(e, "sim");
                bool progress = false;
                DeltaSet d2 = delta(sim.s1, sim.s2);
                if (d2.size() < d.size()) progress = true;
                for (int e2 : d2.edges) {
                    if (progress) break;
                    if (!sim.s1.owner().edge_is_trapped(e2) &&
                        (is_ambiguous(sim.s1, e2) || is_ambiguous(sim.s2, e2))) {
                        progress = true;
                    } else {
                        Classified c2 = classify_disoriented(sim.s1, sim.s2, e2);
                        if (c2.kind == EdgeCase::Good1 || c2.kind == EdgeCase::Good2)
                            progress = true;
                    }
                }
                if (progress) {
                    st.paired_flip(e, "terminal-move-rotation");
                    rotated = true;
                    break;
                }
            }
            if (rotated) break;
        }
        if (rotated) continue;

        // 4. terminal all-bad: paired inversions of star edges until some
        //    disoriented edge becomes ambiguous (bounded local search)
        std::set<int> candidates;
        for (int e : d.edges) {
            auto ends = st.s1.owner().slot_endpoints(st.s1.owner().edge_slot(e, 0));
            for (const Corner& c : ends) {
                int v = st.s1.owner().vertex_of(c);
                for (const Corner& cc : st.s1.owner().corners_of_vertex(v))
                    for (int s = 0; s < 3; ++s) {
                        int ce = st.s1.owner().edge_of(Slot{cc.tri, s});
                        if (!d.contains(ce) && !st.s1.owner().edge_is_trapped(ce))
                            candidates.insert(ce);
                    }
            }
        }
        struct Node {
            std::vector<int> o1, o2;
            std::vector<int> path;
        };
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        std::deque<Node> queue;
        queue.push_back(Node{st.s1.orientations(), st.s2.orientations(), {}});
        seen.insert({st.s1.orientations(), st.s2.orientations()});
        std::vector<int> solution;
        while (!queue.empty() && solution.empty()) {
            Node cur = queue.front();
            queue.pop_front();
            if (static_cast<int>(cur.path.size()) >= opts.search_depth) continue;
            Branching c1(st.s1.owner_ptr(), cur.o1), c2(st.s1.owner_ptr(), cur.o2);
            for (int ce : candidates) {
                if (!is_ambiguous(c1, ce) || !is_ambiguous(c2, ce)) continue;
                Node nxt = cur;
                nxt.o1[ce] ^= 1;
                nxt.o2[ce] ^= 1;
                nxt.path.push_back(ce);
                if (!seen.insert({nxt.o1, nxt.o2}).second) continue;
                Branching n1(st.s1.owner_ptr(), nxt.o1), n2(st.s1.owner_ptr(), nxt.o2);
                for (int e2 : delta(n1, n2).edges)
                    if (!n1.owner().edge_is_trapped(e2) &&
                        (is_ambiguous(n1, e2) || is_ambiguous(n2, e2))) {
                        solution = nxt.path;
                        break;
                    }
                if (!solution.empty()) break;
                queue.push_back(nxt);
            }
        }
        if (solution.empty()) return fail("bounded star-local search exhausted");
        for (int ce : solution) st.paired_invert(ce, "star-local-inversion");
    }

    rep.success = true;
    rep.log.moves = st.fwd1;
    for (const Move& m : reverse_leg(st.s1, st.fwd2, st.keys2_before)) rep.log.moves.push_back(m);
    rep.endpoint_key = hex_key(branched_key(target, true));
    verify_report(b, rep);
    return rep;
}

// --- complete transit --------------------------------------------------------

TransitReport complete_transit(const Branching& b, const Branching& target) {
    if (!b.owner().same_table(target.owner()))
        throw DifferentOwner("branchings live on different triangulations");
    TransitReport rep;
    rep.log.initial_key = hex_key(branched_key(b, true));
    rep.endpoint_key = hex_key(branched_key(target, true));
    rep.delta_trace.push_back(delta(b, target).size());
    if (delta(b, target).empty()) {
        rep.success = true;  // empty log: minimal certificate
        verify_report(b, rep);
        return rep;
    }

    const int F = b.owner().triangle_count();
    Branching s1 = b, s2 = target;
    auto push = [&](const Move& m, int side, const char* tag) {
        rep.steps.push_back(TransitStep{m, side, tag, delta(s1, s2).size()});
        rep.delta_trace.push_back(delta(s1, s2).size());
    };
    std::vector<Move> fwd, undo2;
    for (int i = 0; i < F; ++i) {
        Move m = MvStellar13{i, 0};  // every new edge toward the new vertex
        Branching before2 = s2;
        s1 = stellar_13(s1, i, 0);
        s2 = stellar_13(s2, i, 0);
        fwd.push_back(m);
        undo2.push_back(inverse_of(m, before2, s2));
        push(m, 1, "inward-subdivision");
    }
    DeltaSet d = delta(s1, s2);
    for (int e : d.edges) {
        if (s1.owner().edge_is_trapped(e) || !is_ambiguous(s1, e))
            throw Error("subdivided disagreement edge is not invertible");
        s1 = invert_edge(s1, e);
        fwd.push_back(MvInvertEdge{e});
        push(MvInvertEdge{e}, 1, "ambiguous-inversion");
    }
    if (!delta(s1, s2).empty()) throw Error("inversions did not align the two sides");

    rep.success = true;
    rep.log.moves = fwd;
    for (auto it = undo2.rbegin(); it != undo2.rend(); ++it) rep.log.moves.push_back(*it);
    verify_report(b, rep);
    return rep;
}

// --- bounded census ------------------------------------------------------------

CensusSummary bounded_bflip_census(const std::vector<Branching>& seeds, int node_budget,
                                   int triangle_budget) {
    if (node_budget <= 0 || triangle_budget <= 0)
        throw BudgetExhausted("budgets must be positive");
    for (const Branching& s : seeds)
        if (s.owner().triangle_count() > triangle_budget)
            throw BudgetExhausted("seed exceeds the triangle budget");

    CensusSummary sum;
    DSU dsu(static_cast<int>(seeds.size()));
    std::map<std::string, int> state_comp;  // branched key -> seed component
    std::deque<std::pair<Branching, int>> frontier;
    for (size_t i = 0; i < seeds.size(); ++i) {
        std::string k = branched_key(seeds[i], true);
        sum.seed_keys.push_back(hex_key(k));
        auto it = state_comp.find(k);
        if (it != state_comp.end()) {
            dsu.unite(static_cast<int>(i), it->second);
        } else {
            state_comp[k] = static_cast<int>(i);
            frontier.emplace_back(seeds[i], static_cast<int>(i));
        }
    }
    sum.explored = static_cast<int>(state_comp.size());

    const int workers = worker_count();
    while (!frontier.empty()) {
        if (sum.explored >= node_budget) {
            sum.exhausted = true;
            break;
        }
        // expand one level; keys are computed in parallel, insertion stays
        // in deterministic order
        std::vector<std::pair<Branching, int>> level(frontier.begin(), frontier.end());
        frontier.clear();
        std::vector<std::vector<std::pair<std::string, Branching>>> produced(level.size());
        auto expand = [&](size_t from, size_t to) {
            for (size_t i = from; i < to; ++i) {
                const Branching& cur = level[i].first;
                for (int e = 0; e < cur.owner().edge_count(); ++e) {
                    if (cur.owner().edge_is_trapped(e)) continue;
                    for (int c : bflip_choices(cur, e)) {
                        Branching nxt = apply_bflip(cur, e, c).result;
                        std::string key = branched_key(nxt, true);
                        produced[i].emplace_back(std::move(key), std::move(nxt));
                    }
                }
            }
        };
        if (workers > 1 && level.size() > 1) {
            std::vector<std::future<void>> futs;
            size_t chunk = (level.size() + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                size_t from = w * chunk, to = std::min(level.size(), (w + 1) * chunk);
                if (from >= to) break;
                futs.push_back(std::async(std::launch::async, expand, from, to));
            }
            for (auto& f : futs) f.get();
        } else {
            expand(0, level.size());
        }
        for (size_t i = 0; i < level.size(); ++i) {
            int comp = level[i].second;
            for (auto& [key, nxt] : produced[i]) {
                auto it = state_comp.find(key);
                if (it != state_comp.end()) {
                    dsu.unite(comp, it->second);
                    continue;
                }
                if (sum.explored >= node_budget) {
                    sum.exhausted = true;
                    continue;
                }
                state_comp[key] = comp;
                ++sum.explored;
                frontier.emplace_back(nxt, comp);
            }
        }
    }
    sum.frontier = static_cast<int>(frontier.size());
    for (size_t i = 0; i < seeds.size(); ++i)
        sum.seed_component.push_back(dsu.find(static_cast<int>(i)));
    return sum;
}

}  // namespace branchflip
