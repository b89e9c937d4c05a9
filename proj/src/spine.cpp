#include "branchflip/spine.hpp"

#include <algorithm>
#include <map>

namespace branchflip {

TrainTrack dual_spine(const Branching& b) {
    const Triangulation& t = b.owner();
    TrainTrack tr;
    tr.owner = b.owner_ptr();
    tr.branch_count = t.edge_count();
    tr.branch_at.resize(t.triangle_count());
    tr.large_slot.resize(t.triangle_count());
    for (int tri = 0; tri < t.triangle_count(); ++tri) {
        for (int s = 0; s < 3; ++s) tr.branch_at[tri][s] = t.edge_of(Slot{tri, s});
        // The large branch is dual to the edge joining the minimal and
        // maximal local vertices, i.e. the one opposite the middle corner.
        tr.large_slot[tri] = one_labelled_corner(b, tri);
    }
    if (t.orientable() && t.closed()) {
        const auto& global = t.orientation_signs();
        tr.oriented_toward.resize(t.edge_count());
        for (int e = 0; e < t.edge_count(); ++e) {
            // The branch points into the side whose positive boundary walk
            // traverses the edge along its b-orientation.
            for (int side = 0; side < 2; ++side) {
                Slot s = t.edge_slot(e, side);
                if (!s.valid()) continue;
                if (b.forward_in_slot(s) == (global[s.tri] > 0)) tr.oriented_toward[e] = s;
            }
        }
    }
    return tr;
}

namespace {

// Switching rows: one per switch, +1 at the large end, -1 at the smalls,
// accumulated per edge (a trapped loop contributes both of its ends).
std::vector<std::vector<Rational>> switching_rows(const TrainTrack& tr) {
    const Triangulation& t = *tr.owner;
    std::vector<std::vector<Rational>> rows(t.triangle_count(),
                                            std::vector<Rational>(tr.branch_count, 0));
    for (int tri = 0; tri < t.triangle_count(); ++tri)
        for (int s = 0; s < 3; ++s)
            rows[tri][tr.branch_at[tri][s]] += (s == tr.large_slot[tri]) ? 1 : -1;
    return rows;
}

// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        Rational inv = m[r][c];
        for (int j = 0; j < cols; ++j) m[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

bool is_switching_cycle(const TrainTrack& tr, const std::vector<Rational>& z) {
    if (static_cast<int>(z.size()) != tr.branch_count) return false;
    for (const auto& row : switching_rows(tr)) {
        Rational acc = 0;
        for (int e = 0; e < tr.branch_count; ++e) acc += row[e] * z[e];
        if (acc != 0) return false;
    }
    return true;
}

std::vector<SwitchingCycle> cycle_space_basis(const TrainTrack& tr) {
    auto rows = switching_rows(tr);
    auto pivots = rref(rows);
    const int E = tr.branch_count;
    std::vector<char> is_pivot(E, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<SwitchingCycle> basis;
    for (int free = 0; free < E; ++free) {
        if (is_pivot[free]) continue;
        SwitchingCycle z;
        z.weights.assign(E, 0);
        z.weights[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) z.weights[pivots[r]] = -rows[r][free];
        basis.push_back(std::move(z));
    }
    return basis;
}

ConePosition in_cone(const TrainTrack& tr, const SwitchingCycle& z) {
    if (!is_switching_cycle(tr, z.weights))
        throw NotACycle("weights do not satisfy the switching conditions");
    bool zero = false;
    for (const Rational& w : z.weights) {
        if (w < 0) return ConePosition::Outside;
        if (w == 0) zero = true;
    }
    return zero ? ConePosition::Boundary : ConePosition::Interior;
}

namespace {

struct Inequality {
    std::vector<Rational> coeff;  // over the basis coordinates
    Rational rhs;                 // sum coeff_i x_i >= rhs
};

// Fourier-Motzkin elimination with witness recovery.
std::optional<std::vector<Rational>> fm_feasible(std::vector<Inequality> sys, int nvars) {
    std::vector<std::vector<Inequality>> stages;
    for (int v = nvars - 1; v >= 0; --v) {
        stages.push_back(sys);
        std::vector<Inequality> lower, upper, rest;
        for (const auto& iq : sys) {
            if (iq.coeff[v] > 0) lower.push_back(iq);       // x_v >= ...
            else if (iq.coeff[v] < 0) upper.push_back(iq);  // x_v <= ...
            else rest.push_back(iq);
        }
        std::vector<Inequality> next = rest;
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                Inequality comb;
                comb.coeff.assign(nvars, 0);
                Rational a = lo.coeff[v], mb = -up.coeff[v];
                for (int j = 0; j < nvars; ++j)
                    comb.coeff[j] = lo.coeff[j] * mb + up.coeff[j] * a;
                comb.coeff[v] = 0;
                comb.rhs = lo.rhs * mb + up.rhs * a;
                next.push_back(std::move(comb));
            }
        sys = std::move(next);
    }
    for (const auto& iq : sys)
        if (iq.rhs > 0) return std::nullopt;  // contradiction 0 >= rhs > 0

    // Back-substitute a witness in reverse elimination order.
    std::vector<Rational> x(nvars, 0);
    for (int v = 0; v < nvars; ++v) {
        const auto& stage = stages[nvars - 1 - v];
        bool has_lo = false, has_up = false;
        Rational lo = 0, up = 0;
        for (const auto& iq : stage) {
            if (iq.coeff[v] == 0) continue;
            Rational bound = iq.rhs;
            for (int j = 0; j < nvars; ++j)
                if (j != v) bound -= iq.coeff[j] * x[j];
            bound /= iq.coeff[v];
            if (iq.coeff[v] > 0) {
                if (!has_lo || bound > lo) lo = bound;
                has_lo = true;
            } else {
                if (!has_up || bound < up) up = bound;
                has_up = true;
            }
        }
        if (has_lo && has_up)
            x[v] = (lo + up) / 2;
        else if (has_lo)
            x[v] = lo;
        else if (has_up)
            x[v] = up;
    }
    return x;
}

}  // namespace

std::optional<SwitchingCycle> positive_cycle_exists(const TrainTrack& tr) {
    auto basis = cycle_space_basis(tr);
    const int d = static_cast<int>(basis.size());
    const int E = tr.branch_count;
    std::vector<Inequality> sys;
    for (int e = 0; e < E; ++e) {
        Inequality iq;
        iq.coeff.assign(d, 0);
        for (int k = 0; k < d; ++k) iq.coeff[k] = basis[k].weights[e];
        iq.rhs = 1;
        sys.push_back(std::move(iq));
    }
    auto x = fm_feasible(std::move(sys), d);
    if (!x) return std::nullopt;
    SwitchingCycle z;
    z.weights.assign(E, 0);
    for (int k = 0; k < d; ++k)
        for (int e = 0; e < E; ++e) z.weights[e] += (*x)[k] * basis[k].weights[e];
    for (const Rational& w : z.weights)
        if (w < 1) throw Error("feasibility witness not strictly positive");
    return z;
}

SwitchingCycle transport_cycle(const Branching& b, int edge, int choice,
                               const SwitchingCycle& z) {
    TrainTrack before = dual_spine(b);
    if (!is_switching_cycle(before, z.weights))
        throw NotACycle("input is not a switching cycle");
    BFlipResult fr = apply_bflip(b, edge, choice);
    TrainTrack after = dual_spine(fr.result);

    SwitchingCycle out;
    out.weights.assign(after.branch_count, 0);
    for (int e = 0; e < b.owner().edge_count(); ++e)
        if (fr.data.edge_map[e] >= 0) out.weights[fr.data.edge_map[e]] = z.weights[e];

    // Solve for the new diagonal at one new switch, verify at the other.
    int ne = fr.new_edge;
    const Triangulation& t = fr.result.owner();
    Slot s0 = t.edge_slot(ne, 0), s1 = t.edge_slot(ne, 1);
    {
        int tri = s0.tri;
        Rational acc = 0;
        for (int sl = 0; sl < 3; ++sl) {
            if (sl == s0.slot) continue;
            acc += ((sl == after.large_slot[tri]) ? 1 : -1) *
                   out.weights[after.branch_at[tri][sl]];
        }
        int sign_unknown = (s0.slot == after.large_slot[tri]) ? 1 : -1;
        out.weights[ne] = -acc / sign_unknown;
    }
    if (s1.tri != s0.tri) {
        Rational acc = 0;
        for (int sl = 0; sl < 3; ++sl)
            acc += ((sl == after.large_slot[s1.tri]) ? 1 : -1) *
                   out.weights[after.branch_at[s1.tri][sl]];
        if (acc != 0)
            throw InconsistentTransport("cycle does not close up at the second new switch");
    }
    if (!is_switching_cycle(after, out.weights))
        throw InconsistentTransport("transported weights violate a switching condition");
    return out;
}

int cycle_rank(std::vector<SwitchingCycle> cycles) {
    if (cycles.empty()) return 0;
    std::vector<std::vector<Rational>> m;
    for (auto& c : cycles) m.push_back(std::move(c.weights));
    return static_cast<int>(rref(m).size());
}

std::vector<LinkCorner> vertex_link(const Branching& b, int v) {
    const Triangulation& t = b.owner();
    if (!t.closed()) throw Error("vertex links need a closed surface");
    std::vector<LinkCorner> link;
    Corner start = t.corners_of_vertex(v).front();
    Corner cur = start;
    Slot exit_slot{cur.tri, (cur.corner + 1) % 3};
    while (true) {
        link.push_back(LinkCorner{cur, one_labelled_corner(b, cur.tri) == cur.corner});
        Slot p = t.partner(exit_slot);
        auto pe = t.slot_endpoints(p);
        auto ee = t.slot_endpoints(exit_slot);
        int bit = t.gluing_bit(exit_slot);
        cur = (ee[0] == cur) ? pe[bit] : pe[1 - bit];
        if (cur == start) break;
        // continue around v: leave through the corner's other incident slot
        Slot s1{cur.tri, (cur.corner + 1) % 3}, s2{cur.tri, (cur.corner + 2) % 3};
        exit_slot = (s1 == p) ? s2 : s1;
    }
    if (static_cast<int>(link.size()) != t.vertex_valence(v))
        throw Error("link walk did not close over the whole star");
    return link;
}

std::vector<LinkArc> bicolor_link(const Branching& b, int v) {
    auto link = vertex_link(b, v);
    std::vector<int> ones;
    for (size_t i = 0; i < link.size(); ++i)
        if (link[i].one_labelled) ones.push_back(static_cast<int>(i));
    std::vector<LinkArc> arcs;
    if (ones.empty()) return arcs;
    if (ones.size() % 2 != 0) throw Error("odd 1-corner count around a vertex");
    const int n = static_cast<int>(link.size());
    for (size_t k = 0; k < ones.size(); ++k) {
        int from = ones[k];
        int to = ones[(k + 1) % ones.size()];
        int len = (to - from + n) % n;
        arcs.push_back(LinkArc{from, len, (k % 2) == 0});
    }
    return arcs;
}

std::string rational_to_string(const Rational& r) { return r.str(); }

Rational rational_from_string(const std::string& s) { return Rational(s); }

}  // namespace branchflip
