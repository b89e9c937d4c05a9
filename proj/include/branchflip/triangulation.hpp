#pragma once

// Loose ideal triangulations of closed surfaces as slot-gluing data.
//
// A triangulation is a set of abstract triangles whose edge slots are glued
// in pairs.  Slot i of a triangle is the edge opposite corner i; its
// endpoints are corners i+1 and i+2 (mod 3), and its intrinsic direction is
// corner i+1 -> corner i+2 (the direction induced by the corner cycle
// 0 -> 1 -> 2).  A gluing between two slots carries one bit: 0 identifies
// the endpoints in intrinsic order (first with first), 1 swaps them.
//
// Self-adjacency is allowed: two slots of one triangle may be glued (the
// resulting edge is "trapped"), and distinct edges may share endpoints.
// Vertices are corner orbits and carry persistent integer labels.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace branchflip {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPerfectMatching : Error { using Error::Error; };
struct SlotSelfMatch : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct InvalidMove : Error { using Error::Error; };

struct Slot {
    int tri = -1;
    int slot = -1;

    bool valid() const { return tri >= 0; }
    friend bool operator==(const Slot&, const Slot&) = default;
    friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct Corner {
    int tri = -1;
    int corner = -1;

    bool valid() const { return tri >= 0; }
    friend bool operator==(const Corner&, const Corner&) = default;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// One matched slot pair, as supplied to build().
struct GluingSpec {
    Slot a;
    Slot b;
    int bit = 0;  // 0: endpoints identified in intrinsic order, 1: swapped
};

struct SurfaceClass {
    bool orientable = false;
    int genus_or_crosscaps = 0;
    int euler = 0;
    int n_vertices = 0;

    friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
    std::string describe() const;
};

/// A nutshell: two triangles glued along two edges around a valence-2 vertex.
struct Nutshell {
    int tri_a = -1;
    int tri_b = -1;
    std::array<int, 2> internal_edges{-1, -1};
    int center_vertex = -1;
};

/// A triangular star: three triangles fanned around a valence-3 vertex.
struct TriangularStar {
    std::array<int, 3> tris{-1, -1, -1};   // ascending ids
    std::array<int, 3> internal_edges{-1, -1, -1};
    int center_vertex = -1;
};

class Triangulation {
public:
    // Closed-surface constructor: every slot must be matched exactly once.
    static std::shared_ptr<const Triangulation> build(
        int triangle_count, const std::vector<GluingSpec>& gluings,
        std::vector<long long> vertex_labels = {});

    // Variant used by brick builders: unmatched slots become boundary edges.
    static std::shared_ptr<const Triangulation> build_with_boundary(
        int triangle_count, const std::vector<GluingSpec>& gluings,
        std::vector<long long> vertex_labels = {});

    int triangle_count() const { return tri_count_; }
    int edge_count() const { return static_cast<int>(edge_first_.size()); }
    int vertex_count() const { return vertex_count_; }
    bool closed() const { return boundary_edge_count_ == 0; }
    int boundary_edge_count() const { return boundary_edge_count_; }

    int slot_index(Slot s) const { return 3 * s.tri + s.slot; }
    Slot partner(Slot s) const { return partner_[slot_index(s)]; }
    int gluing_bit(Slot s) const { return slot_bit_[slot_index(s)]; }
    bool is_boundary_slot(Slot s) const { return !partner_[slot_index(s)].valid(); }

    int edge_of(Slot s) const { return edge_of_slot_[slot_index(s)]; }
    Slot edge_slot(int e, int side) const { return side == 0 ? edge_first_[e] : edge_second_[e]; }
    bool edge_is_boundary(int e) const { return !edge_second_[e].valid(); }
    int edge_bit(int e) const { return edge_second_[e].valid() ? slot_bit_[slot_index(edge_first_[e])] : 0; }
    bool edge_is_trapped(int e) const {
        return edge_second_[e].valid() && edge_first_[e].tri == edge_second_[e].tri;
    }

    int vertex_of(Corner c) const { return vertex_of_corner_[3 * c.tri + c.corner]; }
    /// Endpoints of slot s, in intrinsic order (tail corner, head corner).
    std::array<Corner, 2> slot_endpoints(Slot s) const {
        return {Corner{s.tri, (s.slot + 1) % 3}, Corner{s.tri, (s.slot + 2) % 3}};
    }
    int vertex_valence(int v) const { return vertex_valence_[v]; }
    const std::vector<Corner>& corners_of_vertex(int v) const { return vertex_corners_[v]; }

    long long vertex_label(int v) const { return labels_[v]; }
    const std::vector<long long>& vertex_labels() const { return labels_; }
    long long max_label() const;

    int euler_characteristic() const { return euler_; }
    bool orientable() const { return orientable_; }
    /// Coherent orientation class: per-triangle sign, +1 on triangle 0.
    /// Empty when the surface is non-orientable.
    const std::vector<int>& orientation_signs() const { return orient_sign_; }

    /// Identical gluing tables and labels (not isomorphism).
    bool same_table(const Triangulation& other) const;

    std::vector<GluingSpec> gluing_list() const;

    friend class TriangulationRebuilder;

private:
    Triangulation() = default;
    static std::shared_ptr<const Triangulation> build_impl(
        int triangle_count, const std::vector<GluingSpec>& gluings,
        std::vector<long long> vertex_labels, bool allow_boundary);
    void derive();  // edges, vertices, euler, orientability

    int tri_count_ = 0;
    std::vector<Slot> partner_;      // per slot; invalid() when boundary
    std::vector<int> slot_bit_;      // per slot
    std::vector<int> edge_of_slot_;  // per slot
    std::vector<Slot> edge_first_;   // per edge, lexicographically least slot
    std::vector<Slot> edge_second_;  // per edge, partner or invalid
    std::vector<int> vertex_of_corner_;
    std::vector<int> vertex_valence_;
    std::vector<std::vector<Corner>> vertex_corners_;  // per vertex, discovery order
    std::vector<long long> labels_;
    std::vector<int> orient_sign_;
    int vertex_count_ = 0;
    int euler_ = 0;
    int boundary_edge_count_ = 0;
    bool orientable_ = false;
};

using TriPtr = std::shared_ptr<const Triangulation>;

SurfaceClass classify_surface(const Triangulation& t);

/// Edges whose two slots lie on the same triangle.
std::vector<int> trapped_edges(const Triangulation& t);

std::vector<Nutshell> find_nutshells(const Triangulation& t);
std::vector<TriangularStar> find_triangular_stars(const Triangulation& t);

/// Canonical byte string; equal iff the triangulations are combinatorially
/// isomorphic (respecting vertex labels when fix_vertex_labels is set).
std::string canonical_key(const Triangulation& t, bool fix_vertex_labels);

std::string hex_key(const std::string& key);

namespace detail {
/// Canonical key with optional per-slot direction bits appended (used for
/// branched keys).  slot_forward[3*tri+slot] holds whether the edge at that
/// slot runs along the slot's intrinsic direction.
std::string canonical_key_ex(const Triangulation& t, bool fix_vertex_labels,
                             const std::vector<char>* slot_forward);
}  // namespace detail

}  // namespace branchflip
