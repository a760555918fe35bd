#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trilap/error.hpp"

namespace trilap {

using VertexId = std::int64_t;

/// Oriented edge given by its endpoints, tail = e^-, head = e^+.
struct EdgeKey {
    VertexId tail;
    VertexId head;

    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Oriented triangular face. `vertices` is the canonical ascending triple
/// (in the complex's vertex ordering); `orientation` is +1 for the canonical
/// cyclic order and -1 for its reverse. All six vertex orderings of a
/// triangle collapse onto one of the two values.
struct FaceKey {
    std::array<VertexId, 3> vertices;
    int orientation = +1;

    friend bool operator==(const FaceKey&, const FaceKey&) = default;
};

/// Finite weighted triangulation: a connected loop-free graph with symmetric
/// oriented edges, triangular oriented faces, and positive weights c, r, s on
/// vertices, edges and faces. Immutable after construction; all queries are
/// safe for concurrent readers.
///
/// Storage is canonical: one undirected record per edge pair {e, -e} and one
/// record per face orbit. Orientation signs are reconstructed on access.
class Triangulation {
public:
    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    bool has_vertex(VertexId v) const { return rank_.count(v) != 0; }
    /// Position of `v` in the complex's vertex ordering (insertion order).
    std::size_t rank_of(VertexId v) const;
    VertexId vertex_at(std::size_t rank) const { return ids_.at(rank); }
    double vertex_weight(VertexId v) const { return c_.at(rank_of(v)); }
    double vertex_weight_at(std::size_t rank) const { return c_.at(rank); }

    bool has_edge(VertexId tail, VertexId head) const;
    double edge_weight(VertexId tail, VertexId head) const;
    double edge_weight_at(std::size_t edge) const { return edges_.at(edge).r; }
    /// Canonical index of the undirected pair {e,-e}; throws UnknownEdge.
    std::size_t edge_index(VertexId tail, VertexId head) const;
    /// +1 when (tail,head) is the stored orientation, -1 for the reverse.
    int edge_sign(VertexId tail, VertexId head) const;
    /// Stored orientation of edge `index`, tail rank < head rank.
    EdgeKey edge_at(std::size_t index) const;
    std::pair<std::size_t, std::size_t> edge_ranks(std::size_t index) const;

    std::size_t degree(VertexId v) const { return adjacency_.at(rank_of(v)).size(); }
    std::vector<VertexId> neighbors(VertexId v) const;
    /// Incident (neighbor rank, edge index) pairs, ascending neighbor rank.
    const std::vector<std::pair<std::size_t, std::size_t>>& star_at(std::size_t rank) const {
        return adjacency_.at(rank);
    }

    bool has_face(VertexId x, VertexId y, VertexId z) const;
    std::size_t face_index(VertexId x, VertexId y, VertexId z) const;
    /// Permutation parity of (x,y,z) relative to the canonical triple.
    int face_parity(VertexId x, VertexId y, VertexId z) const;
    double face_weight(VertexId x, VertexId y, VertexId z) const;
    double face_weight_at(std::size_t face) const { return faces_.at(face).s; }
    std::array<VertexId, 3> face_at(std::size_t index) const;
    const std::array<std::size_t, 3>& face_ranks(std::size_t index) const {
        return faces_.at(index).v;
    }

    /// F_e: apexes x with (e,x) a face. Order follows ascending apex rank.
    std::vector<VertexId> face_ring(VertexId tail, VertexId head) const;
    /// Ring as (apex rank, face index) pairs for edge `index`.
    const std::vector<std::pair<std::size_t, std::size_t>>& ring_at(std::size_t index) const {
        return rings_.at(index);
    }

    /// BFS shortest-path distance in the underlying graph.
    int comb_distance(VertexId x, VertexId y) const;
    std::vector<VertexId> sphere(VertexId origin, int n) const;
    std::vector<VertexId> ball(VertexId origin, int n) const;
    /// Distances from `origin` to every vertex, indexed by rank.
    std::vector<int> distances_from(VertexId origin) const;

    /// Oriented edges meeting both B and its complement (both orientations).
    std::vector<EdgeKey> edge_boundary(const std::vector<VertexId>& b) const;
    /// Canonical triples of faces with at least one edge in edge_boundary(B).
    std::vector<std::array<VertexId, 3>> face_boundary(const std::vector<VertexId>& b) const;

    // Generator metadata. Layers are sphere indices of a 1-dimensional
    // decomposition; boundary marks the truncation rim.
    bool has_layers() const { return !layer_.empty(); }
    int layer_of(VertexId v) const { return layer_.at(rank_of(v)); }
    int layer_at(std::size_t rank) const { return layer_.at(rank); }
    bool is_boundary(VertexId v) const { return !boundary_.empty() && boundary_.at(rank_of(v)); }
    bool is_boundary_at(std::size_t rank) const {
        return !boundary_.empty() && boundary_.at(rank);
    }
    std::optional<VertexId> origin() const { return origin_; }

private:
    friend class TriangulationBuilder;

    struct EdgeRec {
        std::size_t a, b; // ranks, a < b
        double r;
    };
    struct FaceRec {
        std::array<std::size_t, 3> v; // ranks, ascending
        double s;
    };

    static std::uint64_t pair_key(std::size_t a, std::size_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    }

    std::size_t edge_lookup(std::size_t a, std::size_t b) const; // a,b unordered
    const FaceRec* face_lookup(std::array<std::size_t, 3> sorted) const;

    std::vector<VertexId> ids_;
    std::unordered_map<VertexId, std::size_t> rank_;
    std::vector<double> c_;
    std::vector<EdgeRec> edges_;
    std::unordered_map<std::uint64_t, std::size_t> edge_map_;
    std::vector<FaceRec> faces_;
    std::unordered_map<std::uint64_t, std::size_t> face_map_; // keyed on (i,j) of two smallest + parity via third; see cpp
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rings_;

    std::vector<int> layer_;
    std::vector<bool> boundary_;
    std::optional<VertexId> origin_;
};

/// Staged construction with validation. Edge symmetry closure is automatic:
/// declaring (x,y) provides (y,x) with the same weight. Declaring both
/// orientations with different r is an error.
class TriangulationBuilder {
public:
    TriangulationBuilder& vertex(VertexId id, double c = 1.0);
    TriangulationBuilder& edge(VertexId tail, VertexId head, double r = 1.0);
    TriangulationBuilder& face(VertexId x, VertexId y, VertexId z, double s = 1.0);

    TriangulationBuilder& set_layer(VertexId id, int layer);
    TriangulationBuilder& mark_boundary(VertexId id);
    TriangulationBuilder& set_origin(VertexId id);

    /// Validates and freezes the complex. Throws Error with kinds
    /// NonPositiveWeight, LoopEdge, UnknownVertex, InconsistentWeight,
    /// DegenerateFace, MissingEdgeForFace, DisconnectedComplex.
    Triangulation build() const;

private:
    struct PendingEdge {
        VertexId tail, head;
        double r;
    };
    struct PendingFace {
        std::array<VertexId, 3> v;
        double s;
    };

    std::vector<std::pair<VertexId, double>> vertices_;
    std::vector<PendingEdge> edges_;
    std::vector<PendingFace> faces_;
    std::unordered_map<VertexId, int> layers_;
    std::unordered_set<VertexId> boundary_;
    std::optional<VertexId> origin_;
};

/// Returns a copy of `t` in which every 3-cycle of the underlying graph is a
/// face. Existing faces keep their weight; new faces get weight 1 unless a
/// callback is supplied.
Triangulation complete_triangles(
    const Triangulation& t,
    const std::function<double(VertexId, VertexId, VertexId)>& weight = {});

} // namespace trilap
