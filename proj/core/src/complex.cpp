#include "trilap/complex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace trilap {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::MissingEdgeForFace: return "MissingEdgeForFace";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::InconsistentWeight: return "InconsistentWeight";
    case ErrorKind::DisconnectedComplex: return "DisconnectedComplex";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::UnknownFace: return "UnknownFace";
    case ErrorKind::UnknownSimplex: return "UnknownSimplex";
    case ErrorKind::ComplexMismatch: return "ComplexMismatch";
    case ErrorKind::SupportNotFinite: return "SupportNotFinite";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::PartitionViolation: return "PartitionViolation";
    case ErrorKind::OffspringNotRepresentable: return "OffspringNotRepresentable";
    case ErrorKind::SummabilityFails: return "SummabilityFails";
    case ErrorKind::NoInteriorSimplices: return "NoInteriorSimplices";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Error";
}

namespace {

// Canonical faces are keyed by their sorted rank triple, packed into 63 bits.
// Caps the complex at 2^21 vertices, far beyond anything built here.
constexpr std::size_t kRankBits = 21;
constexpr std::size_t kMaxRanks = std::size_t{1} << kRankBits;

std::uint64_t triple_key(const std::array<std::size_t, 3>& v) {
    return (static_cast<std::uint64_t>(v[0]) << (2 * kRankBits)) |
           (static_cast<std::uint64_t>(v[1]) << kRankBits) | static_cast<std::uint64_t>(v[2]);
}

std::string simplex_str(VertexId a) {
    return "vertex " + std::to_string(a);
}
std::string simplex_str(VertexId a, VertexId b) {
    return "edge (" + std::to_string(a) + "," + std::to_string(b) + ")";
}
std::string simplex_str(VertexId a, VertexId b, VertexId c) {
    return "face (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

// Parity of the permutation taking (x,y,z) to ascending order.
int sort_parity(std::array<std::size_t, 3>& v) {
    int parity = 1;
    if (v[0] > v[1]) { std::swap(v[0], v[1]); parity = -parity; }
    if (v[1] > v[2]) { std::swap(v[1], v[2]); parity = -parity; }
    if (v[0] > v[1]) { std::swap(v[0], v[1]); parity = -parity; }
    return parity;
}

bool weight_ok(double w) {
    return std::isfinite(w) && w > 0.0;
}

} // namespace

std::size_t Triangulation::rank_of(VertexId v) const {
    auto it = rank_.find(v);
    if (it == rank_.end())
        throw Error(ErrorKind::UnknownVertex, simplex_str(v));
    return it->second;
}

std::size_t Triangulation::edge_lookup(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    auto it = edge_map_.find(pair_key(a, b));
    return it == edge_map_.end() ? edges_.size() : it->second;
}

bool Triangulation::has_edge(VertexId tail, VertexId head) const {
    if (!has_vertex(tail) || !has_vertex(head)) return false;
    return edge_lookup(rank_.at(tail), rank_.at(head)) != edges_.size();
}

std::size_t Triangulation::edge_index(VertexId tail, VertexId head) const {
    std::size_t idx = edge_lookup(rank_of(tail), rank_of(head));
    if (idx == edges_.size())
        throw Error(ErrorKind::UnknownEdge, simplex_str(tail, head));
    return idx;
}

double Triangulation::edge_weight(VertexId tail, VertexId head) const {
    return edges_.at(edge_index(tail, head)).r;
}

int Triangulation::edge_sign(VertexId tail, VertexId head) const {
    std::size_t a = rank_of(tail), b = rank_of(head);
    if (edge_lookup(a, b) == edges_.size())
        throw Error(ErrorKind::UnknownEdge, simplex_str(tail, head));
    return a < b ? +1 : -1;
}

EdgeKey Triangulation::edge_at(std::size_t index) const {
    const EdgeRec& e = edges_.at(index);
    return EdgeKey{ids_[e.a], ids_[e.b]};
}

std::pair<std::size_t, std::size_t> Triangulation::edge_ranks(std::size_t index) const {
    const EdgeRec& e = edges_.at(index);
    return {e.a, e.b};
}

std::vector<VertexId> Triangulation::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (const auto& [nbr, _] : adjacency_.at(rank_of(v)))
        out.push_back(ids_[nbr]);
    return out;
}

const Triangulation::FaceRec* Triangulation::face_lookup(std::array<std::size_t, 3> sorted) const {
    auto it = face_map_.find(triple_key(sorted));
    return it == face_map_.end() ? nullptr : &faces_[it->second];
}

bool Triangulation::has_face(VertexId x, VertexId y, VertexId z) const {
    if (!has_vertex(x) || !has_vertex(y) || !has_vertex(z)) return false;
    std::array<std::size_t, 3> v{rank_.at(x), rank_.at(y), rank_.at(z)};
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) return false;
    sort_parity(v);
    return face_map_.count(triple_key(v)) != 0;
}

std::size_t Triangulation::face_index(VertexId x, VertexId y, VertexId z) const {
    std::array<std::size_t, 3> v{rank_of(x), rank_of(y), rank_of(z)};
    sort_parity(v);
    auto it = face_map_.find(triple_key(v));
    if (it == face_map_.end())
        throw Error(ErrorKind::UnknownFace, simplex_str(x, y, z));
    return it->second;
}

int Triangulation::face_parity(VertexId x, VertexId y, VertexId z) const {
    std::array<std::size_t, 3> v{rank_of(x), rank_of(y), rank_of(z)};
    int parity = sort_parity(v);
    if (face_map_.count(triple_key(v)) == 0)
        throw Error(ErrorKind::UnknownFace, simplex_str(x, y, z));
    return parity;
}

double Triangulation::face_weight(VertexId x, VertexId y, VertexId z) const {
    return faces_.at(face_index(x, y, z)).s;
}

std::array<VertexId, 3> Triangulation::face_at(std::size_t index) const {
    const FaceRec& f = faces_.at(index);
    return {ids_[f.v[0]], ids_[f.v[1]], ids_[f.v[2]]};
}

std::vector<VertexId> Triangulation::face_ring(VertexId tail, VertexId head) const {
    std::vector<VertexId> out;
    for (const auto& [apex, _] : rings_.at(edge_index(tail, head)))
        out.push_back(ids_[apex]);
    return out;
}

std::vector<int> Triangulation::distances_from(VertexId origin) const {
    std::vector<int> dist(vertex_count(), -1);
    std::deque<std::size_t> queue;
    dist[rank_of(origin)] = 0;
    queue.push_back(rank_of(origin));
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (const auto& [w, _] : adjacency_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int Triangulation::comb_distance(VertexId x, VertexId y) const {
    std::size_t target = rank_of(y);
    return distances_from(x)[target]; // connected by construction, never -1
}

std::vector<VertexId> Triangulation::sphere(VertexId origin, int n) const {
    std::vector<int> dist = distances_from(origin);
    std::vector<VertexId> out;
    for (std::size_t r = 0; r < dist.size(); ++r)
        if (dist[r] == n) out.push_back(ids_[r]);
    return out;
}

std::vector<VertexId> Triangulation::ball(VertexId origin, int n) const {
    std::vector<int> dist = distances_from(origin);
    std::vector<VertexId> out;
    for (std::size_t r = 0; r < dist.size(); ++r)
        if (dist[r] <= n) out.push_back(ids_[r]);
    return out;
}

std::vector<EdgeKey> Triangulation::edge_boundary(const std::vector<VertexId>& b) const {
    std::vector<bool> in(vertex_count(), false);
    for (VertexId v : b) in[rank_of(v)] = true;
    std::vector<EdgeKey> out;
    for (const EdgeRec& e : edges_) {
        if (in[e.a] != in[e.b]) {
            out.push_back({ids_[e.a], ids_[e.b]});
            out.push_back({ids_[e.b], ids_[e.a]});
        }
    }
    return out;
}

std::vector<std::array<VertexId, 3>> Triangulation::face_boundary(
    const std::vector<VertexId>& b) const {
    std::vector<bool> in(vertex_count(), false);
    for (VertexId v : b) in[rank_of(v)] = true;
    std::vector<std::array<VertexId, 3>> out;
    for (const FaceRec& f : faces_) {
        bool crossing = (in[f.v[0]] != in[f.v[1]]) || (in[f.v[1]] != in[f.v[2]]) ||
                        (in[f.v[0]] != in[f.v[2]]);
        if (crossing) out.push_back({ids_[f.v[0]], ids_[f.v[1]], ids_[f.v[2]]});
    }
    return out;
}

TriangulationBuilder& TriangulationBuilder::vertex(VertexId id, double c) {
    vertices_.emplace_back(id, c);
    return *this;
}

TriangulationBuilder& TriangulationBuilder::edge(VertexId tail, VertexId head, double r) {
    edges_.push_back({tail, head, r});
    return *this;
}

TriangulationBuilder& TriangulationBuilder::face(VertexId x, VertexId y, VertexId z, double s) {
    faces_.push_back({{x, y, z}, s});
    return *this;
}

TriangulationBuilder& TriangulationBuilder::set_layer(VertexId id, int layer) {
    layers_[id] = layer;
    return *this;
}

TriangulationBuilder& TriangulationBuilder::mark_boundary(VertexId id) {
    boundary_.insert(id);
    return *this;
}

TriangulationBuilder& TriangulationBuilder::set_origin(VertexId id) {
    origin_ = id;
    return *this;
}

Triangulation TriangulationBuilder::build() const {
    Triangulation t;

    for (const auto& [id, c] : vertices_) {
        if (t.rank_.count(id))
            throw Error(ErrorKind::InconsistentWeight, "duplicate " + simplex_str(id));
        if (!weight_ok(c))
            throw Error(ErrorKind::NonPositiveWeight, simplex_str(id) + " has c = " + std::to_string(c));
        t.rank_[id] = t.ids_.size();
        t.ids_.push_back(id);
        t.c_.push_back(c);
    }
    if (t.ids_.empty())
        throw Error(ErrorKind::SchemaError, "empty vertex set");
    if (t.ids_.size() >= kMaxRanks)
        throw Error(ErrorKind::SchemaError, "vertex count exceeds canonical key capacity");

    // Symmetric closure: (x,y) and (y,x) name the same record; r must agree.
    struct Pending { std::size_t a, b; double r; };
    std::unordered_map<std::uint64_t, double> seen;
    for (const PendingEdge& e : edges_) {
        if (e.tail == e.head)
            throw Error(ErrorKind::LoopEdge, simplex_str(e.tail, e.head));
        if (!t.rank_.count(e.tail))
            throw Error(ErrorKind::UnknownVertex, simplex_str(e.tail));
        if (!t.rank_.count(e.head))
            throw Error(ErrorKind::UnknownVertex, simplex_str(e.head));
        if (!weight_ok(e.r))
            throw Error(ErrorKind::NonPositiveWeight,
                        simplex_str(e.tail, e.head) + " has r = " + std::to_string(e.r));
        std::size_t a = t.rank_.at(e.tail), b = t.rank_.at(e.head);
        if (a > b) std::swap(a, b);
        auto key = Triangulation::pair_key(a, b);
        auto [it, inserted] = seen.emplace(key, e.r);
        if (!inserted && it->second != e.r)
            throw Error(ErrorKind::InconsistentWeight,
                        simplex_str(e.tail, e.head) + " declared with r = " +
                            std::to_string(e.r) + " and r = " + std::to_string(it->second));
    }
    std::vector<Pending> pending;
    pending.reserve(seen.size());
    for (const auto& [key, r] : seen)
        pending.push_back({static_cast<std::size_t>(key >> 32),
                           static_cast<std::size_t>(key & 0xffffffffu), r});
    std::sort(pending.begin(), pending.end(),
              [](const Pending& l, const Pending& rgt) {
                  return std::tie(l.a, l.b) < std::tie(rgt.a, rgt.b);
              });
    t.adjacency_.resize(t.ids_.size());
    for (const Pending& p : pending) {
        std::size_t idx = t.edges_.size();
        t.edges_.push_back({p.a, p.b, p.r});
        t.edge_map_[Triangulation::pair_key(p.a, p.b)] = idx;
        t.adjacency_[p.a].emplace_back(p.b, idx);
        t.adjacency_[p.b].emplace_back(p.a, idx);
    }
    for (auto& star : t.adjacency_)
        std::sort(star.begin(), star.end());

    // Faces canonicalize to the ascending rank triple; s carries no parity.
    std::unordered_map<std::uint64_t, double> face_seen;
    for (const PendingFace& f : faces_) {
        std::array<std::size_t, 3> v;
        for (int i = 0; i < 3; ++i) {
            if (!t.rank_.count(f.v[i]))
                throw Error(ErrorKind::UnknownVertex, simplex_str(f.v[i]));
            v[i] = t.rank_.at(f.v[i]);
        }
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
            throw Error(ErrorKind::DegenerateFace, simplex_str(f.v[0], f.v[1], f.v[2]));
        if (!weight_ok(f.s))
            throw Error(ErrorKind::NonPositiveWeight,
                        simplex_str(f.v[0], f.v[1], f.v[2]) + " has s = " + std::to_string(f.s));
        sort_parity(v);
        for (int i = 0; i < 3; ++i) {
            std::size_t a = v[i], b = v[(i + 1) % 3];
            if (a > b) std::swap(a, b);
            if (!t.edge_map_.count(Triangulation::pair_key(a, b)))
                throw Error(ErrorKind::MissingEdgeForFace,
                            simplex_str(f.v[0], f.v[1], f.v[2]) + " needs " +
                                simplex_str(t.ids_[a], t.ids_[b]));
        }
        auto [it, inserted] = face_seen.emplace(triple_key(v), f.s);
        if (!inserted && it->second != f.s)
            throw Error(ErrorKind::InconsistentWeight,
                        simplex_str(f.v[0], f.v[1], f.v[2]) + " declared with two weights");
    }
    {
        std::vector<std::pair<std::uint64_t, double>> ordered(face_seen.begin(), face_seen.end());
        std::sort(ordered.begin(), ordered.end());
        t.rings_.resize(t.edges_.size());
        for (const auto& [key, s] : ordered) {
            std::array<std::size_t, 3> v{
                static_cast<std::size_t>(key >> (2 * kRankBits)) & (kMaxRanks - 1),
                static_cast<std::size_t>(key >> kRankBits) & (kMaxRanks - 1),
                static_cast<std::size_t>(key) & (kMaxRanks - 1)};
            std::size_t idx = t.faces_.size();
            t.faces_.push_back({v, s});
            t.face_map_[key] = idx;
            t.rings_[t.edge_map_.at(Triangulation::pair_key(v[0], v[1]))].emplace_back(v[2], idx);
            t.rings_[t.edge_map_.at(Triangulation::pair_key(v[1], v[2]))].emplace_back(v[0], idx);
            t.rings_[t.edge_map_.at(Triangulation::pair_key(v[0], v[2]))].emplace_back(v[1], idx);
        }
        for (auto& ring : t.rings_)
            std::sort(ring.begin(), ring.end());
    }

    // Connectivity is a hard validation error: operators on disconnected
    // complexes would silently change spectral claims.
    {
        std::vector<bool> seen_v(t.ids_.size(), false);
        std::deque<std::size_t> queue{0};
        seen_v[0] = true;
        std::size_t reached = 1;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (const auto& [w, _] : t.adjacency_[u]) {
                if (!seen_v[w]) {
                    seen_v[w] = true;
                    ++reached;
                    queue.push_back(w);
                }
            }
        }
        if (reached != t.ids_.size()) {
            std::size_t witness = 0;
            while (seen_v[witness]) ++witness;
            throw Error(ErrorKind::DisconnectedComplex,
                        simplex_str(t.ids_[witness]) + " unreachable from " + simplex_str(t.ids_[0]));
        }
    }

    if (!layers_.empty()) {
        t.layer_.assign(t.ids_.size(), -1);
        for (const auto& [id, layer] : layers_) {
            if (!t.rank_.count(id)) throw Error(ErrorKind::UnknownVertex, simplex_str(id));
            t.layer_[t.rank_.at(id)] = layer;
        }
    }
    if (!boundary_.empty()) {
        t.boundary_.assign(t.ids_.size(), false);
        for (VertexId id : boundary_) {
            if (!t.rank_.count(id)) throw Error(ErrorKind::UnknownVertex, simplex_str(id));
            t.boundary_[t.rank_.at(id)] = true;
        }
    }
    if (origin_) {
        if (!t.rank_.count(*origin_)) throw Error(ErrorKind::UnknownVertex, simplex_str(*origin_));
        t.origin_ = origin_;
    }
    return t;
}

Triangulation complete_triangles(
    const Triangulation& t, const std::function<double(VertexId, VertexId, VertexId)>& weight) {
    TriangulationBuilder builder;
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        builder.vertex(t.vertex_at(r), t.vertex_weight_at(r));
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        EdgeKey key = t.edge_at(e);
        builder.edge(key.tail, key.head, t.edge_weight_at(e));
    }
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        auto v = t.face_at(f);
        builder.face(v[0], v[1], v[2], t.face_weight_at(f));
    }
    // Enumerate 3-cliques a < b < c through sorted star intersection.
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        const auto& star_a = t.star_at(a);
        const auto& star_b = t.star_at(b);
        std::size_t i = 0, j = 0;
        while (i < star_a.size() && j < star_b.size()) {
            if (star_a[i].first < star_b[j].first) ++i;
            else if (star_b[j].first < star_a[i].first) ++j;
            else {
                std::size_t c = star_a[i].first;
                if (c > b) {
                    VertexId x = t.vertex_at(a), y = t.vertex_at(b), z = t.vertex_at(c);
                    if (!t.has_face(x, y, z))
                        builder.face(x, y, z, weight ? weight(x, y, z) : 1.0);
                }
                ++i;
                ++j;
            }
        }
    }
    for (std::size_t r = 0; r < t.vertex_count(); ++r) {
        if (t.has_layers()) builder.set_layer(t.vertex_at(r), t.layer_at(r));
        if (t.is_boundary_at(r)) builder.mark_boundary(t.vertex_at(r));
    }
    if (t.origin()) builder.set_origin(*t.origin());
    return builder.build();
}

} // namespace trilap
