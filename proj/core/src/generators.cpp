#include "trilap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace trilap {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double weight_in_band(std::uint64_t& state) {
    return 0.5 + static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53;
}

} // namespace

double OffspringSpec::value(long n) const {
    double v = 1.0;
    switch (kind) {
    case Kind::PolynomialFloor:
        v = std::floor(std::pow(static_cast<double>(n), alpha)) + 1.0;
        break;
    case Kind::Geometric:
        v = std::max(1.0, std::floor(std::pow(ratio, static_cast<double>(n))));
        break;
    case Kind::Constant:
        v = static_cast<double>(constant_value);
        break;
    case Kind::Explicit:
        if (n < 0 || static_cast<std::size_t>(n) >= sequence.size())
            throw Error(ErrorKind::DepthExceeded,
                        "explicit offspring sequence has no index " + std::to_string(n));
        v = static_cast<double>(sequence[static_cast<std::size_t>(n)]);
        break;
    case Kind::Custom:
        v = callback(n);
        break;
    }
    if (!(v >= 1.0))
        throw Error(ErrorKind::OffspringNotRepresentable,
                    "off(" + std::to_string(n) + ") = " + std::to_string(v) + " < 1");
    return v;
}

long OffspringSpec::child_count(long n) const {
    double v = value(n);
    if (v > 1e15 || v != std::floor(v))
        throw Error(ErrorKind::OffspringNotRepresentable,
                    "off(" + std::to_string(n) + ") = " + std::to_string(v) +
                        " is not a materializable child count");
    return static_cast<long>(v);
}

OffspringSpec OffspringSpec::poly(double alpha) {
    OffspringSpec s;
    s.kind = Kind::PolynomialFloor;
    s.alpha = alpha;
    return s;
}

OffspringSpec OffspringSpec::geometric(double ratio) {
    OffspringSpec s;
    s.kind = Kind::Geometric;
    s.ratio = ratio;
    return s;
}

OffspringSpec OffspringSpec::constant(long k) {
    OffspringSpec s;
    s.kind = Kind::Constant;
    s.constant_value = k;
    return s;
}

OffspringSpec OffspringSpec::explicit_sequence(std::vector<long> seq) {
    OffspringSpec s;
    s.kind = Kind::Explicit;
    s.sequence = std::move(seq);
    return s;
}

OffspringSpec OffspringSpec::custom(std::function<double(long)> fn) {
    OffspringSpec s;
    s.kind = Kind::Custom;
    s.callback = std::move(fn);
    return s;
}

OffspringSpec OffspringSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (head == "poly") return poly(std::stod(tail));
        if (head == "geom") return geometric(std::stod(tail));
        if (head == "const") return constant(std::stol(tail));
        if (head == "explicit") {
            std::vector<long> seq;
            std::stringstream ss(tail);
            std::string item;
            while (std::getline(ss, item, ','))
                seq.push_back(std::stol(item));
            if (seq.empty()) throw std::invalid_argument("empty");
            return explicit_sequence(std::move(seq));
        }
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::SchemaError, "bad offspring value in '" + text + "'");
    }
    throw Error(ErrorKind::SchemaError, "unknown offspring spec '" + text + "'");
}

std::string OffspringSpec::describe() const {
    std::ostringstream out;
    switch (kind) {
    case Kind::PolynomialFloor: out << "poly:" << alpha; break;
    case Kind::Geometric: out << "geom:" << ratio; break;
    case Kind::Constant: out << "const:" << constant_value; break;
    case Kind::Explicit: {
        out << "explicit:";
        for (std::size_t i = 0; i < sequence.size(); ++i)
            out << (i ? "," : "") << sequence[i];
        break;
    }
    case Kind::Custom: out << "custom"; break;
    }
    return out.str();
}

Triangulation regular_patch(int degree, int radius) {
    if (degree != 6)
        throw Error(ErrorKind::SchemaError, "only the 6-regular lattice is implemented");
    if (radius < 1)
        throw Error(ErrorKind::SchemaError, "radius must be >= 1");

    // Axial coordinates of the triangular lattice; combinatorial distance to
    // the origin is the hex distance (|q| + |r| + |q+r|) / 2.
    auto hex_dist = [](long q, long r) {
        return (std::labs(q) + std::labs(r) + std::labs(q + r)) / 2;
    };
    std::map<std::pair<long, long>, VertexId> id_of;
    std::vector<std::pair<long, long>> coords;
    // Ring-by-ring enumeration keeps the origin at id 0 and makes ids stable.
    for (long d = 0; d <= radius; ++d)
        for (long q = -d; q <= d; ++q)
            for (long r = -d; r <= d; ++r)
                if (hex_dist(q, r) == d && !id_of.count({q, r})) {
                    id_of[{q, r}] = static_cast<VertexId>(coords.size());
                    coords.emplace_back(q, r);
                }

    TriangulationBuilder builder;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        builder.vertex(static_cast<VertexId>(i));
        long d = hex_dist(coords[i].first, coords[i].second);
        builder.set_layer(static_cast<VertexId>(i), static_cast<int>(d));
        if (d == radius) builder.mark_boundary(static_cast<VertexId>(i));
    }
    const std::array<std::pair<long, long>, 6> dirs{
        {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    for (std::size_t i = 0; i < coords.size(); ++i) {
        auto [q, r] = coords[i];
        for (const auto& [dq, dr] : dirs) {
            auto it = id_of.find({q + dq, r + dr});
            if (it != id_of.end() && it->second > static_cast<VertexId>(i))
                builder.edge(static_cast<VertexId>(i), it->second);
        }
    }
    builder.set_origin(0);
    return complete_triangles(builder.build());
}

Triangulation triangular_tree(const OffspringSpec& off, int depth, bool simple,
                              std::uint64_t weight_seed) {
    if (depth < 0)
        throw Error(ErrorKind::SchemaError, "depth must be >= 0");
    std::uint64_t state = weight_seed;
    auto vertex_w = [&]() { return simple ? 1.0 : weight_in_band(state); };

    TriangulationBuilder builder;
    builder.vertex(0, vertex_w());
    builder.set_layer(0, 0);
    builder.set_origin(0);

    std::vector<VertexId> current{0};
    VertexId next_id = 1;
    for (int n = 0; n < depth; ++n) {
        long children = off(n);
        std::vector<VertexId> next_sphere;
        next_sphere.reserve(current.size() * static_cast<std::size_t>(children));
        for (VertexId parent : current) {
            VertexId first = next_id;
            for (long k = 0; k < children; ++k) {
                VertexId child = next_id++;
                builder.vertex(child, vertex_w());
                builder.set_layer(child, n + 1);
                builder.edge(parent, child, simple ? 1.0 : weight_in_band(state));
                next_sphere.push_back(child);
            }
            // Children of one parent form a path; each consecutive pair spans
            // a face with the parent.
            for (VertexId c = first; c + 1 < next_id; ++c) {
                builder.edge(c, c + 1, simple ? 1.0 : weight_in_band(state));
                builder.face(parent, c, c + 1, simple ? 1.0 : weight_in_band(state));
            }
        }
        current = std::move(next_sphere);
    }
    for (VertexId v : current)
        builder.mark_boundary(v);
    return builder.build();
}

Triangulation layered_triangulation(const LayerSpec& spec, int depth) {
    if (depth < 0)
        throw Error(ErrorKind::SchemaError, "depth must be >= 0");
    if (spec.sizes.empty() || static_cast<std::size_t>(depth) >= spec.sizes.size())
        throw Error(ErrorKind::DepthExceeded,
                    "layer sizes cover " + std::to_string(spec.sizes.size()) + " layers");
    for (long s : spec.sizes)
        if (s <= 0) throw Error(ErrorKind::SchemaError, "layer sizes must be positive");

    TriangulationBuilder builder;
    std::vector<std::vector<VertexId>> layers(depth + 1);
    VertexId next_id = 0;
    for (int n = 0; n <= depth; ++n) {
        for (long k = 0; k < spec.sizes[n]; ++k) {
            VertexId v = next_id++;
            builder.vertex(v);
            builder.set_layer(v, n);
            if (n == depth) builder.mark_boundary(v);
            layers[n].push_back(v);
            if (k > 0) builder.edge(layers[n][k - 1], v); // layer path
        }
    }
    // Monotone staircase between consecutive layer paths; ties advance the
    // lower layer, which pins the diagonal orientation.
    for (int n = 0; n < depth; ++n) {
        const auto& a = layers[n];
        const auto& b = layers[n + 1];
        std::size_t i = 0, j = 0;
        builder.edge(a[0], b[0]);
        while (i + 1 < a.size() || j + 1 < b.size()) {
            double fa = static_cast<double>(i + 1) / static_cast<double>(a.size());
            double fb = static_cast<double>(j + 1) / static_cast<double>(b.size());
            if (i + 1 < a.size() && (j + 1 >= b.size() || fa <= fb))
                ++i;
            else
                ++j;
            builder.edge(a[i], b[j]);
        }
    }
    builder.set_origin(layers[0].front());
    return complete_triangles(builder.build());
}

Triangulation bipartite_layer_family(const std::vector<long>& even_sizes, int depth) {
    if (depth < 0)
        throw Error(ErrorKind::SchemaError, "depth must be >= 0");
    if (static_cast<std::size_t>(depth) >= even_sizes.size())
        throw Error(ErrorKind::DepthExceeded,
                    "even sphere sizes cover " + std::to_string(even_sizes.size()) + " spheres");
    for (long s : even_sizes)
        if (s <= 0) throw Error(ErrorKind::SchemaError, "sphere sizes must be positive");

    TriangulationBuilder builder;
    std::vector<std::vector<VertexId>> even(depth + 1);
    std::vector<std::array<VertexId, 2>> odd(depth);
    VertexId next_id = 0;
    for (int n = 0; n <= depth; ++n) {
        for (long k = 0; k < even_sizes[n]; ++k) {
            VertexId v = next_id++;
            builder.vertex(v);
            builder.set_layer(v, 2 * n);
            if (n == depth) builder.mark_boundary(v);
            even[n].push_back(v);
        }
        if (n < depth) {
            VertexId u = next_id++, w = next_id++;
            builder.vertex(u).vertex(w);
            builder.set_layer(u, 2 * n + 1);
            builder.set_layer(w, 2 * n + 1);
            builder.edge(u, w);
            odd[n] = {u, w};
        }
    }
    // Every odd-sphere edge sees the whole of both adjacent even spheres,
    // which is the apex multiplicity that reproduces the face-count
    // recurrence coefficients (#S_{2n+2} + 2 + i, #S_{2n}) in the L2 stencil.
    for (int n = 0; n < depth; ++n) {
        auto [u, w] = odd[n];
        for (VertexId x : even[n]) {
            builder.edge(u, x).edge(w, x);
            builder.face(u, w, x);
        }
        for (VertexId x : even[n + 1]) {
            builder.edge(u, x).edge(w, x);
            builder.face(u, w, x);
        }
    }
    builder.set_origin(even[0].front());
    return builder.build();
}

} // namespace trilap
