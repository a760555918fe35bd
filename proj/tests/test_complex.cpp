#include <doctest.h>

#include <algorithm>
#include <set>

#include "trilap/complex.hpp"
#include "trilap/generators.hpp"

using namespace trilap;

namespace {

Triangulation unit_triangle() {
    return TriangulationBuilder{}
        .vertex(0)
        .vertex(1)
        .vertex(2)
        .edge(0, 1)
        .edge(1, 2)
        .edge(2, 0)
        .face(0, 1, 2)
        .build();
}

// Independent 3-clique count by scanning all vertex triples.
std::size_t brute_force_triangles(const Triangulation& t) {
    std::size_t count = 0;
    for (std::size_t a = 0; a < t.vertex_count(); ++a)
        for (std::size_t b = a + 1; b < t.vertex_count(); ++b)
            for (std::size_t c = b + 1; c < t.vertex_count(); ++c) {
                VertexId x = t.vertex_at(a), y = t.vertex_at(b), z = t.vertex_at(c);
                if (t.has_edge(x, y) && t.has_edge(y, z) && t.has_edge(x, z)) ++count;
            }
    return count;
}

} // namespace

TEST_CASE("single triangle builds with canonical storage") {
    Triangulation t = unit_triangle();
    CHECK(t.vertex_count() == 3);
    CHECK(t.edge_count() == 3); // three canonical pairs = six oriented edges
    CHECK(t.face_count() == 1);
    // Symmetric closure: both orientations resolve, with equal weight.
    CHECK(t.has_edge(1, 0));
    CHECK(t.edge_weight(0, 1) == t.edge_weight(1, 0));
    CHECK(t.edge_sign(0, 1) == +1);
    CHECK(t.edge_sign(1, 0) == -1);
}

TEST_CASE("face permutations collapse onto one canonical representative") {
    Triangulation t = unit_triangle();
    CHECK(t.face_parity(0, 1, 2) == +1);
    CHECK(t.face_parity(1, 2, 0) == +1);
    CHECK(t.face_parity(2, 0, 1) == +1);
    CHECK(t.face_parity(1, 0, 2) == -1);
    CHECK(t.face_parity(0, 2, 1) == -1);
    CHECK(t.face_parity(2, 1, 0) == -1);
    CHECK(t.face_index(2, 0, 1) == t.face_index(0, 1, 2));
}

TEST_CASE("build rejects malformed input") {
    CHECK_THROWS_WITH_AS(TriangulationBuilder{}.vertex(0).vertex(1).edge(0, 0).build(),
                         doctest::Contains("LoopEdge"), Error);
    CHECK_THROWS_WITH_AS(TriangulationBuilder{}.vertex(0).vertex(1).edge(0, 1, -2.0).build(),
                         doctest::Contains("NonPositiveWeight"), Error);
    // Face over a missing edge.
    CHECK_THROWS_WITH_AS(TriangulationBuilder{}
                             .vertex(0)
                             .vertex(1)
                             .vertex(2)
                             .edge(0, 1)
                             .edge(1, 2)
                             .face(0, 1, 2)
                             .build(),
                         doctest::Contains("MissingEdgeForFace"), Error);
    // Two disjoint triangles.
    TriangulationBuilder two;
    for (VertexId v = 0; v < 6; ++v) two.vertex(v);
    two.edge(0, 1).edge(1, 2).edge(2, 0).edge(3, 4).edge(4, 5).edge(5, 3);
    CHECK_THROWS_WITH_AS(two.build(), doctest::Contains("DisconnectedComplex"), Error);
    // Conflicting weights for the two orientations of one edge.
    CHECK_THROWS_WITH_AS(
        TriangulationBuilder{}.vertex(0).vertex(1).edge(0, 1, 1.0).edge(1, 0, 2.0).build(),
        doctest::Contains("InconsistentWeight"), Error);
}

TEST_CASE("complete_triangles closes K4 and is idempotent") {
    TriangulationBuilder k4;
    for (VertexId v = 0; v < 4; ++v) k4.vertex(v);
    for (VertexId a = 0; a < 4; ++a)
        for (VertexId b = a + 1; b < 4; ++b) k4.edge(a, b);
    Triangulation bare = k4.build();
    CHECK(bare.face_count() == 0);

    Triangulation closed = complete_triangles(bare);
    CHECK(closed.face_count() == 4);
    CHECK(closed.face_count() == brute_force_triangles(closed));

    Triangulation again = complete_triangles(closed);
    CHECK(again.face_count() == closed.face_count());
}

TEST_CASE("complete_triangles keeps existing weights") {
    Triangulation t = TriangulationBuilder{}
                          .vertex(0)
                          .vertex(1)
                          .vertex(2)
                          .edge(0, 1)
                          .edge(1, 2)
                          .edge(2, 0)
                          .face(0, 1, 2, 7.0)
                          .build();
    Triangulation closed = complete_triangles(t);
    CHECK(closed.face_count() == 1);
    CHECK(closed.face_weight(0, 1, 2) == 7.0);
}

TEST_CASE("face_ring") {
    Triangulation t = unit_triangle();
    CHECK(t.face_ring(0, 1) == std::vector<VertexId>{2});

    Triangulation patch = regular_patch(6, 2);
    // Every edge incident to the origin is interior and carries two faces.
    for (VertexId nbr : patch.neighbors(0))
        CHECK(patch.face_ring(0, nbr).size() == 2);

    // Tree path edges carry no face at all.
    Triangulation path = triangular_tree(OffspringSpec::constant(1), 3);
    CHECK(path.face_count() == 0);
    CHECK(path.face_ring(0, 1).empty());

    CHECK_THROWS_AS((void)t.face_ring(0, 5), Error);
}

TEST_CASE("face_ring is the common neighborhood on triangle-complete complexes") {
    Triangulation patch = regular_patch(6, 2);
    for (std::size_t e = 0; e < patch.edge_count(); ++e) {
        EdgeKey k = patch.edge_at(e);
        auto na = patch.neighbors(k.tail);
        auto nb = patch.neighbors(k.head);
        std::set<VertexId> common(na.begin(), na.end());
        std::set<VertexId> both;
        for (VertexId x : nb)
            if (common.count(x)) both.insert(x);
        std::set<VertexId> ring;
        for (VertexId x : patch.face_ring(k.tail, k.head)) ring.insert(x);
        CHECK(ring == both);
    }
}

TEST_CASE("comb_distance, sphere, ball") {
    Triangulation t = unit_triangle();
    CHECK(t.comb_distance(0, 0) == 0);
    CHECK(t.comb_distance(0, 2) == 1);

    Triangulation tree = triangular_tree(OffspringSpec::constant(2), 3);
    // The generator's layer metadata is the oracle for BFS distances.
    for (std::size_t r = 0; r < tree.vertex_count(); ++r)
        CHECK(tree.comb_distance(0, tree.vertex_at(r)) == tree.layer_at(tree.vertex_at(r)));
    CHECK(tree.sphere(0, 3).size() == 8);
    CHECK(tree.ball(0, 1).size() == 3);

    CHECK_THROWS_AS((void)t.comb_distance(0, 99), Error);
}

TEST_CASE("comb_distance satisfies the triangle inequality") {
    Triangulation patch = regular_patch(6, 2);
    std::uint64_t state = 9001;
    auto next = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::size_t>(state >> 33) % patch.vertex_count();
    };
    for (int trial = 0; trial < 200; ++trial) {
        VertexId x = patch.vertex_at(next()), y = patch.vertex_at(next()),
                 z = patch.vertex_at(next());
        CHECK(patch.comb_distance(x, z) <=
              patch.comb_distance(x, y) + patch.comb_distance(y, z));
    }
}

TEST_CASE("edge and face boundaries on the unit triangle") {
    Triangulation t = unit_triangle();
    std::vector<VertexId> all{0, 1, 2};
    CHECK(t.edge_boundary(all).empty());
    CHECK(t.face_boundary(all).empty());

    std::vector<EdgeKey> cut = t.edge_boundary({0});
    CHECK(cut.size() == 4); // both orientations of (0,1) and (0,2)
    std::set<std::pair<VertexId, VertexId>> expect{{0, 1}, {1, 0}, {0, 2}, {2, 0}};
    std::set<std::pair<VertexId, VertexId>> got;
    for (const EdgeKey& e : cut) got.insert({e.tail, e.head});
    CHECK(got == expect);
    CHECK(t.face_boundary({0}).size() == 1);
}

TEST_CASE("edge_boundary agrees with a direct scan and with the complement") {
    Triangulation patch = regular_patch(6, 2);
    std::vector<VertexId> b = patch.ball(0, 1);
    std::set<VertexId> in_b(b.begin(), b.end());

    std::size_t expected = 0;
    for (std::size_t e = 0; e < patch.edge_count(); ++e) {
        EdgeKey k = patch.edge_at(e);
        if (in_b.count(k.tail) != in_b.count(k.head)) expected += 2;
    }
    CHECK(patch.edge_boundary(b).size() == expected);

    std::vector<VertexId> complement;
    for (std::size_t r = 0; r < patch.vertex_count(); ++r)
        if (!in_b.count(patch.vertex_at(r))) complement.push_back(patch.vertex_at(r));
    auto as_set = [](const std::vector<EdgeKey>& edges) {
        std::set<std::pair<VertexId, VertexId>> out;
        for (const EdgeKey& e : edges) out.insert({e.tail, e.head});
        return out;
    };
    CHECK(as_set(patch.edge_boundary(b)) == as_set(patch.edge_boundary(complement)));

    std::size_t faces = 0;
    for (std::size_t f = 0; f < patch.face_count(); ++f) {
        auto v = patch.face_at(f);
        bool crossing = in_b.count(v[0]) != in_b.count(v[1]) ||
                        in_b.count(v[1]) != in_b.count(v[2]) ||
                        in_b.count(v[0]) != in_b.count(v[2]);
        if (crossing) ++faces;
    }
    CHECK(patch.face_boundary(b).size() == faces);
}

TEST_CASE("every stored face has its three edges present") {
    Triangulation patch = regular_patch(6, 3);
    for (std::size_t f = 0; f < patch.face_count(); ++f) {
        auto v = patch.face_at(f);
        CHECK(patch.has_edge(v[0], v[1]));
        CHECK(patch.has_edge(v[1], v[2]));
        CHECK(patch.has_edge(v[0], v[2]));
    }
}
