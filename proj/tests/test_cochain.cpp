#include <doctest.h>

#include <array>
#include <cmath>

#include "trilap/cochain.hpp"
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

// The factor-1/2 sum over all oriented edges, enumerated explicitly.
Cplx oriented_inner1(const Cochain1& a, const Cochain1& b) {
    const Triangulation& t = a.complex();
    Cplx acc = 0.0;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        EdgeKey k = t.edge_at(e);
        acc += t.edge_weight_at(e) * a(k.tail, k.head) * std::conj(b(k.tail, k.head));
        acc += t.edge_weight_at(e) * a(k.head, k.tail) * std::conj(b(k.head, k.tail));
    }
    return 0.5 * acc;
}

// The factor-1/6 sum over all six vertex orderings of every face.
Cplx oriented_inner2(const Cochain2& a, const Cochain2& b) {
    const Triangulation& t = a.complex();
    Cplx acc = 0.0;
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        auto v = t.face_at(f);
        const std::array<std::array<VertexId, 3>, 6> orderings{{{v[0], v[1], v[2]},
                                                                {v[1], v[2], v[0]},
                                                                {v[2], v[0], v[1]},
                                                                {v[1], v[0], v[2]},
                                                                {v[0], v[2], v[1]},
                                                                {v[2], v[1], v[0]}}};
        for (const auto& o : orderings)
            acc += t.face_weight_at(f) * a(o[0], o[1], o[2]) * std::conj(b(o[0], o[1], o[2]));
    }
    return acc / 6.0;
}

} // namespace

TEST_CASE("1-form evaluation is antisymmetric") {
    Triangulation t = unit_triangle();
    Cochain1 phi(t);
    phi.set(0, 1, Cplx(2.0, -1.0));
    CHECK(phi(1, 0) == -phi(0, 1));
    CHECK_THROWS_AS((void)phi(0, 7), Error);
}

TEST_CASE("2-form evaluation is alternating") {
    Triangulation t = unit_triangle();
    Cochain2 psi(t);
    psi.set(0, 1, 2, Cplx(3.0, 0.5));
    CHECK(psi(1, 2, 0) == psi(0, 1, 2));  // cyclic
    CHECK(psi(2, 0, 1) == psi(0, 1, 2));
    CHECK(psi(1, 0, 2) == -psi(0, 1, 2)); // odd permutation
    CHECK(psi(0, 2, 1) == -psi(0, 1, 2));
    CHECK(psi(2, 1, 0) == -psi(0, 1, 2));
}

TEST_CASE("eval antisymmetry holds exhaustively on a generated tree") {
    Triangulation tree = triangular_tree(OffspringSpec::constant(3), 2);
    Cochain2 psi = random_cochain2(tree, 5);
    for (std::size_t f = 0; f < tree.face_count(); ++f) {
        auto v = tree.face_at(f);
        CHECK(psi(v[1], v[2], v[0]) == psi(v[0], v[1], v[2]));
        CHECK(psi(v[1], v[0], v[2]) == -psi(v[0], v[1], v[2]));
    }
}

TEST_CASE("inner products on the unit triangle") {
    Triangulation t = unit_triangle();

    Cochain0 f(t);
    f.set(0, Cplx(1.0, 1.0));
    CHECK(inner0(f, f).real() > 0.0);
    Cochain0 zero(t);
    CHECK(inner0(zero, zero) == Cplx(0.0, 0.0));

    // phi = 1 on the three canonical edges: canonical sum is 3 and must agree
    // with the oriented factor-1/2 sum.
    Cochain1 phi(t);
    phi.coeffs().setConstant(Cplx(1.0, 0.0));
    CHECK(inner1(phi, phi) == Cplx(3.0, 0.0));
    CHECK(std::abs(inner1(phi, phi) - oriented_inner1(phi, phi)) < 1e-14);

    Cochain2 psi(t);
    psi.set(0, 1, 2, Cplx(1.0, 0.0));
    CHECK(inner2(psi, psi) == Cplx(1.0, 0.0));
    CHECK(std::abs(inner2(psi, psi) - oriented_inner2(psi, psi)) < 1e-14);
}

TEST_CASE("canonical sums equal the oriented factor sums on random data") {
    Triangulation patch = regular_patch(6, 2);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Cochain1 a = random_cochain1(patch, seed);
        Cochain1 b = random_cochain1(patch, seed + 50);
        Cplx fast = inner1(a, b), slow = oriented_inner1(a, b);
        CHECK(std::abs(fast - slow) <= 1e-12 * (1.0 + std::abs(slow)));

        Cochain2 c = random_cochain2(patch, seed + 100);
        Cochain2 d = random_cochain2(patch, seed + 150);
        Cplx fast2 = inner2(c, d), slow2 = oriented_inner2(c, d);
        CHECK(std::abs(fast2 - slow2) <= 1e-12 * (1.0 + std::abs(slow2)));
    }
}

TEST_CASE("Cauchy-Schwarz on random pairs") {
    Triangulation patch = regular_patch(6, 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Cochain1 a = random_cochain1(patch, seed);
        Cochain1 b = random_cochain1(patch, seed + 1000);
        double lhs = std::norm(inner1(a, b));
        double rhs = inner1(a, a).real() * inner1(b, b).real();
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("h_norm is the direct-sum norm") {
    Triangulation t = unit_triangle();
    TripleField zero{Cochain0(t), Cochain1(t), Cochain2(t)};
    CHECK(h_norm(zero) == 0.0);

    Cochain0 f = random_cochain0(t, 3);
    TripleField only_f{f, Cochain1(t), Cochain2(t)};
    CHECK(h_norm(only_f) == doctest::Approx(norm0(f)));

    TripleField random = random_triple(t, 17);
    double by_parts = inner0(random.f, random.f).real() +
                      inner1(random.phi, random.phi).real() +
                      inner2(random.psi, random.psi).real();
    CHECK(std::abs(h_norm(random) * h_norm(random) - by_parts) <= 1e-12 * (1.0 + by_parts));
}

TEST_CASE("random cochains are deterministic with exact support") {
    Triangulation patch = regular_patch(6, 2);

    Cochain1 empty = random_cochain1(patch, std::vector<EdgeKey>{}, 9);
    CHECK(empty.coeffs().cwiseAbs().maxCoeff() == 0.0);

    Cochain0 a = random_cochain0(patch, 123);
    Cochain0 b = random_cochain0(patch, 123);
    CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() == 0.0);
    Cochain0 c = random_cochain0(patch, 124);
    CHECK((a.coeffs() - c.coeffs()).cwiseAbs().maxCoeff() > 0.0);

    std::vector<VertexId> support{0, 3, 5};
    Cochain0 sparse = random_cochain0(patch, support, 7);
    std::size_t nonzeros = 0;
    for (std::size_t r = 0; r < patch.vertex_count(); ++r)
        if (sparse.coeffs()[r] != Cplx(0.0, 0.0)) ++nonzeros;
    CHECK(nonzeros == support.size());
}

TEST_CASE("inner products reject cochains from different complexes") {
    Triangulation a = unit_triangle();
    Triangulation b = unit_triangle();
    Cochain0 fa(a), fb(b);
    CHECK_THROWS_WITH_AS((void)inner0(fa, fb), doctest::Contains("ComplexMismatch"), Error);
}
