#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "trilap/completeness.hpp"
#include "trilap/operators.hpp"

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

} // namespace

TEST_CASE("bounded_degree_cutoff ramp endpoints and slope bound") {
    Triangulation patch = regular_patch(6, 9);
    for (int n : {2, 3, 4}) {
        Cochain0 chi = bounded_degree_cutoff(patch, 0, n);
        for (std::size_t r = 0; r < patch.vertex_count(); ++r) {
            double value = chi.coeffs()[r].real();
            int d = patch.comb_distance(0, patch.vertex_at(r));
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
            if (d <= n) CHECK(value == 1.0);
            if (d >= 2 * n) CHECK(value == 0.0);
        }
        // |d0 chi(e)| <= 1/n on every edge.
        Cochain1 dchi = d0(chi);
        CHECK(dchi.coeffs().cwiseAbs().maxCoeff() <= 1.0 / n + 1e-15);
    }
}

TEST_CASE("measured cut-off constants obey the bounded-degree bounds") {
    // lambda = 6 on the regular patch: C <= 6/n^2 and M <= 12/n^2.
    Triangulation patch = regular_patch(6, 9);
    for (int n : {2, 3, 4}) {
        Cochain0 chi = bounded_degree_cutoff(patch, 0, n);
        double c = graph_constant(chi);
        double m = face_constant(chi);
        CHECK(c > 0.0);
        CHECK(c <= 6.0 / (n * n) + 1e-12);
        CHECK(m > 0.0);
        CHECK(m <= 12.0 / (n * n) + 1e-12);
    }
}

TEST_CASE("graph_constant of simple examples") {
    Triangulation t = unit_triangle();
    Cochain0 constant(t);
    constant.coeffs().setConstant(Cplx(0.7, 0.0));
    CHECK(graph_constant(constant) == 0.0);
    CHECK(face_constant(constant) == 0.0);

    // Indicator of one vertex: two unit contributions at that vertex.
    Cochain0 ind(t);
    ind.set(0, 1.0);
    CHECK(graph_constant(ind) == doctest::Approx(2.0));
}

TEST_CASE("series_cutoff: unit denominators give the slope-one ramp") {
    Triangulation patch = regular_patch(6, 6);
    Cochain0 chi = series_cutoff(patch, 0, 2, [](long) { return 1.0; });
    for (std::size_t r = 0; r < patch.vertex_count(); ++r) {
        int d = patch.comb_distance(0, patch.vertex_at(r));
        double expected = d <= 2 ? 1.0 : std::max(0.0, 1.0 - (d - 2));
        CHECK(chi.coeffs()[r].real() == doctest::Approx(expected));
    }
}

TEST_CASE("series_cutoff support radius matches the partial-sum scan") {
    OffspringSpec off = OffspringSpec::poly(2.0);
    Triangulation tree = triangular_tree(off, 5);
    Cochain0 chi = series_cutoff(tree, 0, 2, [&](long k) { return off.value(k); });

    // Oracle: smallest m with sum_{k=2}^{m-1} off(k)^{-1/2} >= 1.
    int expected_radius = 2;
    double acc = 0.0;
    while (acc < 1.0) {
        acc += 1.0 / std::sqrt(off.value(expected_radius));
        ++expected_radius;
    }
    CHECK(expected_radius == 5);

    for (std::size_t r = 0; r < tree.vertex_count(); ++r) {
        int d = tree.layer_at(tree.vertex_at(r));
        if (d >= expected_radius) CHECK(chi.coeffs()[r] == Cplx(0.0, 0.0));
        if (d < expected_radius && d > 2) CHECK(chi.coeffs()[r].real() > 0.0);
        if (d <= 2) CHECK(chi.coeffs()[r] == Cplx(1.0, 0.0));
    }

    // chi is constant on spheres.
    std::map<int, Cplx> seen;
    for (std::size_t r = 0; r < tree.vertex_count(); ++r) {
        int d = tree.layer_at(tree.vertex_at(r));
        auto [it, inserted] = seen.emplace(d, chi.coeffs()[r]);
        if (!inserted) CHECK(it->second == chi.coeffs()[r]);
    }

    // Too shallow a truncation cannot certify finite support.
    Triangulation shallow = triangular_tree(off, 3);
    CHECK_THROWS_WITH_AS(
        series_cutoff(shallow, 0, 2, [&](long k) { return off.value(k); }),
        doctest::Contains("SupportNotFinite"), Error);
}

TEST_CASE("tree cut-off face bounds per sphere") {
    OffspringSpec off = OffspringSpec::poly(2.0);
    Triangulation tree = triangular_tree(off, 5);
    Cochain0 chi = series_cutoff(tree, 0, 2, [&](long k) { return off.value(k); });

    // Intra-sphere edges in S_m^2 see only the parent apex:
    // the face term is bounded by 4/off(m-1).
    for (std::size_t e = 0; e < tree.edge_count(); ++e) {
        EdgeKey k = tree.edge_at(e);
        int la = tree.layer_of(k.tail), lb = tree.layer_of(k.head);
        if (la != lb || la == 0) continue;
        double acc = 0.0;
        auto [ra, rb] = tree.edge_ranks(e);
        for (const auto& [w, f] : tree.ring_at(e)) {
            Cplx stencil = 2.0 * chi.coeffs()[w] - chi.coeffs()[ra] - chi.coeffs()[rb];
            acc += tree.face_weight_at(f) * std::norm(stencil);
        }
        CHECK(acc <= 4.0 / off.value(la - 1) + 1e-12);
    }
}

TEST_CASE("d0 chi vanishes on edges meeting the inner ball") {
    Triangulation patch = regular_patch(6, 9);
    int n = 3;
    Cochain0 chi = bounded_degree_cutoff(patch, 0, n);
    Cochain1 dchi = d0(chi);
    for (std::size_t e = 0; e < patch.edge_count(); ++e) {
        EdgeKey k = patch.edge_at(e);
        if (patch.comb_distance(0, k.tail) <= n - 1 || patch.comb_distance(0, k.head) <= n - 1)
            CHECK(std::abs(dchi.coeffs()[e]) == 0.0);
    }
}

TEST_CASE("offspring ratios on generated trees") {
    Triangulation two = triangular_tree(OffspringSpec::constant(2), 4);
    for (int n = 0; n < 4; ++n) {
        Rational r = offspring(two, n);
        CHECK(r.num == 2);
        CHECK(r.den == 1);
    }

    Triangulation poly = triangular_tree(OffspringSpec::poly(2.0), 4);
    Rational level3 = offspring(poly, 3);
    CHECK(level3.num == 10); // floor(3^2) + 1
    CHECK(level3.den == 1);

    CHECK_THROWS_WITH_AS(offspring(two, 9), doctest::Contains("DepthExceeded"), Error);
    CHECK(uniform_child_count(two));
    CHECK(uniform_child_count(poly));
}

TEST_CASE("offspring_verdict closed forms") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        CompletenessVerdict v = offspring_verdict(OffspringSpec::poly(alpha));
        CHECK(v.status == VerdictStatus::Complete);
        CHECK(v.rule == "alpha<=2");
    }
    for (double alpha : {2.01, 3.0}) {
        CompletenessVerdict v = offspring_verdict(OffspringSpec::poly(alpha));
        CHECK(v.status == VerdictStatus::Incomplete);
        CHECK(v.rule == "alpha>2");
    }
    CHECK(offspring_verdict(OffspringSpec::constant(4)).status == VerdictStatus::Complete);
    CHECK(offspring_verdict(OffspringSpec::geometric(1.5)).status == VerdictStatus::Incomplete);
    CompletenessVerdict expl =
        offspring_verdict(OffspringSpec::explicit_sequence({1, 2, 5, 10, 17}));
    CHECK(expl.status == VerdictStatus::Unknown);
    CHECK_FALSE(expl.partial_sums.empty());
}

TEST_CASE("degree_quantities on the off = 2 tree") {
    Triangulation tree = triangular_tree(OffspringSpec::constant(2), 3);
    DegreeReport rep = degree_quantities(tree);

    for (std::size_t r = 0; r < tree.vertex_count(); ++r) {
        if (tree.layer_at(tree.vertex_at(r)) != 1) continue;
        CHECK(rep.deg_plus[r] == doctest::Approx(2.0));  // two children
        CHECK(rep.deg_minus[r] == doctest::Approx(1.0)); // unique parent
        CHECK(rep.deg_zero[r] == doctest::Approx(1.0));  // one sibling
    }
    CHECK(rep.eta_plus[1] == doctest::Approx(2.0));
    CHECK(rep.eta_minus[1] == doctest::Approx(1.0));
    // Sibling edges never carry an upward face in a tree.
    for (int n = 0; n < rep.layers; ++n) CHECK(rep.gamma_plus[n] == 0.0);
}

TEST_CASE("degree_quantities on a strip match hand counts") {
    Triangulation strip = layered_triangulation(LayerSpec{{2, 2, 2}}, 2);
    DegreeReport rep = degree_quantities(strip);
    // Staircase wiring: layer 0 vertex a1 connects to b0 and b1; a0 to b0.
    CHECK(rep.eta_plus[0] == doctest::Approx(2.0));
    CHECK(rep.eta_minus[1] == doctest::Approx(2.0));
    CHECK(rep.beta[0] > 0.0);
    CHECK(rep.gamma_zero[0] >= 0.0);

    // An inter-layer edge in S_0 x S_1 with both apexes inside the pair of
    // layers has degree = face count over it.
    Triangulation bip = bipartite_layer_family({1, 2, 4}, 2);
    DegreeReport rep2 = degree_quantities(bip);
    for (int n = 0; n < rep2.layers; ++n)
        if (n % 2 == 0) CHECK(rep2.gamma_zero[n] == 0.0); // no even intra faces
}

TEST_CASE("degree_quantities rejects non-decompositions") {
    Triangulation bad = TriangulationBuilder{}
                            .vertex(0)
                            .vertex(1)
                            .vertex(2)
                            .edge(0, 1)
                            .edge(1, 2)
                            .edge(0, 2)
                            .set_layer(0, 0)
                            .set_layer(1, 1)
                            .set_layer(2, 2)
                            .build();
    CHECK_THROWS_WITH_AS(degree_quantities(bad), doctest::Contains("PartitionViolation"), Error);
}

TEST_CASE("xi criterion verdicts") {
    std::vector<double> bounded{4.0, 4.5, 4.2, 4.4};
    CompletenessVerdict v = xi_verdict(bounded, GrowthClass::Bounded);
    CHECK(v.status == VerdictStatus::Complete);

    std::vector<double> quadratic;
    for (int n = 1; n <= 12; ++n) quadratic.push_back(static_cast<double>(n) * n);
    CHECK(xi_verdict(quadratic, GrowthClass::Polynomial, 2.0).status ==
          VerdictStatus::Complete);
    CHECK(xi_verdict(quadratic, GrowthClass::Polynomial, 3.0).status ==
          VerdictStatus::Unknown);
    CHECK(xi_verdict(quadratic).status == VerdictStatus::Unknown);

    // Measured xi on the off = 2 tree stays bounded.
    Triangulation tree = triangular_tree(OffspringSpec::constant(2), 4);
    std::vector<double> xi = xi_sequence(degree_quantities(tree), /*tree_variant=*/true);
    for (double value : xi) CHECK(value <= 8.0);
}

TEST_CASE("support_sets") {
    Triangulation patch = regular_patch(6, 6);

    Cochain0 constant(patch);
    constant.coeffs().setConstant(Cplx(1.0, 0.0));
    SupportSets trivial = support_sets(constant, patch.ball(0, 1));
    CHECK(trivial.e_star.empty());
    for (const auto& ring : trivial.f_star) CHECK(ring.empty());

    int n = 2;
    Cochain0 chi = bounded_degree_cutoff(patch, 0, n);
    SupportSets sets = support_sets(chi, patch.ball(0, n));

    // E*(n) sits inside the distance window [n-1, 2n+1].
    for (const EdgeKey& e : sets.e_star) {
        int d = std::min(patch.comb_distance(0, e.tail), patch.comb_distance(0, e.head));
        CHECK(d >= n - 1);
        CHECK(d <= 2 * n + 1);
    }

    // E_n grows with the exhaustion.
    SupportSets smaller = support_sets(chi, patch.ball(0, n));
    SupportSets larger = support_sets(chi, patch.ball(0, n + 2));
    CHECK(larger.e_n.size() >= smaller.e_n.size());
    CHECK(larger.f_n.size() >= smaller.f_n.size());
}

TEST_CASE("cutoff sequences satisfy conditions i) and ii) with finite constants") {
    Triangulation patch = regular_patch(6, 9);
    CutoffSequence ramp = bounded_degree_cutoffs(patch, 0, {2, 3, 4});
    CutoffCheck check = check_cutoff_sequence(ramp);
    CHECK(check.ok());
    CHECK(check.max_graph_constant > 0.0);
    CHECK(check.max_graph_constant <= 6.0 / 4.0 + 1e-12);
    CHECK(check.max_face_constant <= 12.0 / 4.0 + 1e-12);

    OffspringSpec off = OffspringSpec::poly(2.0);
    Triangulation tree = triangular_tree(off, 5);
    CutoffSequence series =
        series_cutoffs(tree, 0, {1, 2}, [&](long k) { return off.value(k); });
    CHECK(check_cutoff_sequence(series).ok());
    CHECK(series.provenance == CutoffProvenance::OffspringSeries);
}
