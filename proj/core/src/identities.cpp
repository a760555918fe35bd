#include "trilap/identities.hpp"

#include <algorithm>
#include <cmath>

#include "trilap/operators.hpp"

namespace trilap {

namespace {

struct Suite {
    const Triangulation& t;
    const IdentityOptions& opts;
    IdentityReport report;

    void add(const std::string& name, double residual, double tolerance, bool skipped = false) {
        tolerance *= opts.tolerance_scale;
        IdentityCheck check{name, residual, tolerance, skipped || residual <= tolerance, skipped};
        if (!check.pass && report.all_pass) {
            report.all_pass = false;
            report.first_failure = name;
        }
        report.checks.push_back(std::move(check));
    }
};

double normalized_gap(Cplx a, Cplx b, double scale) {
    return std::abs(a - b) / (1.0 + scale);
}

} // namespace

bool spectra_match(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol * (1.0 + std::abs(a[i]))) return false;
    return true;
}

IdentityReport run_identity_suite(const Triangulation& t, const IdentityOptions& opts) {
    Suite suite{t, opts, {}};

    OperatorMatrix d0m = assemble(t, OpId::D0);
    OperatorMatrix delta0m = assemble(t, OpId::Delta0);
    OperatorMatrix d1m = assemble(t, OpId::D1);
    OperatorMatrix delta1m = assemble(t, OpId::Delta1);
    OperatorMatrix tm = assemble(t, OpId::T);
    OperatorMatrix lm = assemble(t, OpId::L);

    suite.add("d1_d0_zero_matrix", max_abs(Eigen::SparseMatrix<Cplx>(d1m.matrix * d0m.matrix)),
              1e-14);
    suite.add("delta0_delta1_zero_matrix",
              max_abs(Eigen::SparseMatrix<Cplx>(delta0m.matrix * delta1m.matrix)), 1e-14);
    suite.add("delta0_is_weighted_adjoint_of_d0",
              max_abs(Eigen::SparseMatrix<Cplx>(delta0m.matrix - weighted_adjoint(d0m).matrix)),
              1e-14);
    suite.add("delta1_is_weighted_adjoint_of_d1",
              max_abs(Eigen::SparseMatrix<Cplx>(delta1m.matrix - weighted_adjoint(d1m).matrix)),
              1e-14);
    suite.add("t_squared_equals_l",
              max_abs(Eigen::SparseMatrix<Cplx>(tm.matrix * tm.matrix - lm.matrix)), 1e-12);

    // Randomized checks, `trials` seeded draws each.
    double adj0 = 0.0, adj1 = 0.0, gb_sym = 0.0, chain0 = 0.0, chain1 = 0.0;
    double energy0 = 0.0, energy1 = 0.0, energy2 = 0.0;
    double hodge = 0.0, parallelogram = 0.0, wedge_anti = 0.0;
    bool nonnegative = true;
    for (int trial = 0; trial < opts.trials; ++trial) {
        std::uint64_t seed = opts.seed + 977u * static_cast<std::uint64_t>(trial);
        Cochain0 f = random_cochain0(t, seed);
        Cochain0 g = random_cochain0(t, seed + 7);
        Cochain1 phi = random_cochain1(t, seed + 11);
        Cochain1 psi1 = random_cochain1(t, seed + 13);
        Cochain2 psi = random_cochain2(t, seed + 17);

        Cochain1 df = d0(f);
        Cochain0 dphi = delta0(phi);
        Cochain2 dpsi1 = d1(phi);
        Cochain1 d1psi = delta1(psi);

        adj0 = std::max(adj0, normalized_gap(inner1(df, phi), inner0(f, dphi),
                                             norm1(df) * norm1(phi) + norm0(f) * norm0(dphi)));
        adj1 = std::max(adj1, normalized_gap(inner2(dpsi1, psi), inner1(phi, d1psi),
                                             norm2(dpsi1) * norm2(psi) + norm1(phi) * norm1(d1psi)));

        chain0 = std::max(chain0, d1(df).coeffs().cwiseAbs().maxCoeff() / (1.0 + norm0(f)));
        chain1 = std::max(chain1, delta0(d1psi).coeffs().cwiseAbs().maxCoeff() / (1.0 + norm2(psi)));

        TripleField a{f, phi, psi};
        TripleField b{g, psi1, random_cochain2(t, seed + 19)};
        TripleField ta = gauss_bonnet(a);
        TripleField tb = gauss_bonnet(b);
        gb_sym = std::max(gb_sym, normalized_gap(h_inner(ta, b), h_inner(a, tb),
                                                 h_norm(ta) * h_norm(b) + h_norm(a) * h_norm(tb)));

        // Energy forms <L0 f, f> = |d0 f|^2, <L1 phi, phi> = |delta0 phi|^2
        // + |d1 phi|^2, and <L2 psi, psi> = |delta1 psi|^2.
        Cplx l0_energy = inner0(laplacian0(f), f);
        double down = inner1(df, df).real();
        energy0 = std::max(energy0, std::abs(l0_energy - Cplx(down)) / (1.0 + down));
        Cplx l1_energy = inner1(laplacian1(phi), phi);
        double split = inner0(dphi, dphi).real() + inner2(dpsi1, dpsi1).real();
        energy1 = std::max(energy1, std::abs(l1_energy - Cplx(split)) / (1.0 + split));
        Cplx l2_energy = inner2(laplacian2(psi), psi);
        double up = inner1(d1psi, d1psi).real();
        energy2 = std::max(energy2, std::abs(l2_energy - Cplx(up)) / (1.0 + up));
        nonnegative = nonnegative && l0_energy.real() >= -1e-12 &&
                      l1_energy.real() >= -1e-12 && l2_energy.real() >= -1e-12;

        // image(d0) is orthogonal to image(delta1) in l2(E), and the
        // parallelogram identity splits the mixed norm.
        hodge = std::max(hodge, std::abs(inner1(df, d1psi)) /
                                    (1.0 + norm1(df) * norm1(d1psi)));
        Cochain1 mixed = df;
        mixed.coeffs() += d1psi.coeffs();
        double lhs = inner1(mixed, mixed).real();
        double rhs = inner1(df, df).real() + inner1(d1psi, d1psi).real();
        parallelogram = std::max(parallelogram, std::abs(lhs - rhs) / (1.0 + rhs));

        Cochain2 w1 = wedge_disc(psi1, phi);
        Cochain2 w2 = wedge_disc(phi, psi1);
        if (t.face_count() > 0)
            wedge_anti = std::max(wedge_anti,
                                  (w1.coeffs() + w2.coeffs()).cwiseAbs().maxCoeff());
    }
    suite.add("adjoint_d0_delta0", adj0, 1e-10);
    suite.add("adjoint_d1_delta1", adj1, 1e-10);
    suite.add("d1_d0_zero_callable", chain0, 1e-12);
    suite.add("delta0_delta1_zero_callable", chain1, 1e-12);
    suite.add("gauss_bonnet_symmetric", gb_sym, 1e-10);
    suite.add("energy_form_l0", energy0, 1e-10);
    suite.add("energy_form_l1", energy1, 1e-10);
    suite.add("energy_form_l2", energy2, 1e-10);
    suite.add("energy_nonnegative", nonnegative ? 0.0 : 1.0, 0.5);
    suite.add("hodge_orthogonality", hodge, 1e-10);
    suite.add("parallelogram_identity", parallelogram, 1e-10);
    suite.add("wedge_antisymmetry", wedge_anti, 1e-12);

    {
        // L0 kills constants for any weights.
        Cochain0 ones(t);
        ones.coeffs().setConstant(Cplx(1.0, 0.0));
        suite.add("l0_kills_constants", laplacian0(ones).coeffs().cwiseAbs().maxCoeff(), 1e-12);
    }

    {
        Cochain0 f = random_cochain0(t, opts.seed + 101);
        Cochain0 g = random_cochain0(t, opts.seed + 103);
        Cochain1 phi = random_cochain1(t, opts.seed + 107);
        Cochain2 psi = random_cochain2(t, opts.seed + 109);
        bool has_rim = false;
        for (std::size_t r = 0; r < t.vertex_count() && !has_rim; ++r)
            has_rim = t.is_boundary_at(r);
        DerivationResiduals res = derivation_identity_checks(f, g, phi, psi, has_rim);
        suite.add("derivation_eq41", res.eq41, 1e-10);
        suite.add("derivation_eq42", res.eq42, 1e-10);
        suite.add("product_rule_d0", res.d0_product, 1e-12);
        suite.add("product_rule_delta0", res.delta0_product, 1e-10);
    }

    {
        // matrix action agrees with the callable operators on random data.
        Cochain0 f = random_cochain0(t, opts.seed + 211);
        Cochain1 phi = random_cochain1(t, opts.seed + 223);
        Cochain2 psi = random_cochain2(t, opts.seed + 227);
        double gap = 0.0;
        gap = std::max(gap, (d0m.matrix * f.coeffs() - d0(f).coeffs()).cwiseAbs().maxCoeff());
        gap = std::max(gap,
                       (delta0m.matrix * phi.coeffs() - delta0(phi).coeffs()).cwiseAbs().maxCoeff());
        gap = std::max(gap, (d1m.matrix * phi.coeffs() - d1(phi).coeffs()).cwiseAbs().maxCoeff());
        gap = std::max(gap,
                       (delta1m.matrix * psi.coeffs() - delta1(psi).coeffs()).cwiseAbs().maxCoeff());
        Eigen::VectorXcd stacked(t.vertex_count() + t.edge_count() + t.face_count());
        stacked << f.coeffs(), phi.coeffs(), psi.coeffs();
        TripleField image = gauss_bonnet(TripleField{f, phi, psi});
        Eigen::VectorXcd expect(stacked.size());
        expect << image.f.coeffs(), image.phi.coeffs(), image.psi.coeffs();
        gap = std::max(gap, (tm.matrix * stacked - expect).cwiseAbs().maxCoeff());
        suite.add("matrix_matches_callable", gap, 1e-12);
    }

    {
        std::size_t dim = tm.rows();
        if (dim <= opts.spectrum_limit) {
            SpectrumResult st = spectrum(tm);
            SpectrumResult sl = spectrum(lm);
            std::vector<double> squared(st.eigenvalues.size());
            for (std::size_t i = 0; i < squared.size(); ++i)
                squared[i] = st.eigenvalues[i] * st.eigenvalues[i];
            std::sort(squared.begin(), squared.end());
            double gap = 0.0;
            for (std::size_t i = 0; i < squared.size(); ++i)
                gap = std::max(gap, std::abs(squared[i] - sl.eigenvalues[i]) /
                                        (1.0 + std::abs(sl.eigenvalues[i])));
            suite.add("spectrum_l_equals_t_squared", gap, 1e-8);
        } else {
            suite.add("spectrum_l_equals_t_squared", 0.0, 1e-8, /*skipped=*/true);
        }
    }

    return suite.report;
}

} // namespace trilap
