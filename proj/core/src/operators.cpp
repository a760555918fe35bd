#include "trilap/operators.hpp"

#include <algorithm>
#include <cmath>

namespace trilap {

namespace {

// Parity of the oriented triple (a, b, w) with a < b relative to the sorted
// triple. Only the apex position matters.
double apex_parity(std::size_t a, std::size_t b, std::size_t w) {
    return (a < w && w < b) ? -1.0 : 1.0;
}

} // namespace

Cochain1 d0(const Cochain0& f) {
    const Triangulation& t = f.complex();
    Cochain1 out(t);
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        out.coeffs()[e] = f.coeffs()[b] - f.coeffs()[a];
    }
    return out;
}

Cochain0 delta0(const Cochain1& phi) {
    const Triangulation& t = phi.complex();
    Cochain0 out(t);
    for (std::size_t x = 0; x < t.vertex_count(); ++x) {
        Cplx acc = 0.0;
        for (const auto& [y, e] : t.star_at(x)) {
            // Incoming orientation (y -> x); canonical is (min, max).
            double sign = y < x ? 1.0 : -1.0;
            acc += t.edge_weight_at(e) * sign * phi.coeffs()[e];
        }
        out.coeffs()[x] = acc / t.vertex_weight_at(x);
    }
    return out;
}

Cochain2 d1(const Cochain1& psi) {
    const Triangulation& t = psi.complex();
    Cochain2 out(t);
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        const auto& v = t.face_ranks(f);
        VertexId x = t.vertex_at(v[0]), y = t.vertex_at(v[1]), z = t.vertex_at(v[2]);
        std::size_t exy = t.edge_index(x, y);
        std::size_t eyz = t.edge_index(y, z);
        std::size_t exz = t.edge_index(x, z);
        // psi(x,y) + psi(y,z) + psi(z,x) with canonical signs; ranks ascend.
        out.coeffs()[f] = psi.coeffs()[exy] + psi.coeffs()[eyz] - psi.coeffs()[exz];
    }
    return out;
}

Cochain1 delta1(const Cochain2& phi) {
    const Triangulation& t = phi.complex();
    Cochain1 out(t);
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        Cplx acc = 0.0;
        for (const auto& [w, f] : t.ring_at(e))
            acc += t.face_weight_at(f) * apex_parity(a, b, w) * phi.coeffs()[f];
        out.coeffs()[e] = acc / t.edge_weight_at(e);
    }
    return out;
}

TripleField gauss_bonnet(const TripleField& field) {
    Cochain1 mid = d0(field.f);
    Cochain1 up = delta1(field.psi);
    mid.coeffs() += up.coeffs();
    return TripleField{delta0(field.phi), std::move(mid), d1(field.phi)};
}

Cochain0 laplacian0(const Cochain0& f) { return delta0(d0(f)); }
Cochain1 laplacian1_minus(const Cochain1& phi) { return d0(delta0(phi)); }
Cochain1 laplacian1_plus(const Cochain1& phi) { return delta1(d1(phi)); }

Cochain1 laplacian1(const Cochain1& phi) {
    Cochain1 lower = laplacian1_minus(phi);
    Cochain1 upper = laplacian1_plus(phi);
    lower.coeffs() += upper.coeffs();
    return lower;
}

Cochain2 laplacian2(const Cochain2& psi) { return d1(delta1(psi)); }

TripleField laplacian(const TripleField& field) {
    return TripleField{laplacian0(field.f), laplacian1(field.phi), laplacian2(field.psi)};
}

EdgeScalarField tilde(const Cochain0& f) {
    const Triangulation& t = f.complex();
    EdgeScalarField out(t);
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        out.coeffs()[e] = 0.5 * (f.coeffs()[a] + f.coeffs()[b]);
    }
    return out;
}

FaceScalarField double_tilde(const Cochain0& f) {
    const Triangulation& t = f.complex();
    FaceScalarField out(t);
    for (std::size_t i = 0; i < t.face_count(); ++i) {
        const auto& v = t.face_ranks(i);
        out.coeffs()[i] = (f.coeffs()[v[0]] + f.coeffs()[v[1]] + f.coeffs()[v[2]]) / 3.0;
    }
    return out;
}

Cochain0 pointwise(const Cochain0& f, const Cochain0& g) {
    if (&f.complex() != &g.complex())
        throw Error(ErrorKind::ComplexMismatch, "pointwise product across complexes");
    Cochain0 out(f.complex());
    out.coeffs() = f.coeffs().cwiseProduct(g.coeffs());
    return out;
}

Cochain1 scale_edges(const EdgeScalarField& a, const Cochain1& phi) {
    if (&a.complex() != &phi.complex())
        throw Error(ErrorKind::ComplexMismatch, "edge scaling across complexes");
    Cochain1 out(phi.complex());
    out.coeffs() = a.coeffs().cwiseProduct(phi.coeffs());
    return out;
}

Cochain2 scale_faces(const FaceScalarField& a, const Cochain2& psi) {
    if (&a.complex() != &psi.complex())
        throw Error(ErrorKind::ComplexMismatch, "face scaling across complexes");
    Cochain2 out(psi.complex());
    out.coeffs() = a.coeffs().cwiseProduct(psi.coeffs());
    return out;
}

Cochain2 wedge_disc(const Cochain1& psi, const Cochain1& phi) {
    if (&psi.complex() != &phi.complex())
        throw Error(ErrorKind::ComplexMismatch, "wedge across complexes");
    const Triangulation& t = psi.complex();
    Cochain2 out(t);
    for (std::size_t i = 0; i < t.face_count(); ++i) {
        auto v = t.face_at(i);
        VertexId x = v[0], y = v[1], z = v[2];
        Cplx value = (psi(z, x) + psi(z, y)) * phi(x, y) + (psi(x, y) + psi(x, z)) * phi(y, z) +
                     (psi(y, z) + psi(y, x)) * phi(z, x);
        out.coeffs()[i] = value; // canonical orientation
    }
    return out;
}

double DerivationResiduals::max() const {
    return std::max(std::max(eq41, eq42), std::max(d0_product, delta0_product));
}

DerivationResiduals derivation_identity_checks(const Cochain0& f, const Cochain0& g,
                                               const Cochain1& phi, const Cochain2& psi,
                                               bool interior_only) {
    const Triangulation& t = f.complex();
    if (&g.complex() != &t || &phi.complex() != &t || &psi.complex() != &t)
        throw Error(ErrorKind::ComplexMismatch, "identity check inputs");

    auto interior_vertex = [&](std::size_t rank) {
        return !interior_only || !t.is_boundary_at(rank);
    };

    DerivationResiduals res;
    EdgeScalarField tf = tilde(f);
    FaceScalarField ttf = double_tilde(f);

    // Eq. 4.1 per face.
    Cochain2 lhs41 = d1(scale_edges(tf, phi));
    Cochain2 wedge = wedge_disc(d0(f), phi);
    Cochain2 d1phi = d1(phi);
    for (std::size_t i = 0; i < t.face_count(); ++i) {
        const auto& v = t.face_ranks(i);
        if (!(interior_vertex(v[0]) && interior_vertex(v[1]) && interior_vertex(v[2])))
            continue;
        Cplx rhs = ttf.coeffs()[i] * d1phi.coeffs()[i] + wedge.coeffs()[i] / 6.0;
        res.eq41 = std::max(res.eq41, std::abs(lhs41.coeffs()[i] - rhs));
    }

    // Eq. 4.2 per edge; the apex sum needs the full face ring, so restrict to
    // rim-free stencils when asked.
    Cochain1 lhs42 = delta1(scale_faces(ttf, psi));
    Cochain1 delta1psi = delta1(psi);
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        if (!(interior_vertex(a) && interior_vertex(b)))
            continue;
        bool ring_ok = true;
        Cplx apex_sum = 0.0;
        for (const auto& [w, fi] : t.ring_at(e)) {
            if (!interior_vertex(w)) ring_ok = false;
            Cplx dminus = f.coeffs()[w] - f.coeffs()[a]; // d0 f (e-, x)
            Cplx dplus = f.coeffs()[w] - f.coeffs()[b];  // d0 f (e+, x)
            apex_sum += t.face_weight_at(fi) * (dminus + dplus) * apex_parity(a, b, w) *
                        psi.coeffs()[fi];
        }
        if (!ring_ok) continue;
        Cplx rhs = tf.coeffs()[e] * delta1psi.coeffs()[e] +
                   apex_sum / (6.0 * t.edge_weight_at(e));
        res.eq42 = std::max(res.eq42, std::abs(lhs42.coeffs()[e] - rhs));
    }

    // d0(fg)(e) = f(e+) d0(g)(e) + d0(f)(e) g(e-).
    Cochain1 dfg = d0(pointwise(f, g));
    Cochain1 df = d0(f);
    Cochain1 dg = d0(g);
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        if (!(interior_vertex(a) && interior_vertex(b)))
            continue;
        Cplx rhs = f.coeffs()[b] * dg.coeffs()[e] + df.coeffs()[e] * g.coeffs()[a];
        res.d0_product = std::max(res.d0_product, std::abs(dfg.coeffs()[e] - rhs));
    }

    // delta0(tilde(f) phi)(x) = f(x) delta0(phi)(x)
    //                         - (1/(2 c(x))) sum_{e+ = x} r(e) d0(f)(e) phi(e).
    Cochain0 lhs_eqq = delta0(scale_edges(tf, phi));
    Cochain0 d0phi = delta0(phi);
    for (std::size_t x = 0; x < t.vertex_count(); ++x) {
        if (!interior_vertex(x)) continue;
        bool star_ok = true;
        Cplx corr = 0.0;
        for (const auto& [y, e] : t.star_at(x)) {
            if (!interior_vertex(y)) star_ok = false;
            double sign = y < x ? 1.0 : -1.0; // orientation into x
            corr += t.edge_weight_at(e) * (sign * df.coeffs()[e]) * (sign * phi.coeffs()[e]);
        }
        if (!star_ok) continue;
        Cplx rhs = f.coeffs()[x] * d0phi.coeffs()[x] - corr / (2.0 * t.vertex_weight_at(x));
        res.delta0_product = std::max(res.delta0_product, std::abs(lhs_eqq.coeffs()[x] - rhs));
    }

    return res;
}

} // namespace trilap
