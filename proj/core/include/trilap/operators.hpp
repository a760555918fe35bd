#pragma once

#include "trilap/cochain.hpp"

namespace trilap {

/// Difference operator: d0(f)(e) = f(e+) - f(e-).
Cochain1 d0(const Cochain0& f);

/// Co-boundary, the formal adjoint of d0:
/// delta0(phi)(x) = (1/c(x)) sum_{e: e+ = x} r(e) phi(e).
Cochain0 delta0(const Cochain1& phi);

/// Exterior derivative: d1(psi)(x,y,z) = psi(x,y) + psi(y,z) + psi(z,x).
Cochain2 d1(const Cochain1& psi);

/// Co-exterior derivative, the formal adjoint of d1:
/// delta1(phi)(e) = (1/r(e)) sum_{x in F_e} s(e,x) phi(e,x).
Cochain1 delta1(const Cochain2& phi);

/// Gauss-Bonnet operator T(f,phi,psi) = (delta0 phi, d0 f + delta1 psi, d1 phi).
TripleField gauss_bonnet(const TripleField& field);

Cochain0 laplacian0(const Cochain0& f);         // delta0 d0
Cochain1 laplacian1_minus(const Cochain1& phi); // d0 delta0
Cochain1 laplacian1_plus(const Cochain1& phi);  // delta1 d1
Cochain1 laplacian1(const Cochain1& phi);       // full Laplacian on 1-forms
Cochain2 laplacian2(const Cochain2& psi);       // d1 delta1
TripleField laplacian(const TripleField& field); // L = T^2 componentwise

/// Edge average tilde(f)(e) = (f(e+) + f(e-)) / 2. Orientation-independent.
EdgeScalarField tilde(const Cochain0& f);
/// Face average (f(x) + f(y) + f(z)) / 3.
FaceScalarField double_tilde(const Cochain0& f);

// Pointwise products used by the derivation identities.
Cochain0 pointwise(const Cochain0& f, const Cochain0& g);
Cochain1 scale_edges(const EdgeScalarField& a, const Cochain1& phi);
Cochain2 scale_faces(const FaceScalarField& a, const Cochain2& psi);

/// Discrete exterior product of two 1-forms:
/// (psi ^ phi)(x,y,z) = [psi(z,x)+psi(z,y)] phi(x,y)
///                    + [psi(x,y)+psi(x,z)] phi(y,z)
///                    + [psi(y,z)+psi(y,x)] phi(z,x).
Cochain2 wedge_disc(const Cochain1& psi, const Cochain1& phi);

/// Max absolute residuals of the four derivation identities, evaluated over
/// every simplex (or the interior ones when the complex carries boundary
/// marks and `interior_only` is set):
///   eq41:  d1(tilde(f) phi) - [ddtilde(f) d1(phi) + (1/6) d0(f) ^ phi]  per face
///   eq42:  delta1(ddtilde(f) psi) - [tilde(f) delta1(psi) + apex term]  per edge
///   d0_product:     d0(fg) - [f(e+) d0(g) + d0(f) g(e-)]                per edge
///   delta0_product: delta0(tilde(f) phi) - [f delta0(phi) - half sum]   per vertex
struct DerivationResiduals {
    double eq41 = 0.0;
    double eq42 = 0.0;
    double d0_product = 0.0;
    double delta0_product = 0.0;

    double max() const;
};

DerivationResiduals derivation_identity_checks(const Cochain0& f, const Cochain0& g,
                                               const Cochain1& phi, const Cochain2& psi,
                                               bool interior_only = false);

} // namespace trilap
