#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "trilap/complex.hpp"

namespace trilap {

using Cplx = std::complex<double>;

/// Complex-valued function on vertices.
class Cochain0 {
public:
    Cochain0() = default;
    explicit Cochain0(const Triangulation& t)
        : complex_(&t), values_(Eigen::VectorXcd::Zero(t.vertex_count())) {}

    const Triangulation& complex() const { return *complex_; }
    const Eigen::VectorXcd& coeffs() const { return values_; }
    Eigen::VectorXcd& coeffs() { return values_; }

    Cplx operator()(VertexId v) const { return values_[complex_->rank_of(v)]; }
    void set(VertexId v, Cplx value) { values_[complex_->rank_of(v)] = value; }

private:
    const Triangulation* complex_ = nullptr;
    Eigen::VectorXcd values_;
};

/// 1-form: antisymmetric function on oriented edges. One value is stored per
/// canonical edge; the reversed orientation evaluates to the negative, so the
/// convention phi(-e) = -phi(e) cannot be violated.
class Cochain1 {
public:
    Cochain1() = default;
    explicit Cochain1(const Triangulation& t)
        : complex_(&t), values_(Eigen::VectorXcd::Zero(t.edge_count())) {}

    const Triangulation& complex() const { return *complex_; }
    const Eigen::VectorXcd& coeffs() const { return values_; }
    Eigen::VectorXcd& coeffs() { return values_; }

    /// Value on the oriented edge (tail, head). Throws UnknownSimplex.
    Cplx operator()(VertexId tail, VertexId head) const;
    /// Sets the value seen by the orientation (tail, head).
    void set(VertexId tail, VertexId head, Cplx value);

private:
    const Triangulation* complex_ = nullptr;
    Eigen::VectorXcd values_;
};

/// 2-form: alternating function on oriented faces, stored on canonical
/// representatives. Evaluation multiplies by the permutation parity, which
/// realizes both cyclic invariance and phi(-w) = -phi(w).
class Cochain2 {
public:
    Cochain2() = default;
    explicit Cochain2(const Triangulation& t)
        : complex_(&t), values_(Eigen::VectorXcd::Zero(t.face_count())) {}

    const Triangulation& complex() const { return *complex_; }
    const Eigen::VectorXcd& coeffs() const { return values_; }
    Eigen::VectorXcd& coeffs() { return values_; }

    Cplx operator()(VertexId x, VertexId y, VertexId z) const;
    void set(VertexId x, VertexId y, VertexId z, Cplx value);

private:
    const Triangulation* complex_ = nullptr;
    Eigen::VectorXcd values_;
};

/// Element of H = l2(V) + l2(E) + l2(F).
struct TripleField {
    Cochain0 f;
    Cochain1 phi;
    Cochain2 psi;
};

/// Orientation-independent scalar per edge (tilde averages live here, not in
/// Cochain1: they are symmetric, not antisymmetric).
class EdgeScalarField {
public:
    EdgeScalarField() = default;
    explicit EdgeScalarField(const Triangulation& t)
        : complex_(&t), values_(Eigen::VectorXcd::Zero(t.edge_count())) {}

    const Triangulation& complex() const { return *complex_; }
    const Eigen::VectorXcd& coeffs() const { return values_; }
    Eigen::VectorXcd& coeffs() { return values_; }

    Cplx operator()(VertexId tail, VertexId head) const {
        return values_[complex_->edge_index(tail, head)];
    }

private:
    const Triangulation* complex_ = nullptr;
    Eigen::VectorXcd values_;
};

/// Orientation-independent scalar per face.
class FaceScalarField {
public:
    FaceScalarField() = default;
    explicit FaceScalarField(const Triangulation& t)
        : complex_(&t), values_(Eigen::VectorXcd::Zero(t.face_count())) {}

    const Triangulation& complex() const { return *complex_; }
    const Eigen::VectorXcd& coeffs() const { return values_; }
    Eigen::VectorXcd& coeffs() { return values_; }

    Cplx operator()(VertexId x, VertexId y, VertexId z) const {
        return values_[complex_->face_index(x, y, z)];
    }

private:
    const Triangulation* complex_ = nullptr;
    Eigen::VectorXcd values_;
};

// Weighted inner products. Computed over canonical representatives, which
// equals the doubly/sextuply counted sums with the 1/2 and 1/6 factors.
Cplx inner0(const Cochain0& f, const Cochain0& g);
Cplx inner1(const Cochain1& phi, const Cochain1& psi);
Cplx inner2(const Cochain2& a, const Cochain2& b);

double norm0(const Cochain0& f);
double norm1(const Cochain1& phi);
double norm2(const Cochain2& psi);

/// ||F||_H = sqrt(||f||^2 + ||phi||^2 + ||psi||^2).
double h_norm(const TripleField& field);
Cplx h_inner(const TripleField& a, const TripleField& b);

/// Deterministic pseudo-random cochain of degree k supported on the given
/// simplices (all canonical simplices when the support list is empty is NOT
/// implied; an empty support yields the zero cochain). Values have modulus in
/// [1/2, 3/2], so the support is exactly the nonzero set.
Cochain0 random_cochain0(const Triangulation& t, const std::vector<VertexId>& support,
                         std::uint64_t seed);
Cochain1 random_cochain1(const Triangulation& t, const std::vector<EdgeKey>& support,
                         std::uint64_t seed);
Cochain2 random_cochain2(const Triangulation& t,
                         const std::vector<std::array<VertexId, 3>>& support, std::uint64_t seed);

// Full-support convenience variants.
Cochain0 random_cochain0(const Triangulation& t, std::uint64_t seed);
Cochain1 random_cochain1(const Triangulation& t, std::uint64_t seed);
Cochain2 random_cochain2(const Triangulation& t, std::uint64_t seed);
TripleField random_triple(const Triangulation& t, std::uint64_t seed);

} // namespace trilap
