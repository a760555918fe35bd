#include "trilap/cochain.hpp"

#include <cmath>

namespace trilap {

namespace {

void require_same(const Triangulation* a, const Triangulation* b) {
    if (a == nullptr || a != b)
        throw Error(ErrorKind::ComplexMismatch, "cochains live on different complexes");
}

// SplitMix64; values derived from (seed, counter) so equal seeds give equal
// cochains independent of platform library details.
std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Cplx random_value(std::uint64_t& state) {
    double modulus = 0.5 + unit_double(splitmix(state));
    double angle = 2.0 * M_PI * unit_double(splitmix(state));
    return Cplx(modulus * std::cos(angle), modulus * std::sin(angle));
}

} // namespace

Cplx Cochain1::operator()(VertexId tail, VertexId head) const {
    std::size_t idx;
    int sign;
    try {
        idx = complex_->edge_index(tail, head);
        sign = complex_->edge_sign(tail, head);
    } catch (const Error& e) {
        throw Error(ErrorKind::UnknownSimplex, e.what());
    }
    return static_cast<double>(sign) * values_[idx];
}

void Cochain1::set(VertexId tail, VertexId head, Cplx value) {
    std::size_t idx;
    int sign;
    try {
        idx = complex_->edge_index(tail, head);
        sign = complex_->edge_sign(tail, head);
    } catch (const Error& e) {
        throw Error(ErrorKind::UnknownSimplex, e.what());
    }
    values_[idx] = static_cast<double>(sign) * value;
}

Cplx Cochain2::operator()(VertexId x, VertexId y, VertexId z) const {
    try {
        std::size_t idx = complex_->face_index(x, y, z);
        int parity = complex_->face_parity(x, y, z);
        return static_cast<double>(parity) * values_[idx];
    } catch (const Error& e) {
        throw Error(ErrorKind::UnknownSimplex, e.what());
    }
}

void Cochain2::set(VertexId x, VertexId y, VertexId z, Cplx value) {
    try {
        std::size_t idx = complex_->face_index(x, y, z);
        int parity = complex_->face_parity(x, y, z);
        values_[idx] = static_cast<double>(parity) * value;
    } catch (const Error& e) {
        throw Error(ErrorKind::UnknownSimplex, e.what());
    }
}

Cplx inner0(const Cochain0& f, const Cochain0& g) {
    require_same(&f.complex(), &g.complex());
    const Triangulation& t = f.complex();
    Cplx acc = 0.0;
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        acc += t.vertex_weight_at(r) * f.coeffs()[r] * std::conj(g.coeffs()[r]);
    return acc;
}

Cplx inner1(const Cochain1& phi, const Cochain1& psi) {
    require_same(&phi.complex(), &psi.complex());
    const Triangulation& t = phi.complex();
    Cplx acc = 0.0;
    for (std::size_t e = 0; e < t.edge_count(); ++e)
        acc += t.edge_weight_at(e) * phi.coeffs()[e] * std::conj(psi.coeffs()[e]);
    return acc;
}

Cplx inner2(const Cochain2& a, const Cochain2& b) {
    require_same(&a.complex(), &b.complex());
    const Triangulation& t = a.complex();
    Cplx acc = 0.0;
    for (std::size_t f = 0; f < t.face_count(); ++f)
        acc += t.face_weight_at(f) * a.coeffs()[f] * std::conj(b.coeffs()[f]);
    return acc;
}

double norm0(const Cochain0& f) { return std::sqrt(std::abs(inner0(f, f).real())); }
double norm1(const Cochain1& phi) { return std::sqrt(std::abs(inner1(phi, phi).real())); }
double norm2(const Cochain2& psi) { return std::sqrt(std::abs(inner2(psi, psi).real())); }

double h_norm(const TripleField& field) {
    double f2 = inner0(field.f, field.f).real();
    double p2 = inner1(field.phi, field.phi).real();
    double q2 = inner2(field.psi, field.psi).real();
    return std::sqrt(f2 + p2 + q2);
}

Cplx h_inner(const TripleField& a, const TripleField& b) {
    return inner0(a.f, b.f) + inner1(a.phi, b.phi) + inner2(a.psi, b.psi);
}

Cochain0 random_cochain0(const Triangulation& t, const std::vector<VertexId>& support,
                         std::uint64_t seed) {
    Cochain0 out(t);
    std::uint64_t state = seed ^ 0x0c0c0c0c0c0c0c0cull;
    for (VertexId v : support)
        out.set(v, random_value(state));
    return out;
}

Cochain1 random_cochain1(const Triangulation& t, const std::vector<EdgeKey>& support,
                         std::uint64_t seed) {
    Cochain1 out(t);
    std::uint64_t state = seed ^ 0x1c1c1c1c1c1c1c1cull;
    for (const EdgeKey& e : support)
        out.set(e.tail, e.head, random_value(state));
    return out;
}

Cochain2 random_cochain2(const Triangulation& t,
                         const std::vector<std::array<VertexId, 3>>& support, std::uint64_t seed) {
    Cochain2 out(t);
    std::uint64_t state = seed ^ 0x2c2c2c2c2c2c2c2cull;
    for (const auto& f : support)
        out.set(f[0], f[1], f[2], random_value(state));
    return out;
}

Cochain0 random_cochain0(const Triangulation& t, std::uint64_t seed) {
    Cochain0 out(t);
    std::uint64_t state = seed ^ 0x0c0c0c0c0c0c0c0cull;
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        out.coeffs()[r] = random_value(state);
    return out;
}

Cochain1 random_cochain1(const Triangulation& t, std::uint64_t seed) {
    Cochain1 out(t);
    std::uint64_t state = seed ^ 0x1c1c1c1c1c1c1c1cull;
    for (std::size_t e = 0; e < t.edge_count(); ++e)
        out.coeffs()[e] = random_value(state);
    return out;
}

Cochain2 random_cochain2(const Triangulation& t, std::uint64_t seed) {
    Cochain2 out(t);
    std::uint64_t state = seed ^ 0x2c2c2c2c2c2c2c2cull;
    for (std::size_t f = 0; f < t.face_count(); ++f)
        out.coeffs()[f] = random_value(state);
    return out;
}

TripleField random_triple(const Triangulation& t, std::uint64_t seed) {
    return TripleField{random_cochain0(t, seed), random_cochain1(t, seed + 1),
                       random_cochain2(t, seed + 2)};
}

} // namespace trilap
