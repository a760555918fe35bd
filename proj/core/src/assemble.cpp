#include "trilap/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace trilap {

namespace {

using Triplet = Eigen::Triplet<Cplx>;
using Sparse = Eigen::SparseMatrix<Cplx>;

Eigen::VectorXd vertex_weights(const Triangulation& t) {
    Eigen::VectorXd w(t.vertex_count());
    for (std::size_t i = 0; i < t.vertex_count(); ++i) w[i] = t.vertex_weight_at(i);
    return w;
}

Eigen::VectorXd edge_weights(const Triangulation& t) {
    Eigen::VectorXd w(t.edge_count());
    for (std::size_t i = 0; i < t.edge_count(); ++i) w[i] = t.edge_weight_at(i);
    return w;
}

Eigen::VectorXd face_weights(const Triangulation& t) {
    Eigen::VectorXd w(t.face_count());
    for (std::size_t i = 0; i < t.face_count(); ++i) w[i] = t.face_weight_at(i);
    return w;
}

double apex_parity(std::size_t a, std::size_t b, std::size_t w) {
    return (a < w && w < b) ? -1.0 : 1.0;
}

Sparse assemble_d0(const Triangulation& t) {
    std::vector<Triplet> trip;
    trip.reserve(2 * t.edge_count());
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        trip.emplace_back(e, b, Cplx(1.0, 0.0));
        trip.emplace_back(e, a, Cplx(-1.0, 0.0));
    }
    Sparse m(t.edge_count(), t.vertex_count());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Sparse assemble_delta0(const Triangulation& t) {
    std::vector<Triplet> trip;
    trip.reserve(2 * t.edge_count());
    for (std::size_t x = 0; x < t.vertex_count(); ++x) {
        double cx = t.vertex_weight_at(x);
        for (const auto& [y, e] : t.star_at(x)) {
            double sign = y < x ? 1.0 : -1.0;
            trip.emplace_back(x, e, Cplx(sign * t.edge_weight_at(e) / cx, 0.0));
        }
    }
    Sparse m(t.vertex_count(), t.edge_count());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Sparse assemble_d1(const Triangulation& t) {
    std::vector<Triplet> trip;
    trip.reserve(3 * t.face_count());
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        const auto& v = t.face_ranks(f);
        VertexId x = t.vertex_at(v[0]), y = t.vertex_at(v[1]), z = t.vertex_at(v[2]);
        trip.emplace_back(f, t.edge_index(x, y), Cplx(1.0, 0.0));
        trip.emplace_back(f, t.edge_index(y, z), Cplx(1.0, 0.0));
        trip.emplace_back(f, t.edge_index(x, z), Cplx(-1.0, 0.0));
    }
    Sparse m(t.face_count(), t.edge_count());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Sparse assemble_delta1(const Triangulation& t) {
    std::vector<Triplet> trip;
    trip.reserve(3 * t.face_count());
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        double re = t.edge_weight_at(e);
        for (const auto& [w, f] : t.ring_at(e))
            trip.emplace_back(e, f, Cplx(apex_parity(a, b, w) * t.face_weight_at(f) / re, 0.0));
    }
    Sparse m(t.edge_count(), t.face_count());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// Direct sum of the three weight diagonals, in V, E, F block order.
Eigen::VectorXd mixed_weights(const Triangulation& t) {
    Eigen::VectorXd w(t.vertex_count() + t.edge_count() + t.face_count());
    w << vertex_weights(t), edge_weights(t), face_weights(t);
    return w;
}

Sparse assemble_t_matrix(const Triangulation& t) {
    Sparse d0m = assemble_d0(t);
    Sparse delta0m = assemble_delta0(t);
    Sparse d1m = assemble_d1(t);
    Sparse delta1m = assemble_delta1(t);
    std::size_t nv = t.vertex_count(), ne = t.edge_count(), nf = t.face_count();
    std::vector<Triplet> trip;
    trip.reserve(d0m.nonZeros() + delta0m.nonZeros() + d1m.nonZeros() + delta1m.nonZeros());
    auto add_block = [&](const Sparse& block, std::size_t row0, std::size_t col0) {
        for (int k = 0; k < block.outerSize(); ++k)
            for (Sparse::InnerIterator it(block, k); it; ++it)
                trip.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
    };
    add_block(delta0m, 0, nv);       // (0, delta0, 0)
    add_block(d0m, nv, 0);           // (d0, 0, delta1)
    add_block(delta1m, nv, nv + ne);
    add_block(d1m, nv + ne, nv);     // (0, d1, 0)
    Sparse m(nv + ne + nf, nv + ne + nf);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

} // namespace

OpId op_from_string(const std::string& name) {
    if (name == "d0") return OpId::D0;
    if (name == "delta0") return OpId::Delta0;
    if (name == "d1") return OpId::D1;
    if (name == "delta1") return OpId::Delta1;
    if (name == "T") return OpId::T;
    if (name == "L0") return OpId::L0;
    if (name == "L1minus" || name == "L1-") return OpId::L1Minus;
    if (name == "L1plus" || name == "L1+") return OpId::L1Plus;
    if (name == "L1") return OpId::L1;
    if (name == "L2") return OpId::L2;
    if (name == "L") return OpId::L;
    throw Error(ErrorKind::SchemaError, "unknown operator '" + name + "'");
}

const char* to_string(OpId id) {
    switch (id) {
    case OpId::D0: return "d0";
    case OpId::Delta0: return "delta0";
    case OpId::D1: return "d1";
    case OpId::Delta1: return "delta1";
    case OpId::T: return "T";
    case OpId::L0: return "L0";
    case OpId::L1Minus: return "L1minus";
    case OpId::L1Plus: return "L1plus";
    case OpId::L1: return "L1";
    case OpId::L2: return "L2";
    case OpId::L: return "L";
    }
    return "?";
}

OperatorMatrix assemble(const Triangulation& t, OpId id) {
    OperatorMatrix out;
    Eigen::VectorXd wv = vertex_weights(t), we = edge_weights(t), wf = face_weights(t);
    switch (id) {
    case OpId::D0:
        out = {assemble_d0(t), Degree::Vertex, Degree::Edge, wv, we};
        break;
    case OpId::Delta0:
        out = {assemble_delta0(t), Degree::Edge, Degree::Vertex, we, wv};
        break;
    case OpId::D1:
        out = {assemble_d1(t), Degree::Edge, Degree::Face, we, wf};
        break;
    case OpId::Delta1:
        out = {assemble_delta1(t), Degree::Face, Degree::Edge, wf, we};
        break;
    case OpId::T:
        out = {assemble_t_matrix(t), Degree::Mixed, Degree::Mixed, mixed_weights(t),
               mixed_weights(t)};
        break;
    case OpId::L0:
        out = {Sparse(assemble_delta0(t) * assemble_d0(t)), Degree::Vertex, Degree::Vertex, wv, wv};
        break;
    case OpId::L1Minus:
        out = {Sparse(assemble_d0(t) * assemble_delta0(t)), Degree::Edge, Degree::Edge, we, we};
        break;
    case OpId::L1Plus:
        out = {Sparse(assemble_delta1(t) * assemble_d1(t)), Degree::Edge, Degree::Edge, we, we};
        break;
    case OpId::L1: {
        Sparse m = assemble_d0(t) * assemble_delta0(t);
        m += Sparse(assemble_delta1(t) * assemble_d1(t));
        out = {std::move(m), Degree::Edge, Degree::Edge, we, we};
        break;
    }
    case OpId::L2:
        out = {Sparse(assemble_d1(t) * assemble_delta1(t)), Degree::Face, Degree::Face, wf, wf};
        break;
    case OpId::L: {
        Sparse tm = assemble_t_matrix(t);
        out = {Sparse(tm * tm), Degree::Mixed, Degree::Mixed, mixed_weights(t), mixed_weights(t)};
        break;
    }
    }
    out.matrix.makeCompressed();
    return out;
}

OperatorMatrix weighted_adjoint(const OperatorMatrix& m) {
    Sparse adj = m.matrix.adjoint();
    for (int k = 0; k < adj.outerSize(); ++k)
        for (Sparse::InnerIterator it(adj, k); it; ++it)
            it.valueRef() *= m.target_weights[it.col()] / m.source_weights[it.row()];
    return OperatorMatrix{std::move(adj), m.target, m.source, m.target_weights, m.source_weights};
}

double max_abs(const Eigen::SparseMatrix<Cplx>& m) {
    double best = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (Sparse::InnerIterator it(m, k); it; ++it)
            best = std::max(best, std::abs(it.value()));
    return best;
}

namespace {

// Hermitian Lanczos with full reorthogonalization on the symmetrized
// operator; returns Ritz values whose residual bound beta |s_m| passes the
// tolerance. Used above the dense cutoff where a full eigendecomposition is
// off the table.
SpectrumResult lanczos_spectrum(const Sparse& sym, const SpectrumOptions& opts) {
    const std::size_t n = sym.rows();
    const int m = static_cast<int>(std::min<std::size_t>(opts.lanczos_steps, n));
    Eigen::MatrixXcd basis(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    // Deterministic start vector.
    for (std::size_t i = 0; i < n; ++i)
        v[i] = Cplx(std::cos(0.7 * static_cast<double>(i) + 0.3), 0.0);
    v.normalize();
    double last_beta = 0.0;
    int steps = 0;
    for (int j = 0; j < m; ++j) {
        basis.col(j) = v;
        Eigen::VectorXcd w = sym * v;
        alpha[j] = w.dot(v).real();
        w -= alpha[j] * v;
        if (j > 0) w -= last_beta * basis.col(j - 1);
        // Full reorthogonalization keeps the Ritz values honest.
        for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
        last_beta = w.norm();
        beta[j] = last_beta;
        ++steps;
        if (last_beta < 1e-14) break;
        v = w / last_beta;
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
        tri(j, j) = alpha[j];
        if (j + 1 < steps) tri(j, j + 1) = tri(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    SpectrumResult out;
    out.dense = false;
    out.iterations = steps;
    double final_beta = steps < static_cast<int>(n) ? beta[steps - 1] : 0.0;
    for (int i = 0; i < steps; ++i) {
        double resid = std::abs(final_beta * es.eigenvectors()(steps - 1, i));
        if (resid <= opts.ritz_tolerance || steps == static_cast<int>(n)) {
            out.eigenvalues.push_back(es.eigenvalues()[i]);
            out.max_ritz_residual = std::max(out.max_ritz_residual, resid);
        }
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

} // namespace

SpectrumResult spectrum(const OperatorMatrix& m, const SpectrumOptions& opts) {
    if (m.rows() != m.cols() || m.source != m.target)
        throw Error(ErrorKind::SchemaError, "spectrum needs an endomorphism");
    const std::size_t n = m.rows();
    // Similarity transform to honest hermitian form: W^{1/2} A W^{-1/2}.
    Eigen::VectorXd half = m.source_weights.cwiseSqrt();
    Sparse sym = m.matrix;
    for (int k = 0; k < sym.outerSize(); ++k)
        for (Sparse::InnerIterator it(sym, k); it; ++it)
            it.valueRef() *= half[it.row()] / half[it.col()];

    if (n > opts.dense_limit) {
        if (!opts.allow_iterative)
            throw Error(ErrorKind::DimensionTooLarge,
                        std::to_string(n) + " exceeds the dense limit " +
                            std::to_string(opts.dense_limit));
        return lanczos_spectrum(sym, opts);
    }

    Eigen::MatrixXcd dense = Eigen::MatrixXcd(sym);
    dense = 0.5 * (dense + dense.adjoint().eval()); // scrub roundoff asymmetry
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    SpectrumResult out;
    out.dense = true;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

void write_matrix_market(const OperatorMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << m.rows() << " " << m.cols() << " " << m.matrix.nonZeros() << "\n";
    char buf[96];
    for (int k = 0; k < m.matrix.outerSize(); ++k)
        for (Sparse::InnerIterator it(m.matrix, k); it; ++it) {
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g %.17g\n",
                          static_cast<long>(it.row() + 1), static_cast<long>(it.col() + 1),
                          it.value().real(), it.value().imag());
            out << buf;
        }
}

void write_matrix_market(const OperatorMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "' for writing");
    write_matrix_market(m, out);
}

Eigen::SparseMatrix<Cplx> read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw Error(ErrorKind::SchemaError, "missing MatrixMarket banner");
    bool complex_field = line.find("complex") != std::string::npos;
    do {
        if (!std::getline(in, line))
            throw Error(ErrorKind::SchemaError, "truncated MatrixMarket header");
    } while (!line.empty() && line[0] == '%');
    std::istringstream header(line);
    long rows = 0, cols = 0, nnz = 0;
    header >> rows >> cols >> nnz;
    std::vector<Triplet> trip;
    trip.reserve(nnz);
    for (long i = 0; i < nnz; ++i) {
        long r, c;
        double re, im = 0.0;
        in >> r >> c >> re;
        if (complex_field) in >> im;
        if (!in) throw Error(ErrorKind::SchemaError, "truncated MatrixMarket body");
        trip.emplace_back(r - 1, c - 1, Cplx(re, im));
    }
    Sparse m(rows, cols);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

void write_spectrum_csv(const SpectrumResult& s, std::ostream& out) {
    out << "index,eigenvalue\n";
    char buf[64];
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, s.eigenvalues[i]);
        out << buf;
    }
}

} // namespace trilap
