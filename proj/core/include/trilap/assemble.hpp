#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "trilap/cochain.hpp"

namespace trilap {

enum class OpId { D0, Delta0, D1, Delta1, T, L0, L1Minus, L1Plus, L1, L2, L };

OpId op_from_string(const std::string& name);
const char* to_string(OpId id);

/// Cochain degree of a matrix side; Mixed is the direct sum V + E + F.
enum class Degree { Vertex = 0, Edge = 1, Face = 2, Mixed = 3 };

/// Sparse matrix of a linear operator between cochain spaces, acting on
/// canonical-representative coefficient vectors. The inner-product diagonals
/// of the source and target spaces ride along so that adjointness is the
/// finite-dimensional identity A* = W_src^{-1} A^H W_tgt.
struct OperatorMatrix {
    Eigen::SparseMatrix<Cplx> matrix;
    Degree source = Degree::Vertex;
    Degree target = Degree::Vertex;
    Eigen::VectorXd source_weights;
    Eigen::VectorXd target_weights;

    std::size_t rows() const { return matrix.rows(); }
    std::size_t cols() const { return matrix.cols(); }
};

OperatorMatrix assemble(const Triangulation& t, OpId id);

/// Weighted adjoint W_src^{-1} A^H W_tgt of `m`.
OperatorMatrix weighted_adjoint(const OperatorMatrix& m);

/// Largest |entry| of a sparse matrix.
double max_abs(const Eigen::SparseMatrix<Cplx>& m);

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending
    bool dense = true;               // false when the Lanczos path ran
    int iterations = 0;
    double max_ritz_residual = 0.0;
};

struct SpectrumOptions {
    /// Above this dimension the dense solver refuses; the Lanczos path runs
    /// instead (reporting convergence of the Ritz values it returns), or a
    /// DimensionTooLarge error is thrown when the iterative path is off.
    std::size_t dense_limit = 2000;
    bool allow_iterative = true;
    int lanczos_steps = 300;
    double ritz_tolerance = 1e-9;
};

/// Eigenvalues of an endomorphism that is self-adjoint with respect to its
/// weighted inner product. The matrix is symmetrized by the similarity
/// W^{1/2} A W^{-1/2} before solving.
SpectrumResult spectrum(const OperatorMatrix& m, const SpectrumOptions& opts = {});

/// Matrix Market "coordinate complex general" export, 17 significant digits.
void write_matrix_market(const OperatorMatrix& m, std::ostream& out);
void write_matrix_market(const OperatorMatrix& m, const std::string& path);

/// Minimal coordinate-format reader (complex or real general); used to check
/// exported files round-trip.
Eigen::SparseMatrix<Cplx> read_matrix_market(std::istream& in);

/// Spectrum CSV (header "index,eigenvalue", 17 significant digits).
void write_spectrum_csv(const SpectrumResult& s, std::ostream& out);

} // namespace trilap
