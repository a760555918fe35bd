#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trilap/cochain.hpp"
#include "trilap/generators.hpp"

namespace trilap {

/// Exact ratio of consecutive sphere cardinalities.
struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// off(n) = #S_{n+1} / #S_n measured on a materialized complex around its
/// origin. Throws DepthExceeded past the truncation.
Rational offspring(const Triangulation& tree, int n);

/// Checks the corollary hypothesis off(n) = #(V(x) cap S_{n+1}) for every x,
/// i.e. every vertex of a sphere has the same child count.
bool uniform_child_count(const Triangulation& tree);

/// chi_n(x) = ((2n - d(o,x)) / n  v  0) ^ 1 — the linear ramp used for
/// bounded-degree complexes. Real-valued, 1 on B_n, 0 outside B_{2n}.
Cochain0 bounded_degree_cutoff(const Triangulation& t, VertexId origin, int n);

/// chi_n = 1 inside radius n, then ramps down by increments 1/sqrt(denom(k)).
/// Throws SupportNotFinite when the ramp has not reached zero at the
/// truncation rim (the infinite-complex support would not be compact).
Cochain0 series_cutoff(const Triangulation& t, VertexId origin, int n,
                       const std::function<double(long)>& denom);

enum class CutoffProvenance { BoundedDegree, OffspringSeries, XiSeries, User };

/// A family (B_n, chi_n): increasing plateau sets with their cut-off
/// functions, tagged with how it was constructed.
struct CutoffSequence {
    CutoffProvenance provenance = CutoffProvenance::User;
    std::vector<int> indices;
    std::vector<std::vector<VertexId>> plateaus; // B_n
    std::vector<Cochain0> chis;
};

CutoffSequence bounded_degree_cutoffs(const Triangulation& t, VertexId origin,
                                      const std::vector<int>& indices);
CutoffSequence series_cutoffs(const Triangulation& t, VertexId origin,
                              const std::vector<int>& indices,
                              const std::function<double(long)>& denom,
                              CutoffProvenance provenance = CutoffProvenance::OffspringSeries);

/// Checks conditions i) and ii) exactly: values in [0,1], chi_n = 1 on B_n,
/// finite support (trivial here), and finite measured constants.
struct CutoffCheck {
    bool range_ok = true;
    bool plateau_ok = true;
    double max_graph_constant = 0.0;
    double max_face_constant = 0.0;
    bool ok() const { return range_ok && plateau_ok; }
};
CutoffCheck check_cutoff_sequence(const CutoffSequence& seq);

/// Graph cut-off energy: sup_x (1/c(x)) sum_{y ~ x} r(x,y) |chi(y)-chi(x)|^2,
/// each undirected incident edge counted once.
double graph_constant(const Cochain0& chi);

/// Face cut-off energy:
/// sup_e (1/r(e)) sum_{x in F_e} s(e,x) |2 chi(x) - chi(e-) - chi(e+)|^2.
double face_constant(const Cochain0& chi);

enum class VerdictStatus { Complete, Incomplete, Unknown };

const char* to_string(VerdictStatus s);

/// Completeness verdicts are three-valued: closed-form rules decide, partial
/// sums are evidence only (they can never certify divergence).
struct CompletenessVerdict {
    VerdictStatus status = VerdictStatus::Unknown;
    std::string rule;
    std::vector<double> partial_sums;
    double graph_c = -1.0; // measured constants when available, else -1
    double face_m = -1.0;
    std::string note;
};

/// Classification of a triangular tree by its offspring series
/// sum 1/sqrt(off(n)): PolynomialFloor(alpha) is Complete iff alpha <= 2,
/// Geometric(>1) is Incomplete, Constant is Complete. Explicit and Custom
/// specs only collect partial-sum evidence.
CompletenessVerdict offspring_verdict(const OffspringSpec& off, int evidence_terms = 32);

/// Per-simplex degree data of a 1-dimensional decomposition plus the
/// per-layer suprema eta, beta, gamma entering the xi criterion.
struct DegreeReport {
    int layers = 0;
    std::vector<double> deg_plus, deg_minus, deg_zero;                    // by vertex rank
    std::vector<double> edge_inter, edge_intra_plus, edge_intra_minus,
        edge_intra_zero;                                                  // by edge index, -1 if n/a
    std::vector<double> eta_plus, eta_minus, beta, gamma_plus, gamma_minus, gamma_zero;
};

/// Throws PartitionViolation when an edge spans layers more than one apart.
DegreeReport degree_quantities(const Triangulation& t);

/// xi(n, n+1) = eta+_n + eta-_{n+1} + beta_n + gamma+_n + gamma-_{n+1}; the
/// tree variant drops gamma+ (trees have no upward face over sibling edges).
std::vector<double> xi_sequence(const DegreeReport& report, bool tree_variant = false);

enum class GrowthClass { Bounded, Polynomial, Exponential, Unclassified };

/// Sufficient criterion only: divergence of sum 1/sqrt(xi) certifies
/// Complete, nothing certifies Incomplete from here.
CompletenessVerdict xi_verdict(const std::vector<double>& xi,
                               GrowthClass growth = GrowthClass::Unclassified,
                               double poly_degree = 0.0);

/// The four support sets attached to a cut-off function: E_B and F_B from the
/// plateau set, and the starred sets from supp(d0 chi).
struct SupportSets {
    std::vector<EdgeKey> e_n;                      // canonical orientations
    std::vector<std::array<VertexId, 3>> f_n;      // canonical triples
    std::vector<EdgeKey> e_star;
    std::vector<std::vector<VertexId>> f_star;     // indexed by canonical edge
};

SupportSets support_sets(const Cochain0& chi, const std::vector<VertexId>& plateau);

} // namespace trilap
