#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trilap/assemble.hpp"
#include "trilap/cochain.hpp"
#include "trilap/generators.hpp"

namespace trilap {

/// Outcome of a deficiency-vector probe: the recurrence coefficients, the
/// l1 summability evidence, per-layer l2 masses, and the truncation
/// residual measured on a materialized instance where one fits in memory.
struct DeficiencyReport {
    std::string op;                           // "L1" or "L2"
    std::vector<Cplx> coefficients;           // C_n (L1) or C_{2k} at index k (L2)
    double recurrence_residual = 0.0;         // max relative residual
    std::vector<double> summability_terms;    // off^2(n)/off(n+1) or #S_{2n}/#S_{2n+2}
    std::vector<double> summability_partial;  // running sums
    std::vector<double> layer_mass;           // l2 mass per layer
    double total_mass = 0.0;
    int tail_depth = -1;                      // smallest depth with tail < 1e-6 of total
    int materialized_depth = -1;              // -1 when nothing was materialized
    double interior_residual = -1.0;          // max |(L+i)phi| over interior simplices
    double candidate_norm = 0.0;              // ||phi|| on the materialization
    bool confirmed = false;                   // CandidateConfirmed / Inconclusive
    std::string note;
};

struct L1Options {
    int materialize_depth = -1;        // -1: deepest tree within vertex_budget
    std::size_t vertex_budget = 40000;
};

/// Candidate kernel vector of L1* + i on the triangular tree with the given
/// offspring: phi = C_n on parent-to-child edges of S_n x S_{n+1}, zero on
/// sibling edges. C_0 = 1; the root equation carries no C_{-1} term (the
/// origin has no parent), which seeds C_1 = (off(0)+1+i) C_0 / off(1); then
/// (off(n)+1+i) C_n - off(n+1) C_{n+1} - C_{n-1} = 0.
/// Throws SummabilityFails when off^2(n)/off(n+1) is not decreasing toward a
/// summable tail on the requested range.
DeficiencyReport l1_candidate(const OffspringSpec& off, int depth, const L1Options& opts = {});

struct L2Options {
    bool materialize = true;
};

/// Candidate kernel vector of L2* + i on the bipartite layer family:
/// phi = C_{2n+2} on faces with apex in S_{2n+2} and C_{2n} on faces with
/// apex in S_{2n}, with (#S_{2n+2}+2+i) C_{2n+2} + (#S_{2n}) C_{2n} = 0 and
/// C_0 = 1.
DeficiencyReport l2_candidate(const std::vector<long>& even_sizes, int depth,
                              const L2Options& opts = {});

/// Materializes the L1 candidate on a generated tree from its coefficients.
Cochain1 l1_candidate_cochain(const Triangulation& tree, const std::vector<Cplx>& coeffs);
/// Materializes the L2 candidate on a bipartite layer family.
Cochain2 l2_candidate_cochain(const Triangulation& family, const std::vector<Cplx>& even_coeffs);

/// Max |(L + i) phi| over interior simplices: simplices none of whose
/// vertices is boundary-marked, so the full operator stencil is materialized
/// and agrees with the infinite complex. Throws NoInteriorSimplices when the
/// truncation is too shallow to contain any.
double residual_scan(const Triangulation& t, OpId op, const Cochain0& candidate);
double residual_scan(const Triangulation& t, OpId op, const Cochain1& candidate);
double residual_scan(const Triangulation& t, OpId op, const Cochain2& candidate);

} // namespace trilap
