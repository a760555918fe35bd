#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trilap/assemble.hpp"

namespace trilap {

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool skipped = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass = true;
    std::string first_failure;
};

struct IdentityOptions {
    int trials = 100;
    std::uint64_t seed = 42;
    /// Spectrum-based checks are skipped above this dimension.
    std::size_t spectrum_limit = 2000;
    /// Multiplies every check tolerance; 1.0 keeps the shipped defaults.
    double tolerance_scale = 1.0;
};

/// Runs the operator identity battery on one complex: chain-complex
/// vanishing (matrix and callable), adjointness, Gauss-Bonnet symmetry,
/// T^2 = L with matching spectra, energy forms, Hodge orthogonality, wedge
/// antisymmetry and the four derivation identities. Randomized checks draw
/// `trials` seeded samples.
IdentityReport run_identity_suite(const Triangulation& t, const IdentityOptions& opts = {});

/// Multiset comparison of sorted eigenvalue lists: true when they have equal
/// length and |a_i - b_i| <= tol * (1 + |a_i|) for every i.
bool spectra_match(const std::vector<double>& a, const std::vector<double>& b, double tol);

} // namespace trilap
