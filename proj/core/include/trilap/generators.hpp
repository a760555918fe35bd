#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trilap/complex.hpp"

namespace trilap {

/// Offspring function off(n) driving triangular-tree growth. Values are
/// child counts, so off(n) >= 1 always.
struct OffspringSpec {
    enum class Kind { PolynomialFloor, Geometric, Constant, Explicit, Custom };

    Kind kind = Kind::Constant;
    double alpha = 1.0;                      // PolynomialFloor: floor(n^alpha) + 1
    double ratio = 2.0;                      // Geometric: max(1, floor(ratio^n))
    long constant_value = 1;                 // Constant
    std::vector<long> sequence;              // Explicit
    std::function<double(long)> callback;    // Custom; may exceed integer range

    /// off(n) as a double; exact for integer-representable values. Analysis
    /// code uses this so that fast-growing families (e.g. 2^{3^n}) stay in
    /// range even where no tree of that depth could be materialized.
    double value(long n) const;

    /// off(n) as an exact child count for materialization. Throws
    /// OffspringNotRepresentable when the value is non-integral or too large
    /// to build.
    long child_count(long n) const;
    long operator()(long n) const { return child_count(n); }

    static OffspringSpec poly(double alpha);
    static OffspringSpec geometric(double ratio);
    static OffspringSpec constant(long k);
    static OffspringSpec explicit_sequence(std::vector<long> seq);
    static OffspringSpec custom(std::function<double(long)> fn);

    /// Parses "poly:2", "const:4", "geom:1.5", "explicit:1,2,4".
    static OffspringSpec parse(const std::string& text);
    std::string describe() const;
};

/// Layer sizes for 1-dimensional decompositions. The only built-in wiring is
/// the triangulated strip; the rule is named so alternatives can slot in.
struct LayerSpec {
    std::vector<long> sizes;
    enum class Wiring { Strip } wiring = Wiring::Strip;
};

/// Finite patch of the 6-regular triangular lattice of the given
/// combinatorial radius. All weights 1, triangle-complete, every vertex at
/// distance < radius from the origin has degree exactly 6.
Triangulation regular_patch(int degree, int radius);

/// Triangular tree truncated at `depth` spheres: every vertex of S_n has
/// off(n) children, children of one parent form a path, and each
/// (parent, child_i, child_{i+1}) triple is a face. With simple = false the
/// weights become deterministic pseudo-random values in [1/2, 3/2].
Triangulation triangular_tree(const OffspringSpec& off, int depth, bool simple = true,
                              std::uint64_t weight_seed = 42);

/// Strip-wired layered triangulation over spec.sizes[0 .. depth].
Triangulation layered_triangulation(const LayerSpec& spec, int depth);

/// The alternating family behind the L2 deficiency construction: even
/// spheres S_{2n} of the given sizes, odd spheres of two vertices joined by
/// one edge, complete bipartite wiring between an odd sphere and both
/// neighboring even spheres, and one face per (odd edge, adjacent even
/// vertex) pair. Faces carry their only intra-sphere edge inside the odd
/// sphere; even spheres have no internal edges.
Triangulation bipartite_layer_family(const std::vector<long>& even_sizes, int depth);

} // namespace trilap
