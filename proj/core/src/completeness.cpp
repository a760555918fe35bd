#include "trilap/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trilap {

namespace {

// Sphere membership by rank from the complex's origin (layer metadata when
// present, BFS otherwise).
std::vector<int> sphere_index(const Triangulation& t) {
    if (t.has_layers()) {
        std::vector<int> out(t.vertex_count());
        for (std::size_t r = 0; r < t.vertex_count(); ++r) out[r] = t.layer_at(r);
        return out;
    }
    VertexId o = t.origin().value_or(t.vertex_at(0));
    return t.distances_from(o);
}

} // namespace

Rational offspring(const Triangulation& tree, int n) {
    std::vector<int> sphere = sphere_index(tree);
    long long lower = 0, upper = 0;
    for (int s : sphere) {
        if (s == n) ++lower;
        if (s == n + 1) ++upper;
    }
    if (lower == 0 || upper == 0)
        throw Error(ErrorKind::DepthExceeded,
                    "spheres " + std::to_string(n) + ", " + std::to_string(n + 1) +
                        " not both present in the truncation");
    long long g = std::gcd(lower, upper);
    return Rational{upper / g, lower / g};
}

bool uniform_child_count(const Triangulation& tree) {
    std::vector<int> sphere = sphere_index(tree);
    int top = *std::max_element(sphere.begin(), sphere.end());
    for (int n = 0; n < top; ++n) {
        long expected = -1;
        for (std::size_t x = 0; x < tree.vertex_count(); ++x) {
            if (sphere[x] != n) continue;
            long up = 0;
            for (const auto& [y, _] : tree.star_at(x))
                if (sphere[y] == n + 1) ++up;
            if (expected < 0) expected = up;
            else if (up != expected) return false;
        }
    }
    return true;
}

Cochain0 bounded_degree_cutoff(const Triangulation& t, VertexId origin, int n) {
    if (n < 1) throw Error(ErrorKind::SchemaError, "cut-off index must be >= 1");
    std::vector<int> dist = t.distances_from(origin);
    Cochain0 chi(t);
    for (std::size_t r = 0; r < t.vertex_count(); ++r) {
        double ramp = (2.0 * n - dist[r]) / static_cast<double>(n);
        chi.coeffs()[r] = std::clamp(ramp, 0.0, 1.0);
    }
    return chi;
}

Cochain0 series_cutoff(const Triangulation& t, VertexId origin, int n,
                       const std::function<double(long)>& denom) {
    if (n < 0) throw Error(ErrorKind::SchemaError, "cut-off index must be >= 0");
    std::vector<int> dist = t.distances_from(origin);
    int top = *std::max_element(dist.begin(), dist.end());
    // chi is constant on spheres; accumulate the ramp once per radius.
    std::vector<double> level(top + 1, 1.0);
    double drop = 0.0;
    for (int d = n + 1; d <= top; ++d) {
        drop += 1.0 / std::sqrt(denom(d - 1));
        level[d] = std::max(0.0, 1.0 - drop);
    }
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        if (dist[r] == top && level[top] > 0.0)
            throw Error(ErrorKind::SupportNotFinite,
                        "ramp still " + std::to_string(level[top]) + " at truncation radius " +
                            std::to_string(top));
    Cochain0 chi(t);
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        chi.coeffs()[r] = level[dist[r]];
    return chi;
}

CutoffSequence bounded_degree_cutoffs(const Triangulation& t, VertexId origin,
                                      const std::vector<int>& indices) {
    CutoffSequence seq;
    seq.provenance = CutoffProvenance::BoundedDegree;
    seq.indices = indices;
    for (int n : indices) {
        seq.plateaus.push_back(t.ball(origin, n));
        seq.chis.push_back(bounded_degree_cutoff(t, origin, n));
    }
    return seq;
}

CutoffSequence series_cutoffs(const Triangulation& t, VertexId origin,
                              const std::vector<int>& indices,
                              const std::function<double(long)>& denom,
                              CutoffProvenance provenance) {
    CutoffSequence seq;
    seq.provenance = provenance;
    seq.indices = indices;
    for (int n : indices) {
        seq.plateaus.push_back(t.ball(origin, n));
        seq.chis.push_back(series_cutoff(t, origin, n, denom));
    }
    return seq;
}

CutoffCheck check_cutoff_sequence(const CutoffSequence& seq) {
    CutoffCheck out;
    for (std::size_t i = 0; i < seq.chis.size(); ++i) {
        const Cochain0& chi = seq.chis[i];
        for (Eigen::Index r = 0; r < chi.coeffs().size(); ++r) {
            double v = chi.coeffs()[r].real();
            if (chi.coeffs()[r].imag() != 0.0 || v < 0.0 || v > 1.0) out.range_ok = false;
        }
        for (VertexId v : seq.plateaus[i])
            if (chi(v) != Cplx(1.0, 0.0)) out.plateau_ok = false;
        out.max_graph_constant = std::max(out.max_graph_constant, graph_constant(chi));
        out.max_face_constant = std::max(out.max_face_constant, face_constant(chi));
    }
    return out;
}

double graph_constant(const Cochain0& chi) {
    const Triangulation& t = chi.complex();
    double best = 0.0;
    for (std::size_t x = 0; x < t.vertex_count(); ++x) {
        double acc = 0.0;
        for (const auto& [y, e] : t.star_at(x)) {
            double diff = std::abs(chi.coeffs()[y] - chi.coeffs()[x]);
            acc += t.edge_weight_at(e) * diff * diff;
        }
        best = std::max(best, acc / t.vertex_weight_at(x));
    }
    return best;
}

double face_constant(const Cochain0& chi) {
    const Triangulation& t = chi.complex();
    double best = 0.0;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        double acc = 0.0;
        for (const auto& [w, f] : t.ring_at(e)) {
            Cplx stencil = 2.0 * chi.coeffs()[w] - chi.coeffs()[a] - chi.coeffs()[b];
            acc += t.face_weight_at(f) * std::norm(stencil);
        }
        best = std::max(best, acc / t.edge_weight_at(e));
    }
    return best;
}

const char* to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::Complete: return "Complete";
    case VerdictStatus::Incomplete: return "Incomplete";
    case VerdictStatus::Unknown: return "Unknown";
    }
    return "?";
}

CompletenessVerdict offspring_verdict(const OffspringSpec& off, int evidence_terms) {
    CompletenessVerdict v;
    double sum = 0.0;
    int terms = evidence_terms;
    if (off.kind == OffspringSpec::Kind::Explicit)
        terms = std::min<int>(terms, static_cast<int>(off.sequence.size()) - 1);
    for (int n = 1; n <= terms; ++n) {
        sum += 1.0 / std::sqrt(off.value(n));
        v.partial_sums.push_back(sum);
    }
    switch (off.kind) {
    case OffspringSpec::Kind::PolynomialFloor:
        if (off.alpha <= 2.0) {
            v.status = VerdictStatus::Complete;
            v.rule = "alpha<=2";
        } else {
            v.status = VerdictStatus::Incomplete;
            v.rule = "alpha>2";
        }
        v.note = "sum n^{-alpha/2} diverges iff alpha <= 2";
        break;
    case OffspringSpec::Kind::Geometric:
        if (off.ratio > 1.0) {
            v.status = VerdictStatus::Incomplete;
            v.rule = "geometric";
            v.note = "sum off(n)^{-1/2} is a convergent geometric series";
        } else {
            v.status = VerdictStatus::Complete;
            v.rule = "bounded";
            v.note = "offspring eventually constant";
        }
        break;
    case OffspringSpec::Kind::Constant:
        v.status = VerdictStatus::Complete;
        v.rule = "constant";
        v.note = "constant terms diverge";
        break;
    case OffspringSpec::Kind::Explicit:
    case OffspringSpec::Kind::Custom: {
        v.status = VerdictStatus::Unknown;
        v.rule = "partial-sums";
        bool dominated = true;
        for (int n = 1; n <= terms; ++n)
            if (off.value(n) > static_cast<double>(n) * n + 1) dominated = false;
        v.note = dominated
                     ? "off(n) <= n^2 + 1 on the sampled range; divergence follows if the bound persists"
                     : "no monotone comparison found on the sampled range";
        break;
    }
    }
    return v;
}

DegreeReport degree_quantities(const Triangulation& t) {
    if (!t.has_layers())
        throw Error(ErrorKind::PartitionViolation, "complex carries no layer decomposition");
    DegreeReport rep;
    std::vector<int> layer(t.vertex_count());
    int top = 0;
    for (std::size_t r = 0; r < t.vertex_count(); ++r) {
        layer[r] = t.layer_at(r);
        top = std::max(top, layer[r]);
    }
    rep.layers = top + 1;

    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        if (std::abs(layer[a] - layer[b]) > 1) {
            EdgeKey k = t.edge_at(e);
            throw Error(ErrorKind::PartitionViolation,
                        "edge (" + std::to_string(k.tail) + "," + std::to_string(k.head) +
                            ") spans layers " + std::to_string(layer[a]) + " and " +
                            std::to_string(layer[b]));
        }
    }

    rep.deg_plus.assign(t.vertex_count(), 0.0);
    rep.deg_minus.assign(t.vertex_count(), 0.0);
    rep.deg_zero.assign(t.vertex_count(), 0.0);
    for (std::size_t x = 0; x < t.vertex_count(); ++x) {
        double cx = t.vertex_weight_at(x);
        for (const auto& [y, e] : t.star_at(x)) {
            double r = t.edge_weight_at(e);
            if (layer[y] == layer[x] + 1) rep.deg_plus[x] += r / cx;
            else if (layer[y] == layer[x] - 1) rep.deg_minus[x] += r / cx;
            else rep.deg_zero[x] += r / cx;
        }
    }

    rep.edge_inter.assign(t.edge_count(), -1.0);
    rep.edge_intra_plus.assign(t.edge_count(), -1.0);
    rep.edge_intra_minus.assign(t.edge_count(), -1.0);
    rep.edge_intra_zero.assign(t.edge_count(), -1.0);
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        double re = t.edge_weight_at(e);
        int la = layer[a], lb = layer[b];
        if (la == lb) {
            double up = 0.0, down = 0.0, same = 0.0;
            for (const auto& [w, f] : t.ring_at(e)) {
                double s = t.face_weight_at(f);
                if (layer[w] == la + 1) up += s;
                else if (layer[w] == la - 1) down += s;
                else same += s;
            }
            rep.edge_intra_plus[e] = up / re;
            rep.edge_intra_minus[e] = down / re;
            rep.edge_intra_zero[e] = same / re;
        } else {
            int n = std::min(la, lb);
            double acc = 0.0;
            for (const auto& [w, f] : t.ring_at(e))
                if (layer[w] == n || layer[w] == n + 1) acc += t.face_weight_at(f);
            rep.edge_inter[e] = acc / re;
        }
    }

    rep.eta_plus.assign(rep.layers, 0.0);
    rep.eta_minus.assign(rep.layers, 0.0);
    rep.beta.assign(rep.layers, 0.0);
    rep.gamma_plus.assign(rep.layers, 0.0);
    rep.gamma_minus.assign(rep.layers, 0.0);
    rep.gamma_zero.assign(rep.layers, 0.0);
    for (std::size_t x = 0; x < t.vertex_count(); ++x) {
        rep.eta_plus[layer[x]] = std::max(rep.eta_plus[layer[x]], rep.deg_plus[x]);
        rep.eta_minus[layer[x]] = std::max(rep.eta_minus[layer[x]], rep.deg_minus[x]);
    }
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        int la = layer[a], lb = layer[b];
        if (la == lb) {
            rep.gamma_plus[la] = std::max(rep.gamma_plus[la], rep.edge_intra_plus[e]);
            rep.gamma_minus[la] = std::max(rep.gamma_minus[la], rep.edge_intra_minus[e]);
            rep.gamma_zero[la] = std::max(rep.gamma_zero[la], rep.edge_intra_zero[e]);
        } else {
            int n = std::min(la, lb);
            rep.beta[n] = std::max(rep.beta[n], rep.edge_inter[e]);
        }
    }
    return rep;
}

std::vector<double> xi_sequence(const DegreeReport& rep, bool tree_variant) {
    std::vector<double> xi;
    for (int n = 0; n + 1 < rep.layers; ++n) {
        double value = rep.eta_plus[n] + rep.eta_minus[n + 1] + rep.beta[n] +
                       rep.gamma_minus[n + 1];
        if (!tree_variant) value += rep.gamma_plus[n];
        xi.push_back(value);
    }
    return xi;
}

CompletenessVerdict xi_verdict(const std::vector<double>& xi, GrowthClass growth,
                               double poly_degree) {
    CompletenessVerdict v;
    double sum = 0.0;
    for (double value : xi) {
        if (value > 0.0) sum += 1.0 / std::sqrt(value);
        v.partial_sums.push_back(sum);
    }
    switch (growth) {
    case GrowthClass::Bounded:
        v.status = VerdictStatus::Complete;
        v.rule = "bounded-xi";
        v.note = "bounded-below terms of a divergent series";
        break;
    case GrowthClass::Polynomial:
        if (poly_degree <= 2.0) {
            v.status = VerdictStatus::Complete;
            v.rule = "xi-poly<=2";
            v.note = "sum n^{-p/2} diverges for p <= 2";
        } else {
            v.status = VerdictStatus::Unknown;
            v.rule = "xi-criterion-inconclusive";
            v.note = "the xi criterion is sufficient only; convergence certifies nothing";
        }
        break;
    case GrowthClass::Exponential:
    case GrowthClass::Unclassified:
        v.status = VerdictStatus::Unknown;
        v.rule = "xi-criterion-inconclusive";
        v.note = "no closed-form growth class supplied";
        break;
    }
    return v;
}

SupportSets support_sets(const Cochain0& chi, const std::vector<VertexId>& plateau) {
    const Triangulation& t = chi.complex();
    SupportSets out;
    std::vector<bool> in_b(t.vertex_count(), false);
    for (VertexId v : plateau) in_b[t.rank_of(v)] = true;

    std::vector<bool> edge_in_supp(t.edge_count());
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        edge_in_supp[e] = chi.coeffs()[a] != chi.coeffs()[b];
        if (in_b[a] || in_b[b]) out.e_n.push_back(t.edge_at(e));
    }
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        const auto& v = t.face_ranks(f);
        if (in_b[v[0]] || in_b[v[1]] || in_b[v[2]]) out.f_n.push_back(t.face_at(f));
    }
    out.f_star.resize(t.edge_count());
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        auto [a, b] = t.edge_ranks(e);
        bool starred = false;
        for (const auto& [w, _] : t.ring_at(e)) {
            std::size_t lo = std::min(a, w), hi = std::max(a, w);
            bool tail_side = edge_in_supp[t.edge_index(t.vertex_at(lo), t.vertex_at(hi))];
            lo = std::min(b, w); hi = std::max(b, w);
            bool head_side = edge_in_supp[t.edge_index(t.vertex_at(lo), t.vertex_at(hi))];
            if (tail_side || head_side) {
                starred = true;
                out.f_star[e].push_back(t.vertex_at(w));
            }
        }
        if (starred) out.e_star.push_back(t.edge_at(e));
    }
    return out;
}

} // namespace trilap
