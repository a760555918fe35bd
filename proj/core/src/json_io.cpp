#include "trilap/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace trilap {

using nlohmann::json;

namespace {

json complex_to_json(const Triangulation& t) {
    json out;
    out["vertices"] = json::array();
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        out["vertices"].push_back({{"id", t.vertex_at(r)}, {"c", t.vertex_weight_at(r)}});
    out["edges"] = json::array();
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        EdgeKey k = t.edge_at(e);
        out["edges"].push_back({{"tail", k.tail}, {"head", k.head}, {"r", t.edge_weight_at(e)}});
    }
    out["faces"] = json::array();
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        auto v = t.face_at(f);
        out["faces"].push_back({{"v", {v[0], v[1], v[2]}}, {"s", t.face_weight_at(f)}});
    }
    if (t.has_layers()) {
        json layers = json::array();
        for (std::size_t r = 0; r < t.vertex_count(); ++r) layers.push_back(t.layer_at(r));
        out["layers"] = layers;
    }
    {
        json rim = json::array();
        for (std::size_t r = 0; r < t.vertex_count(); ++r)
            if (t.is_boundary_at(r)) rim.push_back(t.vertex_at(r));
        if (!rim.empty()) out["boundary"] = rim;
    }
    if (t.origin()) out["origin"] = *t.origin();
    return out;
}

Triangulation complex_from_json(const json& in) {
    if (!in.is_object() || !in.contains("vertices") || !in.contains("edges"))
        throw Error(ErrorKind::SchemaError, "complex JSON needs vertices and edges");
    TriangulationBuilder builder;
    try {
        for (const json& v : in.at("vertices"))
            builder.vertex(v.at("id").get<VertexId>(), v.value("c", 1.0));
        for (const json& e : in.at("edges"))
            builder.edge(e.at("tail").get<VertexId>(), e.at("head").get<VertexId>(),
                         e.value("r", 1.0));
        if (in.contains("faces"))
            for (const json& f : in.at("faces")) {
                const json& v = f.at("v");
                builder.face(v.at(0).get<VertexId>(), v.at(1).get<VertexId>(),
                             v.at(2).get<VertexId>(), f.value("s", 1.0));
            }
        if (in.contains("layers")) {
            const json& layers = in.at("layers");
            const json& vertices = in.at("vertices");
            for (std::size_t i = 0; i < layers.size(); ++i)
                builder.set_layer(vertices.at(i).at("id").get<VertexId>(), layers.at(i).get<int>());
        }
        if (in.contains("boundary"))
            for (const json& v : in.at("boundary")) builder.mark_boundary(v.get<VertexId>());
        if (in.contains("origin")) builder.set_origin(in.at("origin").get<VertexId>());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SchemaError, e.what());
    }
    return builder.build();
}

json parse_text(const std::string& text) {
    json in = json::parse(text, nullptr, false);
    if (in.is_discarded()) throw Error(ErrorKind::SchemaError, "malformed JSON");
    return in;
}

} // namespace

std::string serialize_complex(const Triangulation& t) {
    return complex_to_json(t).dump(2) + "\n";
}

Triangulation parse_complex(const std::string& text) {
    return complex_from_json(parse_text(text));
}

void save_complex(const Triangulation& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "' for writing");
    out << serialize_complex(t);
}

Triangulation load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_complex(buf.str());
}

namespace {

json cochain_entries0(const Cochain0& f) {
    json entries = json::array();
    const Triangulation& t = f.complex();
    for (std::size_t r = 0; r < t.vertex_count(); ++r) {
        Cplx z = f.coeffs()[r];
        if (z != Cplx(0.0, 0.0))
            entries.push_back(
                {{"simplex", {t.vertex_at(r)}}, {"re", z.real()}, {"im", z.imag()}});
    }
    return entries;
}

} // namespace

std::string serialize_cochain(const Cochain0& f) {
    return json{{"k", 0}, {"entries", cochain_entries0(f)}}.dump(2) + "\n";
}

std::string serialize_cochain(const Cochain1& phi) {
    json entries = json::array();
    const Triangulation& t = phi.complex();
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        Cplx z = phi.coeffs()[e];
        if (z == Cplx(0.0, 0.0)) continue;
        EdgeKey k = t.edge_at(e);
        entries.push_back({{"simplex", {k.tail, k.head}}, {"re", z.real()}, {"im", z.imag()}});
    }
    return json{{"k", 1}, {"entries", entries}}.dump(2) + "\n";
}

std::string serialize_cochain(const Cochain2& psi) {
    json entries = json::array();
    const Triangulation& t = psi.complex();
    for (std::size_t f = 0; f < t.face_count(); ++f) {
        Cplx z = psi.coeffs()[f];
        if (z == Cplx(0.0, 0.0)) continue;
        auto v = t.face_at(f);
        entries.push_back({{"simplex", {v[0], v[1], v[2]}}, {"re", z.real()}, {"im", z.imag()}});
    }
    return json{{"k", 2}, {"entries", entries}}.dump(2) + "\n";
}

namespace {

json expect_cochain(const std::string& text, int k) {
    json in = parse_text(text);
    if (in.value("k", -1) != k)
        throw Error(ErrorKind::SchemaError, "expected a cochain of degree " + std::to_string(k));
    return in;
}

} // namespace

Cochain0 parse_cochain0(const Triangulation& t, const std::string& text) {
    json in = expect_cochain(text, 0);
    Cochain0 out(t);
    for (const json& entry : in.at("entries"))
        out.set(entry.at("simplex").at(0).get<VertexId>(),
                Cplx(entry.value("re", 0.0), entry.value("im", 0.0)));
    return out;
}

Cochain1 parse_cochain1(const Triangulation& t, const std::string& text) {
    json in = expect_cochain(text, 1);
    Cochain1 out(t);
    for (const json& entry : in.at("entries")) {
        const json& s = entry.at("simplex");
        out.set(s.at(0).get<VertexId>(), s.at(1).get<VertexId>(),
                Cplx(entry.value("re", 0.0), entry.value("im", 0.0)));
    }
    return out;
}

Cochain2 parse_cochain2(const Triangulation& t, const std::string& text) {
    json in = expect_cochain(text, 2);
    Cochain2 out(t);
    for (const json& entry : in.at("entries")) {
        const json& s = entry.at("simplex");
        out.set(s.at(0).get<VertexId>(), s.at(1).get<VertexId>(), s.at(2).get<VertexId>(),
                Cplx(entry.value("re", 0.0), entry.value("im", 0.0)));
    }
    return out;
}

std::string serialize_verdict(const CompletenessVerdict& v) {
    json out;
    out["status"] = to_string(v.status);
    out["rule"] = v.rule;
    json constants;
    if (v.graph_c >= 0.0) constants["C"] = v.graph_c;
    if (v.face_m >= 0.0) constants["M"] = v.face_m;
    out["constants"] = constants;
    out["partial_sums"] = v.partial_sums;
    if (!v.note.empty()) out["note"] = v.note;
    return out.dump(2) + "\n";
}

std::string serialize_deficiency(const DeficiencyReport& rep) {
    json out;
    out["operator"] = rep.op;
    json coeffs = json::array();
    for (const Cplx& c : rep.coefficients)
        coeffs.push_back({{"re", c.real()}, {"im", c.imag()}});
    out["coefficients"] = coeffs;
    out["recurrence_residual"] = rep.recurrence_residual;
    out["summability_terms"] = rep.summability_terms;
    out["summability_partial_sums"] = rep.summability_partial;
    out["layer_mass"] = rep.layer_mass;
    out["total_mass"] = rep.total_mass;
    out["tail_depth"] = rep.tail_depth;
    out["materialized_depth"] = rep.materialized_depth;
    if (rep.materialized_depth >= 0) {
        out["interior_residual"] = rep.interior_residual;
        out["candidate_norm"] = rep.candidate_norm;
    }
    out["verdict"] = rep.confirmed ? "CandidateConfirmed" : "Inconclusive";
    if (!rep.note.empty()) out["note"] = rep.note;
    return out.dump(2) + "\n";
}

std::string deficiency_csv(const DeficiencyReport& rep) {
    std::string out = "index,abs_coefficient\n";
    char buf[64];
    for (std::size_t i = 0; i < rep.coefficients.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, std::abs(rep.coefficients[i]));
        out += buf;
    }
    return out;
}

GeneratorDescriptor parse_descriptor(const std::string& text) {
    json in = parse_text(text);
    GeneratorDescriptor d;
    try {
        d.family = in.at("family").get<std::string>();
        d.depth = in.value("depth", 0);
        d.radius = in.value("radius", 0);
        d.simple = in.value("simple", true);
        if (in.contains("sizes")) d.sizes = in.at("sizes").get<std::vector<long>>();
        if (in.contains("off")) {
            const json& off = in.at("off");
            std::string kind = off.at("kind").get<std::string>();
            if (kind == "poly") d.off = OffspringSpec::poly(off.at("alpha").get<double>());
            else if (kind == "geom") d.off = OffspringSpec::geometric(off.at("ratio").get<double>());
            else if (kind == "const") d.off = OffspringSpec::constant(off.at("k").get<long>());
            else if (kind == "explicit")
                d.off = OffspringSpec::explicit_sequence(off.at("seq").get<std::vector<long>>());
            else throw Error(ErrorKind::SchemaError, "unknown offspring kind '" + kind + "'");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SchemaError, e.what());
    }
    return d;
}

std::string serialize_descriptor(const GeneratorDescriptor& d) {
    json out;
    out["family"] = d.family;
    if (d.family == "tree") {
        json off;
        switch (d.off.kind) {
        case OffspringSpec::Kind::PolynomialFloor:
            off = {{"kind", "poly"}, {"alpha", d.off.alpha}};
            break;
        case OffspringSpec::Kind::Geometric:
            off = {{"kind", "geom"}, {"ratio", d.off.ratio}};
            break;
        case OffspringSpec::Kind::Constant:
            off = {{"kind", "const"}, {"k", d.off.constant_value}};
            break;
        case OffspringSpec::Kind::Explicit:
            off = {{"kind", "explicit"}, {"seq", d.off.sequence}};
            break;
        case OffspringSpec::Kind::Custom:
            throw Error(ErrorKind::SchemaError, "custom offspring is not serializable");
        }
        out["off"] = off;
        out["depth"] = d.depth;
        if (!d.simple) out["simple"] = false;
    } else if (d.family == "regular") {
        out["radius"] = d.radius;
    } else {
        out["sizes"] = d.sizes;
        out["depth"] = d.depth;
    }
    return out.dump(2) + "\n";
}

Triangulation generate(const GeneratorDescriptor& d) {
    if (d.family == "tree") return triangular_tree(d.off, d.depth, d.simple);
    if (d.family == "regular") return regular_patch(6, d.radius);
    if (d.family == "layered") return layered_triangulation(LayerSpec{d.sizes}, d.depth);
    if (d.family == "bipartite") return bipartite_layer_family(d.sizes, d.depth);
    throw Error(ErrorKind::SchemaError, "unknown family '" + d.family + "'");
}

} // namespace trilap
