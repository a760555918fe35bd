#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "trilap/assemble.hpp"
#include "trilap/completeness.hpp"
#include "trilap/deficiency.hpp"
#include "trilap/identities.hpp"
#include "trilap/json_io.hpp"

namespace trilap::cli {

namespace {

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << payload;
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "' for writing");
    file << payload;
}

std::vector<long> parse_sizes(const std::string& csv) {
    std::vector<long> sizes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        sizes.push_back(std::stol(item));
    return sizes;
}

GeneratorDescriptor descriptor_from_flags(const std::string& family, const std::string& off,
                                          const std::string& sizes, int depth, int radius,
                                          bool simple) {
    GeneratorDescriptor d;
    d.family = family;
    d.depth = depth;
    d.radius = radius;
    d.simple = simple;
    if (!off.empty()) d.off = OffspringSpec::parse(off);
    if (!sizes.empty()) d.sizes = parse_sizes(sizes);
    return d;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_identities(const Triangulation& t, int trials, std::uint64_t seed, double tol_scale,
                   std::ostream& out) {
    IdentityOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.tolerance_scale = tol_scale;
    IdentityReport report = run_identity_suite(t, opts);
    char buf[160];
    for (const IdentityCheck& check : report.checks) {
        std::snprintf(buf, sizeof buf, "%s %s residual=%.17g tolerance=%.17g%s\n",
                      check.pass ? "ok" : "FAIL", check.name.c_str(), check.residual,
                      check.tolerance, check.skipped ? " (skipped)" : "");
        out << buf;
    }
    if (!report.all_pass) {
        out << "first failing assertion: " << report.first_failure << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"weighted triangulations, their cochain operators, and completeness analyzers"};
    app.require_subcommand(1);

    // generate
    std::string gen_family, gen_off, gen_sizes, gen_descriptor, gen_output;
    int gen_depth = 0, gen_radius = 0;
    bool gen_weighted = false;
    CLI::App* generate_cmd = app.add_subcommand("generate", "emit a complex as JSON");
    generate_cmd->add_option("--family", gen_family, "tree | regular | layered | bipartite");
    generate_cmd->add_option("--off", gen_off, "offspring spec, e.g. poly:2");
    generate_cmd->add_option("--sizes", gen_sizes, "layer sizes, e.g. 1,4,16");
    generate_cmd->add_option("--depth", gen_depth, "truncation depth");
    generate_cmd->add_option("--radius", gen_radius, "patch radius");
    generate_cmd->add_flag("--weighted", gen_weighted, "deterministic non-uniform weights");
    generate_cmd->add_option("--descriptor", gen_descriptor, "JSON descriptor (inline or @file)");
    generate_cmd->add_option("-o,--output", gen_output, "output path (default stdout)");

    // validate
    std::string val_input;
    CLI::App* validate_cmd = app.add_subcommand("validate", "load and validate a complex");
    validate_cmd->add_option("--input", val_input)->required();

    // identities
    std::string id_input;
    int id_trials = 100;
    std::uint64_t id_seed = 42;
    double id_tol_scale = 1.0;
    CLI::App* identities_cmd = app.add_subcommand("identities", "run the operator identity suite");
    identities_cmd->add_option("--input", id_input)->required();
    identities_cmd->add_option("--trials", id_trials);
    identities_cmd->add_option("--seed", id_seed);
    identities_cmd->add_option("--tolerance-scale", id_tol_scale,
                               "multiply every check tolerance");

    // spectrum
    std::string sp_input, sp_op = "L0", sp_output;
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of an operator as CSV");
    spectrum_cmd->add_option("--input", sp_input)->required();
    spectrum_cmd->add_option("--op", sp_op, "d0|delta0|d1|delta1|T|L0|L1|L1minus|L1plus|L2|L");
    spectrum_cmd->add_option("-o,--output", sp_output);

    // export
    std::string ex_input, ex_op = "L0", ex_output;
    CLI::App* export_cmd = app.add_subcommand("export", "Matrix Market export of an operator");
    export_cmd->add_option("--input", ex_input)->required();
    export_cmd->add_option("--op", ex_op);
    export_cmd->add_option("-o,--output", ex_output);

    // check
    std::string ck_family, ck_off, ck_input, ck_growth;
    int ck_cutoff = 0, ck_terms = 32, ck_depth = 0;
    bool ck_xi = false, ck_tree_variant = false;
    std::string ck_output;
    CLI::App* check_cmd = app.add_subcommand("check", "completeness verdicts");
    check_cmd->add_option("--family", ck_family, "closed-form family (tree)");
    check_cmd->add_option("--off", ck_off, "offspring spec for --family tree");
    check_cmd->add_option("--terms", ck_terms, "evidence terms for partial sums");
    check_cmd->add_option("--depth", ck_depth,
                          "also materialize a tree truncation and report the hypothesis");
    check_cmd->add_option("--input", ck_input, "measured mode: complex JSON path");
    check_cmd->add_option("--cutoff", ck_cutoff, "measure C and M for the ramp cut-off chi_n");
    check_cmd->add_flag("--xi", ck_xi, "xi criterion over the layer decomposition");
    check_cmd->add_flag("--tree-variant", ck_tree_variant, "drop gamma+ from xi");
    check_cmd->add_option("--growth", ck_growth, "growth hint: bounded | poly:p | exponential");
    check_cmd->add_option("-o,--output", ck_output);

    // deficiency
    std::string df_op = "L1", df_off, df_sizes, df_output, df_csv;
    int df_depth = 0, df_materialize = -1;
    bool df_no_materialize = false;
    CLI::App* deficiency_cmd = app.add_subcommand("deficiency", "deficiency-vector probes");
    deficiency_cmd->add_option("--op", df_op, "L1 | L2");
    deficiency_cmd->add_option("--off", df_off, "offspring spec (L1)");
    deficiency_cmd->add_option("--sizes", df_sizes, "even sphere sizes (L2)");
    deficiency_cmd->add_option("--depth", df_depth)->required();
    deficiency_cmd->add_option("--materialize", df_materialize, "L1 materialization depth");
    deficiency_cmd->add_flag("--no-materialize", df_no_materialize);
    deficiency_cmd->add_option("-o,--output", df_output);
    deficiency_cmd->add_option("--csv", df_csv, "write |C_n| per layer as CSV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*generate_cmd) {
            GeneratorDescriptor d;
            if (!gen_descriptor.empty()) {
                std::string text = gen_descriptor[0] == '@' ? slurp(gen_descriptor.substr(1))
                                                            : gen_descriptor;
                d = parse_descriptor(text);
            } else {
                d = descriptor_from_flags(gen_family, gen_off, gen_sizes, gen_depth, gen_radius,
                                          !gen_weighted);
            }
            write_output(gen_output, serialize_complex(generate(d)), out);
            return 0;
        }
        if (*validate_cmd) {
            Triangulation t = load_complex(val_input);
            out << "valid: " << t.vertex_count() << " vertices, " << t.edge_count()
                << " edges, " << t.face_count() << " faces\n";
            return 0;
        }
        if (*identities_cmd) {
            return run_identities(load_complex(id_input), id_trials, id_seed, id_tol_scale, out);
        }
        if (*spectrum_cmd) {
            Triangulation t = load_complex(sp_input);
            SpectrumResult s = spectrum(assemble(t, op_from_string(sp_op)));
            std::ostringstream csv;
            write_spectrum_csv(s, csv);
            write_output(sp_output, csv.str(), out);
            return 0;
        }
        if (*export_cmd) {
            Triangulation t = load_complex(ex_input);
            OperatorMatrix m = assemble(t, op_from_string(ex_op));
            std::ostringstream mm;
            write_matrix_market(m, mm);
            write_output(ex_output, mm.str(), out);
            return 0;
        }
        if (*check_cmd) {
            CompletenessVerdict verdict;
            if (!ck_family.empty()) {
                if (ck_family != "tree")
                    throw Error(ErrorKind::SchemaError,
                                "closed-form verdicts exist for --family tree only");
                OffspringSpec off = OffspringSpec::parse(ck_off);
                verdict = offspring_verdict(off, ck_terms);
                if (ck_depth > 0) {
                    // Materialize a truncation and report whether the
                    // uniform-child-count hypothesis holds on it.
                    bool uniform = uniform_child_count(triangular_tree(off, ck_depth));
                    verdict.note += uniform
                                        ? "; off(n) = #(V(x) cap S_{n+1}) holds on the depth-" +
                                              std::to_string(ck_depth) + " truncation"
                                        : "; child counts vary on the materialized truncation";
                }
            } else if (!ck_input.empty() && ck_xi) {
                Triangulation t = load_complex(ck_input);
                DegreeReport rep = degree_quantities(t);
                GrowthClass growth = GrowthClass::Unclassified;
                double degree = 0.0;
                if (ck_growth == "bounded") growth = GrowthClass::Bounded;
                else if (ck_growth.rfind("poly:", 0) == 0) {
                    growth = GrowthClass::Polynomial;
                    degree = std::stod(ck_growth.substr(5));
                } else if (ck_growth == "exponential") growth = GrowthClass::Exponential;
                verdict = xi_verdict(xi_sequence(rep, ck_tree_variant), growth, degree);
            } else if (!ck_input.empty() && ck_cutoff > 0) {
                Triangulation t = load_complex(ck_input);
                VertexId origin = t.origin().value_or(t.vertex_at(0));
                Cochain0 chi = bounded_degree_cutoff(t, origin, ck_cutoff);
                verdict.status = VerdictStatus::Unknown;
                verdict.rule = "measured";
                verdict.graph_c = graph_constant(chi);
                verdict.face_m = face_constant(chi);
                verdict.note = "constants of the ramp cut-off at n = " + std::to_string(ck_cutoff);
            } else {
                throw Error(ErrorKind::SchemaError,
                            "check needs --family tree, --input with --xi, or --input with --cutoff");
            }
            write_output(ck_output, serialize_verdict(verdict), out);
            return 0;
        }
        if (*deficiency_cmd) {
            DeficiencyReport report;
            if (df_op == "L1") {
                if (df_off.empty())
                    throw Error(ErrorKind::SchemaError, "--op L1 needs --off");
                L1Options opts;
                opts.materialize_depth = df_no_materialize ? 0 : df_materialize;
                report = l1_candidate(OffspringSpec::parse(df_off), df_depth, opts);
            } else if (df_op == "L2") {
                if (df_sizes.empty())
                    throw Error(ErrorKind::SchemaError, "--op L2 needs --sizes");
                L2Options opts;
                opts.materialize = !df_no_materialize;
                report = l2_candidate(parse_sizes(df_sizes), df_depth, opts);
            } else {
                throw Error(ErrorKind::SchemaError, "deficiency probes exist for L1 and L2");
            }
            write_output(df_output, serialize_deficiency(report), out);
            if (!df_csv.empty()) write_output(df_csv, deficiency_csv(report), out);
            return 0;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace trilap::cli
