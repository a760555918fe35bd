#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "trilap/generators.hpp"
#include "trilap/json_io.hpp"

using namespace trilap;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("trilap_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("serialize -> parse -> serialize is byte-identical") {
    for (const Triangulation& t :
         {generate(parse_descriptor(R"({"family":"tree","off":{"kind":"poly","alpha":2.0},"depth":5})")),
          regular_patch(6, 2), bipartite_layer_family({1, 2, 4}, 2)}) {
        std::string first = serialize_complex(t);
        std::string second = serialize_complex(parse_complex(first));
        CHECK(first == second);
    }
}

TEST_CASE("tree descriptor reproduces the recomputed sphere sizes") {
    // off(n) = floor(n^2) + 1 gives sphere sizes 1, 1, 2, 10, 100, 1700.
    Triangulation t = generate(
        parse_descriptor(R"({"family":"tree","off":{"kind":"poly","alpha":2.0},"depth":5})"));
    std::map<int, std::size_t> sizes;
    for (std::size_t r = 0; r < t.vertex_count(); ++r)
        ++sizes[t.layer_at(t.vertex_at(r))];
    CHECK(sizes[0] == 1);
    CHECK(sizes[1] == 1);
    CHECK(sizes[2] == 2);
    CHECK(sizes[3] == 10);
    CHECK(sizes[4] == 100);
    CHECK(sizes[5] == 1700);
}

TEST_CASE("generate is deterministic and round-trips through files") {
    TempDir dir;
    std::string path = dir.file("tree.json");
    CHECK(run_cli({"generate", "--family", "tree", "--off", "poly:2", "--depth", "4", "-o",
                   path}) == 0);
    CHECK(run_cli({"generate", "--family", "tree", "--off", "poly:2", "--depth", "4", "-o",
                   dir.file("tree2.json")}) == 0);

    std::ifstream a(path), b(dir.file("tree2.json"));
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    Triangulation loaded = load_complex(path);
    save_complex(loaded, dir.file("tree3.json"));
    std::ifstream c(dir.file("tree3.json"));
    std::stringstream sc;
    sc << c.rdbuf();
    CHECK(sc.str() == sa.str());

    std::string out;
    CHECK(run_cli({"validate", "--input", path}, &out) == 0);
    CHECK(out.find("valid") == 0);
}

TEST_CASE("exit code contract") {
    TempDir dir;
    // Unknown family: usage error 2.
    std::string err;
    CHECK(run_cli({"generate", "--family", "dodecahedron", "--depth", "2"}, nullptr, &err) == 2);
    CHECK(!err.empty());

    // Malformed JSON input: 2.
    std::string bad = dir.file("bad.json");
    std::ofstream(bad) << "{this is not json";
    CHECK(run_cli({"validate", "--input", bad}) == 2);

    // Valid complex: identities pass with exit 0.
    std::string tri = dir.file("triangle.json");
    CHECK(run_cli({"generate", "--family", "regular", "--radius", "1", "-o", tri}) == 0);
    std::string out;
    CHECK(run_cli({"identities", "--input", tri, "--trials", "10"}, &out) == 0);
    CHECK(out.find("FAIL") == std::string::npos);

    // Unknown subcommand: 2.
    CHECK(run_cli({"frobnicate"}) == 2);
}

TEST_CASE("spectrum CSV of the unit triangle L0 contains 0, 3, 3") {
    TempDir dir;
    std::string tri = dir.file("tri.json");
    Triangulation t = TriangulationBuilder{}
                          .vertex(0)
                          .vertex(1)
                          .vertex(2)
                          .edge(0, 1)
                          .edge(1, 2)
                          .edge(2, 0)
                          .face(0, 1, 2)
                          .build();
    save_complex(t, tri);

    std::string csv;
    CHECK(run_cli({"spectrum", "--op", "L0", "--input", tri}, &csv) == 0);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "index,eigenvalue");
    std::vector<double> values;
    std::string line;
    while (std::getline(lines, line)) {
        auto comma = line.find(',');
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(values.size() == 3);
    CHECK(values[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(values[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(values[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("export writes parseable Matrix Market") {
    TempDir dir;
    std::string tri = dir.file("patch.json");
    CHECK(run_cli({"generate", "--family", "regular", "--radius", "2", "-o", tri}) == 0);
    std::string mm;
    CHECK(run_cli({"export", "--op", "d1", "--input", tri}, &mm) == 0);
    CHECK(mm.rfind("%%MatrixMarket matrix coordinate complex general", 0) == 0);
    std::istringstream in(mm);
    Eigen::SparseMatrix<Cplx> m = read_matrix_market(in);
    CHECK(m.nonZeros() > 0);
}

TEST_CASE("check verdicts through the CLI") {
    std::string out;
    CHECK(run_cli({"check", "--family", "tree", "--off", "poly:3"}, &out) == 0);
    CHECK(out.find("\"Incomplete\"") != std::string::npos);
    CHECK(out.find("alpha>2") != std::string::npos);

    CHECK(run_cli({"check", "--family", "tree", "--off", "poly:2"}, &out) == 0);
    CHECK(out.find("\"Complete\"") != std::string::npos);

    TempDir dir;
    std::string patch = dir.file("patch.json");
    CHECK(run_cli({"generate", "--family", "regular", "--radius", "5", "-o", patch}) == 0);
    CHECK(run_cli({"check", "--input", patch, "--cutoff", "2"}, &out) == 0);
    CHECK(out.find("\"C\"") != std::string::npos);
    CHECK(out.find("\"M\"") != std::string::npos);

    std::string tree = dir.file("tree.json");
    CHECK(run_cli({"generate", "--family", "tree", "--off", "const:2", "--depth", "4", "-o",
                   tree}) == 0);
    CHECK(run_cli({"check", "--input", tree, "--xi", "--tree-variant", "--growth", "bounded"},
                  &out) == 0);
    CHECK(out.find("\"Complete\"") != std::string::npos);
}

TEST_CASE("deficiency subcommand emits report and CSV") {
    TempDir dir;
    std::string report_path = dir.file("report.json");
    std::string csv_path = dir.file("coeffs.csv");
    CHECK(run_cli({"deficiency", "--op", "L2", "--sizes", "1,4,16,64", "--depth", "3", "-o",
                   report_path, "--csv", csv_path}) == 0);

    std::ifstream report(report_path);
    std::stringstream text;
    text << report.rdbuf();
    CHECK(text.str().find("\"operator\": \"L2\"") != std::string::npos);
    CHECK(text.str().find("recurrence_residual") != std::string::npos);

    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "index,abs_coefficient");
}

TEST_CASE("descriptor parsing and serialization") {
    GeneratorDescriptor d =
        parse_descriptor(R"({"family":"bipartite","sizes":[1,4,16],"depth":2})");
    CHECK(d.family == "bipartite");
    CHECK(d.sizes == std::vector<long>{1, 4, 16});
    std::string text = serialize_descriptor(d);
    GeneratorDescriptor back = parse_descriptor(text);
    CHECK(back.family == d.family);
    CHECK(back.sizes == d.sizes);
    CHECK(back.depth == d.depth);

    CHECK_THROWS_WITH_AS(parse_descriptor(R"({"depth":3})"), doctest::Contains("Schema"), Error);
}

TEST_CASE("cochain JSON round-trips on canonical orientations") {
    Triangulation patch = regular_patch(6, 2);

    Cochain1 phi = random_cochain1(patch, 77);
    Cochain1 phi_back = parse_cochain1(patch, serialize_cochain(phi));
    CHECK((phi.coeffs() - phi_back.coeffs()).cwiseAbs().maxCoeff() == 0.0);

    Cochain2 psi = random_cochain2(patch, 78);
    Cochain2 psi_back = parse_cochain2(patch, serialize_cochain(psi));
    CHECK((psi.coeffs() - psi_back.coeffs()).cwiseAbs().maxCoeff() == 0.0);

    Cochain0 f = random_cochain0(patch, std::vector<VertexId>{0, 2, 4}, 79);
    Cochain0 f_back = parse_cochain0(patch, serialize_cochain(f));
    CHECK((f.coeffs() - f_back.coeffs()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_WITH_AS(parse_cochain1(patch, R"({"k":2,"entries":[]})"),
                         doctest::Contains("Schema"), Error);
}
