#pragma once

#include <iosfwd>
#include <string>

#include "trilap/cochain.hpp"
#include "trilap/completeness.hpp"
#include "trilap/deficiency.hpp"
#include "trilap/generators.hpp"

namespace trilap {

// Complex schema:
//   {"vertices":[{"id":int,"c":float}],
//    "edges":[{"tail":int,"head":int,"r":float}],
//    "faces":[{"v":[int,int,int],"s":float}]}
// One canonical orientation per edge and face in the file; the loader applies
// the symmetric closure. Serialization is deterministic (insertion order for
// vertices, canonical order for edges and faces), so generate -> load ->
// re-serialize is byte-identical.
std::string serialize_complex(const Triangulation& t);
Triangulation parse_complex(const std::string& text);
void save_complex(const Triangulation& t, const std::string& path);
Triangulation load_complex(const std::string& path);

// Cochain schema: {"k":1,"entries":[{"simplex":[x,y],"re":..,"im":..}]} on
// canonical orientations.
std::string serialize_cochain(const Cochain0& f);
std::string serialize_cochain(const Cochain1& phi);
std::string serialize_cochain(const Cochain2& psi);
Cochain0 parse_cochain0(const Triangulation& t, const std::string& text);
Cochain1 parse_cochain1(const Triangulation& t, const std::string& text);
Cochain2 parse_cochain2(const Triangulation& t, const std::string& text);

// Verdict report: {"status":..,"rule":..,"constants":{"C":..,"M":..},
//                  "partial_sums":[..]}.
std::string serialize_verdict(const CompletenessVerdict& v);

std::string serialize_deficiency(const DeficiencyReport& rep);
/// CSV of |C_n| per layer: "index,abs_coefficient".
std::string deficiency_csv(const DeficiencyReport& rep);

// Generator descriptors, e.g.
//   {"family":"tree","off":{"kind":"poly","alpha":2.0},"depth":8}
//   {"family":"regular","radius":3}
//   {"family":"layered","sizes":[2,2,2],"depth":2}
//   {"family":"bipartite","sizes":[1,4,16],"depth":2}
struct GeneratorDescriptor {
    std::string family;
    OffspringSpec off;
    std::vector<long> sizes;
    int depth = 0;
    int radius = 0;
    bool simple = true;
};

GeneratorDescriptor parse_descriptor(const std::string& text);
std::string serialize_descriptor(const GeneratorDescriptor& d);
Triangulation generate(const GeneratorDescriptor& d);

} // namespace trilap
