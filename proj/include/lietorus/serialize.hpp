#pragma once

// JSON for field elements, matrices, algebras, automorphisms and reports.
// Numbers are exact strings; objects use sorted keys so output is reproducible.

#include <json.hpp>
#include <string>

#include "lietorus/classify.hpp"

namespace lietorus {

using Json = nlohmann::json;

// Accepts "3/4", "-2", "1+z3", "2*z12^5-1/2", "-z4"; zK needs K | conductor.
Cyclo cyclo_from_string(const FieldContext& f, const std::string& s);
Json cyclo_json(const Cyclo& c);

Json matrix_json(const Mat& m);
Mat matrix_from_json(const FieldContext& f, const Json& j);
IntMat intmat_from_json(const Json& j);
Json intvec_json(const IntVec& v);

Json algebra_json(const LieAlgebra& s);
// {"conductor", "labels", "brackets": [[i, j, [[k, "c"], ...]], ...]} with 0-based indices, i < j.
LieAlgebra algebra_from_json(const Json& j);

Json subspace_json(const Subspace& w, const std::vector<std::string>& labels);
Json automorphism_json(const Automorphism& a);
// {"conductor", "matrix", "order"}; order is checked to be exact.
Automorphism automorphism_from_json(const LieAlgebra& s, const Json& j);

Json a_report_json(const AReport& r, const LieAlgebra& s);
Json torus_report_json(const MultiloopTorus& t, const AxiomReport& ax, const SemilatticeReport& sl, const CentralGrading& cg);
Json fingerprint_json(const Fingerprint& f);
Json error_json(const Error& e);

// Sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lietorus
