#include "lietorus/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lietorus {

namespace {

[[noreturn]] void schema(const std::string& op, const std::string& what) { throw Error(ErrorCode::SchemaError, op, what); }

template <class T>
T get_field(const Json& j, const char* key, const std::string& op) {
  if (!j.is_object() || !j.contains(key)) schema(op, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema(op, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

Cyclo cyclo_from_string(const FieldContext& f, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) schema("cyclo_from_string", "empty string");
  Cyclo total(f);
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string term = s.substr(i, j - i);
    if (term.empty()) schema("cyclo_from_string", "bad element '" + text + "'");
    Rational coeff = 1;
    Cyclo z = Cyclo::one(f);
    const size_t zpos = term.find('z');
    if (zpos == std::string::npos) {
      coeff = rational_from_string(term);
    } else {
      std::string c = term.substr(0, zpos);
      if (!c.empty()) {
        if (c.back() != '*') schema("cyclo_from_string", "expected '*' before z in '" + term + "'");
        c.pop_back();
        coeff = rational_from_string(c);
      }
      std::string rest = term.substr(zpos + 1);
      long power = 1;
      const size_t caret = rest.find('^');
      if (caret != std::string::npos) {
        try {
          power = std::stol(rest.substr(caret + 1));
        } catch (...) {
          schema("cyclo_from_string", "bad exponent in '" + term + "'");
        }
        rest = rest.substr(0, caret);
      }
      unsigned k = 0;
      try {
        k = static_cast<unsigned>(std::stoul(rest));
      } catch (...) {
        schema("cyclo_from_string", "bad root of unity in '" + term + "'");
      }
      if (k == 0 || f.conductor() % k != 0)
        throw Error(ErrorCode::ConductorTooSmall, "cyclo_from_string",
                    "z" + std::to_string(k) + " is not in Q(zeta_" + std::to_string(f.conductor()) + ")");
      z = zeta_of_order(f, k).pow(power);
    }
    total += Cyclo(f, coeff * sign) * z;
    i = j;
  }
  return total;
}

Json cyclo_json(const Cyclo& c) { return c.to_string(); }

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string());
    rows.push_back(r);
  }
  return rows;
}

Mat matrix_from_json(const FieldContext& f, const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) schema("matrix_from_json", "matrix must be a nonempty array of rows");
  const size_t r = j.size(), c = j[0].size();
  Mat m(f, r, c);
  for (size_t a = 0; a < r; ++a) {
    if (!j[a].is_array() || j[a].size() != c) schema("matrix_from_json", "ragged matrix");
    for (size_t b = 0; b < c; ++b) {
      const Json& x = j[a][b];
      if (x.is_string()) m(a, b) = cyclo_from_string(f, x.get<std::string>());
      else if (x.is_number_integer()) m(a, b) = Cyclo(f, x.get<long>());
      else schema("matrix_from_json", "entries must be exact strings or integers");
    }
  }
  return m;
}

IntMat intmat_from_json(const Json& j) {
  try {
    return j.get<IntMat>();
  } catch (const nlohmann::json::exception& e) {
    schema("intmat_from_json", e.what());
  }
}

Json intvec_json(const IntVec& v) { return Json(v); }

Json algebra_json(const LieAlgebra& s) {
  Json br = Json::array();
  for (size_t i = 0; i < s.dim(); ++i)
    for (size_t j = i + 1; j < s.dim(); ++j) {
      const SparseVec& v = s.bracket_basis(i, j);
      if (v.empty()) continue;
      Json terms = Json::array();
      for (const auto& t : v) terms.push_back(Json::array({t.index, t.coeff.to_string()}));
      br.push_back(Json::array({i, j, terms}));
    }
  return {{"conductor", s.field().conductor()}, {"dim", s.dim()}, {"labels", s.labels()}, {"brackets", br}};
}

LieAlgebra algebra_from_json(const Json& j) {
  const std::string op = "algebra_from_json";
  const unsigned n = get_field<unsigned>(j, "conductor", op);
  if (n == 0) schema(op, "conductor must be positive");
  const FieldContext& f = FieldContext::get(n);
  auto labels = get_field<std::vector<std::string>>(j, "labels", op);
  const size_t d = labels.size();
  std::vector<SparseVec> upper(d * d);
  const Json& br = j.contains("brackets") ? j.at("brackets") : Json::array();
  for (const auto& e : br) {
    if (!e.is_array() || e.size() != 3) schema(op, "bracket entries are [i, j, terms]");
    const size_t a = e[0].get<size_t>(), b = e[1].get<size_t>();
    if (a >= b || b >= d) schema(op, "bracket indices must satisfy i < j < dim");
    SparseVec v;
    for (const auto& t : e[2]) {
      if (!t.is_array() || t.size() != 2 || t[0].get<size_t>() >= d) schema(op, "terms are [k, \"coeff\"] with k < dim");
      v.push_back({t[0].get<size_t>(), cyclo_from_string(f, t[1].is_string() ? t[1].get<std::string>() : t[1].dump())});
    }
    upper[a * d + b] = v;
  }
  return LieAlgebra(f, d, std::move(labels), std::move(upper), true);
}

Json subspace_json(const Subspace& w, const std::vector<std::string>& labels) {
  Json b = Json::array();
  for (const auto& v : w.basis()) b.push_back(combination_label(v, labels));
  return {{"dim", w.dim()}, {"basis", b}};
}

Json automorphism_json(const Automorphism& a) {
  return {{"conductor", a.matrix.field().conductor()}, {"order", a.order}, {"matrix", matrix_json(a.matrix)}};
}

Automorphism automorphism_from_json(const LieAlgebra& s, const Json& j) {
  const std::string op = "automorphism_from_json";
  const unsigned n = j.contains("conductor") ? get_field<unsigned>(j, "conductor", op) : s.field().conductor();
  if (n == 0 || s.field().conductor() % n != 0)
    throw Error(ErrorCode::ConductorTooSmall, op,
                "automorphism conductor " + std::to_string(n) + " does not divide " + std::to_string(s.field().conductor()));
  Mat m = matrix_from_json(s.field(), j.at("matrix"));
  std::optional<unsigned> order;
  if (j.contains("order")) order = get_field<unsigned>(j, "order", op);
  return make_automorphism(s, m, order);
}

namespace {

Json module_json(const ModuleReport& m) {
  Json sums = Json::array();
  for (const auto& x : m.summands)
    sums.push_back({{"dimension", x.dimension},
                    {"highest_weight", intvec_json(x.highest_weight_coords)},
                    {"identity", module_identity_name(x.identity)},
                    {"multiplicity", x.multiplicity},
                    {"weights_checked", x.weights_checked}});
  return {{"summands", sums}, {"condition_M", m.a2_shape}};
}

Json roots_json(const RootDatum& rd) {
  Json r = Json::array();
  if (!rd.roots) return r;
  for (const auto& a : rd.roots->roots()) r.push_back(intvec_to_string(a));
  return r;
}

}  // namespace

Json a_report_json(const AReport& r, const LieAlgebra& s) {
  Json comps = Json::array();
  for (size_t i = 0; i < r.grading.characters.size(); ++i)
    comps.push_back({{"character", intvec_json(r.grading.characters[i])}, {"dim", r.grading.components[i].dim()}});
  Json mods = Json::object();
  for (const auto& [c, m] : r.modules) mods[intvec_to_string(c)] = module_json(m);
  Json j = {{"A1", r.a1},
            {"A2", r.a2},
            {"A3", r.a3},
            {"fixed_algebra", subspace_json(r.g, s.labels())},
            {"fixed_simple_reason", r.simplicity.reason},
            {"group_order", r.group.group_order},
            {"invariant_factors", r.group.invariant_factors},
            {"kernel_lattice", r.group.kernel_basis},
            {"components", comps},
            {"modules", mods},
            {"failures", r.failures}};
  if (r.h) j["cartan"] = subspace_json(*r.h, s.labels());
  if (r.delta && r.delta->roots) {
    j["delta_type"] = r.delta->roots->type().name();
    j["delta"] = roots_json(*r.delta);
  }
  if (r.delta_g && r.delta_g->roots) {
    j["delta_g_type"] = r.delta_g->roots->type().name();
    j["delta_ind_equals_delta_g"] = r.delta && r.delta->roots &&
                                    derive_variants(*r.delta->roots).ind.type() == r.delta_g->roots->type();
  }
  if (r.relation) j["relation"] = relation_name(*r.relation);
  return j;
}

Json torus_report_json(const MultiloopTorus& t, const AxiomReport& ax, const SemilatticeReport& sl, const CentralGrading& cg) {
  Json semi = Json::object();
  for (const auto& [a, res] : sl.residues) {
    Json rs = Json::array();
    for (const auto& x : res) rs.push_back(intvec_json(x));
    semi[intvec_to_string(a)] = rs;
  }
  Json supp = Json::array();
  if (t.rd.roots)
    for (const auto& a : t.rd.roots->roots())
      if (t.rd.find_root(a)) supp.push_back(intvec_to_string(a));
  return {{"type", t.rd.roots ? t.rd.roots->type().name() : "unidentified"},
          {"nullity", t.nullity()},
          {"orders", t.m},
          {"supp_Q", supp},
          {"cartan", subspace_json(t.h, t.s.labels())},
          {"axioms",
           {{"LT1", ax.lt1}, {"LT2(i)", ax.lt2i}, {"LT2(ii)", ax.lt2ii}, {"LT3", ax.lt3}, {"LT4", ax.lt4}, {"LT5", ax.lt5}}},
          {"axiom_failures", ax.failures},
          {"semilattices", semi},
          {"semilattice_properties",
           {{"i", sl.p1}, {"ii", sl.p2}, {"iii", sl.p3}, {"iv", sl.p4}, {"v", sl.p5}, {"vi", sl.p6}}},
          {"semilattice_failures", sl.failures},
          {"central_grading", {{"basis", cg.basis}, {"index", cg.index}, {"window_verified", cg.window_verified}}},
          {"is_lie_torus", t.a_conditions && ax.all()}};
}

Json fingerprint_json(const Fingerprint& f) {
  Json prof = Json::array();
  for (const auto& p : f.eigen_profile) {
    Json e = Json::array();
    for (const auto& [o, m] : p) e.push_back(Json::array({o, m}));
    prof.push_back(e);
  }
  return {{"invariant_factors", f.invariant_factors},
          {"fixed_type", f.fixed_type},
          {"delta_type", f.delta_type},
          {"component_dims", f.component_dims},
          {"eigen_profile", prof},
          {"fixed_dims", f.fixed_dims}};
}

Json error_json(const Error& e) {
  return {{"error", {{"code", error_name(e.code())}, {"operation", e.operation()}, {"detail", e.detail()}}}};
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "read_json_file", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, "read_json_file", path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "write_text_file", "cannot open " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write_text_file", "write failed for " + path);
}

}  // namespace lietorus
