#include "scenario.hpp"

#include <lietorus/examples.hpp>
#include <numeric>
#include <set>

namespace lietorus::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::SchemaError, "run", what); }

IntMat identity_intmat(size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct Setup {
  LieAlgebra s;
  std::optional<Epinglage> ep;
  std::string source;
  std::optional<RootDatum> rd;  // of a split Cartan of s, for torus automorphisms

  const RootDatum& root_datum() {
    if (!rd) {
      Subspace h = ep ? ep->cartan : cartan_subalgebra(s).h;
      rd = root_space_decomposition(s, h);
    }
    return *rd;
  }
};

Json load_ref(const Json& j) {
  if (j.is_object() && j.contains("file") && j.size() == 1) return read_json_file(j.at("file").get<std::string>());
  return j;
}

unsigned conductor_of(const Json& spec, unsigned fallback) {
  if (!spec.contains("conductor")) return fallback;
  const Json& c = spec.at("conductor");
  if (!c.is_number_integer() || c.get<long>() <= 0) bad("conductor must be a positive integer");
  return c.get<unsigned>();
}

Setup load_algebra(const Json& spec) {
  if (!spec.contains("algebra")) bad("missing 'algebra'");
  const Json a = load_ref(spec.at("algebra"));
  Setup st;
  if (a.is_string() || (a.is_object() && a.contains("type"))) {
    const std::string name = a.is_string() ? a.get<std::string>() : a.at("type").get<std::string>();
    ChevalleyAlgebra c = chevalley_basis(RootSystemType::parse(name), FieldContext::get(conductor_of(spec, 2)));
    st.s = c.algebra;
    st.ep = c.ep;
    st.source = "type " + name;
  } else if (a.is_object() && a.contains("gram")) {
    st.s = orthogonal_algebra(matrix_from_json(FieldContext::get(conductor_of(spec, 2)), a.at("gram")));
    st.source = "orthogonal algebra of a form";
  } else if (a.is_object() && a.contains("constants")) {
    Json c = load_ref(a.at("constants"));
    LieAlgebra raw = algebra_from_json(c);
    const unsigned n = conductor_of(spec, raw.field().conductor());
    if (n % raw.field().conductor() != 0)
      throw Error(ErrorCode::ConductorTooSmall, "run", "conductor does not contain the field of the structure constants");
    st.s = raw.over(FieldContext::get(n));
    st.source = "structure constants";
  } else if (a.is_object() && a.contains("example") && a.at("example") == "b3") {
    st.s = b3_algebra();
    st.source = "o(f), f = diag(J3, I4)";
  } else {
    bad("algebra must be a type name, {\"gram\"}, {\"constants\"} or {\"example\": \"b3\"}");
  }
  return st;
}

std::vector<size_t> perm_from_json(const Json& j, size_t rank) {
  std::vector<size_t> p;
  for (const auto& x : j) {
    long v = x.get<long>();
    if (v < 1 || static_cast<size_t>(v) > rank) bad("diagram permutation entries are 1-based simple indices");
    p.push_back(static_cast<size_t>(v - 1));
  }
  return p;
}

Automorphism load_automorphism(Setup& st, const Json& src0) {
  const Json src = load_ref(src0);
  if (src.is_string() && src == "identity") return identity_automorphism(st.s);
  if (!src.is_object()) bad("automorphism source must be an object or \"identity\"");
  if (src.contains("diagram")) {
    if (!st.ep) bad("diagram automorphisms need a named type");
    return diagram_automorphism(st.s, *st.ep, perm_from_json(src.at("diagram"), st.ep->e.size()));
  }
  if (src.contains("torus")) {
    std::vector<Cyclo> rho;
    for (const auto& x : src.at("torus")) rho.push_back(cyclo_from_string(st.s.field(), x.get<std::string>()));
    return torus_automorphism(st.s, st.root_datum(), rho);
  }
  if (src.contains("conjugation")) return conjugation_automorphism(st.s, matrix_from_json(st.s.field(), src.at("conjugation")));
  if (src.contains("matrix")) return automorphism_from_json(st.s, src);
  bad("unknown automorphism source");
}

AutTuple load_tuple(Setup& st, const Json& spec) {
  Json t = spec.contains("tuple") ? load_ref(spec.at("tuple")) : Json("identity");
  if (t.is_string() && t == "identity") return identity_tuple(st.s, 1);
  if (t.is_object() && t.contains("identity")) return identity_tuple(st.s, t.at("identity").get<size_t>());
  if (t.is_object() && t.contains("example") && t.at("example") == "b3") return b3_tuple(st.s);
  if (t.is_object() && t.contains("automorphisms")) {
    if (t.contains("conductor") && st.s.field().conductor() % t.at("conductor").get<unsigned>() != 0)
      throw Error(ErrorCode::ConductorTooSmall, "run", "tuple conductor does not divide the algebra conductor");
    t = t.at("automorphisms");
  }
  if (!t.is_array() || t.empty()) bad("tuple must be \"identity\", {\"identity\": n} or a nonempty list of automorphisms");
  std::vector<Automorphism> e;
  for (const auto& x : t) e.push_back(load_automorphism(st, x));
  std::vector<unsigned> periods;
  if (spec.contains("periods")) periods = spec.at("periods").get<std::vector<unsigned>>();
  return make_tuple(std::move(e), periods);
}

std::optional<Subspace> load_cartan(Setup& st, const Json& spec, const AutTuple& t) {
  bool trivial = true;
  for (const auto& e : t.entries) trivial = trivial && e.matrix.is_identity();
  if (!spec.contains("cartan")) {
    if (trivial && st.ep) return st.ep->cartan;
    return std::nullopt;
  }
  const Json& c = spec.at("cartan");
  if (c == "auto") return std::nullopt;
  if (c == "chevalley") {
    if (!st.ep) bad("cartan \"chevalley\" needs a named type");
    return st.ep->cartan;
  }
  std::vector<Vec> gens;
  for (const auto& row : c) {
    Vec v;
    for (const auto& x : row) v.push_back(cyclo_from_string(st.s.field(), x.is_string() ? x.get<std::string>() : x.dump()));
    if (v.size() != st.s.dim()) bad("cartan vectors must have length dim s");
    gens.push_back(v);
  }
  return Subspace::span(st.s.field(), st.s.dim(), gens);
}

RootLatticeHom load_shift(const Json& spec, size_t n) {
  if (!spec.contains("shift")) bad("missing 'shift'");
  RootLatticeHom s;
  s.target_rank = static_cast<unsigned>(n);
  s.images = spec.at("shift").get<std::vector<IntVec>>();
  for (const auto& v : s.images)
    if (v.size() != n) bad("each shift vector needs one entry per slot");
  return s;
}

long window_of(const Json& spec) {
  if (spec.contains("window")) return spec.at("window").get<long>();
  return default_window_radius();
}

// The type does not change under field extension, so retry over Q(zeta_lcm(N, 4)) when the
// base field has no split Cartan (o(f) for anisotropic parts of f).
std::string algebra_type(const LieAlgebra& s) {
  std::string last;
  for (unsigned k : {1u, 4u, 12u}) {
    const unsigned n = std::lcm(s.field().conductor(), k);
    try {
      LieAlgebra t = n == s.field().conductor() ? s : s.over(FieldContext::get(n));
      RootDatum rd = root_space_decomposition(t, cartan_subalgebra(t).h);
      return rd.roots ? rd.roots->type().name() : "unidentified";
    } catch (const Error& e) {
      last = error_name(e.code());
      if (!is_field_too_small(e.code()) && e.code() != ErrorCode::NonSplitCartan) break;
    }
  }
  return "unidentified (" + last + ")";
}

void set_check(Outcome& o, const std::string& name, bool ok) {
  o.report["checks"][name] = ok;
  o.pass = o.pass && ok;
}

Json a_checks(Outcome& o, const AReport& r, const LieAlgebra& s) {
  set_check(o, "(A1)", r.a1);
  set_check(o, "(A2)", r.a2);
  set_check(o, "(A3)", r.a3);
  return a_report_json(r, s);
}

void torus_section(Outcome& o, const MultiloopTorus& T, long radius, bool weyl) {
  AxiomReport ax = verify_lie_torus_axioms(T);
  SemilatticeReport sl = support_semilattices(T);
  CentralGrading cg = central_grading_group(T, radius);
  o.report["torus"] = torus_report_json(T, ax, sl, cg);
  set_check(o, "(LT1)", ax.lt1);
  set_check(o, "(LT2)(i)", ax.lt2i);
  set_check(o, "(LT2)(ii)", ax.lt2ii);
  set_check(o, "(LT3)", ax.lt3);
  set_check(o, "(LT4)", ax.lt4);
  set_check(o, "(LT5)", ax.lt5);
  if (!ax.all() || !T.a_conditions) return;
  set_check(o, "semilattice properties", sl.all());
  set_check(o, "central grading window", cg.window_verified);
  GradingPair gp = root_grading_pair(T);
  o.report["root_grading_pair"] = {{"g", subspace_json(gp.g, T.s.labels())}, {"h", subspace_json(gp.h, T.s.labels())},
                                   {"detail", gp.detail}};
  set_check(o, "root grading pair", gp.verified);
  o.report["untwisted"] = untwisted_test(T);
  if (weyl) {
    const auto base = T.delta().base();
    Json w = Json::array();
    bool all = true;
    for (const auto& a : base) {
      WeylWindowReport wr = weyl_automorphism_window(T, a, IntVec(T.nullity(), 0), std::min<long>(radius, 1));
      w.push_back({{"root", intvec_to_string(a)}, {"cells_checked", wr.checked}, {"verified", wr.verified}});
      all = all && wr.verified;
    }
    o.report["weyl_window"] = w;
    set_check(o, "Weyl automorphism degree law", all);
  }
}

Outcome cmd_build(const Json& spec) {
  Outcome o;
  Setup st = load_algebra(spec);
  o.report["algebra"] = {{"source", st.source},
                         {"dim", st.s.dim()},
                         {"conductor", st.s.field().conductor()},
                         {"labels", st.s.labels()},
                         {"type", algebra_type(st.s)}};
  if (spec.value("emit_constants", false)) o.report["constants"] = algebra_json(st.s);
  set_check(o, "Jacobi identity", !st.s.jacobi_violation());
  SimplicityResult sr = is_simple(st.s);
  o.report["algebra"]["simple_reason"] = sr.reason;
  set_check(o, "simple", sr.simple);
  return o;
}

Outcome cmd_grade(const Json& spec) {
  Outcome o;
  Setup st = load_algebra(spec);
  AutTuple t = load_tuple(st, spec);
  CharacterGrading g = grading_by_tuple(st.s, t);
  Json comps = Json::array();
  size_t total = 0;
  for (size_t i = 0; i < g.characters.size(); ++i) {
    comps.push_back({{"character", g.characters[i]}, {"dim", g.components[i].dim()},
                     {"basis", subspace_json(g.components[i], st.s.labels())["basis"]}});
    total += g.components[i].dim();
  }
  bool graded = true;
  for (size_t i = 0; i < g.characters.size(); ++i)
    for (size_t j = i; j < g.characters.size(); ++j) {
      IntVec sum = g.characters[i];
      for (size_t k = 0; k < sum.size(); ++k) sum[k] += g.characters[j][k];
      const Subspace& target = g.component(sum);
      for (const auto& x : g.components[i].basis())
        for (const auto& y : g.components[j].basis()) graded = graded && target.contains(st.s.bracket(x, y));
    }
  o.report["grading"] = {{"modulus", g.modulus}, {"components", comps}};
  set_check(o, "direct sum", total == st.s.dim());
  set_check(o, "bracket respects the grading", graded);
  return o;
}

Outcome cmd_check(const Json& spec, bool full) {
  Outcome o;
  Setup st = load_algebra(spec);
  AutTuple t = load_tuple(st, spec);
  auto h = load_cartan(st, spec, t);
  MultiloopTorus T = build_multiloop(st.s, t, h);
  o.report["A_conditions"] = a_checks(o, T.a_report, st.s);
  torus_section(o, T, window_of(spec), full);
  if (full) o.report["fingerprint"] = fingerprint_json(biiso_fingerprint(T));
  return o;
}

Outcome cmd_isotope(const Json& spec) {
  Outcome o;
  Setup st = load_algebra(spec);
  AutTuple t = load_tuple(st, spec);
  MultiloopTorus T = build_multiloop(st.s, t, load_cartan(st, spec, t));
  RootLatticeHom sh = load_shift(spec, T.nullity());
  IsotopeResult r = make_isotope(T, sh, window_of(spec));
  Json wit = Json::object();
  for (const auto& [a, w] : r.witnesses) wit[intvec_to_string(a)] = subspace_json(w, st.s.labels());
  o.report["isotope"] = {{"shift", sh.images}, {"witnesses", wit}, {"window_verified", r.window_verified}};
  o.report["twisted_A_conditions"] = a_checks(o, r.torus.a_report, st.s);
  set_check(o, "graded isomorphism on the window", r.window_verified);
  CertificateResult c = certificate_check(T, r.torus, identity_intmat(T.nullity()), Mat::identity(st.s.field(), st.s.dim()),
                                          CertificateMode::Isotopy, &r.twist);
  set_check(o, "isotopy certificate", c.valid);
  Fingerprint f1 = biiso_fingerprint(T), f2 = biiso_fingerprint(r.torus);
  o.report["fingerprints"] = {{"original", fingerprint_json(f1)}, {"isotope", fingerprint_json(f2)},
                              {"differing_fields", fingerprint_difference(f1, f2)}};
  return o;
}

Outcome cmd_fingerprint(const Json& spec) {
  Outcome o;
  Setup st = load_algebra(spec);
  AutTuple t = load_tuple(st, spec);
  MultiloopTorus T = build_multiloop(st.s, t, load_cartan(st, spec, t));
  o.report["fingerprint"] = fingerprint_json(biiso_fingerprint(T));
  return o;
}

Outcome cmd_certify(const Json& spec) {
  Outcome o;
  if (!spec.contains("first") || !spec.contains("second")) bad("certify needs 'first' and 'second' scenarios");
  auto build = [](const Json& sc, Setup& st) {
    AutTuple t = load_tuple(st, sc);
    return build_multiloop(st.s, t, load_cartan(st, sc, t));
  };
  Setup s1 = load_algebra(spec.at("first")), s2 = load_algebra(spec.at("second"));
  MultiloopTorus T1 = build(spec.at("first"), s1), T2 = build(spec.at("second"), s2);
  IntMat p = spec.contains("P") ? intmat_from_json(spec.at("P")) : identity_intmat(T1.nullity());
  Mat phi = !spec.contains("phi") || spec.at("phi") == "identity" ? Mat::identity(s2.s.field(), s1.s.dim())
                                                                  : matrix_from_json(s2.s.field(), spec.at("phi"));
  const std::string mode = spec.value("mode", "biiso");
  CertificateResult c;
  if (mode == "biiso") {
    c = certificate_check(T1, T2, p, phi, CertificateMode::Biiso);
  } else if (mode == "isotopy") {
    if (!spec.contains("tau")) bad("isotopy mode needs 'tau'");
    std::vector<Automorphism> taus;
    for (const auto& x : spec.at("tau")) taus.push_back(load_automorphism(s1, x));
    AutTuple tau = make_tuple(taus, T1.m);
    c = certificate_check(T1, T2, p, phi, CertificateMode::Isotopy, &tau);
  } else {
    bad("mode must be biiso or isotopy");
  }
  o.report["certificate"] = {{"mode", mode}, {"valid", c.valid}, {"detail", c.detail}};
  set_check(o, "certificate", c.valid);
  return o;
}

Outcome cmd_normalize(const Json& spec) {
  Outcome o;
  auto m = spec.at("modulus").get<std::vector<long>>();
  IntMat a = intmat_from_json(spec.at("matrix"));
  IntMat b;
  if (spec.contains("witness")) {
    b = intmat_from_json(spec.at("witness"));
  } else {
    for (size_t i = 0; i + 1 < m.size(); ++i)
      if (m[i] <= 0 || m[i] % m[i + 1] != 0)
        throw Error(ErrorCode::DivisibilityChainViolated, "normalize_mod_ideal", "moduli must form a divisibility chain");
    auto w = find_witness(a, m);
    if (!w) throw Error(ErrorCode::NotAWitness, "normalize_mod_ideal", "A is not invertible modulo the ideal");
    b = *w;
  }
  NormalForm nf = normalize_mod_ideal(a, m, b);
  o.report["normal_form"] = {{"P", nf.P}, {"p", nf.p}, {"witness", b}};
  return o;
}

Outcome cmd_orbits(const Json& spec) {
  Outcome o;
  auto f = spec.at("factors").get<std::vector<long>>();
  const size_t n = spec.at("slots").get<size_t>();
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] < 2 || (i + 1 < f.size() && f[i] % f[i + 1] != 0))
      throw Error(ErrorCode::DivisibilityChainViolated, "orbit_representatives", "factors must be > 1 with f_{i+1} | f_i");
  auto reps = orbit_representatives(f, n);
  o.report["orbits"] = {{"p", reps}, {"count", reps.size()}};
  AbelianGroup g(f);
  double size = 1;
  for (size_t i = 0; i < n; ++i) size *= static_cast<double>(g.order());
  if (size <= 1e6) {
    auto part = orbit_partition(g, n);
    std::set<size_t> orbits;
    for (size_t k = 0; k < part.size(); ++k) {
      GroupTuple t = tuple_from_index(g, n, k);
      if (g.generates(t)) orbits.insert(part[k]);
    }
    o.report["orbits"]["oracle_count"] = orbits.size();
    set_check(o, "oracle agrees", orbits.size() == reps.size());
  }
  return o;
}

Outcome cmd_example(const Json& spec) {
  const std::string name = spec.value("name", "");
  if (name == "b3") {
    Outcome o;
    LieAlgebra s = b3_algebra();
    MultiloopTorus T = build_multiloop(s, b3_tuple(s), b3_cartan(s));
    o.report["algebra"] = {{"dim", s.dim()}, {"type", algebra_type(s)}};
    o.report["A_conditions"] = a_checks(o, T.a_report, s);
    torus_section(o, T, window_of(spec), true);
    WeylWindowReport w = weyl_automorphism_window(T, T.delta().base()[0], {1, 0, 0}, 1);
    set_check(o, "Weyl degree law at (1,0,0)", w.verified);
    IsotopeResult iso = make_isotope(T, {3, {{1, 1, 1}}}, window_of(spec));
    Json wit = Json::object();
    for (const auto& [a, sp] : iso.witnesses) wit[intvec_to_string(a)] = subspace_json(sp, s.labels());
    o.report["isotope"] = {{"shift", "(1,1,1)"}, {"witnesses", wit}, {"window_verified", iso.window_verified},
                           {"A_conditions", a_report_json(iso.torus.a_report, s)}};
    set_check(o, "isotope window", iso.window_verified);
    set_check(o, "isotope passes (A1)-(A3)", iso.torus.a_conditions);
    const Vec w71 = matrix_unit_combination(s, {{7, 1, 1}, {3, 7, -1}});
    bool in_fixed = false;
    for (const auto& [a, sp] : iso.witnesses) in_fixed = in_fixed || sp.contains(w71);
    set_check(o, "e71-e37 is a twisted-fixed root vector", in_fixed);
    CertificateResult ci = certificate_check(T, iso.torus, identity_intmat(3), Mat::identity(s.field(), s.dim()),
                                             CertificateMode::Isotopy, &iso.twist);
    set_check(o, "isotopy certificate", ci.valid);
    CertificateResult cb = certificate_check(T, iso.torus, identity_intmat(3), Mat::identity(s.field(), s.dim()), CertificateMode::Biiso);
    set_check(o, "identity is not a bi-isomorphism certificate", !cb.valid);
    Fingerprint f1 = biiso_fingerprint(T), f2 = biiso_fingerprint(iso.torus);
    auto diff = fingerprint_difference(f1, f2);
    o.report["fingerprints"] = {{"original", fingerprint_json(f1)}, {"isotope", fingerprint_json(f2)}, {"differing_fields", diff}};
    set_check(o, "fingerprints differ (not bi-isomorphic)", !diff.empty());
    // Shift (1,1,0): the twisted tuple keeps only k(e11-e33) fixed.
    bool rejected = false;
    try {
      make_isotope(T, {3, {{1, 1, 0}}}, window_of(spec));
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::NotAdmissible;
      o.report["variant"]["error"] = error_json(e)["error"];
    }
    AReport vr = check_A_conditions(s, twisted_tuple(T, {3, {{1, 1, 0}}}));
    o.report["variant"]["A_conditions"] = a_report_json(vr, s);
    set_check(o, "shift (1,1,0) rejected", rejected && !vr.a1 && vr.g == b3_cartan(s));
    set_check(o, "untwisted test is false", !untwisted_test(T));
    return o;
  }
  if (name == "untwisted" || name == "f4-untwisted") {
    Json sc = spec;
    sc["algebra"] = name == "f4-untwisted" ? "F4" : spec.value("type", "A1");
    sc["tuple"] = {{"identity", spec.value("nullity", 1)}};
    sc["conductor"] = 1;
    return cmd_check(sc, true);
  }
  if (name == "diagram") {
    const std::string which = spec.value("type", "A2");
    for (const auto& e : diagram_examples()) {
      if (e.name != which) continue;
      Outcome o;
      DiagramSetup d = diagram_setup(e);
      MultiloopTorus T = build_multiloop(d.c.algebra, d.tuple);
      o.report["automorphism"] = {{"order", d.tuple.entries[0].order}, {"permutation", e.perm}};
      o.report["A_conditions"] = a_checks(o, T.a_report, d.c.algebra);
      const bool rel = T.a_report.relation && *T.a_report.relation != DeltaRelation::Neither;
      set_check(o, "Delta is Delta_g or its enlargement", rel);
      torus_section(o, T, window_of(spec), true);
      return o;
    }
    bad("diagram example must be one of A2, A3, A4, D4, D4-3, E6");
  }
  bad("unknown example '" + name + "'");
}

}  // namespace

Outcome run_scenario(const Json& spec) {
  if (!spec.is_object() || !spec.contains("command")) bad("scenario must be an object with a 'command'");
  const std::string c = spec.at("command").get<std::string>();
  Outcome o;
  try {
    if (c == "build") o = cmd_build(spec);
    else if (c == "grade") o = cmd_grade(spec);
    else if (c == "check") o = cmd_check(spec, false);
    else if (c == "torus") o = cmd_check(spec, true);
    else if (c == "isotope") o = cmd_isotope(spec);
    else if (c == "fingerprint") o = cmd_fingerprint(spec);
    else if (c == "certify") o = cmd_certify(spec);
    else if (c == "normalize") o = cmd_normalize(spec);
    else if (c == "orbits") o = cmd_orbits(spec);
    else if (c == "example") o = cmd_example(spec);
    else bad("unknown command '" + c + "'");
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
  o.report["command"] = spec;
  if (!o.report.contains("checks")) o.report["checks"] = Json::object();
  o.report["pass"] = o.pass;
  return o;
}

int exit_code_for(const Error& e) {
  if (is_field_too_small(e.code())) return 3;
  switch (e.code()) {
    case ErrorCode::SchemaError:
    case ErrorCode::IoError:
    case ErrorCode::InvalidType:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::SingularGram:
    case ErrorCode::NotADiagramSymmetry:
    case ErrorCode::NotAnAutomorphism:
    case ErrorCode::NotInIsometryGroup:
    case ErrorCode::NonCommutingTuple:
    case ErrorCode::ZeroScalar:
    case ErrorCode::NotAWitness:
    case ErrorCode::DivisibilityChainViolated:
    case ErrorCode::TooFewSlots:
    case ErrorCode::NotAnIsomorphism:
    case ErrorCode::NotATorusAutomorphism:
    case ErrorCode::NonCartanInput:
    case ErrorCode::WindowTooSmall:
    case ErrorCode::OrbitTooLarge:
      return 2;
    default:
      return 1;
  }
}

}  // namespace lietorus::cli
