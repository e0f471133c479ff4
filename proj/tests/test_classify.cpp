#include <doctest.h>

#include <lietorus/examples.hpp>
#include <lietorus/classify.hpp>
#include <lietorus/intmat.hpp>
#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace lietorus;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

IntMat mul(const IntMat& a, const IntMat& b) {
  IntMat c(a.size(), IntVec(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

long det(const IntMat& a) { return zmat_det(to_zmat(a)).get_si(); }

IntMat diag(const std::vector<long>& d) {
  IntMat m(d.size(), IntVec(d.size(), 0));
  for (size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

void check_normal_form(const IntMat& a, const std::vector<long>& m, const NormalForm& nf) {
  const size_t n = a.size();
  CHECK(std::abs(det(nf.P)) == 1);
  IntVec d(n, 1);
  d[n - 1] = nf.p;
  CHECK(congruent_mod_rows(mul(a, nf.P), diag(d), m));
  const long mn = m[n - 1];
  CHECK(nf.p >= 0);
  CHECK(nf.p <= mn / 2);
  if (mn > 1) CHECK(std::gcd(nf.p, mn) == 1);
  const long da = ((det(a) % mn) + mn) % mn;
  CHECK((da == nf.p % mn || da == (mn - nf.p) % mn));
}

// Products of distinct units mod m up to sign: p in [0, m/2] with gcd(p, m) = 1.
size_t formula_count(const std::vector<long>& f, size_t n) {
  if (f.size() < n) return 1;
  const long mn = f[n - 1];
  size_t c = 0;
  for (long p = 0; p <= mn / 2; ++p) c += std::gcd(p, mn) == 1;
  return c;
}

// (-1)-multiplicity a on k^7 gives dim o(a) + o(7 - a).
size_t fixed_dim_from_signs(const Mat& g) {
  size_t a = 0;
  for (size_t i = 0; i < 7; ++i) a += g(i, i) == Cyclo(g.field(), -1L);
  return a * (a - 1) / 2 + (7 - a) * (6 - a) / 2;
}

MultiloopTorus b3_torus() {
  LieAlgebra s = b3_algebra();
  return build_multiloop(s, b3_tuple(s), b3_cartan(s));
}

const IntMat kId3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

}  // namespace

TEST_CASE("smith_normal_form examples") {
  auto check_snf = [](const IntMat& a, const IntMat& want) {
    SmithForm s = smith_normal_form(to_zmat(a));
    CHECK(zmat_mul(zmat_mul(s.U, to_zmat(a)), s.V) == s.D);
    CHECK(to_intmat(s.D) == want);
    CHECK(abs(zmat_det(s.U)) == 1);
    CHECK(abs(zmat_det(s.V)) == 1);
  };
  check_snf(kId3, kId3);
  check_snf({{4, 0}, {0, 6}}, {{2, 0}, {0, 12}});
  check_snf({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  check_snf({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, {{2, 0, 0}, {0, 6, 0}, {0, 0, 12}});
  CHECK(quotient_invariant_factors(to_zmat({{2, 0}, {0, 2}}), 2) == std::vector<Integer>{2, 2});
}

TEST_CASE("normalize_mod_ideal examples") {
  NormalForm a = normalize_mod_ideal({{1, 0}, {0, 1}}, {2, 2}, {{1, 0}, {0, 1}});
  CHECK(a.p == 1);
  check_normal_form({{1, 0}, {0, 1}}, {2, 2}, a);

  NormalForm b = normalize_mod_ideal({{1, 0}, {0, 2}}, {5, 5}, {{1, 0}, {0, 3}});
  CHECK(b.p == 2);
  check_normal_form({{1, 0}, {0, 2}}, {5, 5}, b);

  NormalForm c = normalize_mod_ideal({{1, 0}, {0, 3}}, {4, 4}, {{1, 0}, {0, 3}});
  CHECK(c.p == 1);
  check_normal_form({{1, 0}, {0, 3}}, {4, 4}, c);

  // Brute-force oracle: (t1, t2^2) and (t1, t2) lie in different orbits of Z/5 x Z/5, (t1, t2^3) with (t1, t2^2).
  AbelianGroup g({5, 5});
  GroupTuple t12{g.encode({1, 0}), g.encode({0, 2})};
  GroupTuple t13{g.encode({1, 0}), g.encode({0, 3})};
  GroupTuple t11{g.encode({1, 0}), g.encode({0, 1})};
  CHECK(canonical_orbit_form(g, t12) == canonical_orbit_form(g, t13));
  CHECK(canonical_orbit_form(g, t12) != canonical_orbit_form(g, t11));
}

TEST_CASE("normalize_mod_ideal input errors") {
  CHECK(code_of([] { normalize_mod_ideal({{1, 0}, {0, 2}}, {5, 5}, {{1, 0}, {0, 1}}); }) == ErrorCode::NotAWitness);
  CHECK(code_of([] { normalize_mod_ideal({{1, 0}, {0, 1}}, {2, 4}, {{1, 0}, {0, 1}}); }) ==
        ErrorCode::DivisibilityChainViolated);
  CHECK_FALSE(find_witness({{1, 0}, {0, 5}}, {5, 5}));
  auto w = find_witness({{2, 1}, {1, 1}}, {6, 3});
  REQUIRE(w);
  CHECK(congruent_mod_rows(mul({{2, 1}, {1, 1}}, *w), {{1, 0}, {0, 1}}, {6, 3}));
}

TEST_CASE("orbit_representatives examples") {
  CHECK(orbit_representatives({2, 2, 2}, 3) == std::vector<long>{1});
  CHECK(orbit_representatives({5, 5}, 2) == std::vector<long>{1, 2});
  CHECK(orbit_representatives({2}, 2) == std::vector<long>{0});
  CHECK(code_of([] { orbit_representatives({2, 2, 2}, 2); }) == ErrorCode::TooFewSlots);
}

TEST_CASE("brute-force oracle examples") {
  AbelianGroup g({5, 5});
  const long t1 = g.encode({1, 0}), t2 = g.encode({0, 1});
  CHECK(canonical_orbit_form(g, {t1, t2}) == canonical_orbit_form(g, {t1, g.neg(t2)}));
  CHECK(canonical_orbit_form(g, {t1, t2}) != canonical_orbit_form(g, {t1, g.mul(t2, 2)}));

  std::mt19937 rng(5);
  AbelianGroup h({6, 2});
  for (int trial = 0; trial < 20; ++trial) {
    GroupTuple t{std::uniform_int_distribution<long>(0, 11)(rng), std::uniform_int_distribution<long>(0, 11)(rng),
                 std::uniform_int_distribution<long>(0, 11)(rng)};
    GroupTuple u = t;
    for (int k = 0; k < 5; ++k) {
      auto moves = elementary_moves(h, u);
      u = moves[std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng)];
    }
    CHECK(canonical_orbit_form(h, t) == canonical_orbit_form(h, u));
  }
  CHECK(code_of([] {
          AbelianGroup big({64});
          canonical_orbit_form(big, {1, 3, 5}, 10);
        }) == ErrorCode::OrbitTooLarge);
}

TEST_CASE("normal form agrees with the oracle for groups of order at most 16") {
  for (const auto& f : abelian_groups_up_to(16)) {
    if (f.empty()) continue;
    AbelianGroup g(f);
    for (size_t n = f.size(); n <= 3; ++n) {
      CAPTURE(f.size());
      CAPTURE(n);
      auto part = orbit_partition(g, n);
      size_t total = 1;
      for (size_t i = 0; i < n; ++i) total *= static_cast<size_t>(g.order());
      std::map<size_t, long> p_of_orbit;
      std::map<long, size_t> orbit_of_p;
      bool consistent = true;
      for (size_t k = 0; k < total; ++k) {
        GroupTuple t = tuple_from_index(g, n, k);
        if (!g.generates(t)) continue;
        long p = tuple_invariant_p(g, t);
        auto [it, fresh] = p_of_orbit.emplace(part[k], p);
        consistent = consistent && it->second == p;
        auto [jt, fresh2] = orbit_of_p.emplace(p, part[k]);
        consistent = consistent && jt->second == part[k];
      }
      CHECK(consistent);
      auto reps = orbit_representatives(f, n);
      CHECK(p_of_orbit.size() == reps.size());
      CHECK(reps.size() == formula_count(f, n));
      if (f.size() < n || f[n - 1] <= 4) CHECK(reps.size() == 1);
    }
  }
}

TEST_CASE("p depends only on the class of A modulo the ideal") {
  std::mt19937 rng(3);
  const std::vector<long> m{12, 6, 3};
  int tested = 0;
  while (tested < 25) {
    IntMat a(3, IntVec(3));
    for (auto& row : a)
      for (auto& x : row) x = std::uniform_int_distribution<long>(-6, 6)(rng);
    auto w = find_witness(a, m);
    if (!w) continue;
    ++tested;
    NormalForm nf = normalize_mod_ideal(a, m, *w);
    check_normal_form(a, m, nf);
    IntMat a2 = a;
    for (size_t i = 0; i < 3; ++i)
      for (auto& x : a2[i]) x += m[i] * std::uniform_int_distribution<long>(-3, 3)(rng);
    CHECK(congruent_mod_rows(a, a2, m));
    auto w2 = find_witness(a2, m);
    REQUIRE(w2);
    CHECK(normalize_mod_ideal(a2, m, *w2).p == nf.p);
  }
}

TEST_CASE("biiso_fingerprint examples") {
  MultiloopTorus T = b3_torus();
  IsotopeResult iso = make_isotope(T, {3, {{1, 1, 1}}}, 1);
  Fingerprint f1 = biiso_fingerprint(T), f2 = biiso_fingerprint(iso.torus);

  // Oracle: fixed dimensions of every group element from its sign pattern on k^7.
  const auto& f = T.s.field();
  std::vector<size_t> o1, o2;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Mat g = b3_sign_matrix(f, 1).pow(a) * b3_sign_matrix(f, 2).pow(b) * b3_sign_matrix(f, 3).pow(c);
        o1.push_back(fixed_dim_from_signs(g));
        Mat d0 = b3_sign_matrix(f, 0).pow((a + b + c) % 2);
        o2.push_back(fixed_dim_from_signs(d0 * g));
      }
  std::sort(o1.begin(), o1.end());
  std::sort(o2.begin(), o2.end());
  CHECK(f1.fixed_dims == o1);
  CHECK(f2.fixed_dims == o2);
  for (size_t d : f1.fixed_dims) CHECK((d == 21 || d == 11 || d == 9));
  CHECK(std::count(f2.fixed_dims.begin(), f2.fixed_dims.end(), 15) >= 1);
  CHECK(f1 != f2);
  auto diff = fingerprint_difference(f1, f2);
  CHECK(std::find(diff.begin(), diff.end(), "fixed_dims") != diff.end());
  CHECK(f1.invariant_factors == f2.invariant_factors);

  MultiloopTorus u = untwisted_torus(RootSystemType::parse("A2"), 1);
  DiagramSetup d = diagram_setup(diagram_examples()[0]);
  MultiloopTorus a2 = build_multiloop(d.c.algebra, d.tuple);
  auto du = fingerprint_difference(biiso_fingerprint(u), biiso_fingerprint(a2));
  CHECK(std::find(du.begin(), du.end(), "invariant_factors") != du.end());

  MultiloopTorus Tp = build_multiloop(T.s, tuple_power_action(T.tuple, {{1, 1, 0}, {0, 1, 0}, {0, 1, 1}}), T.h);
  CHECK(Tp.a_conditions);
  CHECK(biiso_fingerprint(Tp) == f1);
}

TEST_CASE("certificate_check examples") {
  MultiloopTorus T = b3_torus();
  const auto& f = T.s.field();
  const Mat id = Mat::identity(f, 21);
  CHECK(certificate_check(T, T, kId3, id, CertificateMode::Biiso).valid);

  IsotopeResult iso = make_isotope(T, {3, {{1, 1, 1}}}, 1);
  CHECK(certificate_check(T, iso.torus, kId3, id, CertificateMode::Isotopy, &iso.twist).valid);

  // Candidates built from sign changes, coordinate swaps and degree changes never certify a bi-isomorphism.
  std::vector<Mat> phis{id};
  for (int k = 0; k <= 3; ++k) phis.push_back(conjugation_automorphism(T.s, b3_sign_matrix(f, k)).matrix);
  Mat swap = Mat::identity(f, 7);
  swap(3, 3) = swap(4, 4) = Cyclo::zero(f);
  swap(3, 4) = swap(4, 3) = Cyclo::one(f);
  phis.push_back(conjugation_automorphism(T.s, swap).matrix);
  std::vector<IntMat> ps{kId3, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}};
  for (const auto& phi : phis)
    for (const auto& p : ps) CHECK_FALSE(certificate_check(T, iso.torus, p, phi, CertificateMode::Biiso).valid);

  CHECK(code_of([&] { certificate_check(T, T, kId3, Mat(f, 21, 21), CertificateMode::Biiso); }) ==
        ErrorCode::NotAnIsomorphism);
  AutTuple bad = make_tuple({T.tuple.entries[0], T.tuple.entries[0], T.tuple.entries[0]}, {2, 2, 2});
  CHECK(code_of([&] { certificate_check(T, iso.torus, kId3, id, CertificateMode::Isotopy, &bad); }) ==
        ErrorCode::NotATorusAutomorphism);
}

TEST_CASE("fingerprints agree on certified bi-isomorphic pairs") {
  MultiloopTorus T = b3_torus();
  const auto& f = T.s.field();
  Mat swap = Mat::identity(f, 7);
  swap(3, 3) = swap(5, 5) = Cyclo::zero(f);
  swap(3, 5) = swap(5, 3) = Cyclo::one(f);
  Automorphism phi = conjugation_automorphism(T.s, swap);
  Mat inv = *inverse(phi.matrix);
  std::vector<Automorphism> conj;
  for (const auto& e : T.tuple.entries) conj.push_back(make_automorphism(T.s, phi.matrix * e.matrix * inv));

  std::vector<std::pair<MultiloopTorus, std::pair<IntMat, Mat>>> pairs;
  IntMat p{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
  pairs.push_back({build_multiloop(T.s, tuple_power_action(T.tuple, p), T.h), {p, Mat::identity(f, 21)}});
  Subspace h2 = Subspace::span(f, 21, {phi.matrix * T.h.basis()[0]});
  pairs.push_back({build_multiloop(T.s, make_tuple(conj), h2), {kId3, phi.matrix}});
  for (const auto& [T2, cert] : pairs) {
    CertificateResult c = certificate_check(T, T2, cert.first, cert.second, CertificateMode::Biiso);
    CHECK(c.valid);
    if (c.valid) CHECK(biiso_fingerprint(T) == biiso_fingerprint(T2));
  }
}

TEST_CASE("group elements of the B3 tuple") {
  auto elems = group_elements(b3_tuple(b3_algebra()));
  CHECK(elems.size() == 8);
  size_t involutions = 0;
  for (const auto& e : elems) involutions += e.order == 2;
  CHECK(involutions == 7);
}
