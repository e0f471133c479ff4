#include <doctest.h>

#include <lietorus/rootsys.hpp>
#include <set>

using namespace lietorus;

namespace {

std::vector<std::vector<Rational>> as_rational(const std::vector<IntVec>& roots) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : roots) {
    std::vector<Rational> v;
    for (long x : r) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

// Reflection closure of the simple roots under s_i(b) = b - <b, a_i^vee> a_i.
std::set<IntVec> closure_from_cartan(const IntMat& n) {
  const size_t l = n.size();
  std::set<IntVec> seen;
  std::vector<IntVec> todo;
  for (size_t i = 0; i < l; ++i) {
    IntVec e(l, 0);
    e[i] = 1;
    todo.push_back(e);
  }
  while (!todo.empty()) {
    IntVec b = todo.back();
    todo.pop_back();
    if (!seen.insert(b).second) continue;
    for (size_t i = 0; i < l; ++i) {
      long p = 0;
      for (size_t j = 0; j < l; ++j) p += b[j] * n[j][i];
      IntVec c = b;
      c[i] -= p;
      todo.push_back(c);
    }
  }
  return seen;
}

std::vector<RootSystemType> admissible_up_to_rank6() {
  std::vector<RootSystemType> out;
  for (unsigned l = 1; l <= 6; ++l) {
    out.push_back({Family::A, l});
    out.push_back({Family::BC, l});
    if (l >= 2) out.push_back({Family::B, l});
    if (l >= 3) out.push_back({Family::C, l});
    if (l >= 4) out.push_back({Family::D, l});
  }
  out.push_back({Family::E, 6});
  out.push_back({Family::F, 4});
  out.push_back({Family::G, 2});
  return out;
}

}  // namespace

TEST_CASE("build_root_system examples") {
  CHECK(build_root_system({Family::A, 1}).nonzero_roots().size() == 2);

  auto f4 = build_root_system({Family::F, 4});
  // F4 with long roots first: <a2, a3^vee> = -2.
  IntMat n{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  auto oracle = closure_from_cartan(n);
  CHECK(oracle.size() == 48);
  CHECK(f4.nonzero_roots().size() == 48);
  const auto f4_roots = f4.nonzero_roots();
  std::set<IntVec> lib(f4_roots.begin(), f4_roots.end());
  CHECK(lib == oracle);

  auto bc1 = build_root_system({Family::BC, 1});
  const auto bc1_roots = bc1.nonzero_roots();
  std::set<IntVec> nz(bc1_roots.begin(), bc1_roots.end());
  CHECK(nz == std::set<IntVec>{{1}, {-1}, {2}, {-2}});
  CHECK_FALSE(bc1.is_reduced());
  CHECK(bc1.contains({0}));
}

TEST_CASE("types outside the admissible list") {
  for (RootSystemType t : {RootSystemType{Family::B, 1}, RootSystemType{Family::C, 2}, RootSystemType{Family::D, 3},
                           RootSystemType{Family::E, 9}, RootSystemType{Family::G, 3}, RootSystemType{Family::A, 0}}) {
    CHECK_FALSE(is_admissible(t));
    CHECK_THROWS_AS(build_root_system(t), Error);
  }
  CHECK_THROWS_AS(RootSystemType::parse("Q3"), Error);
  CHECK(RootSystemType::parse("BC2") == RootSystemType{Family::BC, 2});
}

TEST_CASE("derive_variants examples") {
  auto a1 = derive_variants(build_root_system({Family::A, 1}));
  CHECK(a1.en.type() == RootSystemType{Family::BC, 1});
  CHECK(a1.ind.type() == RootSystemType{Family::A, 1});

  auto bc2 = derive_variants(build_root_system({Family::BC, 2}));
  CHECK(bc2.ind.type() == RootSystemType{Family::B, 2});
  CHECK(bc2.ind.is_reduced());

  auto e6 = build_root_system({Family::E, 6});
  auto v = derive_variants(e6);
  CHECK(v.en.roots() == e6.roots());
  CHECK(v.ind.roots() == e6.roots());
  CHECK(v.theta == v.theta_sh);
}

TEST_CASE("identify_type examples") {
  CHECK(identify_type(as_rational({{0}, {1}, {-1}})).name() == "A1");
  // Weights of the B3 example in epsilon-coordinates: eps1, 0, -eps1.
  CHECK(identify_type({{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(0), Rational(0)},
                       {Rational(-1), Rational(0), Rational(0)}})
            .name() == "A1");
  CHECK(identify_type(as_rational({{0}, {1}, {-1}, {2}, {-2}})).name() == "BC1");
  CHECK_THROWS_AS(identify_type(as_rational({{0}, {1}, {-1}, {3}, {-3}})), Error);
  // A1 + A1 is not irreducible.
  CHECK_THROWS_AS(identify_type(as_rational({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}})), Error);
}

TEST_CASE("weyl_orbit examples") {
  auto a1 = build_root_system({Family::A, 1});
  auto o = weyl_orbit(a1, {1});
  CHECK(std::set<IntVec>(o.begin(), o.end()) == std::set<IntVec>{{1}, {-1}});
  CHECK(weyl_orbit(a1, {0}) == std::vector<IntVec>{{0}});

  auto b2 = build_root_system({Family::B, 2});
  IntVec short_root;
  for (const auto& r : b2.nonzero_roots())
    if (b2.is_short(r)) short_root = r;
  auto so = weyl_orbit(b2, short_root);
  CHECK(so.size() == 4);
  for (const auto& r : so) CHECK(b2.is_short(r));
  CHECK_THROWS_AS(weyl_orbit(b2, {5, 5}), Error);
}

TEST_CASE("reflection stability and type identification for every admissible type up to rank 6") {
  for (const auto& t : admissible_up_to_rank6()) {
    CAPTURE(t.name());
    auto d = build_root_system(t);
    CHECK(d.contains(IntVec(t.rank, 0)));
    for (const auto& a : d.nonzero_roots()) {
      CHECK(d.pairing(a, a) == 2);
      for (const auto& b : d.nonzero_roots()) CHECK(d.contains(d.reflect(b, a)));
    }
    CHECK(identify_type(as_rational(d.roots())) == t);
    auto v = derive_variants(d);
    CHECK(v.ind.is_reduced());
    CHECK(derive_variants(v.en).ind.roots() == v.ind.roots());
    CHECK(d.is_reduced() == (t.family != Family::BC));
  }
}

TEST_CASE("root lattice homomorphisms") {
  RootLatticeHom s{3, {{1, 1, 1}, {0, 1, 0}}};
  CHECK(s.apply({2, -1}) == IntVec{2, 1, 2});
  CHECK(s.negated().apply({1, 0}) == IntVec{-1, -1, -1});
  CHECK(intvec_to_string({1, -2}) == "(1,-2)");
}
