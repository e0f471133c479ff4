#include <doctest.h>

#include <lietorus/field.hpp>
#include <algorithm>
#include <random>

using namespace lietorus;

namespace {

Cyclo random_element(const FieldContext& f, std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  Cyclo::Coeffs c;
  for (unsigned i = 0; i < f.degree(); ++i) c.push_back(Rational(num(rng), den(rng)));
  return Cyclo(f, c);
}

CycloPoly poly(const FieldContext& f, std::vector<long> c) {
  std::vector<Cyclo> out;
  for (long x : c) out.emplace_back(f, x);
  return CycloPoly(f, out);
}

}  // namespace

TEST_CASE("examples of field operations") {
  const auto& f2 = FieldContext::get(2);
  CHECK(zeta_of_order(f2, 2) * zeta_of_order(f2, 2) == Cyclo::one(f2));
  CHECK(zeta_of_order(f2, 2) == Cyclo(f2, -1L));

  const auto& f3 = FieldContext::get(3);
  Cyclo z3 = zeta_of_order(f3, 3);
  CHECK((z3 * z3 + z3 + Cyclo::one(f3)).is_zero());

  const auto& f5 = FieldContext::get(5);
  Cyclo a = Cyclo::one(f5) + zeta_of_order(f5, 5);
  Cyclo inv = a.inverse();
  CHECK(inv * a == Cyclo::one(f5));
  CHECK(a * inv == Cyclo::one(f5));
}

TEST_CASE("division by zero and context mismatch") {
  const auto& f3 = FieldContext::get(3);
  const auto& f4 = FieldContext::get(4);
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code_of([&] { (void)Cyclo::zero(f3).inverse(); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([&] { (void)(Cyclo::one(f3) + Cyclo::one(f4)); }) == ErrorCode::ContextMismatch);
  CHECK(code_of([&] { (void)zeta_of_order(f4, 3); }) == ErrorCode::OrderNotDividingConductor);
}

TEST_CASE("zeta_of_order examples") {
  const auto& f12 = FieldContext::get(12);
  CHECK(zeta_of_order(f12, 2) == Cyclo(f12, -1L));
  Cyclo z4 = zeta_of_order(f12, 4);
  CHECK(z4 == Cyclo::zeta_power(f12, 3));
  CHECK(z4 * z4 == zeta_of_order(f12, 2));
  CHECK(z4 * z4 == Cyclo(f12, -1L));

  const auto& f6 = FieldContext::get(6);
  Cyclo z6 = zeta_of_order(f6, 6);
  CHECK(z6.pow(3) == Cyclo(f6, -1L));
  CHECK(z6.pow(6) == Cyclo::one(f6));
}

TEST_CASE("split_into_linear_factors examples") {
  const auto& f2 = FieldContext::get(2);
  auto r = split_into_linear_factors(poly(f2, {-1, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].multiplicity == 1);
  CHECK(r[1].multiplicity == 1);
  std::vector<Cyclo> roots{r[0].root, r[1].root};
  CHECK(std::count(roots.begin(), roots.end(), Cyclo(f2, 1L)) == 1);
  CHECK(std::count(roots.begin(), roots.end(), Cyclo(f2, -1L)) == 1);

  const auto& f3 = FieldContext::get(3);
  auto r3 = split_into_linear_factors(poly(f3, {-1, 0, 0, 1}));
  REQUIRE(r3.size() == 3);
  std::vector<Cyclo> want{Cyclo::one(f3), zeta_of_order(f3, 3), zeta_of_order(f3, 3).pow(2)};
  for (const auto& w : want) {
    bool found = false;
    for (const auto& x : r3) found = found || (x.root == w && x.multiplicity == 1);
    CHECK(found);
  }

  const auto& f4 = FieldContext::get(4);
  // Oracle: no a + b i with small rational a, b squares to 2.
  Cyclo i = zeta_of_order(f4, 4);
  bool oracle_root = false;
  for (long an = -12; an <= 12; ++an)
    for (long bn = -12; bn <= 12; ++bn)
      for (long d = 1; d <= 8; ++d) {
        Cyclo x = Cyclo(f4, Rational(an, d)) + Cyclo(f4, Rational(bn, d)) * i;
        oracle_root = oracle_root || x * x == Cyclo(f4, 2L);
      }
  CHECK_FALSE(oracle_root);
  bool threw = false;
  try {
    split_into_linear_factors(poly(f4, {-2, 0, 1}));
  } catch (const NonSplittingError& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::NonSplittingPolynomial);
    CHECK(e.factor().degree() == 2);
    CHECK(is_field_too_small(e.code()));
  }
  CHECK(threw);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(20261018);
  for (unsigned n : {1u, 3u, 4u, 5u, 8u, 12u}) {
    const auto& f = FieldContext::get(n);
    for (int k = 0; k < 25; ++k) {
      Cyclo a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclo::one(f));
      CHECK(a - a == Cyclo::zero(f));
    }
  }
}

TEST_CASE("roots of unity: exact orders and compatibility up to conductor 24") {
  for (unsigned n = 1; n <= 24; ++n) {
    const auto& f = FieldContext::get(n);
    CHECK(f.degree() + 1 == f.cyclotomic_polynomial().size());
    for (unsigned m = 1; m <= n; ++m) {
      if (n % m) continue;
      Cyclo z = zeta_of_order(f, m);
      CHECK(z.pow(m) == Cyclo::one(f));
      for (unsigned j = 1; j < m; ++j) CHECK(z.pow(j) != Cyclo::one(f));
      for (unsigned l = 1; l * m <= n; ++l)
        if (n % (l * m) == 0) CHECK(zeta_of_order(f, m * l).pow(m) == zeta_of_order(f, l));
    }
  }
}

TEST_CASE("split roots re-expand to the polynomial") {
  const auto& f12 = FieldContext::get(12);
  std::vector<Cyclo> roots{zeta_of_order(f12, 4), zeta_of_order(f12, 4), Cyclo(f12, Rational(-3, 2)), zeta_of_order(f12, 3),
                           zeta_of_order(f12, 12).pow(5)};
  CycloPoly p = CycloPoly(f12, {Cyclo::one(f12)});
  for (const auto& r : roots) p = p * CycloPoly::linear(r);
  auto split = split_into_linear_factors(p);
  CycloPoly back = CycloPoly(f12, {Cyclo::one(f12)});
  unsigned total = 0;
  for (const auto& r : split)
    for (unsigned k = 0; k < r.multiplicity; ++k) {
      back = back * CycloPoly::linear(r.root);
      ++total;
    }
  CHECK(total == 5);
  CHECK(back == p);
  for (size_t k = 1; k < split.size(); ++k) CHECK(lex_less(split[k - 1].root, split[k].root));
}
