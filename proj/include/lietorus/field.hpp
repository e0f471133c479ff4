#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N), power basis modulo Phi_N.

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lietorus/errors.hpp"

namespace lietorus {

using Rational = mpq_class;
using Integer = mpz_class;

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

class FieldContext {
 public:
  // Contexts are interned: one object per conductor for the process lifetime.
  static const FieldContext& get(unsigned conductor);

  unsigned conductor() const { return n_; }
  unsigned degree() const { return phi_; }
  // Phi_N, coefficients from low to high degree; monic.
  const std::vector<Integer>& cyclotomic_polynomial() const { return phi_poly_; }
  // Row k - degree() holds x^k mod Phi_N for degree() <= k <= 2 degree() - 2.
  const std::vector<std::vector<Rational>>& reduction_table() const { return table_; }

  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

 private:
  explicit FieldContext(unsigned n);
  unsigned n_;
  unsigned phi_;
  std::vector<Integer> phi_poly_;
  std::vector<std::vector<Rational>> table_;
};

std::vector<Integer> cyclotomic_polynomial(unsigned n);

class Cyclo {
 public:
  using Coeffs = boost::container::small_vector<Rational, 2>;

  Cyclo() = default;  // detached zero; only useful as a placeholder
  explicit Cyclo(const FieldContext& f);
  Cyclo(const FieldContext& f, const Rational& q);
  Cyclo(const FieldContext& f, long q) : Cyclo(f, Rational(q)) {}
  Cyclo(const FieldContext& f, Coeffs coeffs);  // reduces long vectors mod Phi_N

  static Cyclo zero(const FieldContext& f) { return Cyclo(f); }
  static Cyclo one(const FieldContext& f) { return Cyclo(f, 1L); }
  // zeta_N^k for any integer k.
  static Cyclo zeta_power(const FieldContext& f, long k);

  const FieldContext& field() const { return *f_; }
  const FieldContext* field_ptr() const { return f_; }
  unsigned size() const { return static_cast<unsigned>(c_.size()); }
  const Rational& coeff(unsigned i) const { return c_[i]; }
  const Coeffs& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  // Only meaningful when is_rational().
  const Rational& rational() const { return c_[0]; }

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);
  // this += a * b, without a temporary when both are rational.
  void add_mul(const Cyclo& a, const Cyclo& b);
  void sub_mul(const Cyclo& a, const Cyclo& b);

  Cyclo inverse() const;
  Cyclo pow(long e) const;
  // Image under zeta_N -> zeta_N^a, gcd(a, N) = 1.
  Cyclo galois(long a) const;

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Lexicographic order on canonical coefficient vectors.
  friend bool lex_less(const Cyclo& a, const Cyclo& b);

  std::string to_string() const;
  std::vector<std::string> to_strings() const;

 private:
  void check_same(const Cyclo& o, const char* op) const;
  const FieldContext* f_ = nullptr;
  Coeffs c_;
};

// zeta_m = zeta_N^{N/m}.
Cyclo zeta_of_order(const FieldContext& f, unsigned m);

// Embedding Q(zeta_M) -> Q(zeta_N) for M | N.
Cyclo embed(const Cyclo& x, const FieldContext& target);

// Dense polynomial over the field, coefficients low to high; zero polynomial is empty.
class CycloPoly {
 public:
  explicit CycloPoly(const FieldContext& f) : f_(&f) {}
  CycloPoly(const FieldContext& f, std::vector<Cyclo> c);

  const FieldContext& field() const { return *f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Cyclo>& coeffs() const { return c_; }
  const Cyclo& operator[](size_t i) const { return c_[i]; }
  const Cyclo& leading() const { return c_.back(); }

  Cyclo evaluate(const Cyclo& x) const;
  CycloPoly derivative() const;
  CycloPoly monic() const;

  friend CycloPoly operator+(const CycloPoly& a, const CycloPoly& b);
  friend CycloPoly operator-(const CycloPoly& a, const CycloPoly& b);
  friend CycloPoly operator*(const CycloPoly& a, const CycloPoly& b);
  friend bool operator==(const CycloPoly& a, const CycloPoly& b) { return a.c_ == b.c_; }

  // Monic linear factor x - r.
  static CycloPoly linear(const Cyclo& r);
  static CycloPoly x_power(const FieldContext& f, unsigned k);

  std::string to_string() const;

 private:
  void trim();
  const FieldContext* f_;
  std::vector<Cyclo> c_;
};

// Returns (quotient, remainder).
std::pair<CycloPoly, CycloPoly> divmod(const CycloPoly& a, const CycloPoly& b);
CycloPoly poly_gcd(CycloPoly a, CycloPoly b);  // monic

class NonSplittingError : public Error {
 public:
  NonSplittingError(const std::string& operation, CycloPoly factor)
      : Error(ErrorCode::NonSplittingPolynomial, operation,
              "factor without roots in Q(zeta_" + std::to_string(factor.field().conductor()) +
                  "): " + factor.to_string()),
        factor_(std::move(factor)) {}
  const CycloPoly& factor() const { return factor_; }

 private:
  CycloPoly factor_;
};

struct RootWithMultiplicity {
  Cyclo root;
  unsigned multiplicity;
};

// All roots of p if it splits into linear factors over its field; otherwise NonSplittingError.
std::vector<RootWithMultiplicity> split_into_linear_factors(const CycloPoly& p);

}  // namespace lietorus
