#include "lietorus/field.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace lietorus {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::OrderNotDividingConductor: return "OrderNotDividingConductor";
    case ErrorCode::NonSplittingPolynomial: return "NonSplittingPolynomial";
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::NotARootSystem: return "NotARootSystem";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::RootNotInSystem: return "RootNotInSystem";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::NoRegularElementFound: return "NoRegularElementFound";
    case ErrorCode::NonSplitCartan: return "NonSplitCartan";
    case ErrorCode::NotAdDiagonalizable: return "NotAdDiagonalizable";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NonSplitWeights: return "NonSplitWeights";
    case ErrorCode::NotADiagramSymmetry: return "NotADiagramSymmetry";
    case ErrorCode::ExtensionInconsistent: return "ExtensionInconsistent";
    case ErrorCode::ZeroScalar: return "ZeroScalar";
    case ErrorCode::NotInIsometryGroup: return "NotInIsometryGroup";
    case ErrorCode::NonCommutingTuple: return "NonCommutingTuple";
    case ErrorCode::ConductorTooSmall: return "ConductorTooSmall";
    case ErrorCode::NonCartanInput: return "NonCartanInput";
    case ErrorCode::HomogeneityViolation: return "HomogeneityViolation";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NotAWitness: return "NotAWitness";
    case ErrorCode::DivisibilityChainViolated: return "DivisibilityChainViolated";
    case ErrorCode::TooFewSlots: return "TooFewSlots";
    case ErrorCode::OrbitTooLarge: return "OrbitTooLarge";
    case ErrorCode::NotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorCode::NotATorusAutomorphism: return "NotATorusAutomorphism";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_field_too_small(ErrorCode c) {
  return c == ErrorCode::NonSplittingPolynomial || c == ErrorCode::ConductorTooSmall ||
         c == ErrorCode::NonSplitCartan || c == ErrorCode::NonSplitWeights ||
         c == ErrorCode::OrderNotDividingConductor;
}

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational q;
  std::string t;
  for (char ch : s)
    if (ch != ' ') t.push_back(ch);
  if (t.empty() || q.set_str(t, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorCode::SchemaError, "rational_from_string", "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Integer> int_poly_div_exact(std::vector<Integer> a, const std::vector<Integer>& b) {
  // b monic
  std::vector<Integer> q(a.size() - b.size() + 1);
  for (size_t i = q.size(); i-- > 0;) {
    Integer c = a[i + b.size() - 1];
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  return q;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
  static std::map<unsigned, std::vector<Integer>> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  std::vector<Integer> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = int_poly_div_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  memo[n] = p;
  return p;
}

FieldContext::FieldContext(unsigned n) : n_(n) {
  phi_poly_ = lietorus::cyclotomic_polynomial(n);
  phi_ = static_cast<unsigned>(phi_poly_.size() - 1);
  // x^phi = -sum_{j<phi} a_j x^j, then shift.
  std::vector<Rational> cur(phi_);
  for (unsigned j = 0; j < phi_; ++j) cur[j] = -Rational(phi_poly_[j]);
  for (unsigned k = phi_; k + 1 < 2 * phi_; ++k) {
    table_.push_back(cur);
    Rational top = cur[phi_ - 1];
    for (unsigned j = phi_ - 1; j > 0; --j) cur[j] = cur[j - 1] - top * Rational(phi_poly_[j]);
    cur[0] = -top * Rational(phi_poly_[0]);
  }
}

const FieldContext& FieldContext::get(unsigned conductor) {
  if (conductor == 0) throw Error(ErrorCode::InvalidType, "FieldContext::get", "conductor must be positive");
  static std::map<unsigned, std::unique_ptr<FieldContext>> pool;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = pool[conductor];
  if (!slot) slot.reset(new FieldContext(conductor));
  return *slot;
}

// ---------------------------------------------------------------------------

Cyclo::Cyclo(const FieldContext& f) : f_(&f), c_(f.degree()) {}

Cyclo::Cyclo(const FieldContext& f, const Rational& q) : f_(&f), c_(f.degree()) {
  c_[0] = q;
  c_[0].canonicalize();
}

Cyclo::Cyclo(const FieldContext& f, Coeffs coeffs) : f_(&f), c_(std::move(coeffs)) {
  const unsigned phi = f.degree();
  if (c_.size() > phi) {
    const auto& phi_poly = f.cyclotomic_polynomial();
    for (size_t k = c_.size(); k-- > phi;) {
      Rational top = c_[k];
      if (top == 0) continue;
      for (unsigned j = 0; j < phi; ++j) c_[k - phi + j] -= top * phi_poly[j];
      c_[k] = 0;
    }
  }
  c_.resize(phi);
  for (auto& q : c_) q.canonicalize();
}

Cyclo Cyclo::zeta_power(const FieldContext& f, long k) {
  long n = f.conductor();
  long e = ((k % n) + n) % n;
  Coeffs c(static_cast<size_t>(e) + 1);
  c[static_cast<size_t>(e)] = 1;
  return Cyclo(f, std::move(c));
}

void Cyclo::check_same(const Cyclo& o, const char* op) const {
  if (f_ != o.f_) {
    throw Error(ErrorCode::ContextMismatch, op,
                "conductors " + std::to_string(f_ ? f_->conductor() : 0) + " and " +
                    std::to_string(o.f_ ? o.f_->conductor() : 0));
  }
}

bool Cyclo::is_zero() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool Cyclo::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Cyclo Cyclo::operator-() const {
  Cyclo r(*this);
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  check_same(o, "add");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  check_same(o, "sub");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  a.check_same(b, "mul");
  const unsigned phi = a.f_->degree();
  if (phi == 1) {
    Cyclo r(*a.f_);
    r.c_[0] = a.c_[0] * b.c_[0];
    return r;
  }
  std::vector<Rational> t(2 * phi - 1);
  for (unsigned i = 0; i < phi; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (unsigned j = 0; j < phi; ++j)
      if (sgn(b.c_[j]) != 0) t[i + j] += a.c_[i] * b.c_[j];
  }
  Cyclo r(*a.f_);
  for (unsigned i = 0; i < phi; ++i) r.c_[i] = t[i];
  const auto& table = a.f_->reduction_table();
  for (unsigned k = phi; k < 2 * phi - 1; ++k) {
    if (sgn(t[k]) == 0) continue;
    const auto& row = table[k - phi];
    for (unsigned j = 0; j < phi; ++j)
      if (sgn(row[j]) != 0) r.c_[j] += t[k] * row[j];
  }
  return r;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (f_ && f_->degree() == 1 && o.f_ == f_) {
    c_[0] *= o.c_[0];
    return *this;
  }
  *this = *this * o;
  return *this;
}

void Cyclo::add_mul(const Cyclo& a, const Cyclo& b) {
  if (f_->degree() == 1 && a.f_ == f_ && b.f_ == f_) {
    if (sgn(a.c_[0]) != 0 && sgn(b.c_[0]) != 0) c_[0] += a.c_[0] * b.c_[0];
    return;
  }
  *this += a * b;
}

void Cyclo::sub_mul(const Cyclo& a, const Cyclo& b) {
  if (f_->degree() == 1 && a.f_ == f_ && b.f_ == f_) {
    if (sgn(a.c_[0]) != 0 && sgn(b.c_[0]) != 0) c_[0] -= a.c_[0] * b.c_[0];
    return;
  }
  *this -= a * b;
}

namespace {

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// a = q*b + r over Q
void qdivmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  qtrim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  Rational lead_inv = 1 / b.back();
  while (a.size() >= b.size() && !a.empty()) {
    size_t shift = a.size() - b.size();
    Rational c = a.back() * lead_inv;
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    a.pop_back();
    qtrim(a);
  }
  r = a;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qtrim(r);
  return r;
}

}  // namespace

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse", "zero has no inverse");
  const unsigned phi = f_->degree();
  if (phi == 1) {
    Cyclo r(*f_);
    r.c_[0] = 1 / c_[0];
    return r;
  }
  QPoly r0, r1(c_.begin(), c_.end());
  for (const auto& z : f_->cyclotomic_polynomial()) r0.push_back(Rational(z));
  qtrim(r1);
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    qdivmod(r0, r1, q, r);
    QPoly s = qsub(s0, qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  Rational c = r1[0];
  Coeffs out(s1.size());
  for (size_t i = 0; i < s1.size(); ++i) out[i] = s1[i] / c;
  Cyclo res(*f_, std::move(out));
  return res;
}

Cyclo& Cyclo::operator/=(const Cyclo& o) {
  check_same(o, "div");
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "div", "division by zero");
  if (f_->degree() == 1) {
    c_[0] /= o.c_[0];
    return *this;
  }
  *this = *this * o.inverse();
  return *this;
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo result = one(*f_);
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Cyclo Cyclo::galois(long a) const {
  Cyclo r(*f_);
  for (unsigned i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    r += Cyclo(*f_, c_[i]) * zeta_power(*f_, a * static_cast<long>(i));
  }
  return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  a.check_same(b, "eq");
  for (size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

bool lex_less(const Cyclo& a, const Cyclo& b) {
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string Cyclo::to_string() const {
  if (!f_) return "0";
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << (sgn(c_[i]) > 0 ? "+" : "");
    first = false;
    if (i == 0) {
      os << c_[i].get_str();
      continue;
    }
    if (c_[i] == -1) os << "-";
    else if (c_[i] != 1) os << c_[i].get_str() << "*";
    os << "z" << f_->conductor();
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::vector<std::string> Cyclo::to_strings() const {
  std::vector<std::string> out;
  for (const auto& q : c_) out.push_back(rational_to_string(q));
  return out;
}

Cyclo zeta_of_order(const FieldContext& f, unsigned m) {
  if (m == 0 || f.conductor() % m != 0)
    throw Error(ErrorCode::OrderNotDividingConductor, "zeta_of_order",
                std::to_string(m) + " does not divide " + std::to_string(f.conductor()));
  return Cyclo::zeta_power(f, static_cast<long>(f.conductor() / m));
}

Cyclo embed(const Cyclo& x, const FieldContext& target) {
  const FieldContext& src = x.field();
  if (&src == &target) return x;
  if (target.conductor() % src.conductor() != 0)
    throw Error(ErrorCode::ContextMismatch, "embed",
                "conductor " + std::to_string(src.conductor()) + " does not divide " +
                    std::to_string(target.conductor()));
  long step = target.conductor() / src.conductor();
  Cyclo r(target);
  for (unsigned i = 0; i < x.size(); ++i)
    if (sgn(x.coeff(i)) != 0) r += Cyclo(target, x.coeff(i)) * Cyclo::zeta_power(target, step * i);
  return r;
}

// ---------------------------------------------------------------------------

CycloPoly::CycloPoly(const FieldContext& f, std::vector<Cyclo> c) : f_(&f), c_(std::move(c)) { trim(); }

void CycloPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Cyclo CycloPoly::evaluate(const Cyclo& x) const {
  Cyclo r(*f_);
  for (size_t i = c_.size(); i-- > 0;) {
    r *= x;
    r += c_[i];
  }
  return r;
}

CycloPoly CycloPoly::derivative() const {
  std::vector<Cyclo> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Cyclo(*f_, static_cast<long>(i)));
  return CycloPoly(*f_, std::move(d));
}

CycloPoly CycloPoly::monic() const {
  if (c_.empty()) return *this;
  Cyclo inv = c_.back().inverse();
  std::vector<Cyclo> d;
  for (const auto& c : c_) d.push_back(c * inv);
  return CycloPoly(*f_, std::move(d));
}

CycloPoly operator+(const CycloPoly& a, const CycloPoly& b) {
  std::vector<Cyclo> r(std::max(a.c_.size(), b.c_.size()), Cyclo(*a.f_));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return CycloPoly(*a.f_, std::move(r));
}

CycloPoly operator-(const CycloPoly& a, const CycloPoly& b) {
  std::vector<Cyclo> r(std::max(a.c_.size(), b.c_.size()), Cyclo(*a.f_));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return CycloPoly(*a.f_, std::move(r));
}

CycloPoly operator*(const CycloPoly& a, const CycloPoly& b) {
  if (a.is_zero() || b.is_zero()) return CycloPoly(*a.f_);
  std::vector<Cyclo> r(a.c_.size() + b.c_.size() - 1, Cyclo(*a.f_));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j].add_mul(a.c_[i], b.c_[j]);
  return CycloPoly(*a.f_, std::move(r));
}

CycloPoly CycloPoly::linear(const Cyclo& r) {
  return CycloPoly(r.field(), {-r, Cyclo::one(r.field())});
}

CycloPoly CycloPoly::x_power(const FieldContext& f, unsigned k) {
  std::vector<Cyclo> c(k + 1, Cyclo(f));
  c[k] = Cyclo::one(f);
  return CycloPoly(f, std::move(c));
}

std::string CycloPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    if (i > 0) os << "*x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<CycloPoly, CycloPoly> divmod(const CycloPoly& a, const CycloPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "poly_divmod", "zero divisor");
  const FieldContext& f = a.field();
  std::vector<Cyclo> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {CycloPoly(f), a};
  std::vector<Cyclo> q(static_cast<size_t>(a.degree() - db + 1), Cyclo(f));
  Cyclo lead_inv = b.leading().inverse();
  for (int k = a.degree() - db; k >= 0; --k) {
    Cyclo c = r[static_cast<size_t>(k + db)] * lead_inv;
    if (c.is_zero()) continue;
    q[static_cast<size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k + j)].sub_mul(c, b[static_cast<size_t>(j)]);
  }
  r.resize(static_cast<size_t>(db));
  return {CycloPoly(f, std::move(q)), CycloPoly(f, std::move(r))};
}

CycloPoly poly_gcd(CycloPoly a, CycloPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------------------------
// Root extraction: roots of unity by trial, everything else through numeric
// approximation under enough complex embeddings, rational reconstruction and
// an exact check. Anything not found this way is reported as non-splitting.

namespace {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_50;
using Complex = mp::cpp_complex_50;

Real to_real(const Rational& q) {
  Real n(q.get_num().get_str());
  Real d(q.get_den().get_str());
  return n / d;
}

std::vector<Complex> embedding_powers(const FieldContext& f, long a) {
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  std::vector<Complex> w(f.degree());
  for (unsigned j = 0; j < f.degree(); ++j) {
    Real ang = two_pi * Real(a * static_cast<long>(j) % static_cast<long>(f.conductor())) / Real(f.conductor());
    w[j] = Complex(cos(ang), sin(ang));
  }
  return w;
}

Complex numeric(const Cyclo& c, const std::vector<Complex>& w) {
  Complex s(0);
  for (unsigned j = 0; j < c.size(); ++j)
    if (sgn(c.coeff(j)) != 0) s += w[j] * to_real(c.coeff(j));
  return s;
}

// Aberth iteration; p monic square-free of degree >= 1 with numeric coefficients.
std::vector<Complex> numeric_roots(const std::vector<Complex>& p) {
  const size_t n = p.size() - 1;
  std::vector<Complex> z(n);
  Real bound = 0;
  for (size_t i = 0; i < n; ++i) bound = std::max(bound, Real(abs(p[i])));
  bound += 1;
  for (size_t k = 0; k < n; ++k) {
    Real ang = 2 * boost::math::constants::pi<Real>() * (Real(k) + Real("0.25")) / Real(n) + Real("0.4");
    z[k] = Complex(bound * cos(ang) / 2, bound * sin(ang) / 2);
  }
  auto eval = [&](const Complex& x, Complex& val, Complex& der) {
    val = p[n];
    der = Complex(0);
    for (size_t i = n; i-- > 0;) {
      der = der * x + val;
      val = val * x + p[i];
    }
  };
  const Real tol("1e-45");
  for (int it = 0; it < 2000; ++it) {
    Real maxstep = 0;
    for (size_t k = 0; k < n; ++k) {
      Complex val, der;
      eval(z[k], val, der);
      if (abs(val) == 0) continue;
      Complex ratio = val / der;
      Complex sum(0);
      for (size_t j = 0; j < n; ++j)
        if (j != k) sum += Complex(1) / (z[k] - z[j]);
      Complex step = ratio / (Complex(1) - ratio * sum);
      z[k] -= step;
      maxstep = std::max(maxstep, Real(abs(step)));
    }
    if (maxstep < tol) break;
  }
  return z;
}

bool reconstruct(const Real& x, Rational& out) {
  Real y = x;
  Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents
  const Real tol("1e-30");
  for (int it = 0; it < 80; ++it) {
    Real fl = floor(y);
    Integer a(static_cast<mp::cpp_int>(fl).str());
    Integer h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    if (abs(k) > Integer("1000000000000000")) return false;
    Rational cand(h, k);
    cand.canonicalize();
    if (abs(to_real(cand) - x) < tol * (1 + abs(x))) {
      out = cand;
      return true;
    }
    Real frac = y - fl;
    if (frac == 0) return false;
    y = 1 / frac;
  }
  return false;
}

// Solve a dense real system by Gaussian elimination with partial pivoting.
bool real_solve(std::vector<std::vector<Real>> a, std::vector<Real> b, std::vector<Real>& x) {
  const size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (abs(a[piv][c]) < Real("1e-40")) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      Real m = a[r][c] / a[c][c];
      if (m == 0) continue;
      for (size_t k = c; k < n; ++k) a[r][k] -= m * a[c][k];
      b[r] -= m * b[c];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

unsigned strip_root(CycloPoly& q, const Cyclo& r) {
  unsigned mult = 0;
  CycloPoly lin = CycloPoly::linear(r);
  while (q.degree() >= 1) {
    auto [quo, rem] = divmod(q, lin);
    if (!rem.is_zero()) break;
    q = std::move(quo);
    ++mult;
  }
  return mult;
}

}  // namespace

std::vector<RootWithMultiplicity> split_into_linear_factors(const CycloPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::DivisionByZero, "split_into_linear_factors", "zero polynomial");
  const FieldContext& f = p.field();
  std::vector<RootWithMultiplicity> roots;
  CycloPoly q = p.monic();

  auto try_root = [&](const Cyclo& r) {
    if (q.degree() < 1) return;
    unsigned m = strip_root(q, r);
    if (m > 0) roots.push_back({r, m});
  };

  try_root(Cyclo::zero(f));
  for (long k = 0; k < static_cast<long>(f.conductor()); ++k) {
    Cyclo z = Cyclo::zeta_power(f, k);
    try_root(z);
    try_root(-z);
  }

  int guard = 0;
  while (q.degree() >= 1 && guard++ < 64) {
    CycloPoly sq = q;
    CycloPoly g = poly_gcd(q, q.derivative());
    if (g.degree() > 0) sq = divmod(q, g).first.monic();

    // Representatives of the embeddings modulo complex conjugation.
    std::vector<long> embs;
    for (long a = 1; a < static_cast<long>(f.conductor()) || a == 1; ++a) {
      if (std::gcd(a, static_cast<long>(f.conductor())) != 1) continue;
      long neg = (static_cast<long>(f.conductor()) - a) % static_cast<long>(f.conductor());
      if (std::find(embs.begin(), embs.end(), neg) != embs.end() && f.degree() > 1) continue;
      embs.push_back(a);
      if (embs.size() * 2 >= f.degree()) break;
    }
    const unsigned phi = f.degree();
    std::vector<std::vector<Complex>> powers;
    std::vector<std::vector<Complex>> zs;
    for (long a : embs) {
      powers.push_back(embedding_powers(f, a));
      std::vector<Complex> nc;
      for (const auto& c : sq.coeffs()) nc.push_back(numeric(c, powers.back()));
      zs.push_back(numeric_roots(nc));
    }

    bool found = false;
    const size_t d = static_cast<size_t>(sq.degree());
    size_t combos = 1;
    for (size_t i = 1; i < embs.size(); ++i) {
      combos *= d;
      if (combos > 2000000) break;
    }
    std::vector<size_t> idx(embs.size(), 0);
    for (size_t first = 0; first < d && !found; ++first) {
      std::fill(idx.begin(), idx.end(), 0);
      idx[0] = first;
      for (size_t c = 0; c < combos && !found; ++c) {
        size_t t = c;
        for (size_t i = 1; i < embs.size(); ++i) {
          idx[i] = t % d;
          t /= d;
        }
        Cyclo::Coeffs coeffs(phi);
        bool ok = true;
        if (phi == 1) {
          ok = abs(zs[0][idx[0]].imag()) < Real("1e-30") && reconstruct(zs[0][idx[0]].real(), coeffs[0]);
        } else {
          std::vector<std::vector<Real>> a;
          std::vector<Real> b;
          for (size_t e = 0; e < embs.size(); ++e) {
            std::vector<Real> re(phi), im(phi);
            for (unsigned j = 0; j < phi; ++j) {
              re[j] = powers[e][j].real();
              im[j] = powers[e][j].imag();
            }
            a.push_back(re);
            b.push_back(zs[e][idx[e]].real());
            a.push_back(im);
            b.push_back(zs[e][idx[e]].imag());
          }
          a.resize(phi);
          b.resize(phi);
          std::vector<Real> x;
          ok = real_solve(a, b, x);
          for (unsigned j = 0; ok && j < phi; ++j) ok = reconstruct(x[j], coeffs[j]);
        }
        if (!ok) continue;
        Cyclo r(f, std::move(coeffs));
        if (sq.evaluate(r).is_zero()) {
          try_root(r);
          found = true;
        }
      }
    }
    if (!found) break;
  }
  if (q.degree() >= 1) throw NonSplittingError("split_into_linear_factors", q);
  std::sort(roots.begin(), roots.end(),
            [](const RootWithMultiplicity& a, const RootWithMultiplicity& b) { return lex_less(a.root, b.root); });
  return roots;
}

}  // namespace lietorus
