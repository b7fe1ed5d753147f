#pragma once
// Exact arithmetic in Q(t): polynomials, canonical rational functions,
// quantum integers/binomials, evaluation and localization at t = -1,
// quadratic extensions Q(sqrt(d)), and rational-function reconstruction
// from exact sample values.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hallq {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// QuadExt: exact element a + b*sqrt(d) of a real quadratic extension of Q.
// d is square-free and nonnegative; d <= 1 means the value is rational.
// ---------------------------------------------------------------------------
struct QuadExt {
  BigRat a;
  BigRat b;
  long long d = 1;

  QuadExt() = default;
  explicit QuadExt(const BigRat& r, long long dd = 1) : a(r), b(0), d(dd) {}
  QuadExt(const BigRat& aa, const BigRat& bb, long long dd);

  static QuadExt sqrt_of(long long n);  // exact sqrt(n), n >= 0

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }

  QuadExt operator-() const;
  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator/(const QuadExt& o) const;
  QuadExt inverse() const;
  QuadExt pow(long long e) const;
  bool operator==(const QuadExt& o) const;
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void reconcile(const QuadExt& o, QuadExt& x, QuadExt& y) const;
};

// ---------------------------------------------------------------------------
// Poly: dense polynomial in t with rational coefficients.
// ---------------------------------------------------------------------------
class Poly {
 public:
  Poly() = default;
  explicit Poly(const BigRat& c);
  static Poly t_power(int k);            // t^k, k >= 0
  static Poly from_coeffs(std::vector<BigRat> c);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  const BigRat& coeff(int i) const;
  const std::vector<BigRat>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Euclidean division; denominator must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(const Poly& a, const Poly& b);  // monic gcd
  Poly derivative() const;

  BigRat eval(const BigRat& x) const;
  QuadExt eval(const QuadExt& x) const;

  BigRat content() const;  // positive; 0 for zero polynomial
  BigRat leading() const;  // 0 for zero polynomial

 private:
  void trim();
  std::vector<BigRat> c_;
};

// ---------------------------------------------------------------------------
// RatFun: canonical rational function in t over Q.  Invariants: den != 0,
// gcd(num, den) = 1, den has coprime integer coefficients with positive
// leading coefficient.  Laurent values keep a power of t in the denominator.
// ---------------------------------------------------------------------------
class RatFun {
 public:
  RatFun() : num_(), den_(Poly(BigRat(1))) {}
  RatFun(const Poly& n, const Poly& d);
  explicit RatFun(const BigRat& c) : RatFun(Poly(c), Poly(BigRat(1))) {}
  explicit RatFun(long long c) : RatFun(BigRat(c)) {}

  static RatFun t_power(int k);        // t^k for any integer k
  static RatFun minus_t_power(int k);  // (-t)^k for any integer k

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun inverse() const;
  RatFun pow(long long e) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  bool operator==(const RatFun& o) const;
  bool operator!=(const RatFun& o) const { return !(*this == o); }
  // Deterministic total order (for map keys / stable printing).
  bool operator<(const RatFun& o) const;

  // Evaluate at t = x; throws on pole.
  BigRat eval_t(const BigRat& x) const;
  QuadExt eval_t(const QuadExt& x) const;
  // Evaluate at -t = v0, i.e. t = -v0.
  BigRat eval_at_v(const BigRat& v0) const;
  QuadExt eval_at_v(const QuadExt& v0) const;

  std::string str() const;
  static RatFun parse(const std::string& text);

 private:
  void normalize();
  Poly num_, den_;
};

// ---------------------------------------------------------------------------
// Localization at t = -1.
// ---------------------------------------------------------------------------
struct LocalizationVerdict {
  bool regular_at_minus1 = false;
  BigRat value_at_minus1;  // meaningful iff regular
};

LocalizationVerdict localize_at_minus1(const RatFun& f);

// ---------------------------------------------------------------------------
// Quantum combinatorics; all brackets are balanced in the variable v = -t.
// ---------------------------------------------------------------------------
RatFun quantum_integer(long long n);                 // [n]_{-t}
RatFun quantum_factorial(long long n);               // [n]!
RatFun quantum_binomial(long long m, long long n);   // [m choose n], 0<=n<=m
RatFun phi_factor(long long r, int exponent);        // phi_r(t^{exponent}), exponent in {+2,-2}
RatFun nu(long long r);                              // 1/phi_r(t^2)
RatFun minus_t_power_i(long long a_ii, long long k); // (-t)^{k*a_ii/2}
RatFun poincare_gl(long long r);
RatFun poincare_grassmannian(long long r, long long k);

// ---------------------------------------------------------------------------
// Rational-function reconstruction from samples (v0, f(v0)) with v = -t.
// Returns the minimal-total-degree function with numerator and denominator
// degrees <= degree_bound in v fitting every sample; result expressed in t.
// ---------------------------------------------------------------------------
RatFun reconstruct(const std::vector<std::pair<BigRat, BigRat>>& samples,
                   int degree_bound);

// Exact linear algebra over Q (shared by reconstruct and tests):
// returns a basis of the nullspace of the m x n matrix `a` (row-major).
std::vector<std::vector<BigRat>> rational_nullspace(
    std::vector<std::vector<BigRat>> a);

}  // namespace hallq
