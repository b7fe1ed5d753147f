#include "hallq/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hallq {

namespace {

BigInt rat_num(const BigRat& r) { return boost::multiprecision::numerator(r); }
BigInt rat_den(const BigRat& r) { return boost::multiprecision::denominator(r); }

BigInt int_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string rat_str(const BigRat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

// ===========================================================================
// QuadExt
// ===========================================================================

QuadExt::QuadExt(const BigRat& aa, const BigRat& bb, long long dd)
    : a(aa), b(bb), d(dd) {
  if (d < 0) throw std::invalid_argument("QuadExt: negative radicand");
  if (d <= 1) {
    // sqrt(0) = 0, sqrt(1) = 1: fold into the rational part.
    a += b * BigRat(d);
    b = 0;
    d = 1;
  }
  if (b == 0) d = 1;
}

QuadExt QuadExt::sqrt_of(long long n) {
  if (n < 0) throw std::invalid_argument("sqrt_of: negative argument");
  long long v = 1, rest = n;
  for (long long p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      v *= p;
    }
  }
  return QuadExt(BigRat(0), BigRat(v), rest);
}

void QuadExt::reconcile(const QuadExt& o, QuadExt& x, QuadExt& y) const {
  x = *this;
  y = o;
  if (x.d == y.d) return;
  if (x.b == 0) {
    x.d = y.d;
    return;
  }
  if (y.b == 0) {
    y.d = x.d;
    return;
  }
  throw std::invalid_argument("QuadExt: mixing different radicands");
}

QuadExt QuadExt::operator-() const { return QuadExt(-a, -b, d); }

QuadExt QuadExt::operator+(const QuadExt& o) const {
  QuadExt x, y;
  reconcile(o, x, y);
  return QuadExt(x.a + y.a, x.b + y.b, x.d);
}

QuadExt QuadExt::operator-(const QuadExt& o) const { return *this + (-o); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
  QuadExt x, y;
  reconcile(o, x, y);
  return QuadExt(x.a * y.a + x.b * y.b * BigRat(x.d), x.a * y.b + x.b * y.a,
                 x.d);
}

QuadExt QuadExt::inverse() const {
  BigRat n = a * a - b * b * BigRat(d);
  if (n == 0) throw std::domain_error("QuadExt: division by zero");
  return QuadExt(a / n, -b / n, d);
}

QuadExt QuadExt::operator/(const QuadExt& o) const { return *this * o.inverse(); }

QuadExt QuadExt::pow(long long e) const {
  QuadExt base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
  QuadExt out(BigRat(1));
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

bool QuadExt::operator==(const QuadExt& o) const {
  QuadExt x, y;
  reconcile(o, x, y);
  return x.a == y.a && x.b == y.b;
}

std::string QuadExt::str() const {
  if (b == 0) return rat_str(a);
  std::ostringstream os;
  if (a != 0) os << a << (b > 0 ? " + " : " - ");
  else if (b < 0) os << "-";
  BigRat mag = b < 0 ? BigRat(-b) : b;
  if (mag != 1) os << mag << "*";
  os << "sqrt(" << d << ")";
  return os.str();
}

// ===========================================================================
// Poly
// ===========================================================================

Poly::Poly(const BigRat& c) {
  if (c != 0) c_.push_back(c);
}

Poly Poly::t_power(int k) {
  if (k < 0) throw std::invalid_argument("Poly::t_power: negative exponent");
  Poly p;
  p.c_.assign(static_cast<size_t>(k) + 1, BigRat(0));
  p.c_.back() = 1;
  return p;
}

Poly Poly::from_coeffs(std::vector<BigRat> c) {
  Poly p;
  p.c_ = std::move(c);
  p.trim();
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigRat& Poly::coeff(int i) const {
  static const BigRat zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<size_t>(i)];
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly p;
  p.c_.resize(std::max(c_.size(), o.c_.size()), BigRat(0));
  for (size_t i = 0; i < c_.size(); ++i) p.c_[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) p.c_[i] += o.c_[i];
  p.trim();
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  Poly p;
  p.c_.assign(c_.size() + o.c_.size() - 1, BigRat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) p.c_[i + j] += c_[i] * o.c_[j];
  p.trim();
  return p;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
  q = Poly();
  r = a;
  int db = b.degree();
  const BigRat& lb = b.c_.back();
  std::vector<BigRat> qc(static_cast<size_t>(std::max(0, a.degree() - db + 1)),
                         BigRat(0));
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    BigRat f = r.c_.back() / lb;
    qc[static_cast<size_t>(shift)] += f;
    Poly sub;
    sub.c_.assign(static_cast<size_t>(shift) + b.c_.size(), BigRat(0));
    for (size_t i = 0; i < b.c_.size(); ++i)
      sub.c_[static_cast<size_t>(shift) + i] = f * b.c_[i];
    r = r - sub;
  }
  q = from_coeffs(std::move(qc));
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  // Make monic.
  BigRat inv = BigRat(1) / x.c_.back();
  for (auto& c : x.c_) c *= inv;
  return x;
}

Poly Poly::derivative() const {
  Poly p;
  for (size_t i = 1; i < c_.size(); ++i) p.c_.push_back(c_[i] * BigRat(i));
  p.trim();
  return p;
}

BigRat Poly::eval(const BigRat& x) const {
  BigRat out(0);
  for (size_t i = c_.size(); i-- > 0;) out = out * x + c_[i];
  return out;
}

QuadExt Poly::eval(const QuadExt& x) const {
  QuadExt out(BigRat(0));
  for (size_t i = c_.size(); i-- > 0;) out = out * x + QuadExt(c_[i]);
  return out;
}

BigRat Poly::content() const {
  if (is_zero()) return BigRat(0);
  BigInt g(0), l(1);
  for (const auto& c : c_) {
    g = int_gcd(g, rat_num(c));
    BigInt d = rat_den(c);
    l = l / int_gcd(l, d) * d;
  }
  return BigRat(g, l);
}

BigRat Poly::leading() const { return is_zero() ? BigRat(0) : c_.back(); }

// ===========================================================================
// RatFun
// ===========================================================================

RatFun::RatFun(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }

void RatFun::normalize() {
  if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(BigRat(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  // Scale so den has coprime integer coefficients and positive leading coeff.
  BigRat c = den_.content();
  if (den_.leading() < 0) c = -c;
  BigRat inv = BigRat(1) / c;
  std::vector<BigRat> nc = num_.coeffs(), dc = den_.coeffs();
  for (auto& x : nc) x *= inv;
  for (auto& x : dc) x *= inv;
  num_ = Poly::from_coeffs(std::move(nc));
  den_ = Poly::from_coeffs(std::move(dc));
}

RatFun RatFun::t_power(int k) {
  if (k >= 0) return RatFun(Poly::t_power(k), Poly(BigRat(1)));
  return RatFun(Poly(BigRat(1)), Poly::t_power(-k));
}

RatFun RatFun::minus_t_power(int k) {
  RatFun r = t_power(k);
  return (k % 2 != 0) ? -r : r;
}

bool RatFun::is_one() const {
  return num_.degree() == 0 && den_.degree() == 0 && num_.coeff(0) == 1;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw std::domain_error("RatFun: division by zero");
  return RatFun(den_, num_);
}

RatFun RatFun::operator/(const RatFun& o) const { return *this * o.inverse(); }

RatFun RatFun::pow(long long e) const {
  RatFun base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
  RatFun out(1);
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

bool RatFun::operator==(const RatFun& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

bool RatFun::operator<(const RatFun& o) const {
  auto cmp = [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
    }
    return 0;
  };
  int c = cmp(den_, o.den_);
  if (c != 0) return c < 0;
  return cmp(num_, o.num_) < 0;
}

BigRat RatFun::eval_t(const BigRat& x) const {
  BigRat d = den_.eval(x);
  if (d == 0) throw std::domain_error("RatFun::eval_t: pole");
  return num_.eval(x) / d;
}

QuadExt RatFun::eval_t(const QuadExt& x) const {
  QuadExt d = den_.eval(x);
  if (d.is_zero()) throw std::domain_error("RatFun::eval_t: pole");
  return num_.eval(x) / d;
}

BigRat RatFun::eval_at_v(const BigRat& v0) const { return eval_t(BigRat(-v0)); }

QuadExt RatFun::eval_at_v(const QuadExt& v0) const { return eval_t(-v0); }

// --- printing --------------------------------------------------------------

namespace {

// Render a Laurent polynomial given as {exponent -> coefficient}, highest
// exponent first; coefficients are nonzero rationals.
std::string laurent_str(const std::map<int, BigRat, std::greater<int>>& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    bool neg = c < 0;
    BigRat mag = neg ? BigRat(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << rat_str(mag);
    } else {
      if (mag != 1) os << rat_str(mag) << "*";
      if (e == 1)
        os << "t";
      else
        os << "t^" << e;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string poly_str(const Poly& p, int shift = 0) {
  std::map<int, BigRat, std::greater<int>> terms;
  for (int i = p.degree(); i >= 0; --i)
    if (p.coeff(i) != 0) terms[i + shift] = p.coeff(i);
  return laurent_str(terms);
}

bool is_t_power(const Poly& p, int& k) {
  if (p.is_zero()) return false;
  for (int i = 0; i < p.degree(); ++i)
    if (p.coeff(i) != 0) return false;
  if (p.leading() != 1) return false;
  k = p.degree();
  return true;
}

int term_count(const Poly& p) {
  int n = 0;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) ++n;
  return n;
}

}  // namespace

std::string RatFun::str() const {
  if (is_zero()) return "0";
  int k = 0;
  if (is_t_power(den_, k)) return poly_str(num_, -k);
  std::string n = poly_str(num_);
  if (term_count(num_) > 1) n = "(" + n + ")";
  return n + "/(" + poly_str(den_) + ")";
}

// --- parsing ---------------------------------------------------------------

namespace {

struct ScalarParser {
  const std::string& s;
  size_t pos = 0;

  explicit ScalarParser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("scalar parse error at position " +
                                std::to_string(pos) + ": " + why);
  }

  long long integer() {
    skip();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected integer");
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }

  RatFun atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      RatFun r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (s[pos] == 't') {
      ++pos;
      return RatFun::t_power(1);
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos])))
      return RatFun(BigRat(integer()));
    fail("expected number, 't', or '('");
  }

  RatFun factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    RatFun base = atom();
    skip();
    if (eat('^')) {
      long long e = integer();
      base = base.pow(e);
    }
    return base;
  }

  RatFun term() {
    RatFun r = factor();
    for (;;) {
      skip();
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        return r;
    }
  }

  RatFun expr() {
    RatFun r = term();
    for (;;) {
      skip();
      if (eat('+'))
        r = r + term();
      else if (peek('-')) {
        // binary minus (unary minus inside term already consumed above)
        ++pos;
        r = r - term();
      } else
        return r;
    }
  }
};

}  // namespace

RatFun RatFun::parse(const std::string& text) {
  ScalarParser p(text);
  RatFun r = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

// ===========================================================================
// Localization at t = -1
// ===========================================================================

LocalizationVerdict localize_at_minus1(const RatFun& f) {
  LocalizationVerdict v;
  BigRat d = f.den().eval(BigRat(-1));
  if (d == 0) return v;  // pole at t = -1
  v.regular_at_minus1 = true;
  v.value_at_minus1 = f.num().eval(BigRat(-1)) / d;
  return v;
}

// ===========================================================================
// Quantum combinatorics
// ===========================================================================

RatFun quantum_integer(long long n) {
  // [n] = ((-t)^n - (-t)^{-n}) / ((-t) - (-t)^{-1}) = sum of (-t)^{n-1-2j}.
  if (n < 0) return -quantum_integer(-n);
  RatFun out(0);
  for (long long j = 0; j < n; ++j)
    out += RatFun::minus_t_power(static_cast<int>(n - 1 - 2 * j));
  return out;
}

RatFun quantum_factorial(long long n) {
  RatFun out(1);
  for (long long j = 2; j <= n; ++j) out *= quantum_integer(j);
  return out;
}

RatFun quantum_binomial(long long m, long long n) {
  if (n < 0 || n > m) return RatFun(0);
  return quantum_factorial(m) / (quantum_factorial(n) * quantum_factorial(m - n));
}

RatFun phi_factor(long long r, int exponent) {
  if (exponent != 2 && exponent != -2)
    throw std::invalid_argument("phi_factor: exponent must be +2 or -2");
  RatFun x = RatFun::t_power(exponent);
  RatFun out(1);
  RatFun xk(1);
  for (long long k = 1; k <= r; ++k) {
    xk *= x;
    out *= RatFun(1) - xk;
  }
  return out;
}

RatFun nu(long long r) { return phi_factor(r, 2).inverse(); }

RatFun minus_t_power_i(long long a_ii, long long k) {
  long long e2 = k * a_ii;
  if (e2 % 2 != 0)
    throw std::invalid_argument("minus_t_power_i: odd half-exponent");
  return RatFun::minus_t_power(static_cast<int>(e2 / 2));
}

RatFun poincare_gl(long long r) {
  // (-t)^{r^2 + r(r-1)/2} * ((-t) - (-t)^{-1})^r * [r]!
  RatFun pre = RatFun::minus_t_power(static_cast<int>(r * r + r * (r - 1) / 2));
  RatFun diff = RatFun::minus_t_power(1) - RatFun::minus_t_power(-1);
  return pre * diff.pow(r) * quantum_factorial(r);
}

RatFun poincare_grassmannian(long long r, long long k) {
  if (r < 0 || r > k) return RatFun(0);
  return RatFun::minus_t_power(static_cast<int>(r * (k - r))) *
         quantum_binomial(k, r);
}

// ===========================================================================
// Reconstruction
// ===========================================================================

std::vector<std::vector<BigRat>> rational_nullspace(
    std::vector<std::vector<BigRat>> a) {
  size_t m = a.size();
  size_t n = m == 0 ? 0 : a[0].size();
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t sel = row;
    while (sel < m && a[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(a[sel], a[row]);
    BigRat inv = BigRat(1) / a[row][col];
    for (size_t j = col; j < n; ++j) a[row][j] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      BigRat f = a[i][col];
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<BigRat>> basis;
  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<BigRat> v(n, BigRat(0));
    v[free_col] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r)
      v[static_cast<size_t>(pivot_col[r])] = -a[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

RatFun reconstruct(const std::vector<std::pair<BigRat, BigRat>>& samples,
                   int degree_bound) {
  if (samples.empty()) throw std::invalid_argument("reconstruct: no samples");
  auto build_candidate = [&](int dn, int dd) -> std::optional<RatFun> {
    // Unknowns: a_0..a_dn (numerator in v), b_0..b_dd (denominator in v).
    size_t cols = static_cast<size_t>(dn + dd + 2);
    std::vector<std::vector<BigRat>> mat;
    for (const auto& [v0, f0] : samples) {
      std::vector<BigRat> rowv(cols, BigRat(0));
      BigRat p(1);
      for (int i = 0; i <= dn; ++i) {
        rowv[static_cast<size_t>(i)] = p;
        p *= v0;
      }
      p = 1;
      for (int j = 0; j <= dd; ++j) {
        rowv[static_cast<size_t>(dn + 1 + j)] = -f0 * p;
        p *= v0;
      }
      mat.push_back(std::move(rowv));
    }
    auto basis = rational_nullspace(std::move(mat));
    for (const auto& sol : basis) {
      std::vector<BigRat> nv(sol.begin(), sol.begin() + dn + 1);
      std::vector<BigRat> dv(sol.begin() + dn + 1, sol.end());
      // Convert from v to t via v = -t: coefficient of v^i picks up (-1)^i.
      for (size_t i = 1; i < nv.size(); i += 2) nv[i] = -nv[i];
      for (size_t i = 1; i < dv.size(); i += 2) dv[i] = -dv[i];
      Poly nt = Poly::from_coeffs(std::move(nv));
      Poly dt = Poly::from_coeffs(std::move(dv));
      if (dt.is_zero()) continue;
      RatFun cand(nt, dt);
      bool ok = true;
      for (const auto& [v0, f0] : samples) {
        try {
          if (cand.eval_at_v(v0) != f0) ok = false;
        } catch (const std::domain_error&) {
          ok = false;
        }
        if (!ok) break;
      }
      if (ok) return cand;
    }
    return std::nullopt;
  };

  for (int total = 0; total <= 2 * degree_bound; ++total) {
    for (int dn = std::max(0, total - degree_bound);
         dn <= std::min(total, degree_bound); ++dn) {
      if (auto cand = build_candidate(dn, total - dn)) return *cand;
    }
  }
  throw std::runtime_error(
      "reconstruct: no rational function within the degree bound fits all "
      "samples");
}

}  // namespace hallq
