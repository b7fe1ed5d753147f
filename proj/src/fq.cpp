#include "hallq/fq.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hallq {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Decompose q = p^e; returns false if q is not a prime power.
bool prime_power(int q, int& p, int& e) {
  for (int cand = 2; cand <= q; ++cand) {
    if (!is_prime(cand)) continue;
    int v = q, k = 0;
    while (v % cand == 0) {
      v /= cand;
      ++k;
    }
    if (v == 1 && k >= 1) {
      p = cand;
      e = k;
      return true;
    }
    if (q % cand == 0) return false;
  }
  return false;
}

}  // namespace

Fq::Fq(int qq) {
  if (!prime_power(qq, p, e) || qq > 49)
    throw std::invalid_argument("unsupported field size " + std::to_string(qq));
  q = qq;
  // Elements are base-p digit strings read as polynomial coefficients over
  // F_p modulo a monic irreducible of degree e (found by search).
  auto digits = [&](int x) {
    std::vector<int> d(static_cast<size_t>(e), 0);
    for (int i = 0; i < e; ++i) {
      d[static_cast<size_t>(i)] = x % p;
      x /= p;
    }
    return d;
  };
  auto undigits = [&](const std::vector<int>& d) {
    int x = 0;
    for (int i = e - 1; i >= 0; --i) x = x * p + d[static_cast<size_t>(i)];
    return x;
  };

  std::vector<int> modulus;  // coefficients of the degree-e irreducible
  if (e > 1) {
    // Search monic x^e + c_{e-1}x^{e-1} + ... + c_0 with no roots and no
    // monic divisor of degree <= e/2 (e <= 3 here, so root-freeness plus
    // quadratic-divisor checks suffice).
    auto poly_mod = [&](std::vector<int> a, const std::vector<int>& m) {
      // both low-first; m monic of degree dm
      int dm = static_cast<int>(m.size()) - 1;
      for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        int c = a[static_cast<size_t>(i)] % p;
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
          int& x = a[static_cast<size_t>(i - dm + j)];
          x = ((x - c * m[static_cast<size_t>(j)]) % p + p) % p;
        }
      }
      a.resize(static_cast<size_t>(dm));
      return a;
    };
    for (int code = 0; code < q && modulus.empty(); ++code) {
      std::vector<int> cand = digits(code);
      cand.push_back(1);  // monic degree e
      // Irreducible iff no monic divisor of degree 1..e/2.
      bool ok = true;
      for (int d = 1; 2 * d <= e && ok; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long dc = 0; dc < count && ok; ++dc) {
          std::vector<int> m(static_cast<size_t>(d) + 1);
          long long cc = dc;
          for (int i = 0; i < d; ++i) {
            m[static_cast<size_t>(i)] = static_cast<int>(cc % p);
            cc /= p;
          }
          m[static_cast<size_t>(d)] = 1;
          auto r = poly_mod(cand, m);
          bool zero = true;
          for (int x : r) zero = zero && x == 0;
          if (zero) ok = false;
        }
      }
      if (ok) modulus = cand;
    }
    if (modulus.empty())
      throw std::logic_error("no irreducible modulus found");
  }

  add_.assign(static_cast<size_t>(q) * q, 0);
  mul_.assign(static_cast<size_t>(q) * q, 0);
  neg_.assign(static_cast<size_t>(q), 0);
  inv_.assign(static_cast<size_t>(q), -1);
  for (int x = 0; x < q; ++x) {
    auto dx = digits(x);
    std::vector<int> nx(dx.size());
    for (size_t i = 0; i < dx.size(); ++i) nx[i] = (p - dx[i]) % p;
    neg_[static_cast<size_t>(x)] = undigits(nx);
    for (int y = 0; y < q; ++y) {
      auto dy = digits(y);
      std::vector<int> s(dx.size());
      for (size_t i = 0; i < dx.size(); ++i) s[i] = (dx[i] + dy[i]) % p;
      add_[idx(x, y)] = undigits(s);
      // polynomial product reduced mod modulus
      std::vector<int> prod(2 * static_cast<size_t>(e) - 1, 0);
      for (size_t i = 0; i < dx.size(); ++i)
        for (size_t j = 0; j < dy.size(); ++j)
          prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
      if (e > 1) {
        for (int i = static_cast<int>(prod.size()) - 1; i >= e; --i) {
          int c = prod[static_cast<size_t>(i)];
          if (c == 0) continue;
          prod[static_cast<size_t>(i)] = 0;
          for (int j = 0; j < e; ++j) {
            int& t = prod[static_cast<size_t>(i - e + j)];
            t = ((t - c * modulus[static_cast<size_t>(j)]) % p + p) % p;
          }
        }
        prod.resize(static_cast<size_t>(e));
      }
      mul_[idx(x, y)] = undigits(prod);
    }
  }
  for (int x = 1; x < q; ++x)
    for (int y = 1; y < q; ++y)
      if (mul_[idx(x, y)] == 1) inv_[static_cast<size_t>(x)] = y;
}

int Fq::inv(int a) const {
  if (a == 0) throw std::domain_error("F_q: inverse of zero");
  return inv_[static_cast<size_t>(a)];
}

namespace {
std::map<int, Fq*>& registry() {
  static std::map<int, Fq*> r;
  return r;
}
std::mutex reg_mutex;
}  // namespace

const Fq& Fq::get(int q) {
  std::lock_guard<std::mutex> lock(reg_mutex);
  auto& r = registry();
  auto it = r.find(q);
  if (it == r.end()) it = r.emplace(q, new Fq(q)).first;
  return *it->second;
}

bool Fq::supported(int q) {
  int p, e;
  return q >= 2 && q <= 49 && prime_power(q, p, e);
}

std::vector<int> Fq::supported_sizes() {
  std::vector<int> out;
  for (int q = 2; q <= 49; ++q)
    if (supported(q)) out.push_back(q);
  return out;
}

// ===========================================================================
// FqMat
// ===========================================================================

FqMat FqMat::identity(int q, int n) {
  FqMat m(q, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FqMat FqMat::operator*(const FqMat& o) const {
  const Fq& f = Fq::get(q);
  FqMat out(q, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      int x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) {
        int y = o.at(k, j);
        if (y == 0) continue;
        out.set(i, j, f.add(out.at(i, j), f.mul(x, y)));
      }
    }
  return out;
}

FqMat FqMat::operator+(const FqMat& o) const {
  const Fq& f = Fq::get(q);
  FqMat out = *this;
  for (size_t i = 0; i < a.size(); ++i)
    out.a[i] = static_cast<uint8_t>(f.add(a[i], o.a[i]));
  return out;
}

FqMat FqMat::operator-(const FqMat& o) const {
  const Fq& f = Fq::get(q);
  FqMat out = *this;
  for (size_t i = 0; i < a.size(); ++i)
    out.a[i] = static_cast<uint8_t>(f.sub(a[i], o.a[i]));
  return out;
}

bool FqMat::is_zero() const {
  for (uint8_t x : a)
    if (x) return false;
  return true;
}

FqMat FqMat::rref(std::vector<int>* pivots) const {
  const Fq& f = Fq::get(q);
  FqMat m = *this;
  if (pivots) pivots->clear();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < cols; ++j) {
      uint8_t tmp = m.a[(size_t)sel * cols + j];
      m.a[(size_t)sel * cols + j] = m.a[(size_t)r * cols + j];
      m.a[(size_t)r * cols + j] = tmp;
    }
    int pinv = f.inv(m.at(r, c));
    for (int j = 0; j < cols; ++j) m.set(r, j, f.mul(pinv, m.at(r, j)));
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      int x = m.at(i, c);
      if (x == 0) continue;
      for (int j = 0; j < cols; ++j)
        m.set(i, j, f.sub(m.at(i, j), f.mul(x, m.at(r, j))));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

int FqMat::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

FqMat FqMat::nullspace() const {
  const Fq& f = Fq::get(q);
  std::vector<int> piv;
  FqMat r = rref(&piv);
  std::vector<bool> is_piv(static_cast<size_t>(cols), false);
  for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
  FqMat out(q, cols - static_cast<int>(piv.size()), cols);
  int row = 0;
  for (int free_c = 0; free_c < cols; ++free_c) {
    if (is_piv[static_cast<size_t>(free_c)]) continue;
    out.set(row, free_c, 1);
    for (size_t pr = 0; pr < piv.size(); ++pr)
      out.set(row, piv[pr], f.neg(r.at(static_cast<int>(pr), free_c)));
    ++row;
  }
  return out.rref();
}

bool FqMat::invertible() const { return rows == cols && rank() == rows; }

FqMat FqMat::inverse() const {
  if (rows != cols) throw std::domain_error("inverse: non-square");
  // Row-reduce [M | I].
  FqMat aug(q, rows, 2 * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug.set(i, j, at(i, j));
    aug.set(i, cols + i, 1);
  }
  std::vector<int> piv;
  FqMat r = aug.rref(&piv);
  if (static_cast<int>(piv.size()) != rows || piv.back() >= cols)
    throw std::domain_error("inverse: singular matrix");
  FqMat out(q, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.set(i, j, r.at(i, cols + j));
  return out;
}

FqMat FqMat::transpose() const {
  FqMat out(q, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.set(j, i, at(i, j));
  return out;
}

FqMat FqMat::pow(int k) const {
  FqMat out = identity(q, rows);
  FqMat base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

FqMat FqMat::vstack(const FqMat& top, const FqMat& bottom) {
  FqMat out(top.q, top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), out.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(),
            out.a.begin() + static_cast<long>(top.a.size()));
  return out;
}

// ===========================================================================
// Subspace enumeration via RREF representatives
// ===========================================================================

void for_each_subspace(int q, int n, int k,
                       const std::function<bool(const FqMat&)>& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(FqMat(q, 0, n));
    return;
  }
  // Choose pivot columns c_0 < ... < c_{k-1}; free entries are positions
  // (i, j) with j > c_i and j not a pivot column.
  std::vector<int> piv(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<size_t>(i)] = i;
  bool more = true;
  while (more) {
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_piv(static_cast<size_t>(n), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    for (int i = 0; i < k; ++i)
      for (int j = piv[static_cast<size_t>(i)] + 1; j < n; ++j)
        if (!is_piv[static_cast<size_t>(j)]) free_pos.emplace_back(i, j);
    // Iterate all fillings of the free entries.
    std::vector<int> fill(free_pos.size(), 0);
    bool go = true;
    while (go) {
      FqMat m(q, k, n);
      for (int i = 0; i < k; ++i) m.set(i, piv[static_cast<size_t>(i)], 1);
      for (size_t s = 0; s < free_pos.size(); ++s)
        m.set(free_pos[s].first, free_pos[s].second, fill[s]);
      if (!fn(m)) return;
      // increment filling
      size_t s = 0;
      for (; s < fill.size(); ++s) {
        if (++fill[s] < q) break;
        fill[s] = 0;
      }
      go = s < fill.size();
      if (fill.empty()) go = false;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) {
      more = false;
    } else {
      ++piv[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        piv[static_cast<size_t>(j)] = piv[static_cast<size_t>(j - 1)] + 1;
    }
  }
}

// ===========================================================================
// Polynomials over F_q (low-degree-first coefficient vectors)
// ===========================================================================

namespace {

void poly_trim(std::vector<int>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<int> poly_mul(int q, const std::vector<int>& a,
                          const std::vector<int>& b) {
  const Fq& f = Fq::get(q);
  if (a.empty() || b.empty()) return {};
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  return out;
}

// Remainder of a by monic b.
std::vector<int> poly_rem(int q, std::vector<int> a, const std::vector<int>& b) {
  const Fq& f = Fq::get(q);
  int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    int c = a[static_cast<size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(i - db + j)] =
          f.sub(a[static_cast<size_t>(i - db + j)], f.mul(c, b[static_cast<size_t>(j)]));
  }
  a.resize(static_cast<size_t>(db));
  poly_trim(a);
  return a;
}

std::vector<int> poly_divide_exact(int q, std::vector<int> a,
                                   const std::vector<int>& b) {
  const Fq& f = Fq::get(q);
  int db = static_cast<int>(b.size()) - 1;
  std::vector<int> quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    int c = a[static_cast<size_t>(i)];
    if (c == 0) continue;
    quot[static_cast<size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(i - db + j)] =
          f.sub(a[static_cast<size_t>(i - db + j)], f.mul(c, b[static_cast<size_t>(j)]));
  }
  return quot;
}

bool poly_is_zero(const std::vector<int>& a) {
  for (int x : a)
    if (x) return false;
  return true;
}

}  // namespace

FqMat eval_poly(const std::vector<int>& poly, const FqMat& m) {
  const Fq& f = Fq::get(m.q);
  FqMat out(m.q, m.rows, m.rows);
  for (size_t i = poly.size(); i-- > 0;) {
    out = out * m;
    if (poly[i] != 0) {
      for (int d = 0; d < m.rows; ++d)
        out.set(d, d, f.add(out.at(d, d), poly[i]));
    }
  }
  return out;
}

std::vector<int> min_poly(const FqMat& m) {
  // Find the least k with I, m, ..., m^k linearly dependent, solving for the
  // monic dependency.
  int n = m.rows;
  std::vector<FqMat> pows = {FqMat::identity(m.q, n)};
  for (int k = 1;; ++k) {
    pows.push_back(pows.back() * m);
    // Solve sum_{i<k} c_i m^i = -m^k  <=>  stack flattened powers.
    FqMat sys(m.q, n * n, k + 1);
    for (int i = 0; i <= k; ++i)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          sys.set(r * n + c, i, pows[static_cast<size_t>(i)].at(r, c));
    FqMat ns = sys.nullspace();
    // Look for a kernel vector with nonzero coefficient on m^k.
    for (int row = 0; row < ns.rows; ++row) {
      if (ns.at(row, k) == 0) continue;
      const Fq& f = Fq::get(m.q);
      int lead_inv = f.inv(ns.at(row, k));
      std::vector<int> poly(static_cast<size_t>(k) + 1);
      for (int i = 0; i <= k; ++i)
        poly[static_cast<size_t>(i)] = f.mul(lead_inv, ns.at(row, i));
      return poly;
    }
    if (k > n) throw std::logic_error("min_poly: no dependency found");
  }
}

std::vector<std::vector<int>> factor_poly(int q, std::vector<int> poly) {
  poly_trim(poly);
  if (poly.size() <= 1)
    throw std::invalid_argument("factor_poly: constant polynomial");
  // Make monic.
  const Fq& f = Fq::get(q);
  int linv = f.inv(poly.back());
  for (int& c : poly) c = f.mul(c, linv);

  std::vector<std::vector<int>> out;
  // Trial division by monic irreducibles in degree order.  Degrees in play
  // are tiny (min polys of matrices of size <= 6).
  std::function<void(std::vector<int>)> go = [&](std::vector<int> rem) {
    int deg = static_cast<int>(rem.size()) - 1;
    if (deg == 0) return;
    for (int d = 1; 2 * d <= deg; ++d) {
      // enumerate monic degree-d candidates
      long long count = 1;
      for (int i = 0; i < d; ++i) count *= q;
      for (long long code = 0; code < count; ++code) {
        std::vector<int> cand(static_cast<size_t>(d) + 1);
        long long cc = code;
        for (int i = 0; i < d; ++i) {
          cand[static_cast<size_t>(i)] = static_cast<int>(cc % q);
          cc /= q;
        }
        cand[static_cast<size_t>(d)] = 1;
        if (poly_is_zero(poly_rem(q, rem, cand))) {
          // cand is irreducible because smaller divisors were exhausted first
          out.push_back(cand);
          go(poly_divide_exact(q, rem, cand));
          return;
        }
      }
    }
    out.push_back(rem);  // irreducible
  };
  go(poly);
  return out;
}

// Silence unused-function warning paths.
namespace {
[[maybe_unused]] auto* keep_mul = &poly_mul;
}

}  // namespace hallq
