#pragma once
// Small finite fields F_q (q = p^e <= 49) with precomputed arithmetic
// tables, dense matrices over F_q, and the exact linear algebra used by the
// representation-enumeration machinery.

#include <cstdint>
#include <functional>
#include <vector>

namespace hallq {

class Fq {
 public:
  int p = 2, e = 1, q = 2;

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return add_[idx(a, neg_[b])]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;  // throws on 0
  int div(int a, int b) const { return mul(a, inv(b)); }

  // Registry of supported fields; throws on non-prime-power or q > 49.
  static const Fq& get(int q);
  static bool supported(int q);
  static std::vector<int> supported_sizes();

 private:
  explicit Fq(int q);
  size_t idx(int a, int b) const { return static_cast<size_t>(a) * q + b; }
  std::vector<int> add_, mul_, neg_, inv_;
};

struct FqMat {
  int q = 2;
  int rows = 0, cols = 0;
  std::vector<uint8_t> a;  // row-major

  FqMat() = default;
  FqMat(int q_, int r, int c) : q(q_), rows(r), cols(c), a((size_t)r * c, 0) {}
  static FqMat identity(int q, int n);

  int at(int i, int j) const { return a[(size_t)i * cols + j]; }
  void set(int i, int j, int v) { a[(size_t)i * cols + j] = (uint8_t)v; }

  FqMat operator*(const FqMat& o) const;
  FqMat operator+(const FqMat& o) const;
  FqMat operator-(const FqMat& o) const;
  bool operator==(const FqMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool is_zero() const;

  int rank() const;
  // Reduced row echelon form; optionally reports pivot columns.
  FqMat rref(std::vector<int>* pivots = nullptr) const;
  // Rows span the kernel {x : M x^T = 0}; returned in RREF.
  FqMat nullspace() const;
  bool invertible() const;
  FqMat inverse() const;  // throws if singular
  FqMat transpose() const;
  FqMat pow(int k) const;  // square matrices

  // Vertical stack / horizontal concat helpers.
  static FqMat vstack(const FqMat& top, const FqMat& bottom);
};

// Enumerate all k-dimensional subspaces of F_q^n, each exactly once, as a
// k x n RREF basis matrix.  Returns false from fn to stop early.
void for_each_subspace(int q, int n, int k,
                       const std::function<bool(const FqMat&)>& fn);

// Monic minimal polynomial of a square matrix, low-degree-first coefficients.
std::vector<int> min_poly(const FqMat& m);
// Factor a monic polynomial over F_q into monic irreducible factors
// (with multiplicity), low-degree-first coefficient vectors.
std::vector<std::vector<int>> factor_poly(int q, std::vector<int> poly);
// Evaluate a polynomial at a square matrix.
FqMat eval_poly(const std::vector<int>& poly, const FqMat& m);

}  // namespace hallq
