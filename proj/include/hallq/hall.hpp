#pragma once
// The twisted semi-derived Hall algebra at a fixed prime power q on the
// triangular normal basis delta_{C_M + C*_N} * b_alpha: raw twisted products
// of 2-periodic complexes, reduction to the normal basis, the reduced star
// product, symbolic lifting over q-samples, classical limits at t = -1, and
// the Borcherds-Bozec generator images.

#include "hallq/cx.hpp"
#include "hallq/ncpoly.hpp"
#include "hallq/quiver.hpp"
#include "hallq/scalar.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hallq {

// ---------------------------------------------------------------------------
// Basis vectors and elements at fixed q.  Coefficients live in Q(sqrt(q))
// under the dictionary -t = sqrt(q).
// ---------------------------------------------------------------------------
struct HallKey {
  std::vector<int> M;  // sorted indecomposable module class ids (C-part)
  std::vector<int> N;  // sorted indecomposable module class ids (C*-part)
  DimVector alpha;     // signed b-letter index

  auto operator<=>(const HallKey&) const = default;
};

struct HallElement {
  std::map<HallKey, QuadExt> terms;

  void add_term(const HallKey& k, const QuadExt& c);
  bool is_zero() const { return terms.empty(); }
  HallElement operator+(const HallElement& o) const;
  HallElement operator-(const HallElement& o) const;
  HallElement operator*(const QuadExt& c) const;
  bool operator==(const HallElement& o) const { return terms == o.terms; }
};

// Raw element of the twisted Hall algebra of C_2(A): support on complex
// class ids of the catalog.
using RawElement = std::map<int, QuadExt>;

class HallContext {
 public:
  HallContext(const Quiver& quiver, int q);

  const Quiver& quiver() const { return quiver_; }
  int q() const { return q_; }
  Catalog& catalog() { return cat_; }

  QuadExt minus_t() const { return sqrt_q_; }            // -t = sqrt(q)
  QuadExt minus_t_pow(long long e) const;                // (-t)^e
  QuadExt upsilon_aut(int cx_id);                        // |Aut| as QuadExt
  QuadExt eval(const RatFun& f) const;                   // at -t = sqrt(q)

  // delta of a raw complex class.
  static RawElement raw_delta(int cx_id);
  // Twisted product delta_X * delta_Y extended bilinearly; the twist is
  // (-t)^{<a1,b1> + <a0,b0>} and structure constants are Hall numbers.
  RawElement hall_product(const RawElement& x, const RawElement& y);
  // Rewrite every raw class onto the triangular basis; idempotent in the
  // sense that basis classes map to themselves with coefficient 1.
  HallElement reduce(const RawElement& x);
  // Reduced star product on basis elements.
  HallElement star(const HallElement& x, const HallElement& y);

  HallElement unit();
  HallElement b_element(const DimVector& alpha);          // b_alpha
  HallElement delta_c(const DimVector& m_dims);           // delta_{C_M}, M semisimple-free input
  HallElement basis_of_modules(const std::vector<int>& m_mods,
                               const std::vector<int>& n_mods,
                               const DimVector& alpha);
  // delta of C_{S_i^{k}} / C*_{S_i^{k}} as a basis element.
  HallElement delta_c_power(int vertex, int k, bool dual);

  // Decompose a module class into sorted indecomposable class ids.
  const std::vector<int>& module_summands(int module_id);
  // Complex class id of C_M + C*_N for the given key parts.
  int key_complex(const std::vector<int>& m_mods, const std::vector<int>& n_mods);
  // Total (degree-1, degree-0) dimension pair of the key's delta-part.
  std::pair<DimVector, DimVector> key_dims(const HallKey& k);

  // Image of a presentation generator (quantum Borcherds-Bozec realization):
  // e_{il} -> (-t)^{l^2-l} delta_{C_{S_i^l}}, f dually, K_i^n -> b_{n S_i}.
  HallElement bb_generator_image(const Generator& g);
  // Acyclic-quiver variant with the projective-resolution prefactor.
  HallElement bb_generator_image_acyclic(const Generator& g);
  // Evaluate a straightened word polynomial through generator images.
  HallElement realize(const NCPoly& p, bool acyclic_variant = false);

  // Exponent of Prop. KX=XK for an acyclic complex K against a delta-part of
  // dimensions (beta1, beta0).
  long long central_twist_exponent(int acyclic_cx, const DimVector& beta1,
                                   const DimVector& beta0);

  std::string key_str(const HallKey& k);
  std::string element_str(const HallElement& x);

 private:
  const Quiver& quiver_;
  int q_;
  QuadExt sqrt_q_;
  Catalog cat_;
  std::map<int, HallElement> reduce_cache_;
  std::map<int, std::vector<int>> summand_cache_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> key_cx_cache_;
};

// ---------------------------------------------------------------------------
// Symbolic elements: coefficients are rational functions of t, basis keys are
// field-size-independent structural descriptors.
// ---------------------------------------------------------------------------
struct SymKey {
  std::vector<std::string> M;  // structural keys of indec module classes
  std::vector<std::string> N;
  DimVector alpha;

  auto operator<=>(const SymKey&) const = default;
};

struct SymElement {
  std::map<SymKey, RatFun> terms;
  bool operator==(const SymElement& o) const { return terms == o.terms; }
};

SymKey sym_key(HallContext& ctx, const HallKey& k);

// Coefficientwise rational-function reconstruction of a fixed-q computation
// over perfect-square samples (so sqrt(q) is rational); the supports must
// agree across samples and every sample value must fit the reconstructed
// function (the fit validates all samples, including any held out beyond the
// degree bound's needs).
SymElement lift_symbolic(
    const Quiver& quiver, const std::vector<int>& q_samples, int degree_bound,
    const std::function<HallElement(HallContext&)>& compute);

// ---------------------------------------------------------------------------
// Classical limit at t = -1: substitute b_alpha = prod_i (1 + (-t-1) h_i)^{a_i}
// and evaluate.  Terms are words delta-part * monomial in commuting h_i.
// ---------------------------------------------------------------------------
struct ClassicalKey {
  std::vector<std::string> M;
  std::vector<std::string> N;
  std::vector<long long> h_exp;  // exponent of h_i per vertex

  auto operator<=>(const ClassicalKey&) const = default;
};

struct ClassicalElement {
  std::map<ClassicalKey, BigRat> terms;
  bool operator==(const ClassicalElement& o) const { return terms == o.terms; }
};

// Throws std::domain_error if some coefficient is not regular at t = -1
// after the substitution (the element is not in the C_{-1} lattice).
ClassicalElement classical_limit_hall(const SymElement& x, int n_vertices);

}  // namespace hallq
