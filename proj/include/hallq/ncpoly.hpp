#pragma once
// Noncommutative polynomials in presentation generators e_{il}, f_{il},
// K_i^{n}, h_i; straightening to the triangular (F-block)(K-block)(E-block)
// normal form; Serre sums; classical limit at t = -1; relation-instance
// verification for the quantum, classical, and generalized Kac-Moody
// presentations.

#include "hallq/quiver.hpp"
#include "hallq/scalar.hpp"

#include <compare>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace hallq {

enum class GKind : int { F = 0, Kpow = 1, H = 2, E = 3 };

struct Generator {
  GKind kind = GKind::E;
  int i = 0;          // vertex index
  long long l = 1;    // E/F second index; 1 for real vertices
  long long kexp = 0; // Kpow exponent, nonzero

  static Generator e(int i, long long l) { return {GKind::E, i, l, 0}; }
  static Generator f(int i, long long l) { return {GKind::F, i, l, 0}; }
  static Generator K(int i, long long n = 1) { return {GKind::Kpow, i, 1, n}; }
  static Generator h(int i) { return {GKind::H, i, 1, 0}; }

  auto operator<=>(const Generator&) const = default;
  std::string str() const;
};

using Word = std::vector<Generator>;

struct NCPoly {
  std::map<Word, RatFun> terms;

  static NCPoly zero() { return {}; }
  static NCPoly one();
  static NCPoly monomial(const Word& w, const RatFun& c = RatFun(1));
  static NCPoly gen(const Generator& g) { return monomial({g}); }
  static NCPoly scalar(const RatFun& c) { return monomial({}, c); }

  void add_term(const Word& w, const RatFun& c);
  bool is_zero() const { return terms.empty(); }
  bool is_scalar() const;
  RatFun scalar_value() const;  // requires is_scalar()

  NCPoly operator-() const;
  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator*(const NCPoly& o) const;
  NCPoly operator*(const RatFun& c) const;
  bool operator==(const NCPoly& o) const { return terms == o.terms; }

  std::string str() const;
};

enum class PresVariant { quantum_BB, classical_BB, gkm_with_charge };
enum class SerreSign { signed_variant, unsigned_variant };

struct Presentation {
  CartanData cartan;
  PresVariant variant = PresVariant::quantum_BB;
  SerreSign serre_sign = SerreSign::signed_variant;
  int l_max = 3;

  int n() const { return static_cast<int>(cartan.a.size()); }
  bool is_real(int i) const { return cartan.a[(size_t)i][(size_t)i] == 2; }
  // Throws if a generator index lies outside the Cartan data or cutoff.
  void check_generator(const Generator& g) const;
};

// Pure straightening function with a memoization cache shared across calls on
// the same object; safe for concurrent use.
class Straightener {
 public:
  explicit Straightener(const Presentation& p) : pres_(p) {}
  NCPoly operator()(const NCPoly& p);

 private:
  NCPoly normal_word(const Word& w);
  const Presentation& pres_;
  std::map<Word, NCPoly> cache_;
  std::mutex mu_;
};

NCPoly straighten(const NCPoly& p, const Presentation& pres);

// Expansion of e_{il} * f_{ik} via the two-sided nu-sum relation; the
// residual e*f words carry strictly smaller indices.
NCPoly ef_exchange_rule(int i, long long l, long long k,
                        const Presentation& pres);

// The Serre alternating sum for real vertex i against generator (j,l) on the
// given side ('E' or 'F'); quantum variants use Gaussian binomials in
// (-t)_{(i)}, the classical/gkm presentations use integer binomials with
// (-1)^k.
NCPoly serre_sum(const Presentation& pres, char side, int i, int j,
                 long long l);

// Substitute K_i^{+-1} = (1 + (-t-1) h_i)^{+-1} (inverse as a truncated
// geometric series, exact in the limit), evaluate every coefficient at
// t = -1, and drop vanishing terms.  Input must use only e/f/K generators.
NCPoly classical_limit(const NCPoly& p, const Presentation& pres);

struct RelationReport {
  struct Item {
    std::string relation;
    std::string instance;
    bool ok = false;
    std::string residual;  // straightened LHS - RHS when not ok
  };
  std::vector<Item> items;
  bool all_ok = true;
  std::string str() const;
};

// Straightens LHS - RHS for every defining-relation instance with indices
// <= max_l.  Serre relations are excluded (their vanishing is not decidable
// by the rewriting system; the Hall oracle handles them).
RelationReport verify_relation_instances(const Presentation& pres,
                                         long long max_l);

// Net ZI-degree of a word: sum of l*alpha_i over E-letters minus the same
// over F-letters; K and h letters contribute zero.
std::vector<long long> word_net_degree(const Word& w, int n_vertices);

// Text grammar: e(i,l), f(i,l), K(i), Kinv(i), h(i), products with `*`,
// `+`/`-`, `/` by scalars, integers, and t / t^n atoms.  Vertices are
// 1-based indices.
NCPoly parse_ncpoly(const std::string& text, const Presentation& pres);

}  // namespace hallq
