#pragma once
// 2-periodic complexes of nilpotent quiver representations over F_q,
// their isomorphism-class catalogs, homology, Hall numbers (subcomplex
// counts), and extension middle-term enumeration.

#include "hallq/quiver.hpp"
#include "hallq/rep.hpp"

#include <map>
#include <string>
#include <vector>

namespace hallq {

// Shared shapes, cached per quiver structure.  Module shape: one node per
// vertex, one edge per arrow.  Complex shape: doubled — node 2i is the
// degree-1 space, node 2i+1 the degree-0 space; edges are the arrows in each
// degree followed by the differentials d1_i: 2i -> 2i+1, d0_i: 2i+1 -> 2i.
const GenShape& module_shape(const Quiver& q);
const GenShape& complex_shape(const Quiver& q);

bool is_nilpotent_module(const Quiver& q, const GenRep& m);

// Module with all arrow maps zero and dimension vector alpha.
GenRep semisimple_module(const Quiver& q, int fq, const DimVector& alpha);

struct Cx2 {
  const Quiver* quiver = nullptr;
  GenRep gen;  // over complex_shape(*quiver)

  DimVector alpha1() const;
  DimVector alpha0() const;
  int n_arrows() const { return static_cast<int>(quiver->arrows.size()); }

  const FqMat& x1(int h) const { return gen.maps[static_cast<size_t>(h)]; }
  const FqMat& x0(int h) const {
    return gen.maps[static_cast<size_t>(n_arrows() + h)];
  }
  const FqMat& d1(int i) const {
    return gen.maps[static_cast<size_t>(2 * n_arrows() + i)];
  }
  const FqMat& d0(int i) const {
    return gen.maps[static_cast<size_t>(2 * n_arrows() + quiver->n() + i)];
  }

  // The degree-1 / degree-0 module structure as a module-shape GenRep.
  GenRep degree_module(int deg) const;

  bool valid() const;
  bool acyclic() const;

  static Cx2 from_parts(const Quiver& q, const GenRep& deg1, const GenRep& deg0,
                        const std::vector<FqMat>& d1,
                        const std::vector<FqMat>& d0);
  static Cx2 c_of(const Quiver& q, const GenRep& m);      // 0 -> M
  static Cx2 cstar_of(const Quiver& q, const GenRep& m);  // M -> 0
  static Cx2 k_of(const Quiver& q, const GenRep& m);      // d1 = id, d0 = 0
  static Cx2 kstar_of(const Quiver& q, const GenRep& m);  // d0 = id, d1 = 0
  Cx2 direct_sum(const Cx2& o) const;
};

struct Homology {
  GenRep h0, h1;        // module-shape representations
  DimVector im_d0, im_d1;
};
Homology homology(const Cx2& x);

struct ModClassInfo {
  GenRep rep;
  std::vector<long long> fp;
  std::string key;   // deterministic, field-size-independent descriptor
  std::string name;  // human-readable (S<i>^k when applicable, else #id)
  BigIntRep aut;
  int gamma = 0;  // number of indecomposable summands
};

struct CxClassInfo {
  Cx2 rep;
  std::vector<long long> fp;
  std::string key;
  BigIntRep aut;
  int h0_mod = -1, h1_mod = -1;  // module class ids of the homology
  DimVector im_d0, im_d1;
  int gamma = 0;
  bool acyclic = false;
};

class Catalog {
 public:
  Catalog(const Quiver& q, int fq);
  const Quiver& quiver() const { return *quiver_; }
  int q() const { return q_; }

  int module_class(const GenRep& m);  // insert or find; returns class id
  int cx_class(const Cx2& x);
  const ModClassInfo& module_info(int id) const { return modules_.at((size_t)id); }
  const CxClassInfo& cx_info(int id) const { return cxs_.at((size_t)id); }
  int n_modules() const { return static_cast<int>(modules_.size()); }
  int n_complexes() const { return static_cast<int>(cxs_.size()); }

  int simple_module(int vertex);            // S_i
  int module_power(int vertex, int k);      // S_i^{\oplus k}

  // F^Z_{XY} = #{subcomplexes W of Z : W iso Y, Z/W iso X}.
  long long hall_number(int z, int x, int y);
  // All middle-term classes of extensions of X by Y (Y the subobject).
  const std::vector<int>& extension_classes(int x, int y);

  BigIntRep g_order(const DimVector& a1, const DimVector& a0) const;

 private:
  const Quiver* quiver_;
  int q_;
  std::vector<ModClassInfo> modules_;
  std::vector<CxClassInfo> cxs_;
  std::map<std::tuple<int, int, int>, long long> hall_cache_;
  std::map<std::pair<int, int>, std::vector<int>> ext_cache_;
};

struct EnumeratedClass {
  int id;
  BigIntRep orbit;
};
// Complete orbit/class enumeration by direct iteration over matrix tuples;
// throws if the search space exceeds `cap` points.
std::vector<EnumeratedClass> enumerate_complexes(Catalog& cat,
                                                 const DimVector& a1,
                                                 const DimVector& a0,
                                                 long long cap = 1 << 24);
std::vector<EnumeratedClass> enumerate_modules(Catalog& cat,
                                               const DimVector& alpha,
                                               long long cap = 1 << 24);

// dim Ext^1(M, N) in the nilpotent category, by explicit cocycle/coboundary
// rank computation (independent of the Euler-form shortcut).
long long ext1_dim(const Quiver& q, int fq, const GenRep& m, const GenRep& n);

}  // namespace hallq
