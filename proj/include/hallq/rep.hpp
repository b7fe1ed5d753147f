#pragma once
// Generic diagram machinery over F_q: a GenRep is a finite collection of
// F_q-spaces joined by linear maps along a fixed edge shape.  Quiver
// representations and 2-periodic complexes are both instances (complexes
// live over a doubled shape), so hom spaces, isomorphism tests,
// Krull-Schmidt decomposition, and subobject enumeration are written once.

#include "hallq/fq.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <random>
#include <vector>

namespace hallq {

using BigIntRep = boost::multiprecision::cpp_int;

struct GenShape {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;  // (src, dst)
  bool operator==(const GenShape& o) const {
    return nodes == o.nodes && edges == o.edges;
  }
};

struct GenRep {
  int q = 2;
  const GenShape* shape = nullptr;
  std::vector<int> dims;    // per node
  std::vector<FqMat> maps;  // maps[e]: dims[dst] x dims[src]

  int total_dim() const;
  static GenRep zero(const GenShape& s, int q);
  GenRep direct_sum(const GenRep& o) const;
};

// A homomorphism is one matrix per node (dims_B[v] x dims_A[v]).
using GenHom = std::vector<FqMat>;

// Basis of the space of homomorphisms A -> B (intertwiners on every edge).
std::vector<GenHom> hom_basis(const GenRep& a, const GenRep& b);
long long hom_dim(const GenRep& a, const GenRep& b);

// Cheap iso-invariant fingerprint: dims plus rank profiles of all edge-path
// composites up to length total_dim (deterministic order).
std::vector<long long> fingerprint(const GenRep& a);

bool is_isomorphic(const GenRep& a, const GenRep& b);

// Krull-Schmidt decomposition into indecomposable summands.
std::vector<GenRep> decompose(const GenRep& a);

// Residue-field degree d of the local algebra End(X), X indecomposable:
// End(X)/rad End(X) = F_{q^d}.
int end_residue_degree(const GenRep& indec);

// dim rad End(X) for arbitrary X (via decomposition).
int rad_end_dim(const GenRep& a);

// |Aut(X)| exactly: exhaustive over the hom space when small, otherwise by
// the Krull-Schmidt formula q^{dim rad End} * prod |GL_{m_i}(F_{q^{d_i}})|.
BigIntRep aut_count(const GenRep& a);

// |GL_n(F_q)| as an exact integer.
BigIntRep gl_order(long long qq, int n);

// Subobjects: one subspace per node (given by RREF basis rows), closed under
// every edge map.  fn returns false to stop early.
void for_each_subobject(const GenRep& a, const std::vector<int>& sub_dims,
                        const std::function<bool(const std::vector<FqMat>&)>& fn);

// Structure induced on a closed subobject / its quotient.
GenRep sub_rep(const GenRep& a, const std::vector<FqMat>& bases);
GenRep quotient_rep(const GenRep& a, const std::vector<FqMat>& bases);

}  // namespace hallq
