#include "hallq/rep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hallq {

namespace {

// Membership of w (length-n row) in the row space of an RREF basis.
bool in_rowspace(const FqMat& basis, const std::vector<int>& w) {
  const Fq& f = Fq::get(basis.q);
  std::vector<int> v = w;
  // Pivot of RREF row i is its first nonzero column.
  for (int i = 0; i < basis.rows; ++i) {
    int piv = -1;
    for (int j = 0; j < basis.cols; ++j)
      if (basis.at(i, j) != 0) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    int c = v[static_cast<size_t>(piv)];
    if (c == 0) continue;
    for (int j = 0; j < basis.cols; ++j)
      v[static_cast<size_t>(j)] = f.sub(v[static_cast<size_t>(j)],
                                        f.mul(c, basis.at(i, j)));
  }
  for (int x : v)
    if (x) return false;
  return true;
}

std::vector<int> pivot_cols(const FqMat& rref_basis) {
  std::vector<int> piv;
  for (int i = 0; i < rref_basis.rows; ++i)
    for (int j = 0; j < rref_basis.cols; ++j)
      if (rref_basis.at(i, j) != 0) {
        piv.push_back(j);
        break;
      }
  return piv;
}

FqMat block_diag_action(const GenRep& a, const GenHom& endo) {
  int n = a.total_dim();
  FqMat m(a.q, n, n);
  int off = 0;
  for (size_t v = 0; v < a.dims.size(); ++v) {
    int d = a.dims[v];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.set(off + i, off + j, endo[v].at(i, j));
    off += d;
  }
  return m;
}

GenHom combine(const GenRep& a, const std::vector<GenHom>& basis,
               const std::vector<int>& coeffs) {
  const Fq& f = Fq::get(a.q);
  GenHom out;
  for (size_t v = 0; v < a.dims.size(); ++v)
    out.push_back(FqMat(a.q, basis.empty() ? 0 : basis[0][v].rows,
                        basis.empty() ? 0 : basis[0][v].cols));
  for (size_t b = 0; b < basis.size(); ++b) {
    int c = coeffs[b];
    if (c == 0) continue;
    for (size_t v = 0; v < out.size(); ++v)
      for (size_t i = 0; i < out[v].a.size(); ++i)
        out[v].a[i] =
            static_cast<uint8_t>(f.add(out[v].a[i], f.mul(c, basis[b][v].a[i])));
  }
  return out;
}

bool hom_invertible(const GenHom& h) {
  for (const auto& m : h)
    if (!m.invertible()) return false;
  return true;
}

}  // namespace

int GenRep::total_dim() const {
  int s = 0;
  for (int d : dims) s += d;
  return s;
}

GenRep GenRep::zero(const GenShape& s, int q) {
  GenRep r;
  r.q = q;
  r.shape = &s;
  r.dims.assign(static_cast<size_t>(s.nodes), 0);
  for (const auto& [u, v] : s.edges) r.maps.push_back(FqMat(q, 0, 0));
  return r;
}

GenRep GenRep::direct_sum(const GenRep& o) const {
  GenRep out;
  out.q = q;
  out.shape = shape;
  for (size_t v = 0; v < dims.size(); ++v)
    out.dims.push_back(dims[v] + o.dims[v]);
  for (size_t e = 0; e < maps.size(); ++e) {
    int u = shape->edges[e].first, v = shape->edges[e].second;
    FqMat m(q, out.dims[static_cast<size_t>(v)], out.dims[static_cast<size_t>(u)]);
    for (int i = 0; i < maps[e].rows; ++i)
      for (int j = 0; j < maps[e].cols; ++j) m.set(i, j, maps[e].at(i, j));
    for (int i = 0; i < o.maps[e].rows; ++i)
      for (int j = 0; j < o.maps[e].cols; ++j)
        m.set(dims[static_cast<size_t>(v)] + i, dims[static_cast<size_t>(u)] + j,
              o.maps[e].at(i, j));
    out.maps.push_back(std::move(m));
  }
  return out;
}

std::vector<GenHom> hom_basis(const GenRep& a, const GenRep& b) {
  if (!(*a.shape == *b.shape) || a.q != b.q)
    throw std::invalid_argument("hom_basis: incompatible representations");
  const Fq& f = Fq::get(a.q);
  int nodes = a.shape->nodes;
  std::vector<int> offset(static_cast<size_t>(nodes) + 1, 0);
  for (int v = 0; v < nodes; ++v)
    offset[static_cast<size_t>(v) + 1] =
        offset[static_cast<size_t>(v)] +
        b.dims[static_cast<size_t>(v)] * a.dims[static_cast<size_t>(v)];
  int unknowns = offset[static_cast<size_t>(nodes)];

  std::vector<std::vector<int>> rows;
  for (size_t e = 0; e < a.shape->edges.size(); ++e) {
    int u = a.shape->edges[e].first, v = a.shape->edges[e].second;
    const FqMat& ae = a.maps[e];  // a_dims[v] x a_dims[u]
    const FqMat& be = b.maps[e];  // b_dims[v] x b_dims[u]
    // Condition (f_v * ae - be * f_u) = 0, entries (i, j):
    // sum_k f_v(i,k) ae(k,j) - sum_k be(i,k) f_u(k,j) = 0
    for (int i = 0; i < b.dims[static_cast<size_t>(v)]; ++i)
      for (int j = 0; j < a.dims[static_cast<size_t>(u)]; ++j) {
        std::vector<int> row(static_cast<size_t>(unknowns), 0);
        for (int k = 0; k < a.dims[static_cast<size_t>(v)]; ++k) {
          int idx = offset[static_cast<size_t>(v)] +
                    i * a.dims[static_cast<size_t>(v)] + k;
          row[static_cast<size_t>(idx)] =
              f.add(row[static_cast<size_t>(idx)], ae.at(k, j));
        }
        for (int k = 0; k < b.dims[static_cast<size_t>(u)]; ++k) {
          int idx = offset[static_cast<size_t>(u)] +
                    k * a.dims[static_cast<size_t>(u)] + j;
          row[static_cast<size_t>(idx)] =
              f.sub(row[static_cast<size_t>(idx)], be.at(i, k));
        }
        bool nonzero = false;
        for (int x : row) nonzero = nonzero || x != 0;
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  FqMat sys(a.q, static_cast<int>(rows.size()), unknowns);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < unknowns; ++j)
      sys.set(static_cast<int>(i), j, rows[i][static_cast<size_t>(j)]);
  FqMat ker = rows.empty()
                  ? FqMat::identity(a.q, unknowns)
                  : sys.nullspace();

  std::vector<GenHom> basis;
  for (int r = 0; r < ker.rows; ++r) {
    GenHom h;
    for (int v = 0; v < nodes; ++v) {
      FqMat m(a.q, b.dims[static_cast<size_t>(v)], a.dims[static_cast<size_t>(v)]);
      for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
          m.set(i, j,
                ker.at(r, offset[static_cast<size_t>(v)] + i * m.cols + j));
      h.push_back(std::move(m));
    }
    basis.push_back(std::move(h));
  }
  return basis;
}

long long hom_dim(const GenRep& a, const GenRep& b) {
  return static_cast<long long>(hom_basis(a, b).size());
}

std::vector<long long> fingerprint(const GenRep& a) {
  std::vector<long long> fp;
  for (int d : a.dims) fp.push_back(d);
  int max_len = std::max(1, a.total_dim());
  // All edge-path composites up to max_len, breadth-first, deterministic.
  struct Walk {
    int end;
    FqMat m;
  };
  std::vector<Walk> frontier;
  for (size_t e = 0; e < a.maps.size(); ++e) {
    frontier.push_back({a.shape->edges[e].second, a.maps[e]});
    fp.push_back(a.maps[e].rank());
  }
  for (int len = 2; len <= max_len; ++len) {
    std::vector<Walk> next;
    for (const auto& w : frontier) {
      for (size_t e = 0; e < a.maps.size(); ++e) {
        if (a.shape->edges[e].first != w.end) continue;
        Walk nw{a.shape->edges[e].second, a.maps[e] * w.m};
        fp.push_back(nw.m.rank());
        next.push_back(std::move(nw));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return fp;
}

bool is_isomorphic(const GenRep& a, const GenRep& b) {
  if (!(*a.shape == *b.shape) || a.q != b.q) return false;
  if (a.dims != b.dims) return false;
  if (a.total_dim() == 0) return true;
  if (fingerprint(a) != fingerprint(b)) return false;
  auto basis = hom_basis(a, b);
  size_t h = basis.size();
  if (h == 0) return false;
  double log_count = h * std::log2(double(a.q));
  if (log_count <= 16.0) {
    // Exhaustive search over the hom space.
    std::vector<int> coeffs(h, 0);
    for (;;) {
      if (hom_invertible(combine(a, basis, coeffs))) return true;
      size_t i = 0;
      for (; i < h; ++i) {
        if (++coeffs[i] < a.q) break;
        coeffs[i] = 0;
      }
      if (i == h) return false;
    }
  }
  // Randomized: if a and b are isomorphic the invertible locus has density
  // >= prod (1 - q^{-i}) > 1/4, so 400 misses give odds < 2^-160.
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<int> coeffs(h);
    for (auto& c : coeffs) c = static_cast<int>(rng() % a.q);
    if (hom_invertible(combine(a, basis, coeffs))) return true;
  }
  return false;
}

GenRep sub_rep(const GenRep& a, const std::vector<FqMat>& bases) {
  GenRep out;
  out.q = a.q;
  out.shape = a.shape;
  for (const auto& bmat : bases) out.dims.push_back(bmat.rows);
  for (size_t e = 0; e < a.maps.size(); ++e) {
    int u = a.shape->edges[e].first, v = a.shape->edges[e].second;
    const FqMat& bu = bases[static_cast<size_t>(u)];
    const FqMat& bv = bases[static_cast<size_t>(v)];
    std::vector<int> piv = pivot_cols(bv);
    FqMat m(a.q, bv.rows, bu.rows);
    for (int j = 0; j < bu.rows; ++j) {
      // image of j-th basis vector of W_u
      std::vector<int> img(static_cast<size_t>(a.dims[static_cast<size_t>(v)]), 0);
      const Fq& f = Fq::get(a.q);
      for (int r = 0; r < a.maps[e].rows; ++r) {
        int acc = 0;
        for (int c = 0; c < a.maps[e].cols; ++c)
          acc = f.add(acc, f.mul(a.maps[e].at(r, c), bu.at(j, c)));
        img[static_cast<size_t>(r)] = acc;
      }
      // Coordinates w.r.t. RREF basis = entries at pivot columns.
      for (int i = 0; i < bv.rows; ++i)
        m.set(i, j, img[static_cast<size_t>(piv[static_cast<size_t>(i)])]);
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

GenRep quotient_rep(const GenRep& a, const std::vector<FqMat>& bases) {
  const Fq& f = Fq::get(a.q);
  GenRep out;
  out.q = a.q;
  out.shape = a.shape;
  // Quotient coordinates: non-pivot columns, after reducing pivots to zero.
  std::vector<std::vector<int>> nonpiv(a.dims.size());
  for (size_t v = 0; v < a.dims.size(); ++v) {
    std::vector<int> piv = pivot_cols(bases[v]);
    std::vector<bool> is_piv(static_cast<size_t>(a.dims[v]), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    for (int c = 0; c < a.dims[v]; ++c)
      if (!is_piv[static_cast<size_t>(c)]) nonpiv[v].push_back(c);
    out.dims.push_back(static_cast<int>(nonpiv[v].size()));
  }
  auto project = [&](size_t v, std::vector<int> x) {
    // reduce by the subspace basis, then read non-pivot coordinates
    const FqMat& bmat = bases[v];
    std::vector<int> piv = pivot_cols(bmat);
    for (int i = 0; i < bmat.rows; ++i) {
      int c = x[static_cast<size_t>(piv[static_cast<size_t>(i)])];
      if (c == 0) continue;
      for (int j = 0; j < bmat.cols; ++j)
        x[static_cast<size_t>(j)] = f.sub(x[static_cast<size_t>(j)],
                                          f.mul(c, bmat.at(i, j)));
    }
    std::vector<int> coords;
    for (int c : nonpiv[v]) coords.push_back(x[static_cast<size_t>(c)]);
    return coords;
  };
  for (size_t e = 0; e < a.maps.size(); ++e) {
    size_t u = static_cast<size_t>(a.shape->edges[e].first);
    size_t v = static_cast<size_t>(a.shape->edges[e].second);
    FqMat m(a.q, out.dims[v], out.dims[u]);
    for (size_t j = 0; j < nonpiv[u].size(); ++j) {
      // image of the j-th complement basis vector (standard vector at a
      // non-pivot column of W_u)
      std::vector<int> img(static_cast<size_t>(a.dims[v]), 0);
      int col = nonpiv[u][j];
      for (int r = 0; r < a.maps[e].rows; ++r)
        img[static_cast<size_t>(r)] = a.maps[e].at(r, col);
      std::vector<int> coords = project(v, img);
      for (size_t i = 0; i < coords.size(); ++i)
        m.set(static_cast<int>(i), static_cast<int>(j), coords[i]);
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

void for_each_subobject(const GenRep& a, const std::vector<int>& sub_dims,
                        const std::function<bool(const std::vector<FqMat>&)>& fn) {
  size_t nodes = a.dims.size();
  std::vector<FqMat> chosen(nodes);
  bool stop = false;

  // Check closure of every edge whose endpoints are both <= level, touching
  // the node just fixed.
  auto closed_so_far = [&](size_t level) {
    for (size_t e = 0; e < a.maps.size(); ++e) {
      size_t u = static_cast<size_t>(a.shape->edges[e].first);
      size_t v = static_cast<size_t>(a.shape->edges[e].second);
      if (u > level || v > level) continue;
      if (u != level && v != level) continue;
      const Fq& f = Fq::get(a.q);
      for (int j = 0; j < chosen[u].rows; ++j) {
        std::vector<int> img(static_cast<size_t>(a.dims[v]), 0);
        for (int r = 0; r < a.maps[e].rows; ++r) {
          int acc = 0;
          for (int c = 0; c < a.maps[e].cols; ++c)
            acc = f.add(acc, f.mul(a.maps[e].at(r, c), chosen[u].at(j, c)));
          img[static_cast<size_t>(r)] = acc;
        }
        if (!in_rowspace(chosen[v], img)) return false;
      }
    }
    return true;
  };

  std::function<void(size_t)> rec = [&](size_t level) {
    if (stop) return;
    if (level == nodes) {
      if (!fn(chosen)) stop = true;
      return;
    }
    for_each_subspace(a.q, a.dims[level], sub_dims[level],
                      [&](const FqMat& basis) {
                        chosen[level] = basis;
                        if (closed_so_far(level)) rec(level + 1);
                        return !stop;
                      });
  };
  rec(0);
}

std::vector<GenRep> decompose(const GenRep& a) {
  if (a.total_dim() == 0) return {};
  auto basis = hom_basis(a, a);
  std::mt19937 rng(98765);

  auto try_split = [&](const GenHom& endo) -> std::vector<GenRep> {
    FqMat m = block_diag_action(a, endo);
    std::vector<int> mp = min_poly(m);
    auto factors = factor_poly(a.q, mp);
    // Group into distinct irreducibles with multiplicity.
    std::vector<std::pair<std::vector<int>, int>> groups;
    for (const auto& fac : factors) {
      bool found = false;
      for (auto& g : groups)
        if (g.first == fac) {
          ++g.second;
          found = true;
        }
      if (!found) groups.emplace_back(fac, 1);
    }
    if (groups.size() < 2) return {};
    std::vector<GenRep> parts;
    for (const auto& [fac, mult] : groups) {
      // Kernel of fac(endo)^mult on each node is a subrepresentation.
      std::vector<FqMat> bases;
      for (size_t v = 0; v < a.dims.size(); ++v) {
        FqMat pv = eval_poly(fac, endo[v]).pow(mult);
        bases.push_back(pv.nullspace());
      }
      GenRep piece = sub_rep(a, bases);
      if (piece.total_dim() > 0 && piece.total_dim() < a.total_dim())
        parts.push_back(piece);
      else if (piece.total_dim() == a.total_dim())
        return {};  // degenerate split; shouldn't happen
    }
    int s = 0;
    for (const auto& p : parts) s += p.total_dim();
    if (s != a.total_dim()) return {};
    return parts;
  };

  for (int attempt = 0; attempt < static_cast<int>(basis.size()) + 120;
       ++attempt) {
    GenHom endo;
    if (attempt < static_cast<int>(basis.size())) {
      endo = basis[static_cast<size_t>(attempt)];
    } else {
      std::vector<int> coeffs(basis.size());
      for (auto& c : coeffs) c = static_cast<int>(rng() % a.q);
      endo = combine(a, basis, coeffs);
    }
    auto parts = try_split(endo);
    if (!parts.empty()) {
      std::vector<GenRep> out;
      for (const auto& p : parts) {
        auto sub = decompose(p);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
  }
  return {a};  // no splitting endomorphism found: indecomposable
}

int end_residue_degree(const GenRep& indec) {
  auto basis = hom_basis(indec, indec);
  std::mt19937 rng(24680);
  int best = 1;
  auto consider = [&](const GenHom& endo) {
    FqMat m = block_diag_action(indec, endo);
    auto factors = factor_poly(indec.q, min_poly(m));
    // For a local endomorphism ring the minimal polynomial is primary;
    // the irreducible part generates a subfield of the residue field.
    int deg = static_cast<int>(factors[0].size()) - 1;
    best = std::max(best, deg);
  };
  for (const auto& b : basis) consider(b);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> coeffs(basis.size());
    for (auto& c : coeffs) c = static_cast<int>(rng() % indec.q);
    consider(combine(indec, basis, coeffs));
  }
  return best;
}

int rad_end_dim(const GenRep& a) {
  if (a.total_dim() == 0) return 0;
  long long h = hom_dim(a, a);
  auto parts = decompose(a);
  // Group summands by isomorphism.
  std::vector<std::pair<GenRep, int>> groups;
  for (const auto& p : parts) {
    bool found = false;
    for (auto& g : groups)
      if (is_isomorphic(g.first, p)) {
        ++g.second;
        found = true;
        break;
      }
    if (!found) groups.emplace_back(p, 1);
  }
  long long semisimple = 0;
  for (const auto& [rep, m] : groups)
    semisimple += static_cast<long long>(m) * m * end_residue_degree(rep);
  return static_cast<int>(h - semisimple);
}

BigIntRep gl_order(long long qq, int n) {
  BigIntRep out = 1;
  BigIntRep qn = 1;
  for (int i = 0; i < n; ++i) qn *= qq;
  BigIntRep qi = 1;
  for (int i = 0; i < n; ++i) {
    out *= (qn - qi);
    qi *= qq;
  }
  return out;
}

BigIntRep aut_count(const GenRep& a) {
  if (a.total_dim() == 0) return 1;
  auto basis = hom_basis(a, a);
  size_t h = basis.size();
  double log_count = h * std::log2(double(a.q));
  if (log_count <= 16.0) {
    BigIntRep count = 0;
    std::vector<int> coeffs(h, 0);
    for (;;) {
      if (hom_invertible(combine(a, basis, coeffs))) ++count;
      size_t i = 0;
      for (; i < h; ++i) {
        if (++coeffs[i] < a.q) break;
        coeffs[i] = 0;
      }
      if (i == h) break;
    }
    return count;
  }
  // Krull-Schmidt formula.
  auto parts = decompose(a);
  std::vector<std::pair<GenRep, int>> groups;
  for (const auto& p : parts) {
    bool found = false;
    for (auto& g : groups)
      if (is_isomorphic(g.first, p)) {
        ++g.second;
        found = true;
        break;
      }
    if (!found) groups.emplace_back(p, 1);
  }
  long long semisimple = 0;
  BigIntRep out = 1;
  for (const auto& [rep, m] : groups) {
    int d = end_residue_degree(rep);
    semisimple += static_cast<long long>(m) * m * d;
    long long qd = 1;
    for (int i = 0; i < d; ++i) qd *= a.q;
    out *= gl_order(qd, m);
  }
  BigIntRep qpow = 1;
  for (long long i = 0; i < static_cast<long long>(h) - semisimple; ++i)
    qpow *= a.q;
  return out * qpow;
}

}  // namespace hallq
