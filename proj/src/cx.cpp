#include "hallq/cx.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hallq {

// ===========================================================================
// Shapes
// ===========================================================================

namespace {

std::string quiver_signature(const Quiver& q) {
  std::string s = std::to_string(q.n());
  for (const auto& [a, b] : q.arrows)
    s += ";" + std::to_string(a) + "," + std::to_string(b);
  return s;
}

std::map<std::string, GenShape*>& shape_registry() {
  static std::map<std::string, GenShape*> r;
  return r;
}
std::mutex shape_mutex;

}  // namespace

const GenShape& module_shape(const Quiver& q) {
  std::lock_guard<std::mutex> lock(shape_mutex);
  std::string key = "m|" + quiver_signature(q);
  auto& r = shape_registry();
  auto it = r.find(key);
  if (it == r.end()) {
    auto* s = new GenShape;
    s->nodes = q.n();
    s->edges = q.arrows;
    it = r.emplace(key, s).first;
  }
  return *it->second;
}

const GenShape& complex_shape(const Quiver& q) {
  std::lock_guard<std::mutex> lock(shape_mutex);
  std::string key = "x|" + quiver_signature(q);
  auto& r = shape_registry();
  auto it = r.find(key);
  if (it == r.end()) {
    auto* s = new GenShape;
    s->nodes = 2 * q.n();
    for (const auto& [a, b] : q.arrows) s->edges.emplace_back(2 * a, 2 * b);
    for (const auto& [a, b] : q.arrows)
      s->edges.emplace_back(2 * a + 1, 2 * b + 1);
    for (int i = 0; i < q.n(); ++i) s->edges.emplace_back(2 * i, 2 * i + 1);
    for (int i = 0; i < q.n(); ++i) s->edges.emplace_back(2 * i + 1, 2 * i);
    it = r.emplace(key, s).first;
  }
  return *it->second;
}

// ===========================================================================
// Modules
// ===========================================================================

bool is_nilpotent_module(const Quiver& q, const GenRep& m) {
  // Iterated image: U <- sum over arrows of x_h(U); must reach zero within
  // total_dim steps.
  int n = q.n();
  std::vector<FqMat> u;  // per vertex: rows span current image space
  for (int i = 0; i < n; ++i)
    u.push_back(FqMat::identity(m.q, m.dims[static_cast<size_t>(i)]));
  for (int step = 0; step < m.total_dim(); ++step) {
    std::vector<std::vector<std::vector<int>>> collected(static_cast<size_t>(n));
    const Fq& f = Fq::get(m.q);
    for (size_t e = 0; e < q.arrows.size(); ++e) {
      int s = q.arrows[e].first, t = q.arrows[e].second;
      const FqMat& x = m.maps[e];
      for (int j = 0; j < u[static_cast<size_t>(s)].rows; ++j) {
        std::vector<int> img(static_cast<size_t>(x.rows), 0);
        for (int r = 0; r < x.rows; ++r) {
          int acc = 0;
          for (int c = 0; c < x.cols; ++c)
            acc = f.add(acc, f.mul(x.at(r, c), u[static_cast<size_t>(s)].at(j, c)));
          img[static_cast<size_t>(r)] = acc;
        }
        collected[static_cast<size_t>(t)].push_back(std::move(img));
      }
    }
    bool all_zero = true;
    for (int i = 0; i < n; ++i) {
      FqMat rows(m.q, static_cast<int>(collected[static_cast<size_t>(i)].size()),
                 m.dims[static_cast<size_t>(i)]);
      for (size_t r = 0; r < collected[static_cast<size_t>(i)].size(); ++r)
        for (int c = 0; c < rows.cols; ++c)
          rows.set(static_cast<int>(r), c,
                   collected[static_cast<size_t>(i)][r][static_cast<size_t>(c)]);
      u[static_cast<size_t>(i)] = rows.rref();
      // drop zero rows
      int nz = u[static_cast<size_t>(i)].rank();
      FqMat trimmed(m.q, nz, rows.cols);
      for (int r = 0; r < nz; ++r)
        for (int c = 0; c < rows.cols; ++c)
          trimmed.set(r, c, u[static_cast<size_t>(i)].at(r, c));
      u[static_cast<size_t>(i)] = trimmed;
      if (nz > 0) all_zero = false;
    }
    if (all_zero) return true;
  }
  for (int i = 0; i < n; ++i)
    if (u[static_cast<size_t>(i)].rows > 0) return false;
  return true;
}

GenRep semisimple_module(const Quiver& q, int fq, const DimVector& alpha) {
  GenRep m;
  m.q = fq;
  m.shape = &module_shape(q);
  for (long long d : alpha) m.dims.push_back(static_cast<int>(d));
  for (const auto& [s, t] : q.arrows)
    m.maps.push_back(FqMat(fq, m.dims[static_cast<size_t>(t)],
                           m.dims[static_cast<size_t>(s)]));
  return m;
}

// ===========================================================================
// Cx2
// ===========================================================================

DimVector Cx2::alpha1() const {
  DimVector d;
  for (int i = 0; i < quiver->n(); ++i)
    d.push_back(gen.dims[static_cast<size_t>(2 * i)]);
  return d;
}

DimVector Cx2::alpha0() const {
  DimVector d;
  for (int i = 0; i < quiver->n(); ++i)
    d.push_back(gen.dims[static_cast<size_t>(2 * i + 1)]);
  return d;
}

GenRep Cx2::degree_module(int deg) const {
  GenRep m;
  m.q = gen.q;
  m.shape = &module_shape(*quiver);
  int off = deg == 1 ? 0 : 1;
  for (int i = 0; i < quiver->n(); ++i)
    m.dims.push_back(gen.dims[static_cast<size_t>(2 * i + off)]);
  for (int h = 0; h < n_arrows(); ++h)
    m.maps.push_back(deg == 1 ? x1(h) : x0(h));
  return m;
}

bool Cx2::valid() const {
  for (int h = 0; h < n_arrows(); ++h) {
    int s = quiver->arrows[static_cast<size_t>(h)].first;
    int t = quiver->arrows[static_cast<size_t>(h)].second;
    if (!(d1(t) * x1(h) - x0(h) * d1(s)).is_zero()) return false;
    if (!(d0(t) * x0(h) - x1(h) * d0(s)).is_zero()) return false;
  }
  for (int i = 0; i < quiver->n(); ++i) {
    if (!(d1(i) * d0(i)).is_zero()) return false;
    if (!(d0(i) * d1(i)).is_zero()) return false;
  }
  return is_nilpotent_module(*quiver, degree_module(1)) &&
         is_nilpotent_module(*quiver, degree_module(0));
}

bool Cx2::acyclic() const {
  for (int i = 0; i < quiver->n(); ++i) {
    // exactness at both spots: rank d1 + rank d0 accounts for everything
    int n1 = gen.dims[static_cast<size_t>(2 * i)];
    int n0 = gen.dims[static_cast<size_t>(2 * i + 1)];
    if (d1(i).rank() + d0(i).rank() != std::max(n1, n0) ||
        n1 != n0)
      return false;
  }
  return true;
}

Cx2 Cx2::from_parts(const Quiver& q, const GenRep& deg1, const GenRep& deg0,
                    const std::vector<FqMat>& d1v,
                    const std::vector<FqMat>& d0v) {
  Cx2 x;
  x.quiver = &q;
  x.gen.q = deg0.q;
  x.gen.shape = &complex_shape(q);
  for (int i = 0; i < q.n(); ++i) {
    x.gen.dims.push_back(deg1.dims[static_cast<size_t>(i)]);
    x.gen.dims.push_back(deg0.dims[static_cast<size_t>(i)]);
  }
  for (const auto& m : deg1.maps) x.gen.maps.push_back(m);
  for (const auto& m : deg0.maps) x.gen.maps.push_back(m);
  for (const auto& m : d1v) x.gen.maps.push_back(m);
  for (const auto& m : d0v) x.gen.maps.push_back(m);
  return x;
}

Cx2 Cx2::c_of(const Quiver& q, const GenRep& m) {
  GenRep z = semisimple_module(q, m.q, DimVector(static_cast<size_t>(q.n()), 0));
  std::vector<FqMat> d1v, d0v;
  for (int i = 0; i < q.n(); ++i) {
    d1v.push_back(FqMat(m.q, m.dims[static_cast<size_t>(i)], 0));
    d0v.push_back(FqMat(m.q, 0, m.dims[static_cast<size_t>(i)]));
  }
  return from_parts(q, z, m, d1v, d0v);
}

Cx2 Cx2::cstar_of(const Quiver& q, const GenRep& m) {
  GenRep z = semisimple_module(q, m.q, DimVector(static_cast<size_t>(q.n()), 0));
  std::vector<FqMat> d1v, d0v;
  for (int i = 0; i < q.n(); ++i) {
    d1v.push_back(FqMat(m.q, 0, m.dims[static_cast<size_t>(i)]));
    d0v.push_back(FqMat(m.q, m.dims[static_cast<size_t>(i)], 0));
  }
  return from_parts(q, m, z, d1v, d0v);
}

Cx2 Cx2::k_of(const Quiver& q, const GenRep& m) {
  std::vector<FqMat> d1v, d0v;
  for (int i = 0; i < q.n(); ++i) {
    int d = m.dims[static_cast<size_t>(i)];
    d1v.push_back(FqMat::identity(m.q, d));
    d0v.push_back(FqMat(m.q, d, d));
  }
  return from_parts(q, m, m, d1v, d0v);
}

Cx2 Cx2::kstar_of(const Quiver& q, const GenRep& m) {
  std::vector<FqMat> d1v, d0v;
  for (int i = 0; i < q.n(); ++i) {
    int d = m.dims[static_cast<size_t>(i)];
    d1v.push_back(FqMat(m.q, d, d));
    d0v.push_back(FqMat::identity(m.q, d));
  }
  return from_parts(q, m, m, d1v, d0v);
}

Cx2 Cx2::direct_sum(const Cx2& o) const {
  Cx2 out;
  out.quiver = quiver;
  out.gen = gen.direct_sum(o.gen);
  return out;
}

// ===========================================================================
// Homology
// ===========================================================================

namespace {

std::vector<int> pivot_cols_of(const FqMat& rref_basis) {
  std::vector<int> piv;
  for (int i = 0; i < rref_basis.rows; ++i)
    for (int j = 0; j < rref_basis.cols; ++j)
      if (rref_basis.at(i, j) != 0) {
        piv.push_back(j);
        break;
      }
  return piv;
}

}  // namespace

Homology homology(const Cx2& x) {
  const Quiver& q = *x.quiver;
  int n = q.n();
  Homology out;
  out.im_d0.assign(static_cast<size_t>(n), 0);
  out.im_d1.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    out.im_d0[static_cast<size_t>(i)] = x.d0(i).rank();
    out.im_d1[static_cast<size_t>(i)] = x.d1(i).rank();
  }
  // H^0 = ker d0 / im d1 inside the degree-0 module; H^1 symmetric.
  auto compute = [&](const GenRep& module, auto d_out, auto d_in) {
    // d_out(i): map leaving this degree; d_in(i): map entering it.
    std::vector<FqMat> ker;
    for (int i = 0; i < n; ++i) ker.push_back(d_out(i).nullspace());
    GenRep sub = sub_rep(module, ker);
    // image of d_in expressed in kernel coordinates
    std::vector<FqMat> w;
    for (int i = 0; i < n; ++i) {
      const FqMat& din = d_in(i);
      std::vector<int> piv = pivot_cols_of(ker[static_cast<size_t>(i)]);
      FqMat rows(module.q, din.cols, ker[static_cast<size_t>(i)].rows);
      for (int j = 0; j < din.cols; ++j)
        for (size_t pi = 0; pi < piv.size(); ++pi)
          rows.set(j, static_cast<int>(pi), din.at(piv[pi], j));
      FqMat r = rows.rref();
      int nz = r.rank();
      FqMat trimmed(module.q, nz, r.cols);
      for (int rr = 0; rr < nz; ++rr)
        for (int cc = 0; cc < r.cols; ++cc) trimmed.set(rr, cc, r.at(rr, cc));
      w.push_back(trimmed);
    }
    return quotient_rep(sub, w);
  };
  out.h0 = compute(
      x.degree_module(0), [&](int i) { return x.d0(i); },
      [&](int i) { return x.d1(i); });
  out.h1 = compute(
      x.degree_module(1), [&](int i) { return x.d1(i); },
      [&](int i) { return x.d0(i); });
  return out;
}

// ===========================================================================
// Catalog
// ===========================================================================

namespace {

std::string dims_str(const std::vector<int>& d) {
  std::string s = "[";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

std::string indec_descriptor(const GenRep& r) {
  std::string s = "(" + dims_str(r.dims) + ";";
  auto fp = fingerprint(r);
  for (size_t i = r.dims.size(); i < fp.size(); ++i)
    s += std::to_string(fp[i]) + ".";
  return s + ")";
}

// Field-size-independent structural key: dims plus the sorted multiset of
// indecomposable-summand descriptors.
std::string structural_key(const std::string& prefix, const GenRep& r,
                           const std::vector<GenRep>& parts) {
  std::vector<std::string> descs;
  for (const auto& p : parts) descs.push_back(indec_descriptor(p));
  std::sort(descs.begin(), descs.end());
  std::string s = prefix + dims_str(r.dims) + "|";
  for (const auto& d : descs) s += d;
  return s;
}

}  // namespace

Catalog::Catalog(const Quiver& q, int fq) : quiver_(&q), q_(fq) {
  Fq::get(fq);  // validate field size eagerly
}

int Catalog::module_class(const GenRep& m) {
  auto fp = fingerprint(m);
  for (size_t i = 0; i < modules_.size(); ++i) {
    if (modules_[i].fp != fp) continue;
    if (is_isomorphic(modules_[i].rep, m)) return static_cast<int>(i);
  }
  ModClassInfo info;
  info.rep = m;
  info.fp = fp;
  auto parts = decompose(m);
  info.gamma = static_cast<int>(parts.size());
  info.key = structural_key("m|", m, parts);
  for (const auto& existing : modules_)
    if (existing.key == info.key) info.key += "|alt";
  info.aut = aut_count(m);
  // Name: S<i>^k for semisimple concentrated at one vertex, else #id.
  info.name = "#" + std::to_string(modules_.size());
  bool all_zero_maps = true;
  for (const auto& mat : m.maps) all_zero_maps = all_zero_maps && mat.is_zero();
  if (m.total_dim() == 0) {
    info.name = "0";
  } else if (all_zero_maps) {
    int vtx = -1, k = 0;
    bool single = true;
    for (size_t i = 0; i < m.dims.size(); ++i) {
      if (m.dims[i] == 0) continue;
      if (vtx >= 0) single = false;
      vtx = static_cast<int>(i);
      k = m.dims[i];
    }
    if (single) {
      info.name = "S" + quiver_->vertices[static_cast<size_t>(vtx)];
      if (k > 1) info.name += "^" + std::to_string(k);
    }
  }
  modules_.push_back(std::move(info));
  return static_cast<int>(modules_.size()) - 1;
}

int Catalog::cx_class(const Cx2& x) {
  if (!x.valid()) throw std::invalid_argument("cx_class: invalid complex");
  auto fp = fingerprint(x.gen);
  for (size_t i = 0; i < cxs_.size(); ++i) {
    if (cxs_[i].fp != fp) continue;
    if (is_isomorphic(cxs_[i].rep.gen, x.gen)) return static_cast<int>(i);
  }
  CxClassInfo info;
  info.rep = x;
  info.fp = fp;
  auto parts = decompose(x.gen);
  info.gamma = static_cast<int>(parts.size());
  info.key = structural_key("x|", x.gen, parts);
  for (const auto& existing : cxs_)
    if (existing.key == info.key) info.key += "|alt";
  info.aut = aut_count(x.gen);
  Homology h = homology(x);
  info.h0_mod = module_class(h.h0);
  info.h1_mod = module_class(h.h1);
  info.im_d0 = h.im_d0;
  info.im_d1 = h.im_d1;
  info.acyclic = x.acyclic();
  cxs_.push_back(std::move(info));
  return static_cast<int>(cxs_.size()) - 1;
}

int Catalog::simple_module(int vertex) { return module_power(vertex, 1); }

int Catalog::module_power(int vertex, int k) {
  DimVector d(static_cast<size_t>(quiver_->n()), 0);
  d[static_cast<size_t>(vertex)] = k;
  return module_class(semisimple_module(*quiver_, q_, d));
}

long long Catalog::hall_number(int z, int x, int y) {
  auto key = std::make_tuple(z, x, y);
  auto it = hall_cache_.find(key);
  if (it != hall_cache_.end()) return it->second;

  const Cx2& zc = cxs_[static_cast<size_t>(z)].rep;
  const GenRep& xg = cxs_[static_cast<size_t>(x)].rep.gen;
  const GenRep& yg = cxs_[static_cast<size_t>(y)].rep.gen;
  long long count = 0;
  // Dimension additivity pre-check.
  bool compatible = true;
  for (size_t i = 0; i < zc.gen.dims.size(); ++i)
    compatible = compatible &&
                 zc.gen.dims[i] == xg.dims[i] + yg.dims[i];
  if (compatible) {
    std::vector<int> sub_dims(yg.dims.begin(), yg.dims.end());
    auto yfp = fingerprint(yg);
    auto xfp = fingerprint(xg);
    for_each_subobject(zc.gen, sub_dims, [&](const std::vector<FqMat>& w) {
      GenRep sub = sub_rep(zc.gen, w);
      if (fingerprint(sub) == yfp && is_isomorphic(sub, yg)) {
        GenRep quot = quotient_rep(zc.gen, w);
        if (fingerprint(quot) == xfp && is_isomorphic(quot, xg)) ++count;
      }
      return true;
    });
  }
  hall_cache_[key] = count;
  return count;
}

const std::vector<int>& Catalog::extension_classes(int x, int y) {
  auto key = std::make_pair(x, y);
  auto it = ext_cache_.find(key);
  if (it != ext_cache_.end()) return it->second;

  // Copies: cx_class below may grow cxs_ and invalidate references into it.
  const GenRep xg = cxs_[static_cast<size_t>(x)].rep.gen;
  const GenRep yg = cxs_[static_cast<size_t>(y)].rep.gen;
  const GenShape& shape = *xg.shape;

  // Cross-block entries per edge: gamma_e maps the X-part at src into the
  // Y-part at dst; Z_e = [[Y_e, gamma_e], [0, X_e]].
  std::vector<std::pair<size_t, std::pair<int, int>>> slots;  // (edge, (r,c))
  for (size_t e = 0; e < shape.edges.size(); ++e) {
    int u = shape.edges[e].first, v = shape.edges[e].second;
    for (int r = 0; r < yg.dims[static_cast<size_t>(v)]; ++r)
      for (int c = 0; c < xg.dims[static_cast<size_t>(u)]; ++c)
        slots.push_back({e, {r, c}});
  }
  const Quiver& q = *quiver_;
  auto build = [&](const std::vector<int>& fill) {
    Cx2 z;
    z.quiver = &q;
    z.gen.q = q_;
    z.gen.shape = &shape;
    for (size_t v = 0; v < xg.dims.size(); ++v)
      z.gen.dims.push_back(yg.dims[v] + xg.dims[v]);
    for (size_t e = 0; e < shape.edges.size(); ++e) {
      int u = shape.edges[e].first, v = shape.edges[e].second;
      FqMat m(q_, z.gen.dims[static_cast<size_t>(v)],
              z.gen.dims[static_cast<size_t>(u)]);
      for (int i = 0; i < yg.maps[e].rows; ++i)
        for (int j = 0; j < yg.maps[e].cols; ++j)
          m.set(i, j, yg.maps[e].at(i, j));
      for (int i = 0; i < xg.maps[e].rows; ++i)
        for (int j = 0; j < xg.maps[e].cols; ++j)
          m.set(yg.dims[static_cast<size_t>(v)] + i,
                yg.dims[static_cast<size_t>(u)] + j, xg.maps[e].at(i, j));
      z.gen.maps.push_back(std::move(m));
    }
    for (size_t s = 0; s < slots.size(); ++s) {
      if (fill[s] == 0) continue;
      auto [e, rc] = slots[s];
      z.gen.maps[e].set(rc.first, yg.dims[static_cast<size_t>(
                                      shape.edges[e].first)] +
                                      rc.second,
                        fill[s]);
    }
    return z;
  };
  // All constraints (d-square-zero and d-versus-module-map commutation) are
  // linear in the fill: products of block-triangular matrices never multiply
  // two cross-blocks together.  Solve for the cocycle space and enumerate
  // only it; this shrinks the search from q^#slots to q^dim.
  auto residual = [&](const Cx2& z) {
    std::vector<int> out;
    auto push = [&](const FqMat& m) {
      for (int v : m.a) out.push_back(v);
    };
    for (int h = 0; h < z.n_arrows(); ++h) {
      int s = q.arrows[static_cast<size_t>(h)].first;
      int t = q.arrows[static_cast<size_t>(h)].second;
      push(z.d1(t) * z.x1(h) - z.x0(h) * z.d1(s));
      push(z.d0(t) * z.x0(h) - z.x1(h) * z.d0(s));
    }
    for (int i = 0; i < q.n(); ++i) {
      push(z.d1(i) * z.d0(i));
      push(z.d0(i) * z.d1(i));
    }
    return out;
  };
  std::vector<int> ids;
  std::vector<int> fill(slots.size(), 0);
  FqMat kernel;
  if (slots.empty()) {
    kernel = FqMat(q_, 0, 0);
  } else {
    std::vector<std::vector<int>> cols;
    size_t n_res = 0;
    for (size_t s = 0; s < slots.size(); ++s) {
      std::fill(fill.begin(), fill.end(), 0);
      fill[s] = 1;
      cols.push_back(residual(build(fill)));
      n_res = cols.back().size();
    }
    FqMat m(q_, (int)n_res, (int)slots.size());
    for (size_t s = 0; s < slots.size(); ++s)
      for (size_t r = 0; r < n_res; ++r) m.set((int)r, (int)s, cols[s][r]);
    kernel = n_res == 0 ? FqMat::identity(q_, (int)slots.size())
                        : m.nullspace();
  }
  // Cohomologous cocycles (differing by f_dst x_e - y_e f_src for per-node
  // maps f: X -> Y) yield isomorphic middle terms, so it suffices to
  // enumerate coset representatives of the cocycle space modulo coboundaries.
  const Fq& field = Fq::get(q_);
  std::vector<std::vector<int>> echelon;  // reduced rows spanning coboundaries
  std::vector<int> pivots;
  auto reduce_row = [&](std::vector<int> row) {
    for (size_t k = 0; k < echelon.size(); ++k) {
      int p = pivots[k];
      if (row[(size_t)p] == 0) continue;
      int c = row[(size_t)p];
      for (size_t s = 0; s < row.size(); ++s)
        row[s] = field.sub(row[s], field.mul(c, echelon[k][s]));
    }
    return row;
  };
  auto insert_row = [&](std::vector<int> row) {
    row = reduce_row(std::move(row));
    for (size_t s = 0; s < row.size(); ++s) {
      if (row[s] == 0) continue;
      int inv = field.inv(row[s]);
      for (size_t t = 0; t < row.size(); ++t) row[t] = field.mul(inv, row[t]);
      echelon.push_back(std::move(row));
      pivots.push_back((int)s);
      return true;
    }
    return false;
  };
  if (!slots.empty()) {
    for (size_t v = 0; v < xg.dims.size(); ++v) {
      for (int r = 0; r < yg.dims[v]; ++r) {
        for (int c = 0; c < xg.dims[v]; ++c) {
          // Coboundary of the single-entry map f = E_{rc} at node v.
          std::vector<int> row(slots.size(), 0);
          for (size_t s = 0; s < slots.size(); ++s) {
            auto [e, rc] = slots[s];
            size_t u = (size_t)shape.edges[e].first;
            size_t w = (size_t)shape.edges[e].second;
            int val = 0;
            if (w == v && rc.first == r)
              val = field.add(val, xg.maps[e].at(c, rc.second));
            if (u == v && rc.second == c)
              val = field.sub(val, yg.maps[e].at(rc.first, r));
            row[s] = val;
          }
          insert_row(std::move(row));
        }
      }
    }
  }
  std::vector<std::vector<int>> gens;  // cocycle representatives mod coboundary
  for (int r = 0; r < kernel.rows; ++r) {
    std::vector<int> row((size_t)kernel.cols, 0);
    for (int s = 0; s < kernel.cols; ++s) row[(size_t)s] = kernel.at(r, s);
    row = reduce_row(std::move(row));
    std::vector<int> rep = row;
    if (insert_row(std::move(row))) gens.push_back(std::move(rep));
  }
  double log_count = gens.size() * std::log2(double(xg.q));
  if (log_count > 26.0)
    throw std::runtime_error("extension_classes: search space too large");
  std::vector<int> coef(gens.size(), 0);
  for (;;) {
    std::fill(fill.begin(), fill.end(), 0);
    for (size_t r = 0; r < gens.size(); ++r) {
      if (coef[r] == 0) continue;
      for (size_t s = 0; s < slots.size(); ++s)
        fill[s] = field.add(fill[s], field.mul(coef[r], gens[r][s]));
    }
    Cx2 z = build(fill);
    if (z.valid()) {
      int id = cx_class(z);
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    size_t s = 0;
    for (; s < coef.size(); ++s) {
      if (++coef[s] < q_) break;
      coef[s] = 0;
    }
    if (s == coef.size()) break;
  }
  std::sort(ids.begin(), ids.end());
  return ext_cache_.emplace(key, std::move(ids)).first->second;
}

BigIntRep Catalog::g_order(const DimVector& a1, const DimVector& a0) const {
  BigIntRep out = 1;
  for (long long d : a1) out *= gl_order(q_, static_cast<int>(d));
  for (long long d : a0) out *= gl_order(q_, static_cast<int>(d));
  return out;
}

// ===========================================================================
// Enumeration
// ===========================================================================

namespace {

// Iterate every assignment of the entries of the given matrices.
template <typename Check, typename Use>
void enumerate_tuples(int q, std::vector<FqMat>& mats, long long cap,
                      const Check& check, const Use& use) {
  size_t entries = 0;
  for (const auto& m : mats) entries += m.a.size();
  double log_count = entries * std::log2(double(q));
  if (log_count > std::log2(double(cap)))
    throw std::runtime_error("enumeration cap exceeded");
  std::vector<std::pair<size_t, size_t>> slots;
  for (size_t m = 0; m < mats.size(); ++m)
    for (size_t i = 0; i < mats[m].a.size(); ++i) slots.push_back({m, i});
  std::vector<int> fill(slots.size(), 0);
  for (;;) {
    for (size_t s = 0; s < slots.size(); ++s)
      mats[slots[s].first].a[slots[s].second] = static_cast<uint8_t>(fill[s]);
    if (check()) use();
    size_t s = 0;
    for (; s < fill.size(); ++s) {
      if (++fill[s] < q) break;
      fill[s] = 0;
    }
    if (s == fill.size()) break;
  }
}

}  // namespace

std::vector<EnumeratedClass> enumerate_complexes(Catalog& cat,
                                                 const DimVector& a1,
                                                 const DimVector& a0,
                                                 long long cap) {
  const Quiver& q = cat.quiver();
  Cx2 z;
  z.quiver = &q;
  z.gen.q = cat.q();
  z.gen.shape = &complex_shape(q);
  for (int i = 0; i < q.n(); ++i) {
    z.gen.dims.push_back(static_cast<int>(a1[static_cast<size_t>(i)]));
    z.gen.dims.push_back(static_cast<int>(a0[static_cast<size_t>(i)]));
  }
  for (const auto& [u, v] : z.gen.shape->edges)
    z.gen.maps.push_back(FqMat(cat.q(), z.gen.dims[static_cast<size_t>(v)],
                               z.gen.dims[static_cast<size_t>(u)]));
  std::map<int, BigIntRep> counts;
  enumerate_tuples(
      cat.q(), z.gen.maps, cap, [&]() { return z.valid(); },
      [&]() { counts[cat.cx_class(z)] += 1; });
  std::vector<EnumeratedClass> out;
  for (const auto& [id, orbit] : counts) out.push_back({id, orbit});
  return out;
}

std::vector<EnumeratedClass> enumerate_modules(Catalog& cat,
                                               const DimVector& alpha,
                                               long long cap) {
  const Quiver& q = cat.quiver();
  GenRep m = semisimple_module(q, cat.q(), alpha);
  std::map<int, BigIntRep> counts;
  enumerate_tuples(
      cat.q(), m.maps, cap, [&]() { return is_nilpotent_module(q, m); },
      [&]() { counts[cat.module_class(m)] += 1; });
  std::vector<EnumeratedClass> out;
  for (const auto& [id, orbit] : counts) out.push_back({id, orbit});
  return out;
}

long long ext1_dim(const Quiver& q, int fq, const GenRep& m, const GenRep& n) {
  // Coboundary map: (f_i) in prod Hom(M_i, N_i) |-> per arrow h,
  // f_{t(h)} x^M_h - x^N_h f_{s(h)}.  dim Ext^1 = (total cocycle dim) - rank.
  const Fq& f = Fq::get(fq);
  std::vector<int> off_in(static_cast<size_t>(q.n()) + 1, 0);
  for (int i = 0; i < q.n(); ++i)
    off_in[static_cast<size_t>(i) + 1] =
        off_in[static_cast<size_t>(i)] +
        n.dims[static_cast<size_t>(i)] * m.dims[static_cast<size_t>(i)];
  int in_dim = off_in[static_cast<size_t>(q.n())];
  long long cocycle_dim = 0;
  std::vector<std::vector<int>> rows;
  for (size_t h = 0; h < q.arrows.size(); ++h) {
    int s = q.arrows[h].first, t = q.arrows[h].second;
    const FqMat& xm = m.maps[h];
    const FqMat& xn = n.maps[h];
    cocycle_dim += static_cast<long long>(n.dims[static_cast<size_t>(t)]) *
                   m.dims[static_cast<size_t>(s)];
    for (int i = 0; i < n.dims[static_cast<size_t>(t)]; ++i)
      for (int j = 0; j < m.dims[static_cast<size_t>(s)]; ++j) {
        std::vector<int> row(static_cast<size_t>(in_dim), 0);
        for (int k = 0; k < m.dims[static_cast<size_t>(t)]; ++k) {
          int idx = off_in[static_cast<size_t>(t)] +
                    i * m.dims[static_cast<size_t>(t)] + k;
          row[static_cast<size_t>(idx)] =
              f.add(row[static_cast<size_t>(idx)], xm.at(k, j));
        }
        for (int k = 0; k < n.dims[static_cast<size_t>(s)]; ++k) {
          int idx = off_in[static_cast<size_t>(s)] +
                    k * m.dims[static_cast<size_t>(s)] + j;
          row[static_cast<size_t>(idx)] =
              f.sub(row[static_cast<size_t>(idx)], xn.at(i, k));
        }
        rows.push_back(std::move(row));
      }
  }
  FqMat sys(fq, static_cast<int>(rows.size()), in_dim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < in_dim; ++j)
      sys.set(static_cast<int>(i), j, rows[i][static_cast<size_t>(j)]);
  return cocycle_dim - sys.rank();
}

}  // namespace hallq
