#include "hallq/hall.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hallq {

namespace {

int pole_order_at_minus1(const RatFun& f) {
  if (f.is_zero()) return 0;
  Poly lin = Poly::from_coeffs({BigRat(1), BigRat(1)});
  auto mult = [&](Poly p) {
    int m = 0;
    while (!p.is_zero() && p.eval(BigRat(-1)) == 0) {
      Poly q, r;
      Poly::divmod(p, lin, q, r);
      p = q;
      ++m;
    }
    return m;
  };
  int m = mult(f.den()) - mult(f.num());
  return m > 0 ? m : 0;
}

BigRat general_binomial(long long n, long long r) {
  BigRat v(1);
  for (long long j = 0; j < r; ++j) {
    v *= BigRat(n - j);
    v /= BigRat(j + 1);
  }
  return v;
}

DimVector to_dimvec(const std::vector<int>& a) {
  return DimVector(a.begin(), a.end());
}

DimVector add(const DimVector& a, const DimVector& b) {
  DimVector r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

DimVector sub(const DimVector& a, const DimVector& b) {
  DimVector r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

}  // namespace

void HallElement::add_term(const HallKey& k, const QuadExt& c) {
  if (c.is_zero()) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

HallElement HallElement::operator+(const HallElement& o) const {
  HallElement r = *this;
  for (const auto& [k, c] : o.terms) r.add_term(k, c);
  return r;
}

HallElement HallElement::operator-(const HallElement& o) const {
  HallElement r = *this;
  for (const auto& [k, c] : o.terms) r.add_term(k, -c);
  return r;
}

HallElement HallElement::operator*(const QuadExt& c) const {
  HallElement r;
  if (c.is_zero()) return r;
  for (const auto& [k, cc] : terms) r.terms.emplace(k, cc * c);
  return r;
}

HallContext::HallContext(const Quiver& quiver, int q)
    : quiver_(quiver), q_(q), sqrt_q_(QuadExt::sqrt_of(q)), cat_(quiver, q) {}

QuadExt HallContext::minus_t_pow(long long e) const {
  if (e >= 0) return sqrt_q_.pow(e);
  return sqrt_q_.pow(-e).inverse();
}

QuadExt HallContext::upsilon_aut(int cx_id) {
  return QuadExt(BigRat(cat_.cx_info(cx_id).aut));
}

QuadExt HallContext::eval(const RatFun& f) const { return f.eval_at_v(sqrt_q_); }

RawElement HallContext::raw_delta(int cx_id) { return {{cx_id, QuadExt(BigRat(1))}}; }

RawElement HallContext::hall_product(const RawElement& x, const RawElement& y) {
  RawElement out;
  for (const auto& [xid, cx] : x) {
    const CxClassInfo& xi = cat_.cx_info(xid);
    DimVector a1 = xi.rep.alpha1(), a0 = xi.rep.alpha0();
    for (const auto& [yid, cy] : y) {
      const CxClassInfo& yi = cat_.cx_info(yid);
      long long e = euler_form(quiver_, a1, yi.rep.alpha1()) +
                    euler_form(quiver_, a0, yi.rep.alpha0());
      QuadExt tw = minus_t_pow(e) * cx * cy;
      for (int z : cat_.extension_classes(xid, yid)) {
        long long f = cat_.hall_number(z, xid, yid);
        if (f == 0) continue;
        QuadExt c = tw * QuadExt(BigRat(f));
        auto it = out.find(z);
        if (it == out.end()) {
          out.emplace(z, c);
        } else {
          it->second = it->second + c;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  }
  return out;
}

const std::vector<int>& HallContext::module_summands(int module_id) {
  auto it = summand_cache_.find(module_id);
  if (it != summand_cache_.end()) return it->second;
  std::vector<int> ids;
  const GenRep& rep = cat_.module_info(module_id).rep;
  if (rep.total_dim() > 0) {
    for (const GenRep& part : decompose(rep)) ids.push_back(cat_.module_class(part));
    std::sort(ids.begin(), ids.end());
  }
  return summand_cache_.emplace(module_id, std::move(ids)).first->second;
}

int HallContext::key_complex(const std::vector<int>& m_mods,
                             const std::vector<int>& n_mods) {
  auto ck = std::pair(m_mods, n_mods);
  auto it = key_cx_cache_.find(ck);
  if (it != key_cx_cache_.end()) return it->second;
  Cx2 x = Cx2::c_of(quiver_, semisimple_module(quiver_, q_, quiver_.zero()));
  for (int m : m_mods)
    x = x.direct_sum(Cx2::c_of(quiver_, cat_.module_info(m).rep));
  for (int n : n_mods)
    x = x.direct_sum(Cx2::cstar_of(quiver_, cat_.module_info(n).rep));
  int id = cat_.cx_class(x);
  key_cx_cache_.emplace(ck, id);
  return id;
}

std::pair<DimVector, DimVector> HallContext::key_dims(const HallKey& k) {
  DimVector d1 = quiver_.zero(), d0 = quiver_.zero();
  for (int m : k.M) d0 = add(d0, to_dimvec(cat_.module_info(m).rep.dims));
  for (int n : k.N) d1 = add(d1, to_dimvec(cat_.module_info(n).rep.dims));
  return {d1, d0};
}

HallElement HallContext::reduce(const RawElement& x) {
  HallElement out;
  for (const auto& [zid, cz] : x) {
    auto it = reduce_cache_.find(zid);
    if (it == reduce_cache_.end()) {
      const CxClassInfo& zi = cat_.cx_info(zid);
      const GenRep& h0 = cat_.module_info(zi.h0_mod).rep;
      const GenRep& h1 = cat_.module_info(zi.h1_mod).rep;
      DimVector alpha = sub(zi.im_d1, zi.im_d0);
      long long e = -euler_form(quiver_, sub(to_dimvec(h0.dims), to_dimvec(h1.dims)),
                                sub(zi.im_d0, zi.im_d1));
      HallKey key{module_summands(zi.h0_mod), module_summands(zi.h1_mod),
                  alpha};
      int target = key_complex(key.M, key.N);
      QuadExt coeff = minus_t_pow(e) * upsilon_aut(target) *
                      upsilon_aut(zid).inverse();
      HallElement r;
      r.add_term(key, coeff);
      it = reduce_cache_.emplace(zid, std::move(r)).first;
    }
    out = out + it->second * cz;
  }
  return out;
}

HallElement HallContext::star(const HallElement& x, const HallElement& y) {
  HallElement out;
  for (const auto& [kx, cx] : x.terms) {
    for (const auto& [ky, cy] : y.terms) {
      auto [y1, y0] = key_dims(ky);
      long long tw = sym_euler_form(quiver_, kx.alpha, sub(y0, y1));
      QuadExt c = cx * cy * minus_t_pow(tw);
      DimVector btail = add(kx.alpha, ky.alpha);
      RawElement raw = hall_product(raw_delta(key_complex(kx.M, kx.N)),
                                    raw_delta(key_complex(ky.M, ky.N)));
      HallElement red = reduce(raw);
      for (const auto& [kz, cz] : red.terms) {
        HallKey k = kz;
        k.alpha = add(k.alpha, btail);
        out.add_term(k, cz * c);
      }
    }
  }
  return out;
}

HallElement HallContext::unit() {
  HallElement e;
  e.add_term(HallKey{{}, {}, quiver_.zero()}, QuadExt(BigRat(1)));
  return e;
}

HallElement HallContext::b_element(const DimVector& alpha) {
  HallElement e;
  e.add_term(HallKey{{}, {}, alpha}, QuadExt(BigRat(1)));
  return e;
}

HallElement HallContext::basis_of_modules(const std::vector<int>& m_mods,
                                          const std::vector<int>& n_mods,
                                          const DimVector& alpha) {
  std::vector<int> m, n;
  for (int id : m_mods) {
    const auto& s = module_summands(id);
    m.insert(m.end(), s.begin(), s.end());
  }
  for (int id : n_mods) {
    const auto& s = module_summands(id);
    n.insert(n.end(), s.begin(), s.end());
  }
  std::sort(m.begin(), m.end());
  std::sort(n.begin(), n.end());
  HallElement e;
  e.add_term(HallKey{m, n, alpha}, QuadExt(BigRat(1)));
  return e;
}

HallElement HallContext::delta_c(const DimVector& m_dims) {
  int id = cat_.module_class(semisimple_module(quiver_, q_, m_dims));
  return basis_of_modules({id}, {}, quiver_.zero());
}

HallElement HallContext::delta_c_power(int vertex, int k, bool dual) {
  if (k == 0) return unit();
  int id = cat_.module_power(vertex, k);
  if (dual) return basis_of_modules({}, {id}, quiver_.zero());
  return basis_of_modules({id}, {}, quiver_.zero());
}

HallElement HallContext::bb_generator_image(const Generator& g) {
  switch (g.kind) {
    case GKind::E:
      return delta_c_power(g.i, (int)g.l, false) *
             minus_t_pow(g.l * g.l - g.l);
    case GKind::F:
      return delta_c_power(g.i, (int)g.l, true) *
             minus_t_pow(g.l * g.l - g.l);
    case GKind::Kpow: {
      DimVector a = quiver_.zero();
      a[(size_t)g.i] = g.kexp;
      return b_element(a);
    }
    case GKind::H:
      break;
  }
  throw std::invalid_argument("no Hall image for h letters");
}

namespace {

// Projective representation P_i of the path algebra (acyclic quiver) with an
// explicit path basis, the radical subrepresentation, and the per-vertex
// inclusion matrices rad P_i -> P_i.
struct ProjRep {
  GenRep p, rad;
  std::vector<FqMat> incl;  // per vertex: dims_p[v] x dims_rad[v]
};

ProjRep projective_rep(const Quiver& qv, int fq, int i) {
  // Enumerate paths starting at i by increasing length (acyclic => finite).
  std::vector<std::vector<int>> paths = {{}};
  std::vector<int> ends = {i};
  for (size_t head = 0; head < paths.size(); ++head) {
    for (int a = 0; a < (int)qv.arrows.size(); ++a) {
      if (qv.arrows[(size_t)a].first != ends[head]) continue;
      std::vector<int> ext = paths[head];
      ext.push_back(a);
      paths.push_back(std::move(ext));
      ends.push_back(qv.arrows[(size_t)a].second);
    }
  }
  int n = qv.n();
  // Per-vertex basis orders for P_i and rad P_i (non-trivial paths only).
  std::vector<std::vector<size_t>> basis_p((size_t)n), basis_r((size_t)n);
  std::map<std::vector<int>, std::pair<int, int>> idx_p, idx_r;  // (vertex,pos)
  for (size_t pi = 0; pi < paths.size(); ++pi) {
    int v = ends[pi];
    idx_p[paths[pi]] = {v, (int)basis_p[(size_t)v].size()};
    basis_p[(size_t)v].push_back(pi);
    if (!paths[pi].empty()) {
      idx_r[paths[pi]] = {v, (int)basis_r[(size_t)v].size()};
      basis_r[(size_t)v].push_back(pi);
    }
  }
  auto build = [&](const std::vector<std::vector<size_t>>& basis,
                   std::map<std::vector<int>, std::pair<int, int>>& idx) {
    GenRep m;
    m.q = fq;
    m.shape = &module_shape(qv);
    for (int v = 0; v < n; ++v) m.dims.push_back((int)basis[(size_t)v].size());
    for (int a = 0; a < (int)qv.arrows.size(); ++a) {
      auto [s, t] = qv.arrows[(size_t)a];
      FqMat x(fq, m.dims[(size_t)t], m.dims[(size_t)s]);
      for (int c = 0; c < m.dims[(size_t)s]; ++c) {
        std::vector<int> ext = paths[basis[(size_t)s][(size_t)c]];
        ext.push_back(a);
        x.set(idx.at(ext).second, c, 1);
      }
      m.maps.push_back(x);
    }
    return m;
  };
  ProjRep out;
  out.p = build(basis_p, idx_p);
  out.rad = build(basis_r, idx_r);
  for (int v = 0; v < n; ++v) {
    FqMat inc(fq, out.p.dims[(size_t)v], out.rad.dims[(size_t)v]);
    for (int c = 0; c < out.rad.dims[(size_t)v]; ++c)
      inc.set(idx_p.at(paths[basis_r[(size_t)v][(size_t)c]]).second, c, 1);
    out.incl.push_back(inc);
  }
  return out;
}

}  // namespace

HallElement HallContext::bb_generator_image_acyclic(const Generator& g) {
  if (g.kind == GKind::Kpow) return bb_generator_image(g);
  if ((g.kind == GKind::E || g.kind == GKind::F) && g.l != 1)
    throw std::invalid_argument("acyclic realization defined for l = 1 only");
  auto pd = projective_data(quiver_);
  const DimVector& radp = pd[(size_t)g.i].dim_rad_p;
  long long phi = phi_twist_exponent(quiver_, g.i);
  ProjRep pr = projective_rep(quiver_, q_, g.i);
  if (g.kind == GKind::E) {
    // (-t)^phi * b_{-rad P_i} * delta_[rad P_i -> P_i] with d1 the inclusion.
    std::vector<FqMat> d0v;
    for (int v = 0; v < quiver_.n(); ++v)
      d0v.push_back(FqMat(q_, pr.rad.dims[(size_t)v], pr.p.dims[(size_t)v]));
    Cx2 z = Cx2::from_parts(quiver_, pr.rad, pr.p, pr.incl, d0v);
    HallElement red = reduce(raw_delta(cat_.cx_class(z)));
    return star(b_element(sub(quiver_.zero(), radp)), red) * minus_t_pow(phi);
  }
  if (g.kind == GKind::F) {
    // (-t)^{1+phi} * b_{rad P_i} * delta_[P_i -> rad P_i] with d0 the
    // inclusion (degree-1 component P_i, degree-0 component rad P_i).
    std::vector<FqMat> d1v;
    for (int v = 0; v < quiver_.n(); ++v)
      d1v.push_back(FqMat(q_, pr.rad.dims[(size_t)v], pr.p.dims[(size_t)v]));
    Cx2 z = Cx2::from_parts(quiver_, pr.p, pr.rad, d1v, pr.incl);
    HallElement red = reduce(raw_delta(cat_.cx_class(z)));
    return star(b_element(radp), red) * minus_t_pow(1 + phi);
  }
  throw std::invalid_argument("no acyclic Hall image for h letters");
}

HallElement HallContext::realize(const NCPoly& p, bool acyclic_variant) {
  HallElement out;
  for (const auto& [w, c] : p.terms) {
    HallElement prod = unit();
    for (const auto& g : w) {
      HallElement img = acyclic_variant ? bb_generator_image_acyclic(g)
                                        : bb_generator_image(g);
      prod = star(prod, img);
    }
    out = out + prod * eval(c);
  }
  return out;
}

long long HallContext::central_twist_exponent(int acyclic_cx,
                                              const DimVector& beta1,
                                              const DimVector& beta0) {
  const CxClassInfo& ki = cat_.cx_info(acyclic_cx);
  if (!ki.acyclic)
    throw std::invalid_argument("central twist requires an acyclic complex");
  DimVector k1 = ki.rep.alpha1(), k0 = ki.rep.alpha0();
  DimVector im1 = ki.im_d1, im0 = ki.im_d0;
  auto scale2 = [](const DimVector& v) {
    DimVector r = v;
    for (auto& x : r) x *= 2;
    return r;
  };
  return euler_form(quiver_, sub(k1, scale2(im1)), beta1) +
         euler_form(quiver_, sub(k0, scale2(im0)), beta0) +
         euler_form(quiver_, beta1, sub(scale2(im0), k1)) +
         euler_form(quiver_, beta0, sub(scale2(im1), k0));
}

std::string HallContext::key_str(const HallKey& k) {
  std::ostringstream os;
  os << "d(";
  bool first = true;
  for (int m : k.M) {
    if (!first) os << "+";
    first = false;
    os << "C:" << cat_.module_info(m).name;
  }
  for (int n : k.N) {
    if (!first) os << "+";
    first = false;
    os << "Cs:" << cat_.module_info(n).name;
  }
  if (first) os << "0";
  os << ")";
  bool has_b = false;
  for (long long a : k.alpha) has_b |= a != 0;
  if (has_b) os << "*b(" << dimvec_str(k.alpha) << ")";
  return os.str();
}

std::string HallContext::element_str(const HallElement& x) {
  if (x.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << key_str(k);
  }
  return os.str();
}

SymKey sym_key(HallContext& ctx, const HallKey& k) {
  SymKey s;
  for (int m : k.M) s.M.push_back(ctx.catalog().module_info(m).key);
  for (int n : k.N) s.N.push_back(ctx.catalog().module_info(n).key);
  std::sort(s.M.begin(), s.M.end());
  std::sort(s.N.begin(), s.N.end());
  s.alpha = k.alpha;
  return s;
}

SymElement lift_symbolic(
    const Quiver& quiver, const std::vector<int>& q_samples, int degree_bound,
    const std::function<HallElement(HallContext&)>& compute) {
  if (q_samples.size() < 2)
    throw std::invalid_argument("lift_symbolic: need at least two samples");
  std::map<SymKey, std::vector<std::pair<BigRat, BigRat>>> values;
  size_t n_samples = q_samples.size();
  size_t si = 0;
  for (int q : q_samples) {
    long long r = (long long)std::llround(std::sqrt((double)q));
    if (r * r != q)
      throw std::invalid_argument(
          "lift_symbolic: samples must be perfect squares so sqrt(q) is "
          "rational");
    HallContext ctx(quiver, q);
    HallElement e = compute(ctx);
    for (const auto& [k, c] : e.terms) {
      if (!c.is_rational())
        throw std::logic_error("lift_symbolic: irrational coefficient");
      auto& v = values[sym_key(ctx, k)];
      if (v.size() != si)
        throw std::invalid_argument(
            "lift_symbolic: support mismatch across samples");
      v.emplace_back(BigRat(r), c.a);
    }
    ++si;
    for (auto& [k, v] : values)
      if (v.size() != si)
        throw std::invalid_argument(
            "lift_symbolic: support mismatch across samples");
  }
  SymElement out;
  for (auto& [k, v] : values) {
    (void)n_samples;
    out.terms.emplace(k, reconstruct(v, degree_bound));
  }
  return out;
}

ClassicalElement classical_limit_hall(const SymElement& x, int n_vertices) {
  RatFun ep(Poly::from_coeffs({BigRat(-1), BigRat(-1)}), Poly(BigRat(1)));
  int trunc = 0;
  for (const auto& [k, c] : x.terms)
    trunc = std::max(trunc, pole_order_at_minus1(c));

  std::map<ClassicalKey, RatFun> acc;
  for (const auto& [k, c] : x.terms) {
    std::vector<std::tuple<std::vector<long long>, RatFun, int>> partial = {
        {std::vector<long long>((size_t)n_vertices, 0), c, 0}};
    for (int i = 0; i < n_vertices; ++i) {
      long long ai = k.alpha[(size_t)i];
      if (ai == 0) continue;
      std::vector<std::tuple<std::vector<long long>, RatFun, int>> next;
      for (const auto& [pe_exp, pc, pe] : partial) {
        long long rmax = ai > 0 ? ai : trunc - pe;
        for (long long r = 0; r <= rmax; ++r) {
          auto ne = pe_exp;
          ne[(size_t)i] += r;
          next.emplace_back(std::move(ne),
                            pc * RatFun(general_binomial(ai, r)) * ep.pow(r),
                            pe + (int)r);
        }
      }
      partial = std::move(next);
    }
    for (auto& [hexp, pc, pe] : partial) {
      ClassicalKey ck{k.M, k.N, hexp};
      auto it = acc.find(ck);
      if (it == acc.end()) {
        acc.emplace(std::move(ck), pc);
      } else {
        it->second += pc;
      }
    }
  }

  ClassicalElement out;
  for (const auto& [k, c] : acc) {
    if (c.is_zero()) continue;
    LocalizationVerdict v = localize_at_minus1(c);
    if (!v.regular_at_minus1)
      throw std::domain_error(
          "classical_limit_hall: coefficient not regular at t = -1");
    if (v.value_at_minus1 == 0) continue;
    out.terms.emplace(k, v.value_at_minus1);
  }
  return out;
}

}  // namespace hallq
