#include "hallq/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hallq {

namespace {

// Block rank in the stored word: F-block, then K/h-block, then E-block.
int rank(const Generator& g) {
  switch (g.kind) {
    case GKind::F: return 0;
    case GKind::Kpow: return 1;
    case GKind::H: return 1;
    case GKind::E: return 2;
  }
  return 2;
}

RatFun eps() {  // (-t - 1)
  return RatFun(Poly::from_coeffs({BigRat(-1), BigRat(-1)}), Poly(BigRat(1)));
}

BigRat general_binomial(long long n, long long r) {
  BigRat v(1);
  for (long long j = 0; j < r; ++j) {
    v *= BigRat(n - j);
    v /= BigRat(j + 1);
  }
  return v;
}

int t_plus_one_multiplicity(const Poly& p) {
  if (p.is_zero()) return 0;
  Poly lin = Poly::from_coeffs({BigRat(1), BigRat(1)});
  Poly cur = p;
  int m = 0;
  while (!cur.is_zero() && cur.eval(BigRat(-1)) == 0) {
    Poly q, r;
    Poly::divmod(cur, lin, q, r);
    cur = q;
    ++m;
  }
  return m;
}

int pole_order_at_minus1(const RatFun& f) {
  if (f.is_zero()) return 0;
  int m = t_plus_one_multiplicity(f.den()) - t_plus_one_multiplicity(f.num());
  return m > 0 ? m : 0;
}

}  // namespace

std::string Generator::str() const {
  std::ostringstream os;
  switch (kind) {
    case GKind::E:
      os << "e(" << (i + 1) << "," << l << ")";
      break;
    case GKind::F:
      os << "f(" << (i + 1) << "," << l << ")";
      break;
    case GKind::H:
      os << "h(" << (i + 1) << ")";
      break;
    case GKind::Kpow:
      if (kexp == 1) {
        os << "K(" << (i + 1) << ")";
      } else if (kexp == -1) {
        os << "Kinv(" << (i + 1) << ")";
      } else {
        os << "K(" << (i + 1) << ")^" << kexp;
      }
      break;
  }
  return os.str();
}

NCPoly NCPoly::one() { return monomial({}, RatFun(1)); }

NCPoly NCPoly::monomial(const Word& w, const RatFun& c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

void NCPoly::add_term(const Word& w, const RatFun& c) {
  if (c.is_zero()) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool NCPoly::is_scalar() const {
  for (const auto& [w, c] : terms)
    if (!w.empty()) return false;
  return true;
}

RatFun NCPoly::scalar_value() const {
  if (!is_scalar()) throw std::logic_error("NCPoly: not a scalar");
  if (terms.empty()) return RatFun(0);
  return terms.begin()->second;
}

NCPoly NCPoly::operator-() const {
  NCPoly r;
  for (const auto& [w, c] : terms) r.terms.emplace(w, -c);
  return r;
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly r = *this;
  for (const auto& [w, c] : o.terms) r.add_term(w, c);
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
  NCPoly r = *this;
  for (const auto& [w, c] : o.terms) r.add_term(w, -c);
  return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  NCPoly r;
  for (const auto& [w1, c1] : terms) {
    for (const auto& [w2, c2] : o.terms) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add_term(w, c1 * c2);
    }
  }
  return r;
}

NCPoly NCPoly::operator*(const RatFun& c) const {
  NCPoly r;
  if (c.is_zero()) return r;
  for (const auto& [w, cc] : terms) r.terms.emplace(w, cc * c);
  return r;
}

std::string NCPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms) {
    if (!first) os << " + ";
    first = false;
    std::string cs = c.str();
    bool unit = c.is_one();
    if (w.empty()) {
      os << cs;
      continue;
    }
    if (!unit) {
      bool simple = cs.find(' ') == std::string::npos &&
                    cs.find('+') == std::string::npos &&
                    (cs.rfind('-') == std::string::npos || cs.rfind('-') == 0);
      os << (simple ? cs : "(" + cs + ")") << "*";
    }
    for (size_t k = 0; k < w.size(); ++k) {
      if (k) os << "*";
      os << w[k].str();
    }
  }
  return os.str();
}

void Presentation::check_generator(const Generator& g) const {
  if (g.i < 0 || g.i >= n())
    throw std::out_of_range("generator vertex outside Cartan data");
  if (g.kind == GKind::E || g.kind == GKind::F) {
    if (g.l < 1) throw std::out_of_range("generator index l must be >= 1");
    if (is_real(g.i) && g.l != 1)
      throw std::out_of_range("real vertex admits only l = 1");
    if (!is_real(g.i) && g.l > l_max)
      throw std::out_of_range("generator index l exceeds cutoff");
  }
  if (g.kind == GKind::Kpow) {
    if (variant != PresVariant::quantum_BB)
      throw std::invalid_argument("K letters require the quantum presentation");
    if (g.kexp == 0) throw std::invalid_argument("K exponent must be nonzero");
  }
  if (g.kind == GKind::H && variant == PresVariant::quantum_BB)
    throw std::invalid_argument("h letters require a classical presentation");
}

NCPoly ef_exchange_rule(int i, long long l, long long k,
                        const Presentation& pres) {
  pres.check_generator(Generator::e(i, l));
  pres.check_generator(Generator::f(i, k));
  long long aii = pres.cartan.a[(size_t)i][(size_t)i];
  long long rmax = std::min(k, l);
  NCPoly out;
  for (long long r = 0; r <= rmax; ++r) {
    long long m = k - r, s = l - r;
    Word w;
    if (m > 0) w.push_back(Generator::f(i, m));
    if (s > 0) w.push_back(Generator::e(i, s));
    if (r > 0) w.push_back(Generator::K(i, r));
    out.add_term(w, minus_t_power_i(aii, -r * (m - s)) * nu(r));
  }
  for (long long r = 1; r <= rmax; ++r) {
    long long m = k - r, s = l - r;
    Word w;
    if (s > 0) w.push_back(Generator::e(i, s));
    if (m > 0) w.push_back(Generator::f(i, m));
    w.push_back(Generator::K(i, -r));
    out.add_term(w, -(minus_t_power_i(aii, r * (m - s)) * nu(r)));
  }
  return out;
}

NCPoly Straightener::operator()(const NCPoly& p) {
  std::lock_guard<std::mutex> lock(mu_);
  NCPoly out;
  for (const auto& [w, c] : p.terms) {
    for (const auto& g : w) pres_.check_generator(g);
    out = out + normal_word(w) * c;
  }
  return out;
}

NCPoly Straightener::normal_word(const Word& w) {
  auto it = cache_.find(w);
  if (it != cache_.end()) return it->second;

  const auto& a = pres_.cartan.a;
  bool quantum = pres_.variant == PresVariant::quantum_BB;
  bool gkm = pres_.variant == PresVariant::gkm_with_charge;

  // The coupling constant in [h_i, e_{jl}] = c e_{jl}: l*a_ij classically,
  // b_ij for the generalized Kac-Moody presentation.
  auto h_coupling = [&](int hi, const Generator& g) -> long long {
    long long base = a[(size_t)hi][(size_t)g.i];
    return gkm ? base : g.l * base;
  };

  NCPoly result;
  bool done = false;
  for (size_t p = 0; p + 1 < w.size() && !done; ++p) {
    const Generator &g1 = w[p], &g2 = w[p + 1];
    NCPoly local;  // replacement for the pair g1 g2, if reducible
    bool reduce = true;

    if (g1.kind == GKind::E && g2.kind == GKind::F) {
      if (g1.i != g2.i) {
        local.add_term({g2, g1}, RatFun(1));
      } else if (quantum) {
        local = ef_exchange_rule(g1.i, g1.l, g2.l, pres_);
      } else {
        local.add_term({g2, g1}, RatFun(1));
        if (g1.l == g2.l) {
          RatFun c = gkm ? RatFun(1) : RatFun((long long)g1.l);
          local.add_term({Generator::h(g1.i)}, c);
        }
      }
    } else if (g1.kind == GKind::E && g2.kind == GKind::Kpow) {
      long long e = -g2.kexp * g1.l * a[(size_t)g2.i][(size_t)g1.i];
      local.add_term({g2, g1}, RatFun::minus_t_power((int)e));
    } else if (g1.kind == GKind::Kpow && g2.kind == GKind::F) {
      long long e = -g1.kexp * g2.l * a[(size_t)g1.i][(size_t)g2.i];
      local.add_term({g2, g1}, RatFun::minus_t_power((int)e));
    } else if (g1.kind == GKind::E && g2.kind == GKind::H) {
      local.add_term({g2, g1}, RatFun(1));
      local.add_term({g1}, RatFun(-h_coupling(g2.i, g1)));
    } else if (g1.kind == GKind::H && g2.kind == GKind::F) {
      local.add_term({g2, g1}, RatFun(1));
      local.add_term({g2}, RatFun(-h_coupling(g1.i, g2)));
    } else if (g1.kind == GKind::Kpow && g2.kind == GKind::Kpow) {
      if (g1.i == g2.i) {
        long long e = g1.kexp + g2.kexp;
        if (e == 0) {
          local.add_term({}, RatFun(1));
        } else {
          local.add_term({Generator::K(g1.i, e)}, RatFun(1));
        }
      } else if (g1.i > g2.i) {
        local.add_term({g2, g1}, RatFun(1));
      } else {
        reduce = false;
      }
    } else if (g1.kind == GKind::H && g2.kind == GKind::H) {
      if (g1.i > g2.i) {
        local.add_term({g2, g1}, RatFun(1));
      } else {
        reduce = false;
      }
    } else if (g1.kind == g2.kind &&
               (g1.kind == GKind::E || g1.kind == GKind::F)) {
      // Within-block sorting, only across freely commuting letters.
      bool out_of_order = std::pair(g2.i, g2.l) < std::pair(g1.i, g1.l);
      bool commutes = gkm || a[(size_t)g1.i][(size_t)g2.i] == 0;
      if (out_of_order && commutes) {
        local.add_term({g2, g1}, RatFun(1));
      } else {
        reduce = false;
      }
    } else {
      reduce = false;
    }

    if (reduce) {
      for (const auto& [rep, c] : local.terms) {
        Word nw(w.begin(), w.begin() + (long)p);
        nw.insert(nw.end(), rep.begin(), rep.end());
        nw.insert(nw.end(), w.begin() + (long)p + 2, w.end());
        result = result + normal_word(nw) * c;
      }
      done = true;
    }
  }

  if (!done) result = NCPoly::monomial(w);
  cache_.emplace(w, result);
  return result;
}

NCPoly straighten(const NCPoly& p, const Presentation& pres) {
  Straightener s(pres);
  return s(p);
}

NCPoly serre_sum(const Presentation& pres, char side, int i, int j,
                 long long l) {
  if (!pres.is_real(i))
    throw std::invalid_argument("serre_sum: vertex i must be real");
  pres.check_generator(side == 'E' ? Generator::e(j, l) : Generator::f(j, l));
  if (i == j && l == 1)
    throw std::invalid_argument("serre_sum: (j,l) must differ from (i,1)");
  bool quantum = pres.variant == PresVariant::quantum_BB;
  bool signed_variant =
      !quantum || pres.serre_sign == SerreSign::signed_variant;
  long long m = 1 - l * pres.cartan.a[(size_t)i][(size_t)j];
  Generator gi = side == 'E' ? Generator::e(i, 1) : Generator::f(i, 1);
  Generator gjl = side == 'E' ? Generator::e(j, l) : Generator::f(j, l);
  NCPoly out;
  for (long long k = 0; k <= m; ++k) {
    RatFun c = quantum ? quantum_binomial(m, k)
                       : RatFun(general_binomial(m, k));
    if (signed_variant && (k % 2)) c = -c;
    Word w((size_t)(m - k), gi);
    w.push_back(gjl);
    w.insert(w.end(), (size_t)k, gi);
    out.add_term(w, c);
  }
  return out;
}

NCPoly classical_limit(const NCPoly& p, const Presentation& pres) {
  for (const auto& [w, c] : p.terms)
    for (const auto& g : w)
      if (g.kind == GKind::H)
        throw std::invalid_argument(
            "classical_limit: input must use e/f/K generators only");

  Presentation qpres = pres;
  qpres.variant = PresVariant::quantum_BB;
  NCPoly s = straighten(p, qpres);

  RatFun ep = eps();
  // Truncating the K^{-1} geometric series at the maximal pole order of the
  // coefficients is exact: a dropped term carries eps^r with r exceeding
  // every pole order, so its value at t = -1 is zero.
  int trunc = 0;
  for (const auto& [w, c] : s.terms)
    trunc = std::max(trunc, pole_order_at_minus1(c));

  std::map<Word, RatFun> acc;
  for (const auto& [w, c] : s.terms) {
    // Partial expansions: (word so far, coefficient, eps-power used).
    std::vector<std::tuple<Word, RatFun, int>> partial = {{Word{}, c, 0}};
    for (const auto& g : w) {
      if (g.kind != GKind::Kpow) {
        for (auto& [pw, pc, pe] : partial) pw.push_back(g);
        continue;
      }
      std::vector<std::tuple<Word, RatFun, int>> next;
      for (const auto& [pw, pc, pe] : partial) {
        // Nonnegative exponents have a finite binomial expansion; negative
        // ones are truncated at the eps-power budget.
        long long rmax = g.kexp >= 0 ? g.kexp : trunc - pe;
        for (long long r = 0; r <= rmax; ++r) {
          Word nw = pw;
          nw.insert(nw.end(), (size_t)r, Generator::h(g.i));
          next.emplace_back(std::move(nw),
                            pc * RatFun(general_binomial(g.kexp, r)) *
                                ep.pow(r),
                            pe + (int)r);
        }
      }
      partial = std::move(next);
    }
    for (auto& [pw, pc, pe] : partial) {
      auto it = acc.find(pw);
      if (it == acc.end()) {
        acc.emplace(std::move(pw), pc);
      } else {
        it->second += pc;
      }
    }
  }

  NCPoly out;
  for (const auto& [w, c] : acc) {
    if (c.is_zero()) continue;
    LocalizationVerdict v = localize_at_minus1(c);
    if (!v.regular_at_minus1)
      throw std::domain_error(
          "classical_limit: coefficient has a pole at t = -1");
    if (v.value_at_minus1 == 0) continue;
    out.add_term(w, RatFun(v.value_at_minus1));
  }
  return out;
}

std::vector<long long> word_net_degree(const Word& w, int n_vertices) {
  std::vector<long long> d((size_t)n_vertices, 0);
  for (const auto& g : w) {
    if (g.kind == GKind::E) d[(size_t)g.i] += g.l;
    if (g.kind == GKind::F) d[(size_t)g.i] -= g.l;
  }
  return d;
}

namespace {

std::vector<std::pair<int, long long>> index_pairs(const Presentation& pres,
                                                   long long max_l) {
  std::vector<std::pair<int, long long>> out;
  for (int i = 0; i < pres.n(); ++i) {
    long long top = pres.is_real(i) ? 1 : std::min<long long>(max_l,
                                                              pres.l_max);
    for (long long l = 1; l <= top; ++l) out.emplace_back(i, l);
  }
  return out;
}

void check_instance(Straightener& st, RelationReport& rep,
                    const std::string& relation, const std::string& instance,
                    const NCPoly& lhs_minus_rhs) {
  NCPoly r = st(lhs_minus_rhs);
  RelationReport::Item item;
  item.relation = relation;
  item.instance = instance;
  item.ok = r.is_zero();
  if (!item.ok) {
    item.residual = r.str();
    rep.all_ok = false;
  }
  rep.items.push_back(std::move(item));
}

std::string idx_str(int i, long long l) {
  std::ostringstream os;
  os << "(" << (i + 1) << "," << l << ")";
  return os.str();
}

}  // namespace

RelationReport verify_relation_instances(const Presentation& pres,
                                         long long max_l) {
  RelationReport rep;
  Straightener st(pres);
  auto pairs = index_pairs(pres, max_l);
  int n = pres.n();
  const auto& a = pres.cartan.a;

  auto E = [](int i, long long l) { return NCPoly::gen(Generator::e(i, l)); };
  auto F = [](int i, long long l) { return NCPoly::gen(Generator::f(i, l)); };

  if (pres.variant == PresVariant::quantum_BB) {
    auto K = [](int i, long long e) { return NCPoly::gen(Generator::K(i, e)); };
    for (int i = 0; i < n; ++i) {
      check_instance(st, rep, "2.1", "K*Kinv i=" + std::to_string(i + 1),
                     K(i, 1) * K(i, -1) - NCPoly::one());
      check_instance(st, rep, "2.1", "Kinv*K i=" + std::to_string(i + 1),
                     K(i, -1) * K(i, 1) - NCPoly::one());
      for (int j = 0; j < n; ++j)
        check_instance(st, rep, "2.1",
                       "[K,K] i=" + std::to_string(i + 1) +
                           " j=" + std::to_string(j + 1),
                       K(i, 1) * K(j, 1) - K(j, 1) * K(i, 1));
    }
    for (int i = 0; i < n; ++i) {
      for (auto [j, l] : pairs) {
        RatFun tw = RatFun::minus_t_power((int)(l * a[(size_t)i][(size_t)j]));
        check_instance(st, rep, "2.2",
                       "Ke i=" + std::to_string(i + 1) + " jl=" + idx_str(j, l),
                       K(i, 1) * E(j, l) - E(j, l) * K(i, 1) * tw);
        check_instance(
            st, rep, "2.2",
            "Kf i=" + std::to_string(i + 1) + " jl=" + idx_str(j, l),
            K(i, 1) * F(j, l) - F(j, l) * K(i, 1) * tw.inverse());
      }
    }
    for (auto [i, k] : pairs) {
      for (auto [j, l] : pairs) {
        if (i == j) continue;
        check_instance(st, rep, "2.6",
                       "ef ik=" + idx_str(i, k) + " jl=" + idx_str(j, l),
                       E(i, k) * F(j, l) - F(j, l) * E(i, k));
      }
    }
    for (int i = 0; i < n; ++i) {
      long long top = pres.is_real(i) ? 1 : std::min<long long>(max_l,
                                                                pres.l_max);
      long long aii = a[(size_t)i][(size_t)i];
      for (long long k = 1; k <= top; ++k) {
        for (long long l = 1; l <= top; ++l) {
          NCPoly lhs, rhs;
          for (long long r = 0; r <= std::min(k, l); ++r) {
            long long m = k - r, s = l - r;
            NCPoly le = NCPoly::one(), ri = NCPoly::one();
            if (s > 0) le = le * E(i, s);
            if (m > 0) le = le * F(i, m);
            if (r > 0) le = le * K(i, -r);
            lhs = lhs + le * (minus_t_power_i(aii, r * (m - s)) * nu(r));
            if (m > 0) ri = ri * F(i, m);
            if (s > 0) ri = ri * E(i, s);
            if (r > 0) ri = ri * K(i, r);
            rhs = rhs + ri * (minus_t_power_i(aii, -r * (m - s)) * nu(r));
          }
          check_instance(st, rep, "2.7",
                         "i=" + std::to_string(i + 1) + " k=" +
                             std::to_string(k) + " l=" + std::to_string(l),
                         lhs - rhs);
        }
      }
    }
    return rep;
  }

  // Classical and generalized Kac-Moody presentations.
  bool gkm = pres.variant == PresVariant::gkm_with_charge;
  auto H = [](int i) { return NCPoly::gen(Generator::h(i)); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      check_instance(st, rep, gkm ? "gkm-1" : "1",
                     "[h,h] i=" + std::to_string(i + 1) +
                         " j=" + std::to_string(j + 1),
                     H(i) * H(j) - H(j) * H(i));
  for (auto [i, k] : pairs) {
    for (auto [j, l] : pairs) {
      NCPoly rhs;
      if (i == j && k == l) rhs = H(i) * RatFun(gkm ? 1 : k);
      check_instance(st, rep, gkm ? "gkm-2" : "2",
                     "[e,f] ik=" + idx_str(i, k) + " jl=" + idx_str(j, l),
                     E(i, k) * F(j, l) - F(j, l) * E(i, k) - rhs);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (auto [j, l] : pairs) {
      long long c = gkm ? a[(size_t)i][(size_t)j]
                        : l * a[(size_t)i][(size_t)j];
      check_instance(st, rep, gkm ? "gkm-3" : "3",
                     "[h,e] i=" + std::to_string(i + 1) + " jl=" + idx_str(j, l),
                     H(i) * E(j, l) - E(j, l) * H(i) - E(j, l) * RatFun(c));
      check_instance(st, rep, gkm ? "gkm-3" : "3",
                     "[h,f] i=" + std::to_string(i + 1) + " jl=" + idx_str(j, l),
                     H(i) * F(j, l) - F(j, l) * H(i) + F(j, l) * RatFun(c));
    }
  }
  for (auto [i, k] : pairs) {
    for (auto [j, l] : pairs) {
      if (!gkm && a[(size_t)i][(size_t)j] != 0) continue;
      check_instance(st, rep, gkm ? "gkm-5" : "6",
                     "[e,e] ik=" + idx_str(i, k) + " jl=" + idx_str(j, l),
                     E(i, k) * E(j, l) - E(j, l) * E(i, k));
      check_instance(st, rep, gkm ? "gkm-5" : "6",
                     "[f,f] ik=" + idx_str(i, k) + " jl=" + idx_str(j, l),
                     F(i, k) * F(j, l) - F(j, l) * F(i, k));
    }
  }
  return rep;
}

std::string RelationReport::str() const {
  std::ostringstream os;
  int fails = 0;
  for (const auto& it : items)
    if (!it.ok) {
      ++fails;
      os << "FAIL " << it.relation << " " << it.instance << " residual "
         << it.residual << "\n";
    }
  os << items.size() << " instances, " << fails << " failures";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser for the element text grammar.
// ---------------------------------------------------------------------------
namespace {

struct NCParser {
  const std::string& s;
  const Presentation& pres;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw std::invalid_argument(std::string("expected '") + c +
                                  "' at position " + std::to_string(pos));
  }

  long long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)s[start])))
      throw std::invalid_argument("expected integer at position " +
                                  std::to_string(start));
    return std::stoll(s.substr(start, pos - start));
  }

  NCPoly expr() {
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    NCPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  NCPoly term() {
    NCPoly acc = factor();
    for (;;) {
      skip();
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        NCPoly d = factor();
        if (!d.is_scalar())
          throw std::invalid_argument("division by a non-scalar");
        acc = acc * d.scalar_value().inverse();
      } else {
        return acc;
      }
    }
  }

  NCPoly factor() {
    skip();
    if (pos >= s.size())
      throw std::invalid_argument("unexpected end of expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NCPoly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit((unsigned char)c)) {
      long long v = integer();
      return NCPoly::scalar(RatFun(v));
    }
    if (std::isalpha((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && std::isalpha((unsigned char)s[pos])) ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "t") {
        long long e = 1;
        skip();
        if (eat('^')) e = integer();
        return NCPoly::scalar(RatFun::t_power((int)e));
      }
      expect('(');
      int i = (int)integer() - 1;  // vertices are 1-based in the grammar
      Generator g;
      if (name == "e" || name == "f") {
        expect(',');
        long long l = integer();
        g = name == "e" ? Generator::e(i, l) : Generator::f(i, l);
      } else if (name == "K") {
        g = Generator::K(i, 1);
      } else if (name == "Kinv") {
        g = Generator::K(i, -1);
      } else if (name == "h") {
        g = Generator::h(i);
      } else {
        throw std::invalid_argument("unknown generator '" + name + "'");
      }
      expect(')');
      pres.check_generator(g);
      return NCPoly::gen(g);
    }
    throw std::invalid_argument(std::string("unexpected character '") + c +
                                "' at position " + std::to_string(pos));
  }
};

}  // namespace

NCPoly parse_ncpoly(const std::string& text, const Presentation& pres) {
  NCParser p{text, pres};
  NCPoly out = p.expr();
  p.skip();
  if (p.pos != text.size())
    throw std::invalid_argument("trailing input at position " +
                                std::to_string(p.pos));
  return out;
}

}  // namespace hallq
