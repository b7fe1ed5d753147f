#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hallq/cx.hpp"
#include "hallq/quiver.hpp"
#include "hallq/scalar.hpp"

#include <algorithm>
#include <functional>
#include <random>

using namespace hallq;

namespace {

Quiver jordan() {
  return Quiver::from_json_text(R"({"vertices":["1"],"arrows":[["1","1"]]})");
}
Quiver a2() {
  return Quiver::from_json_text(R"({"vertices":["1","2"],"arrows":[["1","2"]]})");
}
Quiver kronecker() {
  return Quiver::from_json_text(
      R"({"vertices":["1","2"],"arrows":[["1","2"],["1","2"]]})");
}

// Jordan-block module J_k at the only vertex of the Jordan quiver.
GenRep jordan_block(const Quiver& q, int fq, int k) {
  GenRep m = semisimple_module(q, fq, {k});
  for (int i = 0; i + 1 < k; ++i) m.maps[0].set(i, i + 1, 1);
  return m;
}

}  // namespace

TEST_CASE("field tables satisfy the field axioms") {
  for (int q : Fq::supported_sizes()) {
    const Fq& f = Fq::get(q);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < std::min(q, 8); ++c) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        }
      }
    }
    // multiplicative group has order q-1: some element has that order
    // (sanity: no zero divisors)
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b) CHECK(f.mul(a, b) != 0);
  }
  CHECK(!Fq::supported(6));
  CHECK(!Fq::supported(50));
  CHECK(Fq::supported(49));
}

TEST_CASE("matrix rank, inverse, nullspace") {
  std::mt19937 rng(3);
  for (int q : {2, 3, 4, 5, 9, 49}) {
    for (int trial = 0; trial < 30; ++trial) {
      int n = 1 + (int)(rng() % 4);
      FqMat m(q, n, n);
      for (auto& x : m.a) x = (uint8_t)(rng() % q);
      FqMat ns = m.nullspace();
      CHECK(m.rank() + ns.rows == n);
      // kernel rows really are in the kernel
      for (int r = 0; r < ns.rows; ++r) {
        FqMat col(q, n, 1);
        for (int i = 0; i < n; ++i) col.set(i, 0, ns.at(r, i));
        CHECK((m * col).is_zero());
      }
      if (m.invertible()) {
        CHECK((m * m.inverse()) == FqMat::identity(q, n));
      }
    }
  }
}

TEST_CASE("subspace counts match gaussian binomials") {
  for (int q : {2, 3, 4, 5}) {
    for (int n = 0; n <= 4; ++n) {
      for (int k = 0; k <= n; ++k) {
        long long count = 0;
        for_each_subspace(q, n, k, [&](const FqMat&) {
          ++count;
          return true;
        });
        QuadExt expected =
            poincare_grassmannian(k, n).eval_at_v(QuadExt::sqrt_of(q));
        CHECK(expected.is_rational());
        CHECK(BigRat(count) == expected.a);
      }
    }
  }
}

TEST_CASE("gl order matches brute force") {
  for (int q : {2, 3, 4, 5}) {
    for (int n = 0; n <= 2; ++n) {
      long long brute = 0;
      FqMat m(q, n, n);
      std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == m.a.size()) {
          if (m.invertible()) ++brute;
          return;
        }
        for (int v = 0; v < q; ++v) {
          m.a[idx] = (uint8_t)v;
          rec(idx + 1);
        }
      };
      rec(0);
      CHECK(gl_order(q, n) == BigIntRep(brute));
    }
  }
}

TEST_CASE("min poly and factorization") {
  // Nilpotent Jordan block: min poly x^k.
  for (int q : {2, 9, 49}) {
    FqMat j(q, 3, 3);
    j.set(0, 1, 1);
    j.set(1, 2, 1);
    auto mp = min_poly(j);
    CHECK(mp == std::vector<int>{0, 0, 0, 1});
    auto factors = factor_poly(q, mp);
    CHECK(factors.size() == 3);
    for (auto& f : factors) CHECK(f == std::vector<int>{0, 1});
  }
  // Identity: min poly x - 1.
  auto mp1 = min_poly(FqMat::identity(5, 2));
  CHECK(mp1 == std::vector<int>{4, 1});
}

TEST_CASE("enumerate complexes: frozen Jordan examples") {
  Quiver q = jordan();

  // alpha = (0, 2) over F_2: exactly the classes C_{S+S} and C_{J2},
  // orbits 1 and 3 (the q^2 = 4 nilpotent 2x2 matrices).
  {
    Catalog cat(q, 2);
    auto classes = enumerate_complexes(cat, {0}, {2});
    REQUIRE(classes.size() == 2);
    BigIntRep total = 0;
    std::vector<BigIntRep> orbits;
    for (auto& c : classes) {
      orbits.push_back(c.orbit);
      total += c.orbit;
    }
    std::sort(orbits.begin(), orbits.end());
    CHECK(orbits == std::vector<BigIntRep>{1, 3});
    CHECK(total == 4);
    // orbit * |Aut| = |G|
    for (auto& c : classes)
      CHECK(c.orbit * cat.cx_info(c.id).aut == cat.g_order({0}, {2}));
  }

  // alpha = (0,0): single zero class.
  {
    Catalog cat(q, 2);
    auto classes = enumerate_complexes(cat, {0}, {0});
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].orbit == 1);
  }

  // alpha = (1,1) over F_2 contains K_S, K_S^*, C_S + C_S^*.
  {
    Catalog cat(q, 2);
    auto classes = enumerate_complexes(cat, {1}, {1});
    GenRep s = semisimple_module(q, 2, {1});
    int k_id = cat.cx_class(Cx2::k_of(q, s));
    int ks_id = cat.cx_class(Cx2::kstar_of(q, s));
    int split_id = cat.cx_class(Cx2::c_of(q, s).direct_sum(Cx2::cstar_of(q, s)));
    std::vector<int> found;
    for (auto& c : classes) found.push_back(c.id);
    CHECK(std::find(found.begin(), found.end(), k_id) != found.end());
    CHECK(std::find(found.begin(), found.end(), ks_id) != found.end());
    CHECK(std::find(found.begin(), found.end(), split_id) != found.end());
    CHECK(k_id != ks_id);
  }
}

TEST_CASE("hom and aut") {
  Quiver q = jordan();
  for (int fq : {2, 3, 4, 5}) {
    Catalog cat(q, fq);
    GenRep s = semisimple_module(q, fq, {1});
    Cx2 cs = Cx2::c_of(q, s), css = Cx2::cstar_of(q, s);
    CHECK(hom_dim(cs.gen, css.gen) == 0);
    CHECK(aut_count(cs.gen) == BigIntRep(fq - 1));
    GenRep ss = semisimple_module(q, fq, {2});
    if (fq == 2) CHECK(aut_count(Cx2::c_of(q, ss).gen) == 6);
    // aut of a K-complex: Aut_{C2}(K_S) has order q-1... times extension part
    // cross-checked against the orbit-stabilizer relation elsewhere.
    CHECK(aut_count(Cx2::k_of(q, s).gen) == BigIntRep(fq - 1));
  }
}

TEST_CASE("homology of the basic complexes") {
  Quiver q = jordan();
  Catalog cat(q, 3);
  GenRep s = semisimple_module(q, 3, {1});

  Homology hk = homology(Cx2::k_of(q, s));
  CHECK(hk.h0.total_dim() == 0);
  CHECK(hk.h1.total_dim() == 0);
  CHECK(hk.im_d0 == DimVector{0});
  CHECK(hk.im_d1 == DimVector{1});

  Homology hc = homology(Cx2::c_of(q, jordan_block(q, 3, 2)));
  CHECK(hc.h0.total_dim() == 2);
  CHECK(is_isomorphic(hc.h0, jordan_block(q, 3, 2)));
  CHECK(hc.h1.total_dim() == 0);
  CHECK(hc.im_d0 == DimVector{0});
  CHECK(hc.im_d1 == DimVector{0});

  Homology hks = homology(Cx2::kstar_of(q, s));
  CHECK(hks.h0.total_dim() == 0);
  CHECK(hks.h1.total_dim() == 0);
  CHECK(hks.im_d0 == DimVector{1});
  CHECK(hks.im_d1 == DimVector{0});
}

TEST_CASE("decompose and rad end") {
  Quiver q = jordan();
  for (int fq : {2, 3}) {
    Catalog cat(q, fq);
    GenRep s = semisimple_module(q, fq, {1});
    GenRep j2 = jordan_block(q, fq, 2);

    Cx2 split = Cx2::c_of(q, s).direct_sum(Cx2::c_of(q, s));
    auto parts = decompose(split.gen);
    CHECK(parts.size() == 2);
    CHECK(rad_end_dim(split.gen) == 0);

    Cx2 cj2 = Cx2::c_of(q, j2);
    CHECK(decompose(cj2.gen).size() == 1);
    CHECK(rad_end_dim(cj2.gen) == 1);

    // aut_count equals the structure formula for C_S + C_S + C_{J2}:
    // |Aut| = q^{dim rad End} * |GL_2(F_q)| * |GL_1(F_q)|
    Cx2 big = split.direct_sum(cj2);
    long long h = hom_dim(big.gen, big.gen);
    long long rad = rad_end_dim(big.gen);
    BigIntRep expect = gl_order(fq, 2) * gl_order(fq, 1);
    for (long long i = 0; i < rad; ++i) expect *= fq;
    CHECK(aut_count(big.gen) == expect);
    CHECK(h - rad == 4 + 1);  // semisimple part: m=2 block plus m=1 block
  }
}

TEST_CASE("hall numbers: frozen examples") {
  Quiver q = jordan();
  for (int fq : {2, 3, 4, 5}) {
    Catalog cat(q, fq);
    GenRep s = semisimple_module(q, fq, {1});
    GenRep ss = semisimple_module(q, fq, {2});
    int cs = cat.cx_class(Cx2::c_of(q, s));
    int css2 = cat.cx_class(Cx2::c_of(q, ss));
    int cj2 = cat.cx_class(Cx2::c_of(q, jordan_block(q, fq, 2)));
    CHECK(cat.hall_number(css2, cs, cs) == fq + 1);
    CHECK(cat.hall_number(cj2, cs, cs) == 1);

    int csstar = cat.cx_class(Cx2::cstar_of(q, s));
    int kstar = cat.cx_class(Cx2::kstar_of(q, s));
    CHECK(cat.hall_number(kstar, cs, csstar) == 1);
  }
}

TEST_CASE("euler form against hom minus ext") {
  // all module class pairs with total dim <= 4, q in {2,3}
  for (auto qv : {jordan(), a2(), kronecker()}) {
    for (int fq : {2, 3}) {
      Catalog cat(qv, fq);
      std::vector<int> all;
      std::function<void(DimVector, size_t, int)> gen_dims =
          [&](DimVector d, size_t pos, int remaining) {
            if (pos == d.size()) {
              int tot = 0;
              for (long long x : d) tot += (int)x;
              if (tot >= 1 && tot <= 2) {
                for (auto& c : enumerate_modules(cat, d)) all.push_back(c.id);
              }
              return;
            }
            for (int v = 0; v <= remaining; ++v) {
              d[pos] = v;
              gen_dims(d, pos + 1, remaining - v);
            }
          };
      gen_dims(DimVector(static_cast<size_t>(qv.n()), 0), 0, 2);
      for (int a : all)
        for (int b : all) {
          const GenRep& ma = cat.module_info(a).rep;
          const GenRep& mb = cat.module_info(b).rep;
          DimVector da(ma.dims.begin(), ma.dims.end());
          DimVector db(mb.dims.begin(), mb.dims.end());
          long long lhs = euler_form(qv, da, db);
          long long rhs = hom_dim(ma, mb) - ext1_dim(qv, fq, ma, mb);
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("rank-matrix consistency with poincare polynomials") {
  for (int q : {2, 3}) {
    for (int k = 0; k <= 2; ++k)
      for (int l = 0; l <= 2; ++l)
        for (int r = 0; r <= std::min(k, l); ++r) {
          long long brute = 0;
          FqMat m(q, k, l);
          std::function<void(size_t)> rec = [&](size_t idx) {
            if (idx == m.a.size()) {
              if (m.rank() == r) ++brute;
              return;
            }
            for (int v = 0; v < q; ++v) {
              m.a[idx] = (uint8_t)v;
              rec(idx + 1);
            }
          };
          rec(0);
          RatFun formula = poincare_gl(r) * poincare_grassmannian(r, k) *
                           poincare_grassmannian(r, l);
          QuadExt val = formula.eval_at_v(QuadExt::sqrt_of(q));
          CHECK(val.is_rational());
          CHECK(val.a == BigRat(brute));
        }
  }
}

TEST_CASE("completeness and orbit-stabilizer for small enumerations") {
  for (auto qv : {jordan(), a2()}) {
    for (int fq : {2, 3}) {
      Catalog cat(qv, fq);
      DimVector a1(static_cast<size_t>(qv.n()), 0),
          a0(static_cast<size_t>(qv.n()), 0);
      a0[0] = 1;
      if (qv.n() > 1) a1[1] = 1;
      else a1[0] = 1;
      auto classes = enumerate_complexes(cat, a1, a0);
      BigIntRep total = 0;
      for (auto& c : classes) {
        total += c.orbit;
        CHECK(c.orbit * cat.cx_info(c.id).aut == cat.g_order(a1, a0));
      }
      // recount points directly
      long long direct = 0;
      Cx2 z;
      z.quiver = &qv;
      z.gen.q = fq;
      z.gen.shape = &complex_shape(qv);
      for (int i = 0; i < qv.n(); ++i) {
        z.gen.dims.push_back((int)a1[(size_t)i]);
        z.gen.dims.push_back((int)a0[(size_t)i]);
      }
      for (const auto& [u, v] : z.gen.shape->edges)
        z.gen.maps.push_back(
            FqMat(fq, z.gen.dims[(size_t)v], z.gen.dims[(size_t)u]));
      std::vector<std::pair<size_t, size_t>> slots;
      for (size_t m = 0; m < z.gen.maps.size(); ++m)
        for (size_t i = 0; i < z.gen.maps[m].a.size(); ++i)
          slots.push_back({m, i});
      std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == slots.size()) {
          if (z.valid()) ++direct;
          return;
        }
        for (int v = 0; v < fq; ++v) {
          z.gen.maps[slots[idx].first].a[slots[idx].second] = (uint8_t)v;
          rec(idx + 1);
        }
      };
      rec(0);
      CHECK(total == BigIntRep(direct));
    }
  }
}
