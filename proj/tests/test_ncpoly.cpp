#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hallq/ncpoly.hpp"
#include "hallq/quiver.hpp"
#include "hallq/scalar.hpp"

#include <random>

using namespace hallq;

namespace {

Quiver make_quiver(const std::string& json) { return Quiver::from_json_text(json); }

Presentation make_pres(const Quiver& q, PresVariant v, int l_max = 3) {
  Presentation p;
  p.cartan = cartan_matrix(q, l_max);
  p.variant = v;
  p.l_max = l_max;
  return p;
}

const char* kA2 = R"({"vertices":["1","2"],"arrows":[["1","2"]]})";
const char* kJordan = R"({"vertices":["1"],"arrows":[["1","1"]]})";
const char* kTwoLoop = R"({"vertices":["1"],"arrows":[["1","1"],["1","1"]]})";
const char* kA1A1 = R"({"vertices":["1","2"],"arrows":[]})";

Word W(std::initializer_list<Generator> gs) { return Word(gs); }

}  // namespace

TEST_CASE("straighten: frozen examples") {
  Quiver a2 = make_quiver(kA2);
  Presentation p = make_pres(a2, PresVariant::quantum_BB);

  SUBCASE("e(2,1)*K(1) picks up (-t) and moves K left") {
    NCPoly in = NCPoly::gen(Generator::e(1, 1)) * NCPoly::gen(Generator::K(0));
    NCPoly want = NCPoly::monomial(W({Generator::K(0), Generator::e(1, 1)}),
                                   RatFun::minus_t_power(1));
    CHECK(straighten(in, p) == want);
  }

  SUBCASE("e*f same real vertex") {
    NCPoly in = NCPoly::gen(Generator::e(0, 1)) * NCPoly::gen(Generator::f(0, 1));
    NCPoly want =
        NCPoly::monomial(W({Generator::f(0, 1), Generator::e(0, 1)}));
    want.add_term(W({Generator::K(0, 1)}), nu(1));
    want.add_term(W({Generator::K(0, -1)}), -nu(1));
    CHECK(straighten(in, p) == want);
  }

  SUBCASE("e*f across distinct vertices commutes") {
    NCPoly in = NCPoly::gen(Generator::e(0, 1)) * NCPoly::gen(Generator::f(1, 1));
    NCPoly want =
        NCPoly::monomial(W({Generator::f(1, 1), Generator::e(0, 1)}));
    CHECK(straighten(in, p) == want);
  }
}

TEST_CASE("ef_exchange_rule: frozen expansions") {
  Quiver a2 = make_quiver(kA2);
  Presentation preal = make_pres(a2, PresVariant::quantum_BB);
  Quiver jordan = make_quiver(kJordan);
  Presentation piso = make_pres(jordan, PresVariant::quantum_BB);

  SUBCASE("(i,1,1) with a_ii = 2") {
    NCPoly got = ef_exchange_rule(0, 1, 1, preal);
    NCPoly want =
        NCPoly::monomial(W({Generator::f(0, 1), Generator::e(0, 1)}));
    want.add_term(W({Generator::K(0, 1)}), nu(1));
    want.add_term(W({Generator::K(0, -1)}), -nu(1));
    CHECK(got == want);
  }

  SUBCASE("(i,2,1) with a_ii = 0") {
    NCPoly got = ef_exchange_rule(0, 2, 1, piso);
    NCPoly want =
        NCPoly::monomial(W({Generator::f(0, 1), Generator::e(0, 2)}));
    want.add_term(W({Generator::e(0, 1), Generator::K(0, 1)}), nu(1));
    want.add_term(W({Generator::e(0, 1), Generator::K(0, -1)}), -nu(1));
    CHECK(got == want);
  }

  SUBCASE("(i,1,1) with a_ii = 0") {
    NCPoly got = ef_exchange_rule(0, 1, 1, piso);
    NCPoly want =
        NCPoly::monomial(W({Generator::f(0, 1), Generator::e(0, 1)}));
    want.add_term(W({Generator::K(0, 1)}), nu(1));
    want.add_term(W({Generator::K(0, -1)}), -nu(1));
    CHECK(got == want);
  }
}

TEST_CASE("serre_sum: frozen examples") {
  Quiver a2 = make_quiver(kA2);
  Generator e1 = Generator::e(0, 1), e2 = Generator::e(1, 1);

  SUBCASE("A2 signed quantum variant") {
    Presentation p = make_pres(a2, PresVariant::quantum_BB);
    p.serre_sign = SerreSign::signed_variant;
    NCPoly got = serre_sum(p, 'E', 0, 1, 1);
    NCPoly want = NCPoly::monomial(W({e1, e1, e2}));
    want.add_term(W({e1, e2, e1}), -quantum_integer(2));
    want.add_term(W({e2, e1, e1}), RatFun(1));
    CHECK(got == want);
    CHECK(quantum_integer(2) == RatFun::parse("-t - t^-1"));
  }

  SUBCASE("A2 unsigned quantum variant") {
    Presentation p = make_pres(a2, PresVariant::quantum_BB);
    p.serre_sign = SerreSign::unsigned_variant;
    NCPoly got = serre_sum(p, 'E', 0, 1, 1);
    NCPoly want = NCPoly::monomial(W({e1, e1, e2}));
    want.add_term(W({e1, e2, e1}), quantum_integer(2));
    want.add_term(W({e2, e1, e1}), RatFun(1));
    CHECK(got == want);
  }

  SUBCASE("A2 classical variant has integer coefficients") {
    Presentation p = make_pres(a2, PresVariant::classical_BB);
    NCPoly got = serre_sum(p, 'E', 0, 1, 1);
    NCPoly want = NCPoly::monomial(W({e1, e1, e2}));
    want.add_term(W({e1, e2, e1}), RatFun(-2));
    want.add_term(W({e2, e1, e1}), RatFun(1));
    CHECK(got == want);
  }

  SUBCASE("a_ij = 0 degenerates to a commutator") {
    Quiver q = make_quiver(kA1A1);
    Presentation p = make_pres(q, PresVariant::quantum_BB);
    NCPoly got = serre_sum(p, 'E', 0, 1, 1);
    NCPoly want = NCPoly::monomial(W({e1, e2}));
    want.add_term(W({e2, e1}), RatFun(-1));
    CHECK(got == want);
  }

  SUBCASE("F-side mirrors the E-side") {
    Presentation p = make_pres(a2, PresVariant::quantum_BB);
    NCPoly got = serre_sum(p, 'F', 0, 1, 1);
    Generator f1 = Generator::f(0, 1), f2 = Generator::f(1, 1);
    NCPoly want = NCPoly::monomial(W({f1, f1, f2}));
    want.add_term(W({f1, f2, f1}), -quantum_integer(2));
    want.add_term(W({f2, f1, f1}), RatFun(1));
    CHECK(got == want);
  }

  SUBCASE("imaginary i rejected") {
    Quiver jordan = make_quiver(kJordan);
    Presentation p = make_pres(jordan, PresVariant::quantum_BB);
    CHECK_THROWS_AS(serre_sum(p, 'E', 0, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("classical_limit: frozen values") {
  Quiver a2 = make_quiver(kA2);
  Presentation p = make_pres(a2, PresVariant::quantum_BB);

  SUBCASE("(K - 1)/(-t - 1) -> h") {
    NCPoly in = parse_ncpoly("(K(1) - 1)/(-t - 1)", p);
    NCPoly want = NCPoly::gen(Generator::h(0));
    CHECK(classical_limit(in, p) == want);
  }

  SUBCASE("K alone -> 1") {
    CHECK(classical_limit(NCPoly::gen(Generator::K(0)), p) == NCPoly::one());
    CHECK(classical_limit(NCPoly::gen(Generator::K(0, -1)), p) == NCPoly::one());
  }

  SUBCASE("commutator [e,f] -> -h; with the f-sign dictionary, +h") {
    NCPoly e = NCPoly::gen(Generator::e(0, 1));
    NCPoly f = NCPoly::gen(Generator::f(0, 1));
    NCPoly comm = e * f - f * e;
    NCPoly mh = -NCPoly::gen(Generator::h(0));
    CHECK(classical_limit(comm, p) == mh);
    // The classical generators identify f with minus the limit image, so the
    // classical relation [e, f] = h is recovered as [e, -f] -> h.
    CHECK(classical_limit(-comm, p) == -mh);
  }

  SUBCASE("pole detection") {
    NCPoly bad = NCPoly::scalar(nu(1));  // 1/(1 - t^2) has a pole at t = -1
    CHECK_THROWS_AS(classical_limit(bad, p), std::domain_error);
  }

  SUBCASE("h letters rejected in input") {
    Presentation pc = make_pres(a2, PresVariant::classical_BB);
    NCPoly in = NCPoly::gen(Generator::h(0));
    CHECK_THROWS_AS(classical_limit(in, pc), std::invalid_argument);
  }
}

TEST_CASE("classical_limit agrees with classical brackets on l = 1 pairs") {
  for (const char* json : {kA2, kJordan, kTwoLoop, kA1A1}) {
    Quiver q = make_quiver(json);
    Presentation p = make_pres(q, PresVariant::quantum_BB);
    int n = q.n();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        NCPoly e = NCPoly::gen(Generator::e(i, 1));
        NCPoly f = NCPoly::gen(Generator::f(j, 1));
        NCPoly got = classical_limit(e * f - f * e, p);
        NCPoly want =
            i == j ? -NCPoly::gen(Generator::h(i)) : NCPoly::zero();
        CHECK(got == want);
        if (p.cartan.a[(size_t)i][(size_t)j] == 0 && i != j) {
          NCPoly e2 = NCPoly::gen(Generator::e(j, 1));
          CHECK(classical_limit(e * e2 - e2 * e, p) == NCPoly::zero());
        }
      }
    }
  }
}

TEST_CASE("verify_relation_instances: all presentations pass") {
  SUBCASE("quantum over the Jordan quiver, indices <= 2") {
    Presentation p = make_pres(make_quiver(kJordan), PresVariant::quantum_BB);
    RelationReport r = verify_relation_instances(p, 2);
    CHECK(r.all_ok);
    CHECK(r.items.size() > 0);
  }
  SUBCASE("quantum over A2") {
    Presentation p = make_pres(make_quiver(kA2), PresVariant::quantum_BB);
    RelationReport r = verify_relation_instances(p, 2);
    CHECK(r.all_ok);
  }
  SUBCASE("quantum over the two-loop quiver") {
    Presentation p = make_pres(make_quiver(kTwoLoop), PresVariant::quantum_BB);
    RelationReport r = verify_relation_instances(p, 2);
    CHECK(r.all_ok);
  }
  SUBCASE("classical over A2 and Jordan") {
    for (const char* json : {kA2, kJordan}) {
      Presentation p = make_pres(make_quiver(json), PresVariant::classical_BB);
      RelationReport r = verify_relation_instances(p, 2);
      CHECK(r.all_ok);
    }
  }
  SUBCASE("gkm with a zero diagonal block") {
    Presentation p;
    p.cartan.a = {{2, -1}, {-1, 0}};
    p.cartan.real_vertices = {0};
    p.cartan.imaginary_vertices = {1};
    p.cartan.charge = std::vector<long long>{1, 2};
    p.variant = PresVariant::gkm_with_charge;
    p.l_max = 3;
    RelationReport r = verify_relation_instances(p, 2);
    CHECK(r.all_ok);
  }
}

namespace {

Word random_word(std::mt19937& rng, const Presentation& p, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> vtx(0, p.n() - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  Word w;
  int m = len(rng);
  for (int j = 0; j < m; ++j) {
    int i = vtx(rng);
    long long lmax = p.is_real(i) ? 1 : std::min(3, p.l_max);
    std::uniform_int_distribution<long long> ld(1, lmax);
    switch (kind(rng)) {
      case 0: w.push_back(Generator::e(i, ld(rng))); break;
      case 1: w.push_back(Generator::f(i, ld(rng))); break;
      default: w.push_back(Generator::K(i, sgn(rng) ? 1 : -1)); break;
    }
  }
  return w;
}

bool is_normal_form(const Word& w, const Presentation& p) {
  // F-block, K-block (one letter per vertex, ascending), E-block.
  int stage = 0;
  int last_k = -1;
  for (const auto& g : w) {
    int r = g.kind == GKind::F ? 0 : (g.kind == GKind::E ? 2 : 1);
    if (r < stage) return false;
    if (r > stage) stage = r;
    if (g.kind == GKind::Kpow) {
      if (g.i <= last_k || g.kexp == 0) return false;
      last_k = g.i;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("straighten: idempotence, shape, and degree preservation") {
  std::mt19937 rng(424242);
  for (const char* json : {kA2, kJordan, kTwoLoop}) {
    Quiver q = make_quiver(json);
    Presentation p = make_pres(q, PresVariant::quantum_BB);
    for (int trial = 0; trial < 40; ++trial) {
      Word w = random_word(rng, p, 5);
      NCPoly s = straighten(NCPoly::monomial(w), p);
      CHECK(straighten(s, p) == s);
      auto deg = word_net_degree(w, q.n());
      for (const auto& [nw, c] : s.terms) {
        CHECK(is_normal_form(nw, p));
        CHECK(word_net_degree(nw, q.n()) == deg);
      }
    }
  }
}

TEST_CASE("straighten: confluence under split-and-recombine") {
  std::mt19937 rng(31337);
  for (const char* json : {kA2, kJordan}) {
    Quiver q = make_quiver(json);
    Presentation p = make_pres(q, PresVariant::quantum_BB);
    for (int trial = 0; trial < 30; ++trial) {
      Word w = random_word(rng, p, 5);
      NCPoly direct = straighten(NCPoly::monomial(w), p);
      std::uniform_int_distribution<size_t> cut(0, w.size());
      size_t c = cut(rng);
      NCPoly left = straighten(
          NCPoly::monomial(Word(w.begin(), w.begin() + (long)c)), p);
      NCPoly right = straighten(
          NCPoly::monomial(Word(w.begin() + (long)c, w.end())), p);
      CHECK(straighten(left * right, p) == direct);
    }
  }
}

TEST_CASE("straighten: non-exchange rewrites preserve the full letter data") {
  Quiver a2 = make_quiver(kA2);
  Presentation p = make_pres(a2, PresVariant::quantum_BB);
  // K-move only: letter multiset is unchanged.
  NCPoly s = straighten(
      NCPoly::monomial(W({Generator::e(1, 1), Generator::K(0)})), p);
  REQUIRE(s.terms.size() == 1);
  Word got = s.terms.begin()->first;
  Word want = W({Generator::K(0), Generator::e(1, 1)});
  CHECK(got == want);
  // Cross-vertex e/f swap: same letters, coefficient one.
  NCPoly s2 = straighten(
      NCPoly::monomial(W({Generator::e(0, 1), Generator::f(1, 1)})), p);
  REQUIRE(s2.terms.size() == 1);
  CHECK(s2.terms.begin()->second == RatFun(1));
}

TEST_CASE("within-block sorting uses only free commutations") {
  Quiver sep = make_quiver(kA1A1);
  Presentation p0 = make_pres(sep, PresVariant::quantum_BB);
  // a_12 = 0: letters sort by vertex.
  NCPoly s = straighten(
      NCPoly::monomial(W({Generator::e(1, 1), Generator::e(0, 1)})), p0);
  NCPoly want = NCPoly::monomial(W({Generator::e(0, 1), Generator::e(1, 1)}));
  CHECK(s == want);

  Quiver a2 = make_quiver(kA2);
  Presentation p1 = make_pres(a2, PresVariant::quantum_BB);
  // a_12 = -1: order is left untouched (no claim modulo Serre).
  Word w = W({Generator::e(1, 1), Generator::e(0, 1)});
  NCPoly s2 = straighten(NCPoly::monomial(w), p1);
  CHECK(s2 == NCPoly::monomial(w));
}

TEST_CASE("parser: grammar round trips and errors") {
  Quiver a2 = make_quiver(kA2);
  Presentation p = make_pres(a2, PresVariant::quantum_BB);

  NCPoly comm = parse_ncpoly("e(1,1)*f(1,1) - f(1,1)*e(1,1)", p);
  NCPoly want = NCPoly::gen(Generator::e(0, 1)) * NCPoly::gen(Generator::f(0, 1)) -
                NCPoly::gen(Generator::f(0, 1)) * NCPoly::gen(Generator::e(0, 1));
  CHECK(comm == want);

  NCPoly scaled = parse_ncpoly("(1 - t^2) * K(1) + t^-1 * Kinv(2)", p);
  NCPoly w2 = NCPoly::monomial(W({Generator::K(0, 1)}),
                               RatFun::parse("1 - t^2"));
  w2.add_term(W({Generator::K(1, -1)}), RatFun::t_power(-1));
  CHECK(scaled == w2);

  CHECK(parse_ncpoly("3/4", p) == NCPoly::scalar(RatFun(BigRat(3, 4))));
  CHECK(parse_ncpoly("-e(1,1)", p) == -NCPoly::gen(Generator::e(0, 1)));

  CHECK_THROWS_AS(parse_ncpoly("e(1,2)", p), std::out_of_range);   // real vertex
  CHECK_THROWS_AS(parse_ncpoly("e(3,1)", p), std::out_of_range);   // no vertex 3
  CHECK_THROWS_AS(parse_ncpoly("g(1,1)", p), std::invalid_argument);
  CHECK_THROWS_AS(parse_ncpoly("e(1,1) +", p), std::invalid_argument);
  CHECK_THROWS_AS(parse_ncpoly("1/e(1,1)", p), std::invalid_argument);

  Quiver jordan = make_quiver(kJordan);
  Presentation pj = make_pres(jordan, PresVariant::quantum_BB, 3);
  CHECK_THROWS_AS(parse_ncpoly("e(1,4)", pj), std::out_of_range);  // beyond cutoff
  CHECK(parse_ncpoly("e(1,3)", pj) == NCPoly::gen(Generator::e(0, 3)));
}

TEST_CASE("NCPoly printing is stable and readable") {
  Quiver a2 = make_quiver(kA2);
  Presentation p = make_pres(a2, PresVariant::quantum_BB);
  NCPoly s = straighten(parse_ncpoly("e(2,1)*K(1)", p), p);
  CHECK(s.str() == "-t*K(1)*e(2,1)");
  CHECK(NCPoly::zero().str() == "0");
  CHECK(NCPoly::one().str() == "1");
}
