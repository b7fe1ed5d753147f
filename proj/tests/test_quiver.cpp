#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hallq/quiver.hpp"

#include <random>

using namespace hallq;

namespace {

Quiver jordan() {
  return Quiver::from_json_text(R"({"vertices":["1"],"arrows":[["1","1"]]})");
}
Quiver two_loop() {
  return Quiver::from_json_text(
      R"({"vertices":["1"],"arrows":[["1","1"],["1","1"]]})");
}
Quiver a2() {
  return Quiver::from_json_text(R"({"vertices":["1","2"],"arrows":[["1","2"]]})");
}
Quiver kronecker() {
  return Quiver::from_json_text(
      R"({"vertices":["1","2"],"arrows":[["1","2"],["1","2"]]})");
}

Quiver random_quiver(std::mt19937& rng) {
  int n = 1 + (int)(rng() % 5);
  Quiver q;
  for (int i = 0; i < n; ++i) q.vertices.push_back(std::to_string(i + 1));
  int loops = (int)(rng() % 4), arrows = (int)(rng() % 5);
  for (int i = 0; i < loops; ++i) {
    int v = (int)(rng() % n);
    q.arrows.emplace_back(v, v);
  }
  for (int i = 0; i < arrows; ++i)
    q.arrows.emplace_back((int)(rng() % n), (int)(rng() % n));
  return q;
}

}  // namespace

TEST_CASE("json round trip and validation") {
  Quiver q = kronecker();
  Quiver q2 = Quiver::from_json_text(q.to_json_text());
  CHECK(q2.vertices == q.vertices);
  CHECK(q2.arrows == q.arrows);
  CHECK_THROWS(Quiver::from_json_text(
      R"({"vertices":["1","1"],"arrows":[]})"));
  CHECK_THROWS(Quiver::from_json_text(
      R"({"vertices":["1"],"arrows":[["1","2"]]})"));
}

TEST_CASE("cartan matrix on the corpus") {
  auto c1 = cartan_matrix(jordan());
  CHECK(c1.a == std::vector<std::vector<long long>>{{0}});
  CHECK(c1.imaginary_vertices == std::vector<int>{0});
  CHECK(c1.real_vertices.empty());

  auto c2 = cartan_matrix(two_loop());
  CHECK(c2.a == std::vector<std::vector<long long>>{{-2}});

  auto c3 = cartan_matrix(a2());
  CHECK(c3.a == std::vector<std::vector<long long>>{{2, -1}, {-1, 2}});
  CHECK(c3.real_vertices == std::vector<int>{0, 1});
  CHECK(c3.index_set ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});

  // Index set for an imaginary vertex goes up to l_max.
  auto c4 = cartan_matrix(jordan(), 4);
  CHECK(c4.index_set ==
        std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

TEST_CASE("cartan invariants on random quivers") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Quiver q = random_quiver(rng);
    auto c = cartan_matrix(q);
    for (int i = 0; i < q.n(); ++i) {
      CHECK(c.a[i][i] <= 2);
      CHECK(c.a[i][i] % 2 == 0);
      for (int j = 0; j < q.n(); ++j) {
        CHECK(c.a[i][j] == c.a[j][i]);
        if (i != j) CHECK(c.a[i][j] <= 0);
        // Cartan entries agree with the symmetric Euler form on unit vectors.
        CHECK(c.a[i][j] == sym_euler_form(q, q.unit(i), q.unit(j)));
      }
    }
  }
}

TEST_CASE("euler form values") {
  CHECK(euler_form(a2(), {1, 0}, {0, 1}) == -1);
  CHECK(euler_form(a2(), {0, 1}, {1, 0}) == 0);
  CHECK(euler_form(jordan(), {1}, {1}) == 0);
  CHECK(euler_form(kronecker(), {1, 0}, {0, 1}) == -2);
  // Bilinearity.
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Quiver q = random_quiver(rng);
    DimVector a(q.vertices.size()), b(q.vertices.size()), c(q.vertices.size());
    for (auto& x : a) x = (long long)(rng() % 5) - 2;
    for (auto& x : b) x = (long long)(rng() % 5) - 2;
    for (auto& x : c) x = (long long)(rng() % 5) - 2;
    DimVector bc(b.size());
    for (size_t i = 0; i < b.size(); ++i) bc[i] = b[i] + c[i];
    CHECK(euler_form(q, a, bc) == euler_form(q, a, b) + euler_form(q, a, c));
    CHECK(euler_form(q, q.zero(), b) == 0);
    CHECK(sym_euler_form(q, a, b) == sym_euler_form(q, b, a));
  }
}

TEST_CASE("fundamental set membership") {
  CHECK(in_fundamental_set(jordan(), {3}));
  CHECK(!in_fundamental_set(a2(), {1, 0}));
  CHECK(in_fundamental_set(kronecker(), {1, 1}));
  CHECK_THROWS(in_fundamental_set(a2(), {0, 0}));
  // Disconnected support fails even with nonpositive pairings.
  Quiver q = Quiver::from_json_text(
      R"({"vertices":["1","2"],"arrows":[["1","1"],["2","2"]]})");
  CHECK(!in_fundamental_set(q, {1, 1}));
  CHECK(in_fundamental_set(q, {1, 0}));
}

TEST_CASE("projective data for acyclic quivers") {
  auto pa2 = projective_data(a2());
  CHECK(pa2[0].dim_p == DimVector{1, 1});
  CHECK(pa2[0].dim_rad_p == DimVector{0, 1});
  CHECK(pa2[1].dim_p == DimVector{0, 1});
  CHECK(pa2[1].dim_rad_p == DimVector{0, 0});

  Quiver a1 = Quiver::from_json_text(R"({"vertices":["1"],"arrows":[]})");
  auto pa1 = projective_data(a1);
  CHECK(pa1[0].dim_p == DimVector{1});
  CHECK(pa1[0].dim_rad_p == DimVector{0});

  auto pk = projective_data(kronecker());
  CHECK(pk[0].dim_p == DimVector{1, 2});
  CHECK(pk[0].dim_rad_p == DimVector{0, 2});

  CHECK_THROWS(projective_data(jordan()));
  Quiver cyc = Quiver::from_json_text(
      R"({"vertices":["1","2"],"arrows":[["1","2"],["2","1"]]})");
  CHECK_THROWS(projective_data(cyc));
}

TEST_CASE("phi twist exponent") {
  CHECK(phi_twist_exponent(a2(), 0) == 0);
  CHECK(phi_twist_exponent(a2(), 1) == 0);
  CHECK(phi_twist_exponent(kronecker(), 0) == 0);
  CHECK(phi_twist_exponent(kronecker(), 1) == 0);
  // A3 path quiver 1 -> 2 -> 3: P1 = (1,1,1), rad P1 = (0,1,1).
  Quiver a3 = Quiver::from_json_text(
      R"({"vertices":["1","2","3"],"arrows":[["1","2"],["2","3"]]})");
  auto p = projective_data(a3);
  CHECK(p[0].dim_p == DimVector{1, 1, 1});
  long long e = euler_form(a3, p[0].dim_rad_p, a3.unit(0)) +
                2 * euler_form(a3, p[0].dim_p, p[0].dim_rad_p);
  CHECK(phi_twist_exponent(a3, 0) == e);
}
