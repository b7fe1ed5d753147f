#include "hallq/quiver.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hallq {

int Quiver::vertex_index(const std::string& label) const {
  for (int i = 0; i < n(); ++i)
    if (vertices[static_cast<size_t>(i)] == label) return i;
  throw std::invalid_argument("unknown vertex label: " + label);
}

int Quiver::loop_count(int i) const {
  int g = 0;
  for (const auto& [s, t] : arrows)
    if (s == i && t == i) ++g;
  return g;
}

int Quiver::arrow_count(int i, int j) const {
  int c = 0;
  for (const auto& [s, t] : arrows)
    if (s == i && t == j) ++c;
  return c;
}

bool Quiver::has_oriented_cycle() const {
  // DFS three-color cycle detection; a loop is a cycle.
  std::vector<int> color(static_cast<size_t>(n()), 0);
  std::function<bool(int)> dfs = [&](int v) {
    color[static_cast<size_t>(v)] = 1;
    for (const auto& [s, t] : arrows) {
      if (s != v) continue;
      if (color[static_cast<size_t>(t)] == 1) return true;
      if (color[static_cast<size_t>(t)] == 0 && dfs(t)) return true;
    }
    color[static_cast<size_t>(v)] = 2;
    return false;
  };
  for (int v = 0; v < n(); ++v)
    if (color[static_cast<size_t>(v)] == 0 && dfs(v)) return true;
  return false;
}

Quiver Quiver::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Quiver q;
  for (const auto& v : j.at("vertices")) {
    std::string label = v.get<std::string>();
    for (const auto& existing : q.vertices)
      if (existing == label)
        throw std::invalid_argument("duplicate vertex label: " + label);
    q.vertices.push_back(label);
  }
  for (const auto& a : j.at("arrows")) {
    if (!a.is_array() || a.size() != 2)
      throw std::invalid_argument("arrow must be a [source, target] pair");
    q.arrows.emplace_back(q.vertex_index(a[0].get<std::string>()),
                          q.vertex_index(a[1].get<std::string>()));
  }
  return q;
}

Quiver Quiver::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open quiver file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string Quiver::to_json_text() const {
  nlohmann::json j;
  j["vertices"] = vertices;
  j["arrows"] = nlohmann::json::array();
  for (const auto& [s, t] : arrows)
    j["arrows"].push_back({vertices[static_cast<size_t>(s)],
                           vertices[static_cast<size_t>(t)]});
  return j.dump();
}

DimVector Quiver::unit(int i) const {
  DimVector d(vertices.size(), 0);
  d[static_cast<size_t>(i)] = 1;
  return d;
}

CartanData cartan_matrix(const Quiver& q, int l_max) {
  CartanData c;
  int n = q.n();
  c.a.assign(static_cast<size_t>(n),
             std::vector<long long>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j)
        c.a[i][j] = 2 - 2 * q.loop_count(i);
      else
        c.a[i][j] = -(q.arrow_count(i, j) + q.arrow_count(j, i));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (c.a[i][i] == 2) {
      c.real_vertices.push_back(i);
      c.index_set.emplace_back(i, 1);
    } else {
      c.imaginary_vertices.push_back(i);
      for (int l = 1; l <= l_max; ++l) c.index_set.emplace_back(i, l);
    }
  }
  return c;
}

long long euler_form(const Quiver& q, const DimVector& alpha,
                     const DimVector& beta) {
  if (alpha.size() != static_cast<size_t>(q.n()) ||
      beta.size() != static_cast<size_t>(q.n()))
    throw std::invalid_argument("euler_form: dimension vector size mismatch");
  long long out = 0;
  for (int i = 0; i < q.n(); ++i)
    out += alpha[static_cast<size_t>(i)] * beta[static_cast<size_t>(i)];
  for (const auto& [s, t] : q.arrows)
    out -= alpha[static_cast<size_t>(s)] * beta[static_cast<size_t>(t)];
  return out;
}

long long sym_euler_form(const Quiver& q, const DimVector& alpha,
                         const DimVector& beta) {
  return euler_form(q, alpha, beta) + euler_form(q, beta, alpha);
}

bool in_fundamental_set(const Quiver& q, const DimVector& alpha) {
  bool nonzero = false;
  for (long long x : alpha) {
    if (x < 0) throw std::invalid_argument("in_fundamental_set: negative entry");
    if (x > 0) nonzero = true;
  }
  if (!nonzero)
    throw std::invalid_argument("in_fundamental_set: zero dimension vector");
  for (int i = 0; i < q.n(); ++i)
    if (sym_euler_form(q, alpha, q.unit(i)) > 0) return false;
  // Support must be connected in the underlying graph.
  std::vector<int> support;
  for (int i = 0; i < q.n(); ++i)
    if (alpha[static_cast<size_t>(i)] > 0) support.push_back(i);
  std::vector<bool> seen(static_cast<size_t>(q.n()), false);
  std::vector<int> stack = {support[0]};
  seen[static_cast<size_t>(support[0])] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [s, t] : q.arrows) {
      int other = -1;
      if (s == v) other = t;
      else if (t == v) other = s;
      if (other < 0 || seen[static_cast<size_t>(other)]) continue;
      if (alpha[static_cast<size_t>(other)] == 0) continue;
      seen[static_cast<size_t>(other)] = true;
      stack.push_back(other);
    }
  }
  for (int v : support)
    if (!seen[static_cast<size_t>(v)]) return false;
  return true;
}

std::vector<ProjectiveData> projective_data(const Quiver& q) {
  if (q.has_oriented_cycle())
    throw std::invalid_argument(
        "projective_data: quiver has an oriented cycle or loop");
  int n = q.n();
  // dim P_i counts paths out of i; solve by reverse topological recursion
  // P_i = S_i + sum over arrows i -> j of P_j.
  std::vector<ProjectiveData> out(static_cast<size_t>(n));
  std::vector<bool> done(static_cast<size_t>(n), false);
  std::function<void(int)> solve = [&](int i) {
    if (done[static_cast<size_t>(i)]) return;
    done[static_cast<size_t>(i)] = true;  // acyclic: no re-entry possible
    DimVector rad(static_cast<size_t>(n), 0);
    for (const auto& [s, t] : q.arrows) {
      if (s != i) continue;
      solve(t);
      for (int k = 0; k < n; ++k)
        rad[static_cast<size_t>(k)] +=
            out[static_cast<size_t>(t)].dim_p[static_cast<size_t>(k)];
    }
    DimVector p = rad;
    p[static_cast<size_t>(i)] += 1;
    out[static_cast<size_t>(i)] = {p, rad};
  };
  for (int i = 0; i < n; ++i) solve(i);
  return out;
}

long long phi_twist_exponent(const Quiver& q, int i) {
  auto pd = projective_data(q);
  const auto& d = pd[static_cast<size_t>(i)];
  return euler_form(q, d.dim_rad_p, q.unit(i)) +
         2 * euler_form(q, d.dim_p, d.dim_rad_p);
}

std::string dimvec_str(const DimVector& d) {
  std::string s = "[";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

}  // namespace hallq
