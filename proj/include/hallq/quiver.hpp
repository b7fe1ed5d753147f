#pragma once
// Quivers with loops, dimension vectors, Euler forms, Borcherds-Cartan data
// with charge, and projective-resolution data for acyclic quivers.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hallq {

// Dimension vector in vertex order; signed entries are allowed so the same
// type serves for classes in the Grothendieck group.
using DimVector = std::vector<long long>;

struct Quiver {
  std::vector<std::string> vertices;
  // Arrows as (source index, target index); listed with multiplicity,
  // loops as equal endpoints.
  std::vector<std::pair<int, int>> arrows;

  int n() const { return static_cast<int>(vertices.size()); }
  int vertex_index(const std::string& label) const;
  int loop_count(int i) const;            // g_i
  int arrow_count(int i, int j) const;    // c_ij (i != j), arrows i -> j
  bool has_oriented_cycle() const;        // loops count as cycles

  static Quiver from_json_text(const std::string& text);
  static Quiver from_json_file(const std::string& path);
  std::string to_json_text() const;

  DimVector unit(int i) const;  // \hat{S_i}
  DimVector zero() const { return DimVector(vertices.size(), 0); }
};

struct CartanData {
  std::vector<std::vector<long long>> a;  // even symmetric Borcherds-Cartan
  std::vector<int> real_vertices;         // a_ii = 2
  std::vector<int> imaginary_vertices;    // a_ii <= 0
  // Generator index set: (i, l) with l = 1 for real i and 1 <= l <= l_max
  // for imaginary i.
  std::vector<std::pair<int, int>> index_set;
  std::optional<std::vector<long long>> charge;
};

CartanData cartan_matrix(const Quiver& q, int l_max = 3);

long long euler_form(const Quiver& q, const DimVector& alpha,
                     const DimVector& beta);
long long sym_euler_form(const Quiver& q, const DimVector& alpha,
                         const DimVector& beta);
bool in_fundamental_set(const Quiver& q, const DimVector& alpha);

struct ProjectiveData {
  DimVector dim_p;
  DimVector dim_rad_p;
};
// Per-vertex projective covers; requires an acyclic, loop-free quiver.
std::vector<ProjectiveData> projective_data(const Quiver& q);
long long phi_twist_exponent(const Quiver& q, int i);

std::string dimvec_str(const DimVector& d);

}  // namespace hallq
