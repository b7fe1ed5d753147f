// Python bindings for the Hall-algebra core: quiver/Cartan data, fixed-q
// Hall elements with the reduced star product, generator images,
// straightening, classical limits, and the verification suites.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hallq/hall.hpp"
#include "hallq/ncpoly.hpp"
#include "hallq/quiver.hpp"
#include "hallq/verify.hpp"

namespace py = pybind11;
using namespace hallq;

namespace {

using PyWord = std::vector<std::tuple<std::string, int, long long>>;

Generator make_generator(const std::string& kind, int i, long long l) {
  if (kind == "e") return Generator::e(i, l);
  if (kind == "f") return Generator::f(i, l);
  if (kind == "K") return Generator::K(i, l);
  if (kind == "h") return Generator::h(i);
  throw std::invalid_argument("generator kind must be e, f, K, or h");
}

NCPoly word_poly(const PyWord& word) {
  Word w;
  for (const auto& [kind, i, l] : word) w.push_back(make_generator(kind, i, l));
  return NCPoly::monomial(w);
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["qs"] = r.qs;
  d["n_pass"] = r.n_pass();
  d["n_fail"] = r.n_fail();
  d["n_skip"] = r.n_skip();
  d["all_pass"] = r.all_pass();
  py::list cases;
  for (const VCase& c : r.cases) {
    py::dict cd;
    cd["id"] = c.id;
    cd["lhs"] = c.lhs;
    cd["rhs"] = c.rhs;
    cd["status"] = c.status;
    if (!c.reason.empty()) cd["reason"] = c.reason;
    cases.append(cd);
  }
  d["cases"] = cases;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hallq, m) {
  m.doc() =
      "Motivic semi-derived Hall algebras of 2-periodic complexes of "
      "nilpotent quiver representations at fixed prime powers q = t^2.";

  py::class_<Quiver>(m, "Quiver")
      .def_static("from_json", &Quiver::from_json_text, py::arg("text"))
      .def_static("from_file", &Quiver::from_json_file, py::arg("path"))
      .def("to_json", &Quiver::to_json_text)
      .def_property_readonly("n", &Quiver::n)
      .def_property_readonly(
          "vertices", [](const Quiver& q) { return q.vertices; })
      .def_property_readonly("arrows",
                             [](const Quiver& q) { return q.arrows; })
      .def("loop_count", &Quiver::loop_count, py::arg("i"))
      .def("has_oriented_cycle", &Quiver::has_oriented_cycle)
      .def(
          "cartan",
          [](const Quiver& q, int l_max) { return cartan_matrix(q, l_max).a; },
          py::arg("l_max") = 3)
      .def(
          "euler",
          [](const Quiver& q, const DimVector& a, const DimVector& b) {
            return euler_form(q, a, b);
          },
          py::arg("alpha"), py::arg("beta"))
      .def(
          "sym_euler",
          [](const Quiver& q, const DimVector& a, const DimVector& b) {
            return sym_euler_form(q, a, b);
          },
          py::arg("alpha"), py::arg("beta"))
      .def(
          "phi_twist_exponent",
          [](const Quiver& q, int i) { return phi_twist_exponent(q, i); },
          py::arg("i"));

  py::class_<HallElement>(m, "HallElement")
      .def("is_zero", &HallElement::is_zero)
      .def("__eq__",
           [](const HallElement& a, const HallElement& b) { return a == b; })
      .def("__add__",
           [](const HallElement& a, const HallElement& b) { return a + b; })
      .def("__sub__",
           [](const HallElement& a, const HallElement& b) { return a - b; });

  py::class_<HallContext>(m, "HallContext")
      .def(py::init<const Quiver&, int>(), py::arg("quiver"), py::arg("q"),
           py::keep_alive<1, 2>())
      .def_property_readonly("q", &HallContext::q)
      .def("unit", &HallContext::unit)
      .def("b", &HallContext::b_element, py::arg("alpha"))
      .def("delta_c", &HallContext::delta_c, py::arg("dims"))
      .def("delta_c_power", &HallContext::delta_c_power, py::arg("vertex"),
           py::arg("k"), py::arg("dual") = false)
      .def("star", &HallContext::star, py::arg("x"), py::arg("y"))
      .def(
          "scale",
          [](HallContext& ctx, const HallElement& x, long long num,
             long long den, long long t_power) {
            return x * (QuadExt(BigRat(num, den)) * ctx.minus_t_pow(t_power));
          },
          py::arg("x"), py::arg("num"), py::arg("den") = 1,
          py::arg("t_power") = 0,
          "x * (num/den) * (-t)^t_power at -t = sqrt(q).")
      .def(
          "bb_image",
          [](HallContext& ctx, const std::string& kind, int i, long long l,
             bool acyclic) {
            Generator g = make_generator(kind, i, l);
            return acyclic ? ctx.bb_generator_image_acyclic(g)
                           : ctx.bb_generator_image(g);
          },
          py::arg("kind"), py::arg("i"), py::arg("l") = 1,
          py::arg("acyclic") = false)
      .def(
          "realize",
          [](HallContext& ctx, const PyWord& word, bool acyclic) {
            return ctx.realize(word_poly(word), acyclic);
          },
          py::arg("word"), py::arg("acyclic") = false)
      .def("str", &HallContext::element_str, py::arg("x"));

  m.def(
      "straighten",
      [](const Quiver& q, const PyWord& word, int l_max) {
        Presentation pres;
        pres.cartan = cartan_matrix(q, l_max);
        pres.l_max = l_max;
        return straighten(word_poly(word), pres).str();
      },
      py::arg("quiver"), py::arg("word"), py::arg("l_max") = 3,
      "Normal form of a generator word; word items are (kind, i, l) tuples "
      "with kind in {e, f, K} (K uses l as the exponent).");

  m.def(
      "classical_limit",
      [](const Quiver& q, const PyWord& word, int l_max) {
        Presentation pres;
        pres.cartan = cartan_matrix(q, l_max);
        pres.l_max = l_max;
        return classical_limit(word_poly(word), pres).str();
      },
      py::arg("quiver"), py::arg("word"), py::arg("l_max") = 3,
      "Image of a generator word at t = -1 in e, f, h normal form.");

  m.def(
      "verify",
      [](const Quiver& quiver, const std::string& suite, int q, int i, int j,
         int k, long long l, const std::string& serre_sign,
         const std::vector<int>& samples) {
        if (suite == "eikfil")
          return report_dict(verify_eikfil(quiver, i, k, (int)l, q));
        if (suite == "commutation")
          return report_dict(verify_commutation(quiver, i, k, (int)l, q));
        if (suite == "serre") {
          SerreSign s = serre_sign == "unsigned" ? SerreSign::unsigned_variant
                                                 : SerreSign::signed_variant;
          return report_dict(verify_serre(quiver, i, j, l, q, s));
        }
        if (suite == "b_relations")
          return report_dict(verify_b_relations(quiver, q));
        if (suite == "divided_power")
          return report_dict(
              verify_divided_power(quiver, "C_S", make_c_simple(i), k,
                                   samples));
        if (suite == "classical_bracket")
          return report_dict(verify_classical_bracket(quiver, i, samples));
        throw std::invalid_argument("unknown suite: " + suite);
      },
      py::arg("quiver"), py::arg("suite"), py::arg("q") = 4, py::arg("i") = 0,
      py::arg("j") = 1, py::arg("k") = 1, py::arg("l") = 1,
      py::arg("serre_sign") = "signed",
      py::arg("samples") = std::vector<int>{4, 9, 25},
      "Run a verification suite and return its report as a dict.");
}
