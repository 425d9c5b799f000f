// Python bindings for the weakly singular cubature library.  The module
// mirrors the C++ call signatures; weight tables come back as lightweight
// objects, pipeline results as dicts.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wsq/capacitance.hpp"
#include "wsq/periodic.hpp"
#include "wsq/planar.hpp"
#include "wsq/surface.hpp"
#include "wsq/theory.hpp"

namespace py = pybind11;
using namespace wsq;

namespace {

py::dict capacitance(double a, double b, double c, int n, int m, int iters,
                     double eps0, int threads) {
  const CapacitanceResult res =
      capacitance_run(Ellipsoid(a, b, c), n, m, iters, eps0,
                      SumPolicy::PairwiseDeterministic, threads);
  py::dict d;
  d["n"] = res.n;
  d["m"] = res.m;
  d["N"] = res.N;
  d["area"] = res.area;
  d["energy"] = res.energy;
  d["C"] = res.C;
  d["density"] = res.density;
  d["wall_seconds"] = res.wall_seconds;
  return d;
}

py::dict triangulation_info(double a, double b, double c, int n, int m) {
  const Triangulation tri = triangulate(Ellipsoid(a, b, c), n, m);
  py::dict d;
  d["N"] = tri.size();
  d["area"] = tri.area();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Cubature for 2-D weakly singular integrals and the double "
              "layer capacitance pipeline";

  py::enum_<LNorm>(mod, "LNorm")
      .value("One", LNorm::One)
      .value("Inf", LNorm::Inf);

  mod.def("favard_constant", &favard_constant, py::arg("r"));
  mod.def("least_dev_value", &least_dev_value, py::arg("r"), py::arg("norm"));
  mod.def("gamma_constant", &gamma_constant, py::arg("lam"),
          py::arg("tol") = 1e-6);
  mod.def("planar_gamma", &planar_gamma, py::arg("lam"), py::arg("tol") = 1e-6);

  py::class_<RegParams>(mod, "RegParams")
      .def_readonly("h", &RegParams::h)
      .def_readonly("m_gauss", &RegParams::m_gauss)
      .def_readonly("clamped", &RegParams::clamped);
  mod.def("choose_regularization", &choose_regularization, py::arg("n"),
          py::arg("lam"), py::arg("alpha"), py::arg("m_cap") = 64);

  py::class_<PeriodicWeightTable>(mod, "PeriodicWeightTable")
      .def_readonly("n", &PeriodicWeightTable::n)
      .def_readonly("lam", &PeriodicWeightTable::lambda)
      .def_readonly("alpha", &PeriodicWeightTable::alpha)
      .def_readonly("i", &PeriodicWeightTable::i)
      .def_readonly("j", &PeriodicWeightTable::j)
      .def_readonly("reg", &PeriodicWeightTable::reg)
      .def("at", &PeriodicWeightTable::at, py::arg("k"), py::arg("l"))
      .def("midpoint", &PeriodicWeightTable::midpoint, py::arg("k"))
      .def("weight_sum", [](const PeriodicWeightTable& t) {
        return t.weight_sum(SumPolicy::PairwiseDeterministic);
      });
  mod.def("periodic_weights", &periodic_weights, py::arg("n"), py::arg("lam"),
          py::arg("alpha"), py::arg("i"), py::arg("j"), py::arg("m_cap") = 64);
  mod.def(
      "eval_periodic",
      [](const PeriodicWeightTable& t,
         const std::function<double(double, double)>& f) {
        return eval_Kf(t, f);
      },
      py::arg("table"), py::arg("f"));

  py::class_<PlanarWeightTable>(mod, "PlanarWeightTable")
      .def_readonly("n", &PlanarWeightTable::n)
      .def_readonly("lam", &PlanarWeightTable::lambda)
      .def_readonly("alpha", &PlanarWeightTable::alpha)
      .def_readonly("t1", &PlanarWeightTable::t1)
      .def_readonly("t2", &PlanarWeightTable::t2)
      .def_readonly("i", &PlanarWeightTable::i)
      .def_readonly("j", &PlanarWeightTable::j)
      .def("at", &PlanarWeightTable::at, py::arg("k"), py::arg("l"))
      .def("node", &PlanarWeightTable::node, py::arg("k"))
      .def("midpoint", &PlanarWeightTable::midpoint, py::arg("k"))
      .def("weight_sum", [](const PlanarWeightTable& t) {
        return t.weight_sum(SumPolicy::PairwiseDeterministic);
      });
  mod.def(
      "planar_weights",
      [](int n, double t1, double t2, double lam, double alpha, bool merged,
         int m_cap) {
        return planar_weights(n, t1, t2, lam, alpha,
                              merged ? NearPolicy::MergedDelta
                                     : NearPolicy::PerCell,
                              m_cap);
      },
      py::arg("n"), py::arg("t1"), py::arg("t2"), py::arg("lam"),
      py::arg("alpha"), py::arg("merged") = false, py::arg("m_cap") = 64);
  mod.def(
      "eval_planar",
      [](const PlanarWeightTable& t,
         const std::function<double(double, double)>& f) {
        return eval_Tf_holder(t, f);
      },
      py::arg("table"), py::arg("f"));
  mod.def(
      "eval_planar_smooth",
      [](const std::function<double(double, double)>& f, int n, int r,
         double lam, double t1, double t2) {
        return eval_Tf_smooth(f, n, r, lam, t1, t2);
      },
      py::arg("f"), py::arg("n"), py::arg("r"), py::arg("lam"), py::arg("t1"),
      py::arg("t2"));

  mod.def("triangulation_info", &triangulation_info, py::arg("a"),
          py::arg("b"), py::arg("c"), py::arg("n"), py::arg("m"));
  mod.def("capacitance", &capacitance, py::arg("a") = 1.0, py::arg("b") = 1.0,
          py::arg("c") = 1.0, py::arg("n") = 40, py::arg("m") = 30,
          py::arg("iters") = 1, py::arg("eps0") = 1.0, py::arg("threads") = 1);
  mod.def("exact_spheroid_capacitance", &exact_spheroid_capacitance,
          py::arg("a"), py::arg("c"), py::arg("eps0") = 1.0);
}
