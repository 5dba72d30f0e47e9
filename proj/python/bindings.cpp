// Copyright 2026 The psgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psgate/achievability.hpp"
#include "psgate/cartan.hpp"
#include "psgate/cli.hpp"
#include "psgate/dilation.hpp"
#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"
#include "psgate/probability.hpp"
#include "psgate/solver.hpp"

namespace py = pybind11;
using namespace psgate;

namespace {

py::dict verdict_dict(const AchievabilityVerdict &v) {
  py::dict d;
  d["achievable"] = v.achievable;
  d["witness"] = describe(v.witness);
  d["residual"] = v.residual;
  d["tolerance"] = v.tolerance;
  return d;
}

py::dict network_dict(const OpticalNetwork &net) {
  py::list elements;
  for (const OpticalElement &e : net.elements) {
    py::dict d;
    const bool bs = e.kind == ElementKind::BeamSplitter;
    d["kind"] = bs ? "bs" : "ps";
    d["modes"] = bs ? py::tuple(py::make_tuple(e.mode_a, e.mode_b))
                    : py::tuple(py::make_tuple(e.mode_a));
    d["theta"] = e.theta;
    d["phi"] = e.phi;
    elements.append(d);
  }
  py::dict d;
  d["n_modes"] = net.n_modes;
  d["elements"] = elements;
  return d;
}

OpticalNetwork network_from_dict(const py::dict &d) {
  OpticalNetwork net;
  net.n_modes = d["n_modes"].cast<int>();
  for (const auto &item : d["elements"]) {
    const auto e = item.cast<py::dict>();
    const auto modes = e["modes"].cast<std::vector<int>>();
    const std::string kind = e["kind"].cast<std::string>();
    if (kind == "bs" && modes.size() == 2) {
      net.elements.push_back(OpticalElement::beam_splitter(
          modes[0], modes[1], e["theta"].cast<double>(), e["phi"].cast<double>()));
    } else if (kind == "ps" && modes.size() == 1) {
      net.elements.push_back(
          OpticalElement::phase_shifter(modes[0], e["phi"].cast<double>()));
    } else {
      throw Error(ErrorCode::MalformedNetwork, "bad element '" + kind + "'");
    }
  }
  return net;
}

}  // namespace

PYBIND11_MODULE(_psgate, m) {
  m.doc() = "Post-selected two-photon linear-optics gate synthesis";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<CanonicalTriple>(m, "CanonicalTriple")
      .def(py::init<>())
      .def(py::init([](double a, double b, double c) {
             return CanonicalTriple{a, b, c};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma"))
      .def_readwrite("alpha", &CanonicalTriple::alpha)
      .def_readwrite("beta", &CanonicalTriple::beta)
      .def_readwrite("gamma", &CanonicalTriple::gamma)
      .def("__repr__", [](const CanonicalTriple &t) {
        return "CanonicalTriple(" + std::to_string(t.alpha) + ", " +
               std::to_string(t.beta) + ", " + std::to_string(t.gamma) + ")";
      });

  py::class_<CanonicalWeights>(m, "CanonicalWeights")
      .def(py::init([](Complex w1, Complex w2, Complex w3, Complex w4) {
             return CanonicalWeights{w1, w2, w3, w4};
           }),
           py::arg("w1"), py::arg("w2"), py::arg("w3"), py::arg("w4"))
      .def_readwrite("w1", &CanonicalWeights::w1)
      .def_readwrite("w2", &CanonicalWeights::w2)
      .def_readwrite("w3", &CanonicalWeights::w3)
      .def_readwrite("w4", &CanonicalWeights::w4)
      .def("as_list", [](const CanonicalWeights &w) {
        const auto a = w.as_array();
        return std::vector<Complex>(a.begin(), a.end());
      });

  py::class_<CartanDecomposition>(m, "CartanDecomposition")
      .def_readonly("v1", &CartanDecomposition::v1)
      .def_readonly("v2", &CartanDecomposition::v2)
      .def_readonly("v3", &CartanDecomposition::v3)
      .def_readonly("v4", &CartanDecomposition::v4)
      .def_readonly("triple", &CartanDecomposition::triple)
      .def_readonly("global_phase", &CartanDecomposition::global_phase)
      .def("reconstruct", &CartanDecomposition::reconstruct);

  m.def("f_map", [](const ComplexMatrix &u) { return Matrix4(f_entrywise(u)); },
        py::arg("u"), "Induced computational-subspace operator of a 4x4 corner.");
  m.def("transfer_matrix",
        [](const ComplexMatrix &u) {
          const PostselectedBlock b = transfer_matrix(u);
          return py::make_tuple(
              Matrix4(b.block),
              std::vector<double>(
                  b.success_probabilities.begin(), b.success_probabilities.end()));
        },
        py::arg("u"),
        "Simulated post-selected block and per-input success probabilities.");

  m.def("canonical_matrix",
        py::overload_cast<const CanonicalTriple &>(&canonical_matrix),
        py::arg("triple"));
  m.def("weights_from_triple", &weights_from_triple, py::arg("triple"));
  m.def("kak_decompose", &kak_decompose, py::arg("w"));

  m.def("check_triple",
        [](const CanonicalTriple &t, double tol) {
          return verdict_dict(check_triple(t, tol));
        },
        py::arg("triple"), py::arg("tol") = kDecisionTol);
  m.def("check_weights",
        [](const CanonicalWeights &w, double tol) {
          return verdict_dict(check_weights(w, tol));
        },
        py::arg("weights"), py::arg("tol") = kDecisionTol);
  m.def("check_gate",
        [](const ComplexMatrix &w, double tol) {
          const auto [verdict, kak] = check_gate(w, tol);
          py::dict d = verdict_dict(verdict);
          d["triple"] = kak.triple;
          return d;
        },
        py::arg("w"), py::arg("tol") = kDecisionTol);

  m.def("solve_gate",
        [](const ComplexMatrix &w, std::optional<std::string> branch,
           Complex u23, Complex u30, double tol) {
          SolveOptions opts;
          if (branch) opts.branch = SignBranch::parse(*branch);
          opts.u23 = u23;
          opts.u30 = u30;
          opts.zero.u30 = u30;
          opts.tol = tol;
          const GateSolution s = solve_gate(w, opts);
          py::dict d;
          d["submatrix"] = s.submatrix;
          d["unscaled"] = s.unscaled;
          d["p"] = s.p;
          d["s1"] = s.s1;
          d["f_residual"] = s.f_residual;
          return d;
        },
        py::arg("w"), py::arg("branch") = py::none(),
        py::arg("u23") = Complex(1.0, 0.0), py::arg("u30") = Complex(1.0, 0.0),
        py::arg("tol") = kDecisionTol);

  m.def("optimize_gate",
        [](const ComplexMatrix &w, int restarts, std::uint64_t seed, int threads,
           double tol) {
          OptimizationConfig cfg;
          cfg.restarts = restarts;
          cfg.seed = seed;
          cfg.threads = threads;
          cfg.tol = tol;
          GateOptimization g;
          {
            py::gil_scoped_release release;
            g = optimize_gate(w, cfg);
          }
          py::dict branches;
          for (const BranchResult &b : g.report.per_branch_best) {
            branches[py::str(b.label)] = b.best_p;
          }
          py::dict d;
          d["best_p"] = g.report.best_p;
          d["submatrix"] = g.submatrix;
          d["unscaled"] = g.unscaled;
          d["f_residual"] = g.f_residual;
          d["branches"] = branches;
          d["starts_converged"] = g.report.starts_converged;
          return d;
        },
        py::arg("w"), py::arg("restarts") = 64, py::arg("seed") = 0,
        py::arg("threads") = 1, py::arg("tol") = kDecisionTol);

  m.def("success_probability", &success_probability, py::arg("u"));
  m.def("dilate", &dilate, py::arg("u"), py::arg("tol") = kAlgebraicTol);
  m.def("reck_decompose",
        [](const ComplexMatrix &u) { return network_dict(reck_decompose(u)); },
        py::arg("u"));
  m.def("network_to_unitary",
        [](const py::dict &d) { return network_to_unitary(network_from_dict(d)); },
        py::arg("network"));
  m.def("probability_of_network", &probability_of_network, py::arg("u"),
        py::arg("target"), py::arg("tol") = 1e-7);

  m.def("named_gate", &cli::named_gate, py::arg("name"),
        py::arg("params") = std::vector<double>{});
  m.def("gate_names", &cli::gate_names);
}
