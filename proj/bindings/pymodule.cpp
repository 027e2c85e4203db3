#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plab/capacity.hpp"
#include "plab/certificates.hpp"
#include "plab/cone.hpp"
#include "plab/embed.hpp"
#include "plab/families.hpp"
#include "plab/graph_io.hpp"
#include "plab/lieclass.hpp"
#include "plab/pathfamily.hpp"
#include "plab/poincare.hpp"
#include "plab/profiles.hpp"
#include "plab/verify.hpp"

namespace py = pybind11;
using namespace plab;

namespace {

WeightedGraph py_make_graph(const std::string& family,
                            const std::map<std::string, double>& params,
                            const std::string& space) {
  FamilySpec spec;
  spec.family = family;
  spec.num = params;
  spec.space = space;
  return make_family(spec);
}

}  // namespace

PYBIND11_MODULE(poincarelab, m) {
  m.doc() =
      "certified bounds on Poincare constants, capacities and growth "
      "profiles for graph families";

  py::class_<WeightedGraph>(m, "Graph")
      .def_property_readonly("n", &WeightedGraph::n)
      .def_property_readonly("m", &WeightedGraph::m)
      .def_property_readonly("total_mu", &WeightedGraph::total_mu)
      .def("is_connected", &WeightedGraph::is_connected)
      .def("max_degree", &WeightedGraph::max_degree)
      .def("to_json", [](const WeightedGraph& g) {
        return write_graph_string(g);
      });

  m.def("make_graph", &py_make_graph, py::arg("family"),
        py::arg("params") = std::map<std::string, double>{},
        py::arg("space") = "",
        "build a graph family instance (tree, path, cycle, zd_box, "
        "heisenberg_ball, sol_lattice_ball, dl, dl_gamma_k, cone)");
  m.def("graph_from_json", &read_graph_string, py::arg("text"));

  m.def(
      "hp_bounds",
      [](const WeightedGraph& g, double p, std::uint64_t seed) {
        HpConfig cfg;
        cfg.seed = seed;
        return hp_bounds(g, p, cfg).to_json();
      },
      py::arg("g"), py::arg("p") = 1.0, py::arg("seed") = 0,
      "certified interval for h^p, as a JSON string");
  m.def("exact_h1",
        [](const WeightedGraph& g) { return exact_h1(g, nullptr); });
  m.def("h2_spectral", &h2_spectral);
  m.def("congestion_lower_bound", &congestion_lower_bound_auto);

  m.def(
      "capacity_bounds",
      [](const WeightedGraph& g, double p, double alpha, std::uint64_t seed) {
        CapacityConfig cfg;
        cfg.seed = seed;
        return capacity_bounds(g, p, alpha, cfg).to_json();
      },
      py::arg("g"), py::arg("p"), py::arg("alpha"), py::arg("seed") = 0,
      "certified interval for C^{p,alpha}, as a JSON string");

  m.def(
      "verify_gamma",
      [](int k, const std::string& tamper) {
        return verify_gamma_claims(k, tamper).to_json();
      },
      py::arg("k"), py::arg("tamper") = "",
      "path-system claim check on the slab family, as a JSON string");
  m.def(
      "corpus_battery",
      [](int samples, std::uint64_t seed) {
        return corpus_battery(samples, seed).to_json();
      },
      py::arg("samples") = 50, py::arg("seed") = 0);

  m.def(
      "profile_csv",
      [](const std::string& family, const std::map<std::string, double>& params,
         double p, long long max_n, int max_points, std::uint64_t seed) {
        ProfileOptions opt;
        opt.p = p;
        opt.max_n = max_n;
        opt.max_points = max_points;
        opt.hp.seed = seed;
        auto pts = poincare_profile(family, params, opt);
        return profile_csv(pts, family, p, 0.0, "", "");
      },
      py::arg("family"), py::arg("params") = std::map<std::string, double>{},
      py::arg("p") = 1.0, py::arg("max_n") = 200000,
      py::arg("max_points") = 12, py::arg("seed") = 0,
      "profile points of |V| * h^p along a family, as CSV");
  m.def(
      "fit_csv",
      [](const std::string& text) {
        return fit_growth(profile_from_csv(text)).to_json();
      },
      py::arg("csv_text"), "growth model fit of a profile CSV, as JSON");

  m.def(
      "classify_matrix",
      [](const std::vector<std::vector<double>>& A, double p) {
        Classification c = classify(weights_from_matrix(A));
        return "{\"classification\":" + c.to_json() +
               ",\"predicted\":" + predicted_profile(c, p).to_json() + "}";
      },
      py::arg("A"), py::arg("p") = 1.0,
      "trichotomy for R^d x|_A R from the matrix eigenvalues, as JSON");
  m.def("catalog", [] {
    std::string out = "[";
    bool first = true;
    for (const auto& e : group_catalog()) {
      if (!first) out += ",";
      first = false;
      out += e.to_json();
    }
    return out + "]";
  });

  m.def(
      "busemann_check",
      [](int mm, long long t, int depth) {
        return busemann_height_check(bc_tree_embedding(mm, t, depth))
            .to_json();
      },
      py::arg("m") = 2, py::arg("t") = 3, py::arg("depth") = 4);
  m.def(
      "dl_inclusion",
      [](int q, int core) { return dl_inclusion_check(q, core).to_json(); },
      py::arg("q") = 2, py::arg("core") = 2);
  m.def(
      "estimate_delta",
      [](const WeightedGraph& g, long long quadruples, std::uint64_t seed) {
        return estimate_delta(g, quadruples, seed);
      },
      py::arg("g"), py::arg("quadruples") = 20000, py::arg("seed") = 0);
}
