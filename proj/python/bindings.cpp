#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "dpt/compiler.hpp"
#include "dpt/decomposition.hpp"
#include "dpt/harness.hpp"
#include "dpt/oracles.hpp"

namespace py = pybind11;
using namespace dpt;

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

Graph make_graph(std::size_t n, const EdgeList& edges) {
  std::vector<Edge> e;
  e.reserve(edges.size());
  for (const auto& [u, v] : edges) e.push_back({u, v});
  return Graph::from_edges(n, e);
}

EdgeList edge_list(const std::vector<Edge>& edges) {
  EdgeList out;
  for (const auto& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

Rational epsilon_of(const py::object& eps) {
  const auto r = Rational::parse(py::str(eps).cast<std::string>());
  if (!r.in_unit_interval()) throw ConfigError("epsilon must lie in (0, 1]");
  return r;
}

const char* verdict_str(Verdict v) { return v == Verdict::Reject ? "REJECT" : "ACCEPT"; }

py::dict report_dict(const AggregateReport& r) {
  py::list rows;
  for (const auto& row : r.rows)
    rows.append(py::dict(py::arg("seed") = row.seed, py::arg("verdict") = verdict_str(row.verdict),
                         py::arg("rounds") = row.rounds, py::arg("max_bits") = row.max_bits));
  std::ostringstream csv;
  write_csv(csv, r);
  return py::dict(py::arg("property") = r.property, py::arg("epsilon") = r.epsilon.str(), py::arg("n") = r.n,
                  py::arg("m") = r.m, py::arg("rows") = rows, py::arg("accept_count") = r.accept_count,
                  py::arg("reject_count") = r.reject_count, py::arg("reject_fraction") = r.reject_fraction(),
                  py::arg("mean_rounds") = r.mean_rounds, py::arg("max_rounds") = r.max_rounds,
                  py::arg("max_bits") = r.max_bits, py::arg("expectation") = expectation_name(r.expectation),
                  py::arg("gate_passed") = r.gate_passed(), py::arg("csv") = csv.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed property testers in the CONGEST model";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  m.def(
      "generate",
      [](const std::string& spec, std::uint64_t seed) {
        const auto inst = generate_instance(spec, seed);
        const auto& g = inst.generated.graph;
        return py::make_tuple(g.n(), edge_list(g.edges()));
      },
      py::arg("spec"), py::arg("seed") = 0, "Generated instance as (n, edges)");

  m.def(
      "run_experiment",
      [](const py::kwargs& kwargs) {
        ExperimentConfig cfg;
        for (const auto& [k, v] : kwargs) {
          auto key = k.cast<std::string>();
          std::replace(key.begin(), key.end(), '_', '-');
          std::string value = py::isinstance<py::bool_>(v) ? (v.cast<bool>() ? "true" : "false")
                                                           : py::str(v).cast<std::string>();
          apply_config_value(cfg, key, value);
        }
        return report_dict(run_experiment(cfg));
      },
      "Seeded trials of a tester; keyword arguments are the config keys (property, gen, epsilon, trials, ...)");

  m.def(
      "decompose",
      [](std::size_t n, const EdgeList& edges, const py::object& eps, std::uint64_t seed) {
        const auto g = make_graph(n, edges);
        const auto e = epsilon_of(eps);
        const auto d = decompose(g, e, seed);
        const auto rep = verify_decomposition(g, d, e);
        std::vector<py::object> parent;
        for (const auto& p : d.parent_of) parent.push_back(p ? py::cast(*p) : py::none());
        return py::dict(py::arg("cluster_of") = d.cluster_of, py::arg("parent_of") = parent,
                        py::arg("cut_edges") = edge_list(d.cut_edges), py::arg("clusters") = d.cluster_count(),
                        py::arg("rounds") = d.rounds_used, py::arg("attempts") = d.attempts,
                        py::arg("diameter_bound") = d.cluster_diameter_bound,
                        py::arg("max_diameter") = rep.max_cluster_diameter,
                        py::arg("cut_fraction") = rep.cut_fraction, py::arg("violations") = rep.violations);
      },
      py::arg("n"), py::arg("edges"), py::arg("epsilon"), py::arg("seed") = 0);

  m.def(
      "correct_cycles",
      [](std::size_t n, const EdgeList& edges, const py::object& eps, std::uint64_t seed) {
        const auto g = make_graph(n, edges);
        const auto e = epsilon_of(eps);
        const auto out = cyclefree_corrector(g, e, seed);
        const auto c = check_correction(g, out, e);
        return py::dict(py::arg("deleted") = edge_list(out.deleted_edges()), py::arg("rounds") = out.rounds_used,
                        py::arg("clusters") = out.cluster_count, py::arg("acyclic") = c.acyclic,
                        py::arg("consistent") = c.consistent, py::arg("distance") = c.distance,
                        py::arg("deletion_bound") = c.deletion_bound, py::arg("kept_bound") = c.kept_bound);
      },
      py::arg("n"), py::arg("edges"), py::arg("epsilon"), py::arg("seed") = 0);

  m.def(
      "distance",
      [](std::size_t n, const EdgeList& edges, const std::string& property) {
        return dist_to_property(make_graph(n, edges), PropertyId::parse(property));
      },
      py::arg("n"), py::arg("edges"), py::arg("property"), "Exact edge-deletion distance (small inputs)");

  m.def(
      "compiled_tester_rounds",
      [](std::size_t n, const py::object& eps) { return compiled_tester_rounds(n, epsilon_of(eps)); },
      py::arg("n"), py::arg("epsilon"));
}
