#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfl/compiler.hpp"
#include "qfl/error.hpp"
#include "qfl/graph.hpp"
#include "qfl/search.hpp"
#include "qfl/simulator.hpp"
#include "qfl/verification.hpp"

namespace py = pybind11;
using namespace qfl;

namespace {

ColoringInstance make_instance(std::size_t n, int k, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (auto [u, v] : edges) es.push_back({u, v});
  return ColoringInstance(n, k, es);
}

std::vector<std::vector<Color>> to_lists(const std::vector<Assignment>& as) {
  std::vector<std::vector<Color>> out;
  out.reserve(as.size());
  for (const auto& a : as) out.push_back(a.colors);
  return out;
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["instance"] = r.instance;
  d["passed"] = r.passed;
  d["feasible"] = r.feasible;
  d["infeasible"] = r.infeasible;
  py::list failures;
  for (const auto& f : r.failures) failures.append(py::make_tuple(f.input, f.expected, f.got));
  d["failures"] = failures;
  return d;
}

py::dict solutions_dict(const SolutionSet& s) {
  py::dict d;
  d["assignments"] = to_lists(s.assignments);
  d["method"] = s.method == SearchMethod::Exact ? "exact" : "sampled";
  d["shots"] = s.shots;
  d["seed"] = s.seed;
  d["retained_shots"] = s.retained_shots;
  d["retained_fraction"] = s.retained_fraction;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph-coloring feasibility labeling circuits";
#ifdef VERSION_INFO
#define QFL_STR2(x) #x
#define QFL_STR(x) QFL_STR2(x)
  m.attr("__version__") = QFL_STR(VERSION_INFO);
#endif

  auto base = py::register_exception<Error>(m, "QflError", PyExc_RuntimeError);
  py::register_exception<InvalidInstance>(m, "InvalidInstance", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<CompileError>(m, "CompileError", base.ptr());
  py::register_exception<UnsupportedSize>(m, "UnsupportedSize", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());

  m.def("qubits_per_vertex", &qubits_per_vertex, py::arg("k"));

  py::class_<ColoringInstance>(m, "ColoringInstance")
      .def(py::init(&make_instance), py::arg("n"), py::arg("k"), py::arg("edges"))
      .def_property_readonly("num_vertices", &ColoringInstance::num_vertices)
      .def_property_readonly("num_edges", &ColoringInstance::num_edges)
      .def_property_readonly("num_colors", &ColoringInstance::num_colors)
      .def_property_readonly("qubits_per_vertex", &ColoringInstance::qubits_per_vertex)
      .def_property_readonly("edges",
                             [](const ColoringInstance& i) {
                               std::vector<std::pair<Vertex, Vertex>> out;
                               for (const Edge& e : i.edges()) out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def("__repr__", [](const ColoringInstance& i) {
        return "ColoringInstance(n=" + std::to_string(i.num_vertices()) +
               ", k=" + std::to_string(i.num_colors()) +
               ", g=" + std::to_string(i.num_edges()) + ")";
      });

  m.def(
      "parse_instance",
      [](const std::string& text, int k) { return parse_instance(std::string_view(text), k).instance; },
      py::arg("text"), py::arg("k"), "Parse DIMACS .col text.");
  m.def(
      "classical_feasible",
      [](const ColoringInstance& inst, std::vector<Color> colors) {
        return classical_feasible(inst, Assignment{std::move(colors)});
      },
      py::arg("instance"), py::arg("colors"));
  m.def(
      "enumerate_feasible",
      [](const ColoringInstance& inst, int max_bits, bool restrict_to_k) {
        return to_lists(enumerate_feasible(inst, {max_bits, restrict_to_k}).assignments);
      },
      py::arg("instance"), py::arg("max_bits") = 24, py::arg("restrict_to_k") = false);

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("width", &Circuit::width)
      .def("__len__", &Circuit::size)
      .def("serialize", [](const Circuit& c) { return serialize(c); })
      .def("depth_report", [](const Circuit& c) {
        const DepthReport r = depth_report(c);
        py::dict d;
        py::dict counts;
        for (const auto& [k, n] : r.gate_counts) counts[py::str(std::string(to_string(k)))] = n;
        d["gate_counts"] = counts;
        d["stage_sum"] = r.stage_sum;
        d["asap_depth"] = r.asap_depth;
        return d;
      });
  m.def(
      "deserialize", [](const std::string& text) { return deserialize(std::string_view(text)); },
      py::arg("text"));

  py::class_<QubitLayout>(m, "QubitLayout")
      .def_property_readonly("width", &QubitLayout::width)
      .def_property_readonly("final_label", &QubitLayout::final_label)
      .def("data", &QubitLayout::data, py::arg("v"))
      .def("roles",
           [](const QubitLayout& l) {
             py::dict d;
             for (const auto& r : l.roles()) d[py::str(r.name)] = r.qubits;
             return d;
           })
      .def("serialize", [](const QubitLayout& l) { return serialize_layout(l); });

  py::class_<CompiledQfl>(m, "CompiledQfl")
      .def_readonly("circuit", &CompiledQfl::circuit)
      .def_readonly("layout", &CompiledQfl::layout)
      .def_readonly("exceeds_sim_cap", &CompiledQfl::exceeds_sim_cap);

  m.def(
      "compile_qfl",
      [](const ColoringInstance& inst, bool use_reset, bool include_prep, std::size_t sim_cap) {
        return compile_qfl(inst, {use_reset, include_prep, sim_cap});
      },
      py::arg("instance"), py::arg("use_reset") = true, py::arg("include_prep") = true,
      py::arg("sim_cap") = kDefaultSimCap);

  m.def(
      "estimate_resources",
      [](const ColoringInstance& inst, bool use_reset) {
        const ResourceEstimate e = estimate_resources(inst, use_reset);
        py::dict d;
        d["qubits"] = e.qubits;
        d["depth"] = e.depth;
        d["subtraction_depth"] = e.subtraction_depth;
        d["or_depth"] = e.or_depth;
        d["and_depth"] = e.and_depth;
        d["reset_depth"] = e.reset_depth;
        return d;
      },
      py::arg("instance"), py::arg("use_reset") = true);

  m.def(
      "statevector",
      [](const Circuit& c, std::uint64_t initial, std::size_t cap) {
        const Statevector s = run(c, initial, cap);
        auto amps = s.amplitudes();
        return py::array_t<std::complex<double>>(amps.size(), amps.data());
      },
      py::arg("circuit"), py::arg("initial") = 0, py::arg("cap") = kDefaultSimCap,
      "Dense amplitudes; index bit i is qubit i.");
  m.def(
      "sample_counts",
      [](const Circuit& c, std::uint64_t shots, std::uint64_t seed, std::size_t cap) {
        return sample_counts(run(c, 0, cap), shots, seed);
      },
      py::arg("circuit"), py::arg("shots"), py::arg("seed") = 7, py::arg("cap") = kDefaultSimCap);

  m.def(
      "so_truth_table",
      [](int mm) {
        py::list out;
        for (const TruthRow& r : so_truth_table(mm)) {
          py::dict d;
          d["a"] = r.a;
          d["b"] = r.b;
          d["difference"] = r.difference;
          d["ancilla"] = r.ancilla;
          d["label"] = r.label;
          d["data_preserved"] = r.data_preserved;
          out.append(d);
        }
        return out;
      },
      py::arg("m"));
  m.def(
      "check_label_oracle",
      [](const ColoringInstance& inst, bool use_reset) {
        return report_dict(check_label_oracle(inst, use_reset));
      },
      py::arg("instance"), py::arg("use_reset") = true);
  m.def("run_suite", [] {
    py::list out;
    for (const auto& r : run_suite()) out.append(report_dict(r));
    return out;
  });

  m.def(
      "extract_feasible_exact",
      [](const ColoringInstance& inst, bool use_reset, std::size_t cap) {
        return solutions_dict(extract_feasible_exact(inst, use_reset, cap));
      },
      py::arg("instance"), py::arg("use_reset") = true, py::arg("cap") = kDefaultSimCap);
  m.def(
      "extract_feasible_sampled",
      [](const ColoringInstance& inst, std::uint64_t shots, std::uint64_t seed, bool use_reset,
         std::size_t cap) {
        return solutions_dict(extract_feasible_sampled(inst, shots, seed, use_reset, cap));
      },
      py::arg("instance"), py::arg("shots"), py::arg("seed") = 7, py::arg("use_reset") = true,
      py::arg("cap") = kDefaultSimCap);
}
