#include "qfl/verification.hpp"

#include <sstream>

#include "qfl/error.hpp"
#include "qfl/simulator.hpp"

namespace qfl {

namespace {

std::vector<Qubit> range_qubits(std::size_t begin, std::size_t count) {
  std::vector<Qubit> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<Qubit>(begin + i);
  return out;
}

std::string bits(std::uint64_t value, std::size_t width) { return render_bits(value, width); }

void require_bits(const ColoringInstance& inst, int max_bits) {
  if (inst.data_bits() > static_cast<std::size_t>(max_bits)) {
    throw ResourceLimit("exhaustive check needs " + std::to_string(inst.data_bits()) +
                        " data bits, cap is " + std::to_string(max_bits));
  }
}

VerificationReport new_report(std::string check, std::string instance = {}) {
  VerificationReport r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  return r;
}

}  // namespace

std::vector<TruthRow> so_truth_table(int m) {
  if (m < 1 || m > 4) throw UnsupportedSize("truth table supports m in [1, 4]");
  const std::size_t um = static_cast<std::size_t>(m);
  const auto a = range_qubits(0, um);
  const auto b = range_qubits(um, um);
  const auto anc = range_qubits(2 * um, um + 1);
  const Qubit label = static_cast<Qubit>(3 * um + 1);
  const std::size_t width = 3 * um + 2;

  const auto sub = build_subtraction(a, b, anc);
  const auto orc = build_or(anc, label);

  std::vector<TruthRow> rows;
  const std::uint64_t values = 1ULL << m;
  for (std::uint64_t vb = 0; vb < values; ++vb) {
    for (std::uint64_t va = 0; va < values; ++va) {
      BasisState s(width, va | (vb << m));
      for (const Gate& g : sub) apply_gate(s, g);
      TruthRow row{va, vb, s.extract(anc), 0, false, true};
      for (const Gate& g : orc) apply_gate(s, g);
      row.ancilla = s.extract(anc);
      row.label = s.get(label);
      row.data_preserved = s.extract(a) == va && s.extract(b) == vb;
      rows.push_back(row);
    }
  }
  return rows;
}

VerificationReport check_so_truth_table(int m) {
  auto report = new_report("so_truth_table", "m=" + std::to_string(m));
  const std::uint64_t modulus = 1ULL << (m + 1);
  const std::size_t aw = static_cast<std::size_t>(m) + 1;
  for (const TruthRow& row : so_truth_table(m)) {
    const std::uint64_t diff = (row.a + modulus - row.b) % modulus;
    const std::uint64_t residue = post_or_residue(row.a, row.b, m);
    const bool label = row.a != row.b;
    const std::string input = "a=" + std::to_string(row.a) + " b=" + std::to_string(row.b);
    if (row.difference != diff || row.ancilla != residue || row.label != label ||
        !row.data_preserved) {
      report.fail({input,
                   "diff=" + bits(diff, aw) + " anc=" + bits(residue, aw) +
                       " d=" + std::to_string(label),
                   "diff=" + bits(row.difference, aw) + " anc=" + bits(row.ancilla, aw) +
                       " d=" + std::to_string(row.label) +
                       (row.data_preserved ? "" : " data changed")});
    }
    ++(label ? report.feasible : report.infeasible);
  }
  return report;
}

VerificationReport check_label_oracle(const ColoringInstance& inst, bool use_reset,
                                      int max_bits) {
  return check_label_oracle(inst, compile_qfl(inst, {use_reset, false}), max_bits);
}

VerificationReport check_label_oracle(const ColoringInstance& inst, const CompiledQfl& compiled,
                                      int max_bits) {
  require_bits(inst, max_bits);
  const QubitLayout& layout = compiled.layout;
  auto report =
      new_report(std::string("label_oracle/") + (layout.use_reset() ? "reset" : "no-reset"));
  const auto data = layout.all_data();
  const auto final_label = layout.final_label();
  const int m = inst.qubits_per_vertex();
  const std::uint64_t total = 1ULL << inst.data_bits();

  for (std::uint64_t x = 0; x < total; ++x) {
    const BasisState out = run_basis(compiled.circuit, BasisState(layout.width(), x));
    const Assignment a = decode_assignment(inst, x);
    const bool expected = classical_feasible(inst, a);
    const bool got = final_label ? out.get(*final_label) : true;
    const std::string input = bits(x, data.size());
    if (got != expected) {
      report.fail({input, "label=" + std::to_string(expected), "label=" + std::to_string(got)});
    }
    if (const std::uint64_t after = out.extract(data); after != x) {
      report.fail({input, "data unchanged", "data=" + bits(after, data.size())});
    }
    if (!layout.use_reset()) {
      for (std::size_t j = 1; j <= inst.num_edges(); ++j) {
        const Edge e = inst.edges()[j - 1];
        const auto anc = layout.ancilla(j);
        const std::uint64_t want = post_or_residue(a.colors[e.u], a.colors[e.v], m);
        if (const std::uint64_t have = out.extract(anc); have != want) {
          report.fail({input + " edge " + std::to_string(j), "ancilla=" + bits(want, anc.size()),
                       "ancilla=" + bits(have, anc.size())});
        }
      }
    }
    ++(expected ? report.feasible : report.infeasible);
  }
  return report;
}

VerificationReport check_ancilla_reset(const ColoringInstance& inst, int max_bits) {
  return check_ancilla_reset(inst, compile_qfl(inst, {true, false}), max_bits);
}

VerificationReport check_ancilla_reset(const ColoringInstance& inst, const CompiledQfl& compiled,
                                       int max_bits) {
  require_bits(inst, max_bits);
  if (!compiled.layout.use_reset()) throw CompileError("ancilla reset check needs reset mode");
  auto report = new_report("ancilla_reset");
  if (inst.num_edges() == 0) return report;

  const Circuit& c = compiled.circuit;
  const auto anc = compiled.layout.ancilla(1);
  // Indices of the last gate of each reset stage.
  std::vector<std::size_t> boundaries;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool is_reset = c.stages()[i].kind == StageKind::Reset;
    const bool next_same = i + 1 < c.size() && c.stages()[i + 1] == c.stages()[i];
    if (is_reset && !next_same) boundaries.push_back(i);
  }

  const std::uint64_t total = 1ULL << inst.data_bits();
  for (std::uint64_t x = 0; x < total; ++x) {
    BasisState s(c.width(), x);
    std::size_t next = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      apply_gate(s, c.gates()[i]);
      if (next < boundaries.size() && boundaries[next] == i) {
        ++next;
        if (const std::uint64_t v = s.extract(anc); v != 0) {
          report.fail({bits(x, inst.data_bits()) + " after reset " +
                           std::to_string(c.stages()[i].edge),
                       "ancilla=" + bits(0, anc.size()), "ancilla=" + bits(v, anc.size())});
        }
      }
    }
    if (const std::uint64_t v = s.extract(anc); v != 0) {
      report.fail({bits(x, inst.data_bits()) + " at end", "ancilla=" + bits(0, anc.size()),
                   "ancilla=" + bits(v, anc.size())});
    }
  }
  return report;
}

VerificationReport check_resource_formulas(const ColoringInstance& inst) {
  auto report = new_report("resource_formulas");
  const std::size_t g = inst.num_edges();
  const auto and_standalone = build_and(0, 1, 2);
  for (bool use_reset : {true, false}) {
    const std::string mode = use_reset ? "reset" : "no-reset";
    const ResourceEstimate est = estimate_resources(inst, use_reset);
    const CompiledQfl compiled = compile_qfl(inst, {use_reset, false});
    const DepthReport depths = depth_report(compiled.circuit);

    // Measured standalone depth per stage kind; must agree across edges.
    std::map<StageKind, std::size_t> kind_depth;
    kind_depth[StageKind::And] = layered_depth(and_standalone);
    const std::map<StageKind, std::size_t> expected_term = {
        {StageKind::Subtraction, est.subtraction_depth},
        {StageKind::Or, est.or_depth},
        {StageKind::And, est.and_depth},
        {StageKind::Reset, est.reset_depth}};
    for (const auto& [tag, depth] : depths.per_stage) {
      const auto want = expected_term.find(tag.kind);
      if (want == expected_term.end() || depth != want->second) {
        report.fail({mode + " " + std::string(to_string(tag.kind)) + ":" +
                         std::to_string(tag.edge),
                     want == expected_term.end() ? "no such stage"
                                                 : "depth " + std::to_string(want->second),
                     "depth " + std::to_string(depth)});
      }
      kind_depth[tag.kind] = depth;
    }
    std::size_t per_module = 0;
    for (StageKind k : {StageKind::Subtraction, StageKind::Or, StageKind::And, StageKind::Reset}) {
      if (k == StageKind::Reset && !use_reset) continue;
      per_module += kind_depth.count(k) ? kind_depth[k] : expected_term.at(k);
    }

    ResourceComparison cmp{use_reset,        est.qubits,       compiled.circuit.width(),
                           est.depth,        g * per_module,   depths.stage_sum,
                           depths.asap_depth};
    report.resources.push_back(cmp);

    if (cmp.measured_qubits != cmp.predicted_qubits) {
      report.fail({mode + " width", std::to_string(cmp.predicted_qubits),
                   std::to_string(cmp.measured_qubits)});
    }
    if (cmp.module_depth != cmp.predicted_depth) {
      report.fail({mode + " module depth", std::to_string(cmp.predicted_depth),
                   std::to_string(cmp.module_depth)});
    }
    // Edge 1 has no AND gate, so the literal stage sum is one short of the
    // per-module closed form whenever g >= 1.
    const std::size_t literal = g == 0 ? 0 : cmp.predicted_depth - 1;
    if (cmp.stage_sum != literal) {
      report.fail({mode + " stage sum", std::to_string(literal), std::to_string(cmp.stage_sum)});
    }
    if (cmp.asap_depth > cmp.predicted_depth) {
      report.fail({mode + " asap depth", "<= " + std::to_string(cmp.predicted_depth),
                   std::to_string(cmp.asap_depth)});
    }
  }
  return report;
}

std::vector<SuiteInstance> verification_suite() {
  auto star = [](std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.push_back({0, v});
    return e;
  };
  auto path = [](std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
    return e;
  };
  const std::vector<Edge> triangle{{0, 1}, {1, 2}, {0, 2}};
  const std::vector<Edge> graph7{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};

  std::vector<SuiteInstance> suite;
  suite.push_back({"star4_k4", ColoringInstance(4, 4, star(4)), true});
  for (int k : {2, 3, 4, 5}) {
    suite.push_back({"triangle_k" + std::to_string(k), ColoringInstance(3, k, triangle), true});
  }
  for (int k : {2, 3, 4}) {
    for (std::size_t n : {2, 3, 4}) {
      suite.push_back({"path" + std::to_string(n) + "_k" + std::to_string(k),
                       ColoringInstance(n, k, path(n)), true});
    }
  }
  suite.push_back({"star4_k2", ColoringInstance(4, 2, star(4)), true});
  suite.push_back({"star4_k3", ColoringInstance(4, 3, star(4)), true});
  suite.push_back({"path2_k8", ColoringInstance(2, 8, path(2)), true});
  suite.push_back({"vertex1_k4", ColoringInstance(1, 4, {}), true});
  suite.push_back({"graph7_k4", ColoringInstance(7, 4, graph7), true});
  return suite;
}

std::vector<VerificationReport> run_instance_checks(const ColoringInstance& inst,
                                                    const std::string& name) {
  std::vector<VerificationReport> out;
  auto tagged = [&](VerificationReport r) {
    r.instance = name;
    out.push_back(std::move(r));
  };
  tagged(check_so_truth_table(inst.qubits_per_vertex()));
  tagged(check_label_oracle(inst, true));
  tagged(check_label_oracle(inst, false));
  tagged(check_ancilla_reset(inst));
  tagged(check_resource_formulas(inst));
  return out;
}

std::vector<VerificationReport> run_suite() {
  std::vector<VerificationReport> out;
  for (int m = 1; m <= 4; ++m) out.push_back(check_so_truth_table(m));
  for (const SuiteInstance& s : verification_suite()) {
    auto tag = [&](VerificationReport r) {
      r.instance = s.name;
      out.push_back(std::move(r));
    };
    tag(check_resource_formulas(s.instance));
    if (!s.exhaustive) continue;
    VerificationReport reset = check_label_oracle(s.instance, true);
    VerificationReport no_reset = check_label_oracle(s.instance, false);
    if (reset.feasible != no_reset.feasible) {
      reset.fail({"feasible count", std::to_string(no_reset.feasible),
                  std::to_string(reset.feasible)});
    }
    tag(std::move(reset));
    tag(std::move(no_reset));
    tag(check_ancilla_reset(s.instance));
  }

  // Dropping one reset gate must be detected.
  const ColoringInstance star(4, 4, {{0, 1}, {0, 2}, {0, 3}});
  const CompiledQfl full = compile_qfl(star, {true, false});
  std::size_t first_reset = 0;
  while (full.circuit.stages()[first_reset].kind != StageKind::Reset) ++first_reset;
  const CompiledQfl mutant{full.circuit.without_gate(first_reset), full.layout, false};
  const VerificationReport caught = check_ancilla_reset(star, mutant);
  auto mutation = new_report("reset_mutation_detected", "star4_k4");
  if (caught.passed) {
    mutation.fail({"reset gate " + std::to_string(first_reset) + " removed", "check fails",
                   "check passed"});
  }
  mutation.infeasible = caught.failures.size();
  out.push_back(std::move(mutation));
  return out;
}

bool all_passed(std::span<const VerificationReport> reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

std::string report_text(std::span<const VerificationReport> reports) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    out << (r.passed ? "PASS " : "FAIL ") << r.check;
    if (!r.instance.empty()) out << " [" << r.instance << "]";
    if (r.feasible + r.infeasible > 0) {
      out << " feasible=" << r.feasible << " infeasible=" << r.infeasible;
    }
    out << '\n';
    for (const auto& c : r.resources) {
      out << "    " << (c.use_reset ? "reset" : "no-reset") << ": qubits " << c.measured_qubits
          << "/" << c.predicted_qubits << ", depth " << c.module_depth << "/"
          << c.predicted_depth << " (stage sum " << c.stage_sum << ", asap " << c.asap_depth
          << ")\n";
    }
    constexpr std::size_t kShown = 5;
    for (std::size_t i = 0; i < r.failures.size() && i < kShown; ++i) {
      const auto& f = r.failures[i];
      out << "    " << f.input << ": expected " << f.expected << ", got " << f.got << '\n';
    }
    if (r.failures.size() > kShown) {
      out << "    ... " << r.failures.size() - kShown << " more\n";
    }
    if (!r.passed) ++failed;
  }
  out << reports.size() - failed << "/" << reports.size() << " checks passed\n";
  return out.str();
}

std::string report_csv(std::span<const VerificationReport> reports) {
  std::ostringstream out;
  out << "check,instance,passed,failures,feasible,infeasible\n";
  for (const auto& r : reports) {
    out << r.check << ',' << r.instance << ',' << (r.passed ? 1 : 0) << ',' << r.failures.size()
        << ',' << r.feasible << ',' << r.infeasible << '\n';
  }
  return out.str();
}

}  // namespace qfl
