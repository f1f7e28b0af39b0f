// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfl/compiler.hpp"
#include "qfl/search.hpp"
#include "qfl/simulator.hpp"
#include "qfl/verification.hpp"

using namespace qfl;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

ColoringInstance star4() { return ColoringInstance(4, 4, {{0, 1}, {0, 2}, {0, 3}}); }

std::vector<Qubit> range(Qubit begin, std::size_t n) {
  std::vector<Qubit> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = begin + static_cast<Qubit>(i);
  return q;
}

// Independent brute-force predicate over the raw data register.
bool pattern_feasible(const ColoringInstance& inst, std::uint64_t pattern) {
  const int m = inst.qubits_per_vertex();
  auto color = [&](Vertex v) { return (pattern >> (v * m)) & ((1ULL << m) - 1); };
  for (const Edge& e : inst.edges()) {
    if (color(e.u) == color(e.v)) return false;
  }
  return true;
}

// Columns: o7 o6 o5 o4 q6 q5 q4 q3 q2 q1 q0
const char* const kSoRows[] = {
    "00110000000", "00110000101", "00110001010", "00110001111",
    "10000110011", "10010100010", "10010100111", "10100010001",
    "10100010110", "10100011011", "11001110100", "11001111001",
    "11001111110", "11011101000", "11011101101", "11101011100",
};

Outcome criterion1() {
  Outcome o;
  const auto rows = so_truth_table(2);
  o.require(rows.size() == 16, "expected 16 rows");
  std::map<std::pair<std::uint64_t, std::uint64_t>, TruthRow> by_input;
  for (const auto& r : rows) by_input[{r.a, r.b}] = r;
  int matched = 0;
  for (const std::string row : kSoRows) {
    auto field = [&](std::size_t from, std::size_t len) {
      return std::stoull(row.substr(from, len), nullptr, 2);
    };
    const auto it = by_input.find({field(9, 2), field(7, 2)});
    if (it == by_input.end()) {
      o.require(false, "missing input for row " + row);
      continue;
    }
    const TruthRow& r = it->second;
    const bool same = r.label == (row[0] == '1') && r.ancilla == field(1, 3) &&
                      r.difference == field(4, 3) && r.data_preserved;
    // o5 = not q5, o4 = not q4
    const bool complement = ((r.ancilla >> 1) & 1) != ((r.difference >> 1) & 1) &&
                            (r.ancilla & 1) != (r.difference & 1);
    o.require(same && complement, "row mismatch " + row);
    matched += same && complement;
  }
  o.detail = o.ok ? std::to_string(matched) + "/16 rows match" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const ColoringInstance inst = star4();
  const CompiledQfl c = compile_qfl(inst, {true, true});
  o.require(c.circuit.width() == 16, "width " + std::to_string(c.circuit.width()));
  const Statevector s = run(c.circuit);
  const auto nz = nonzero_states(s);
  o.require(nz.size() == 256, "nonzero states " + std::to_string(nz.size()));
  const Qubit label = *c.layout.final_label();
  std::size_t ones = 0, zeros = 0;
  for (const auto& b : nz) {
    o.require(std::abs(std::norm(b.amplitude) - 1.0 / 256.0) <= 1e-9, "probability off");
    const bool l = (b.index >> label) & 1ULL;
    o.require(l == pattern_feasible(inst, b.index & 0xFF), "label disagrees with predicate");
    (l ? ones : zeros) += 1;
  }
  o.require(ones == 108 && zeros == 148,
            "label split " + std::to_string(ones) + "/" + std::to_string(zeros));
  if (o.ok) o.detail = "width 16, 256 states at 1/256, 108 feasible / 148 infeasible";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const CompiledQfl c = compile_qfl(star4(), {true, true});
  const Statevector s = run(c.circuit);
  const std::uint64_t shots = 20000;
  const auto counts = sample_counts(s, shots, 7);
  const Qubit label = *c.layout.final_label();
  std::vector<std::uint64_t> per_pattern(256, 0);
  std::uint64_t label_ones = 0, total = 0;
  for (const auto& [index, n] : counts) {
    per_pattern[index & 0xFF] += n;
    if ((index >> label) & 1ULL) label_ones += n;
    total += n;
  }
  o.require(total == shots, "shot total " + std::to_string(total));
  std::size_t seen = 0;
  double chi2 = 0.0;
  const double expected = static_cast<double>(shots) / 256.0;
  for (std::uint64_t n : per_pattern) {
    seen += n > 0;
    chi2 += (n - expected) * (n - expected) / expected;
  }
  const double fraction = static_cast<double>(label_ones) / static_cast<double>(shots);
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(255), chi2));
  o.require(seen == 256, "patterns seen " + std::to_string(seen));
  o.require(fraction >= 0.402 && fraction <= 0.442, "label fraction " + std::to_string(fraction));
  o.require(p > 0.001, "chi-square p " + std::to_string(p));
  std::ostringstream d;
  d << seen << " patterns, label-1 fraction " << fraction << ", chi2 " << chi2 << " p " << p;
  if (o.ok) o.detail = d.str();
  return o;
}

std::size_t formula_width(std::size_t m, std::size_t n, std::size_t g, bool reset) {
  if (g == 0) return m * n;
  return reset ? m * n + m + 2 * g : m * n + (m + 3) * g - 1;
}

std::size_t formula_depth(std::size_t m, std::size_t g, bool reset) {
  const std::size_t per = reset ? (1u << (2 * m)) + (1u << m) + 5 * m + 1 : 5 * m + (1u << m) + 2;
  return g * per;
}

Outcome criterion4() {
  Outcome o;
  std::size_t checked = 0;
  for (const SuiteInstance& si : verification_suite()) {
    const ColoringInstance& inst = si.instance;
    const std::size_t m = inst.qubits_per_vertex(), n = inst.num_vertices(), g = inst.num_edges();
    for (bool reset : {true, false}) {
      const CompiledQfl c = compile_qfl(inst, {reset, false});
      const std::string tag = si.name + (reset ? "/reset" : "/no-reset");
      o.require(c.circuit.width() == formula_width(m, n, g, reset), tag + " width");
      const DepthReport r = depth_report(c.circuit);
      // Standalone depth of each stage kind; every module of a kind must agree.
      std::map<StageKind, std::set<std::size_t>> depths;
      for (const auto& [st, d] : r.per_stage) depths[st.kind].insert(d);
      std::size_t module = 0;
      for (StageKind k : {StageKind::Subtraction, StageKind::Or, StageKind::Reset,
                          StageKind::And}) {
        if (!depths.count(k)) continue;
        o.require(depths[k].size() == 1, tag + " uneven " + std::string(to_string(k)) + " depths");
        module += *depths[k].begin();
      }
      // A chain of g labels needs g-1 ANDs; with g = 1 the standalone AND depth is
      // taken from the builder.
      if (g == 1) module += layered_depth(build_and(0, 1, 2));
      const std::size_t predicted = formula_depth(m, g, reset);
      o.require(g * module == predicted, tag + " depth " + std::to_string(g * module) + " vs " +
                                             std::to_string(predicted));
      o.require(r.asap_depth <= predicted, tag + " asap above formula");
      ++checked;
    }
  }
  const auto r = compile_qfl(star4(), {true, false});
  const auto p = compile_qfl(star4(), {false, false});
  o.require(r.circuit.width() == 16 && formula_depth(2, 3, true) == 93, "star reset 16/93");
  o.require(p.circuit.width() == 22 && formula_depth(2, 3, false) == 48, "star no-reset 22/48");
  if (o.ok) {
    o.detail = std::to_string(checked) + " instance/mode pairs; star 16/93 and 22/48; literal " +
               "stage sums " + std::to_string(depth_report(r.circuit).stage_sum) + "/" +
               std::to_string(depth_report(p.circuit).stage_sum) + " (g-1 ANDs)";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t inputs = 0, instances = 0;
  for (const SuiteInstance& si : verification_suite()) {
    const ColoringInstance& inst = si.instance;
    if (inst.data_bits() > 12) continue;
    ++instances;
    for (bool reset : {true, false}) {
      const CompiledQfl c = compile_qfl(inst, {reset, false});
      const auto data = c.layout.all_data();
      const auto label = c.layout.final_label();
      for (std::uint64_t x = 0; x < (1ULL << inst.data_bits()); ++x) {
        const BasisState out = run_basis(c.circuit, BasisState(c.circuit.width(), x));
        const bool l = label ? out.get(*label) : true;
        o.require(l == pattern_feasible(inst, x), si.name + " label mismatch");
        o.require(out.extract(data) == x, si.name + " data changed");
        ++inputs;
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(instances) + " instances, " + std::to_string(inputs) +
               " basis inputs, 0 mismatches";
  }
  return o;
}

// Runs every basis input and checks the shared ancilla after each reset stage.
bool reset_invariant_holds(const ColoringInstance& inst, const Circuit& circuit,
                           const QubitLayout& layout) {
  const auto anc = layout.ancilla(1);
  std::vector<bool> boundary(circuit.size(), false);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const bool is_reset = circuit.stages()[i].kind == StageKind::Reset;
    const bool next_is_reset = i + 1 < circuit.size() &&
                               circuit.stages()[i + 1] == circuit.stages()[i];
    boundary[i] = is_reset && !next_is_reset;
  }
  for (std::uint64_t x = 0; x < (1ULL << inst.data_bits()); ++x) {
    BasisState s(circuit.width(), x);
    for (std::size_t i = 0; i < circuit.size(); ++i) {
      apply_gate(s, circuit.gates()[i]);
      if (boundary[i] && s.extract(anc) != 0) return false;
    }
    if (s.extract(anc) != 0) return false;
  }
  return true;
}

Outcome criterion6() {
  Outcome o;
  std::size_t instances = 0;
  for (const SuiteInstance& si : verification_suite()) {
    if (si.instance.num_edges() == 0) continue;
    const CompiledQfl c = compile_qfl(si.instance, {true, false});
    o.require(reset_invariant_holds(si.instance, c.circuit, c.layout), si.name + " ancilla dirty");
    ++instances;
  }
  const CompiledQfl c = compile_qfl(star4(), {true, false});
  std::size_t first_reset = 0;
  while (c.circuit.stages()[first_reset].kind != StageKind::Reset) ++first_reset;
  const Circuit mutated = c.circuit.without_gate(first_reset);
  o.require(!reset_invariant_holds(star4(), mutated, c.layout), "mutation not detected");
  if (o.ok) o.detail = std::to_string(instances) + " reset-mode instances clean; mutation caught";
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (int m = 1; m <= 3; ++m) {
    const auto a = range(0, m), b = range(m, m), out = range(2 * m, m + 1);
    const auto gates = build_subtraction(a, b, out);
    for (std::uint64_t va = 0; va < (1u << m); ++va) {
      for (std::uint64_t vb = 0; vb < (1u << m); ++vb) {
        BasisState s(3 * m + 1, va | (vb << m));
        for (const Gate& g : gates) apply_gate(s, g);
        o.require(s.extract(out) == oracle::twos_difference(va, vb, m) && s.extract(a) == va &&
                      s.extract(b) == vb,
                  "subtraction m=" + std::to_string(m));
      }
    }
  }
  for (std::size_t t = 2; t <= 5; ++t) {
    const auto in = range(0, t);
    const Qubit target = static_cast<Qubit>(t);
    const auto gates = build_or(in, target);
    o.require(gates.size() == (1u << (t - 1)) + t - 1, "OR gate count t=" + std::to_string(t));
    o.require(layered_depth(gates) == (1u << (t - 1)) + 1, "OR depth t=" + std::to_string(t));
    const std::uint64_t flipped = (1ULL << (t - 1)) - 1;
    for (std::uint64_t x = 0; x < (1ULL << t); ++x) {
      BasisState s(t + 1, x);
      for (const Gate& g : gates) apply_gate(s, g);
      o.require(s.get(target) == (x != 0) && s.extract(in) == (x ^ flipped),
                "OR semantics t=" + std::to_string(t));
    }
  }
  if (o.ok) o.detail = "subtraction m=1..3 exhaustive; OR t=2..5 semantics, counts, depths";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const SolutionSet got = extract_feasible_exact(star4());
  const auto want = enumerate_feasible(star4()).assignments;
  const std::set<Assignment> a(got.assignments.begin(), got.assignments.end());
  const std::set<Assignment> b(want.begin(), want.end());
  o.require(a == b && a.size() == 108, "star set size " + std::to_string(a.size()));
  o.require(oracle::count_colorings(4, {{0, 1}, {0, 2}, {0, 3}}, 4) == 108, "oracle count");
  const SolutionSet tri = extract_feasible_exact(ColoringInstance(3, 2, {{0, 1}, {1, 2}, {0, 2}}));
  o.require(tri.assignments.empty(), "triangle k=2 not empty");
  if (o.ok) o.detail = "108 assignments match enumeration; triangle k=2 empty";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "truth table", 1, criterion1},       {2, "star experiment", 5, criterion2},
      {3, "sampling", 10, criterion3},         {4, "resource formulas", 1, criterion4},
      {5, "oracle equivalence", 60, criterion5}, {6, "reset invariant", 30, criterion6},
      {7, "subtraction/OR units", 5, criterion7}, {8, "solution extraction", 5, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) {
      o.ok = false;
      o.detail += " (over time limit)";
    }
    failed += !o.ok;
    std::printf("%s criterion %d %s: %s [%.3fs/%.0fs]\n", o.ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
