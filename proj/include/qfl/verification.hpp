#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qfl/compiler.hpp"
#include "qfl/graph.hpp"

namespace qfl {

/// One basis input of a standalone SO module and what the simulation left
/// behind: `difference` after the subtraction stage, `ancilla` and `label`
/// after the OR stage.
struct TruthRow {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t difference = 0;
  std::uint64_t ancilla = 0;
  bool label = false;
  bool data_preserved = true;
};

/// Simulates the SO module on all 2^(2m) inputs, ordered by (b, a).
/// Qubits: a = [0, m), b = [m, 2m), ancilla = [2m, 3m], label = 3m + 1.
std::vector<TruthRow> so_truth_table(int m);

struct FailureDetail {
  std::string input;
  std::string expected;
  std::string got;
};

struct ResourceComparison {
  bool use_reset = true;
  std::size_t predicted_qubits = 0;
  std::size_t measured_qubits = 0;
  std::size_t predicted_depth = 0;
  /// g times the sum of the measured standalone depth of each stage kind.
  std::size_t module_depth = 0;
  /// Literal sum over every stage present in the circuit.
  std::size_t stage_sum = 0;
  std::size_t asap_depth = 0;
};

struct VerificationReport {
  std::string check;
  std::string instance;
  bool passed = true;
  std::vector<FailureDetail> failures;
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
  std::vector<ResourceComparison> resources;

  void fail(FailureDetail detail) {
    passed = false;
    failures.push_back(std::move(detail));
  }
};

/// so_truth_table(m) against integer two's-complement arithmetic.
VerificationReport check_so_truth_table(int m);

/// Runs the prep-free circuit on every data pattern and compares the final
/// label with classical_feasible; also checks the data register is intact,
/// and in no-reset mode that every ancilla block holds the post-OR residue.
VerificationReport check_label_oracle(const ColoringInstance& inst, bool use_reset,
                                      int max_bits = 24);
VerificationReport check_label_oracle(const ColoringInstance& inst, const CompiledQfl& compiled,
                                      int max_bits = 24);

/// Ancilla must be |0...0> after every reset stage and at the end.
VerificationReport check_ancilla_reset(const ColoringInstance& inst, int max_bits = 24);
VerificationReport check_ancilla_reset(const ColoringInstance& inst, const CompiledQfl& compiled,
                                       int max_bits = 24);

/// Measured width and stage depths against the closed forms, both modes.
VerificationReport check_resource_formulas(const ColoringInstance& inst);

struct SuiteInstance {
  std::string name;
  ColoringInstance instance;
  /// Run exhaustive per-pattern checks (label oracle, reset).
  bool exhaustive = true;
};

/// Fixed instance set: 4-vertex star at k = 4, 7-vertex graph at k = 4,
/// triangles at k = 2..5, paths and stars with n <= 4.
std::vector<SuiteInstance> verification_suite();

/// Every check over the suite, plus a reset-gate mutation that must be caught.
std::vector<VerificationReport> run_suite();
/// Checks for a single instance: truth table for its m, label oracle in
/// both modes, reset invariant, resource formulas.
std::vector<VerificationReport> run_instance_checks(const ColoringInstance& inst,
                                                    const std::string& name);

bool all_passed(std::span<const VerificationReport> reports);
std::string report_text(std::span<const VerificationReport> reports);
std::string report_csv(std::span<const VerificationReport> reports);

}  // namespace qfl
