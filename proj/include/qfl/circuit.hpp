#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfl {

using Qubit = std::uint32_t;

enum class GateKind { PauliX, Hadamard, MCX };

enum class Polarity : std::uint8_t { Negative, Positive };

/// An MCX control: the gate fires when `qubit` is 1 (Positive) or 0 (Negative).
struct Control {
  Qubit qubit;
  Polarity polarity = Polarity::Positive;

  friend bool operator==(const Control&, const Control&) = default;
};

inline Control pos(Qubit q) { return {q, Polarity::Positive}; }
inline Control neg(Qubit q) { return {q, Polarity::Negative}; }

/// X, H, or multi-controlled multi-target X. Construction validates the
/// qubit sets; width is checked when the gate enters a Circuit.
class Gate {
 public:
  static Gate x(Qubit target);
  static Gate h(Qubit target);
  /// Throws ValidationError on empty targets or any repeated qubit.
  static Gate mcx(std::vector<Control> controls, std::vector<Qubit> targets);
  static Gate cx(Qubit control, Qubit target) { return mcx({pos(control)}, {target}); }

  GateKind kind() const noexcept { return kind_; }
  const std::vector<Control>& controls() const noexcept { return controls_; }
  const std::vector<Qubit>& targets() const noexcept { return targets_; }

  /// Every qubit the gate touches, controls first.
  std::vector<Qubit> support() const;
  Qubit max_qubit() const;

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  Gate(GateKind kind, std::vector<Control> controls, std::vector<Qubit> targets)
      : kind_(kind), controls_(std::move(controls)), targets_(std::move(targets)) {}

  GateKind kind_;
  std::vector<Control> controls_;
  std::vector<Qubit> targets_;
};

enum class StageKind { Unstaged, Prep, Subtraction, Or, And, Reset };

std::string_view to_string(StageKind kind);

/// Which part of the compiled circuit a gate belongs to. `edge` is the
/// 1-based edge index, 0 when the stage is not tied to an edge.
struct StageTag {
  StageKind kind = StageKind::Unstaged;
  int edge = 0;

  friend bool operator==(const StageTag&, const StageTag&) = default;
  friend auto operator<=>(const StageTag&, const StageTag&) = default;
};

class Circuit {
 public:
  explicit Circuit(std::size_t width = 0) : width_(width) {}

  /// Throws ValidationError if the gate reaches past `width()`.
  void append(Gate gate, StageTag stage = {});
  void append(std::span<const Gate> gates, StageTag stage);

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<StageTag>& stages() const noexcept { return stages_; }

  /// Gates carrying `tag`, in execution order.
  std::vector<Gate> stage_gates(StageTag tag) const;

  /// Copy without gate `index`. Used to build mutants for negative tests.
  Circuit without_gate(std::size_t index) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t width_;
  std::vector<Gate> gates_;
  std::vector<StageTag> stages_;
};

/// Greedy ASAP layer count: each gate lands one layer after the latest
/// earlier gate sharing any qubit with it.
std::size_t layered_depth(std::span<const Gate> gates);

struct DepthReport {
  /// Standalone layered depth of each stage's gates.
  std::map<StageTag, std::size_t> per_stage;
  std::map<StageKind, std::size_t> gate_counts;
  /// Sum of `per_stage`, i.e. depth when stages run strictly in series.
  std::size_t stage_sum = 0;
  std::size_t asap_depth = 0;
};

DepthReport depth_report(const Circuit& c);

/// Rewrites negative controls as X, positive-control MCX, X.
Circuit expand_negative_controls(const Circuit& c);

/// Line format: `width <q>`, then one of `h <t>`, `x <t>`,
/// `mcx c+<q> c-<q> ... t<q> ...`, each optionally followed by
/// `@<stage>` or `@<stage>:<edge>`. `#` lines are comments.
std::string serialize(const Circuit& c);
Circuit deserialize(std::istream& in);
Circuit deserialize(std::string_view text);

}  // namespace qfl
