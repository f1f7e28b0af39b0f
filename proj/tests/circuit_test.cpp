#include "qfl/circuit.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qfl/error.hpp"

namespace qfl {
namespace {

TEST(Circuit, AppendGate) {
  Circuit c(2);
  c.append(Gate::x(0));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.stages()[0].kind, StageKind::Unstaged);
}

TEST(Circuit, RejectsOverlapAndRange) {
  EXPECT_THROW(Gate::mcx({pos(0), pos(1)}, {1}), ValidationError);
  EXPECT_THROW(Gate::mcx({pos(0), neg(0)}, {2}), ValidationError);
  EXPECT_THROW(Gate::mcx({pos(0)}, {}), ValidationError);
  EXPECT_THROW(Gate::mcx({}, {3, 3}), ValidationError);
  Circuit c(4);
  EXPECT_THROW(c.append(Gate::mcx({pos(0)}, {5})), ValidationError);
  EXPECT_THROW(c.append(Gate::h(4)), ValidationError);
  EXPECT_TRUE(c.empty());
}

TEST(LayeredDepth, Basics) {
  EXPECT_EQ(layered_depth({}), 0u);
  const std::vector<Gate> disjoint{Gate::x(0), Gate::x(1)};
  EXPECT_EQ(layered_depth(disjoint), 1u);
  const std::vector<Gate> shared_target{Gate::cx(0, 2), Gate::cx(1, 2)};
  EXPECT_EQ(layered_depth(shared_target), 2u);
  // Control-only sharing still serializes.
  const std::vector<Gate> shared_control{Gate::cx(0, 1), Gate::cx(0, 2)};
  EXPECT_EQ(layered_depth(shared_control), 2u);
  // A later gate may slot in below an unrelated deep chain.
  const std::vector<Gate> slot{Gate::x(0), Gate::x(0), Gate::x(0), Gate::x(1)};
  EXPECT_EQ(layered_depth(slot), 3u);
}

std::vector<Gate> random_gates(std::mt19937& rng, std::size_t width, std::size_t count) {
  std::vector<Gate> gates;
  std::vector<Qubit> qubits(width);
  std::iota(qubits.begin(), qubits.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    switch (rng() % 3) {
      case 0: gates.push_back(Gate::x(rng() % width)); break;
      case 1: gates.push_back(Gate::h(rng() % width)); break;
      default: {
        std::shuffle(qubits.begin(), qubits.end(), rng);
        const std::size_t nc = rng() % width;
        const std::size_t nt = 1 + rng() % (width - nc);
        std::vector<Control> controls;
        for (std::size_t k = 0; k < nc; ++k) {
          controls.push_back({qubits[k], rng() % 2 ? Polarity::Positive : Polarity::Negative});
        }
        std::vector<Qubit> targets(qubits.begin() + nc, qubits.begin() + nc + nt);
        gates.push_back(Gate::mcx(std::move(controls), std::move(targets)));
      }
    }
  }
  return gates;
}

Gate relabel(const Gate& g, const std::vector<Qubit>& perm) {
  switch (g.kind()) {
    case GateKind::PauliX: return Gate::x(perm[g.targets()[0]]);
    case GateKind::Hadamard: return Gate::h(perm[g.targets()[0]]);
    case GateKind::MCX: break;
  }
  std::vector<Control> controls;
  for (const Control& c : g.controls()) controls.push_back({perm[c.qubit], c.polarity});
  std::vector<Qubit> targets;
  for (Qubit t : g.targets()) targets.push_back(perm[t]);
  return Gate::mcx(std::move(controls), std::move(targets));
}

TEST(LayeredDepth, Properties) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t width = 2 + rng() % 6;
    const auto gates = random_gates(rng, width, rng() % 30);
    const std::size_t d = layered_depth(gates);
    EXPECT_LE(d, gates.size());

    std::vector<Qubit> perm(width);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Gate> moved;
    for (const Gate& g : gates) moved.push_back(relabel(g, perm));
    EXPECT_EQ(layered_depth(moved), d);
  }
  // All gates on a common qubit: depth equals count.
  std::vector<Gate> chain;
  for (Qubit q = 1; q < 8; ++q) chain.push_back(Gate::mcx({neg(0)}, {q}));
  EXPECT_EQ(layered_depth(chain), chain.size());
}

TEST(Serialize, LineFormat) {
  Circuit c(8);
  c.append(Gate::x(3));
  c.append(Gate::mcx({pos(4), neg(5)}, {7}));
  c.append(Gate::h(0), {StageKind::Prep, 0});
  c.append(Gate::cx(1, 2), {StageKind::Subtraction, 3});
  EXPECT_EQ(serialize(c),
            "width 8\n"
            "x 3\n"
            "mcx c+4 c-5 t7\n"
            "h 0 @prep\n"
            "mcx c+1 t2 @subtraction:3\n");
}

TEST(Serialize, RoundTripProperty) {
  std::mt19937 rng(99);
  const StageKind kinds[] = {StageKind::Unstaged, StageKind::Prep, StageKind::Subtraction,
                             StageKind::Or, StageKind::And, StageKind::Reset};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t width = 2 + rng() % 10;
    Circuit c(width);
    for (const Gate& g : random_gates(rng, width, rng() % 40)) {
      const StageKind k = kinds[rng() % 6];
      c.append(g, {k, k == StageKind::Unstaged ? 0 : static_cast<int>(rng() % 4)});
    }
    const std::string text = serialize(c);
    const Circuit back = deserialize(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Deserialize, CommentsAndWhitespace) {
  const Circuit c = deserialize("# demo\n\nwidth 3\n# gate\nmcx  c-0 t1 t2 @reset:2\r\n");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates()[0], Gate::mcx({neg(0)}, {1, 2}));
  EXPECT_EQ(c.stages()[0], (StageTag{StageKind::Reset, 2}));
}

TEST(Deserialize, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      deserialize(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("x 0\n"), 1u);
  EXPECT_EQ(line_of("width 2\nx 2\n"), 2u);
  EXPECT_EQ(line_of("width 2\nx\n"), 2u);
  EXPECT_EQ(line_of("width 2\nmcx c+0 c+0 t1\n"), 2u);
  EXPECT_EQ(line_of("width 2\nmcx t1 c+0\n"), 2u);
  EXPECT_EQ(line_of("width 2\ncz 0 1\n"), 2u);
  EXPECT_EQ(line_of("width 2\nx 0 @bogus\n"), 2u);
  EXPECT_EQ(line_of("width 2\nx 0 @or:0\n"), 2u);
  EXPECT_EQ(line_of("width 2\nwidth 3\n"), 2u);
  EXPECT_EQ(line_of("# nothing\n"), 1u);
}

TEST(DepthReport, GroupsByStage) {
  Circuit c(3);
  c.append(Gate::x(0), {StageKind::Or, 1});
  c.append(Gate::x(1), {StageKind::Or, 1});
  c.append(Gate::cx(0, 2), {StageKind::And, 2});
  const DepthReport r = depth_report(c);
  EXPECT_EQ(r.per_stage.at({StageKind::Or, 1}), 1u);
  EXPECT_EQ(r.per_stage.at({StageKind::And, 2}), 1u);
  EXPECT_EQ(r.stage_sum, 2u);
  EXPECT_EQ(r.asap_depth, 2u);
  EXPECT_EQ(r.gate_counts.at(StageKind::Or), 2u);
}

TEST(ExpandNegativeControls, ConjugatesWithX) {
  Circuit c(3);
  c.append(Gate::mcx({neg(0), pos(1)}, {2}), {StageKind::Reset, 1});
  const Circuit e = expand_negative_controls(c);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e.gates()[0], Gate::x(0));
  EXPECT_EQ(e.gates()[1], Gate::mcx({pos(0), pos(1)}, {2}));
  EXPECT_EQ(e.gates()[2], Gate::x(0));
  for (const StageTag& t : e.stages()) EXPECT_EQ(t, (StageTag{StageKind::Reset, 1}));
}

}  // namespace
}  // namespace qfl
