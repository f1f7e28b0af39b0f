#include "qfl/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "qfl/error.hpp"

namespace qfl {

Gate Gate::x(Qubit target) { return Gate(GateKind::PauliX, {}, {target}); }

Gate Gate::h(Qubit target) { return Gate(GateKind::Hadamard, {}, {target}); }

Gate Gate::mcx(std::vector<Control> controls, std::vector<Qubit> targets) {
  if (targets.empty()) throw ValidationError("mcx needs at least one target");
  std::unordered_set<Qubit> seen;
  for (const Control& c : controls) {
    if (!seen.insert(c.qubit).second) {
      throw ValidationError("qubit " + std::to_string(c.qubit) + " used twice in mcx");
    }
  }
  for (Qubit t : targets) {
    if (!seen.insert(t).second) {
      throw ValidationError("qubit " + std::to_string(t) + " used twice in mcx");
    }
  }
  return Gate(GateKind::MCX, std::move(controls), std::move(targets));
}

std::vector<Qubit> Gate::support() const {
  std::vector<Qubit> out;
  out.reserve(controls_.size() + targets_.size());
  for (const Control& c : controls_) out.push_back(c.qubit);
  out.insert(out.end(), targets_.begin(), targets_.end());
  return out;
}

Qubit Gate::max_qubit() const {
  Qubit hi = 0;
  for (const Control& c : controls_) hi = std::max(hi, c.qubit);
  for (Qubit t : targets_) hi = std::max(hi, t);
  return hi;
}

std::string_view to_string(StageKind kind) {
  switch (kind) {
    case StageKind::Unstaged: return "unstaged";
    case StageKind::Prep: return "prep";
    case StageKind::Subtraction: return "subtraction";
    case StageKind::Or: return "or";
    case StageKind::And: return "and";
    case StageKind::Reset: return "reset";
  }
  return "unstaged";
}

void Circuit::append(Gate gate, StageTag stage) {
  if (gate.max_qubit() >= width_) {
    throw ValidationError("gate touches qubit " + std::to_string(gate.max_qubit()) +
                          " in a width-" + std::to_string(width_) + " circuit");
  }
  gates_.push_back(std::move(gate));
  stages_.push_back(stage);
}

void Circuit::append(std::span<const Gate> gates, StageTag stage) {
  for (const Gate& g : gates) append(g, stage);
}

std::vector<Gate> Circuit::stage_gates(StageTag tag) const {
  std::vector<Gate> out;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (stages_[i] == tag) out.push_back(gates_[i]);
  }
  return out;
}

Circuit Circuit::without_gate(std::size_t index) const {
  Circuit out(width_);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (i != index) out.append(gates_[i], stages_[i]);
  }
  return out;
}

std::size_t layered_depth(std::span<const Gate> gates) {
  std::vector<std::size_t> layer_of;
  std::size_t depth = 0;
  for (const Gate& g : gates) {
    const std::vector<Qubit> support = g.support();
    std::size_t layer = 0;
    for (Qubit q : support) {
      if (q < layer_of.size()) layer = std::max(layer, layer_of[q]);
    }
    ++layer;
    for (Qubit q : support) {
      if (q >= layer_of.size()) layer_of.resize(q + 1, 0);
      layer_of[q] = layer;
    }
    depth = std::max(depth, layer);
  }
  return depth;
}

DepthReport depth_report(const Circuit& c) {
  std::map<StageTag, std::vector<Gate>> grouped;
  DepthReport report;
  for (std::size_t i = 0; i < c.size(); ++i) {
    grouped[c.stages()[i]].push_back(c.gates()[i]);
    ++report.gate_counts[c.stages()[i].kind];
  }
  for (const auto& [tag, gates] : grouped) {
    const std::size_t d = layered_depth(gates);
    report.per_stage[tag] = d;
    report.stage_sum += d;
  }
  report.asap_depth = layered_depth(c.gates());
  return report;
}

Circuit expand_negative_controls(const Circuit& c) {
  Circuit out(c.width());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    const StageTag tag = c.stages()[i];
    if (g.kind() != GateKind::MCX) {
      out.append(g, tag);
      continue;
    }
    std::vector<Qubit> flipped;
    std::vector<Control> controls;
    for (const Control& ctl : g.controls()) {
      if (ctl.polarity == Polarity::Negative) flipped.push_back(ctl.qubit);
      controls.push_back(pos(ctl.qubit));
    }
    for (Qubit q : flipped) out.append(Gate::x(q), tag);
    out.append(Gate::mcx(std::move(controls), g.targets()), tag);
    for (Qubit q : flipped) out.append(Gate::x(q), tag);
  }
  return out;
}

std::string serialize(const Circuit& c) {
  std::ostringstream out;
  out << "width " << c.width() << '\n';
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    switch (g.kind()) {
      case GateKind::PauliX: out << "x " << g.targets()[0]; break;
      case GateKind::Hadamard: out << "h " << g.targets()[0]; break;
      case GateKind::MCX:
        out << "mcx";
        for (const Control& ctl : g.controls()) {
          out << " c" << (ctl.polarity == Polarity::Positive ? '+' : '-') << ctl.qubit;
        }
        for (Qubit t : g.targets()) out << " t" << t;
        break;
    }
    const StageTag tag = c.stages()[i];
    if (tag.kind != StageKind::Unstaged) {
      out << " @" << to_string(tag.kind);
      if (tag.edge != 0) out << ':' << tag.edge;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

template <typename Int>
bool parse_int(std::string_view s, Int& value) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

StageTag parse_stage(std::string_view tok, std::size_t lineno) {
  std::string_view name = tok;
  int edge = 0;
  if (auto colon = tok.find(':'); colon != std::string_view::npos) {
    name = tok.substr(0, colon);
    if (!parse_int(tok.substr(colon + 1), edge) || edge < 1) {
      throw ParseError(lineno, "bad edge index in '@" + std::string(tok) + "'");
    }
  }
  for (StageKind k : {StageKind::Prep, StageKind::Subtraction, StageKind::Or, StageKind::And,
                      StageKind::Reset}) {
    if (name == to_string(k)) return {k, edge};
  }
  throw ParseError(lineno, "unknown stage '" + std::string(name) + "'");
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

Circuit deserialize(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_width = false;
  Circuit c;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string_view> tok = split_spaces(line);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "width") {
      std::size_t w = 0;
      if (have_width || tok.size() != 2 || !parse_int(tok[1], w)) {
        throw ParseError(lineno, "expected a single 'width <q>' header");
      }
      c = Circuit(w);
      have_width = true;
      continue;
    }
    if (!have_width) throw ParseError(lineno, "gate before 'width' header");

    StageTag tag;
    if (tok.back().front() == '@') {
      tag = parse_stage(tok.back().substr(1), lineno);
      tok.pop_back();
    }
    try {
      if (tok[0] == "x" || tok[0] == "h") {
        Qubit t = 0;
        if (tok.size() != 2 || !parse_int(tok[1], t)) {
          throw ParseError(lineno, "expected '" + std::string(tok[0]) + " <qubit>'");
        }
        c.append(tok[0] == "x" ? Gate::x(t) : Gate::h(t), tag);
      } else if (tok[0] == "mcx") {
        std::vector<Control> controls;
        std::vector<Qubit> targets;
        for (std::size_t i = 1; i < tok.size(); ++i) {
          std::string_view t = tok[i];
          Qubit q = 0;
          if (t.size() > 2 && t[0] == 'c' && (t[1] == '+' || t[1] == '-') &&
              parse_int(t.substr(2), q)) {
            if (!targets.empty()) throw ParseError(lineno, "control after target");
            controls.push_back({q, t[1] == '+' ? Polarity::Positive : Polarity::Negative});
          } else if (t.size() > 1 && t[0] == 't' && parse_int(t.substr(1), q)) {
            targets.push_back(q);
          } else {
            throw ParseError(lineno, "bad mcx operand '" + std::string(t) + "'");
          }
        }
        c.append(Gate::mcx(std::move(controls), std::move(targets)), tag);
      } else {
        throw ParseError(lineno, "unknown gate '" + std::string(tok[0]) + "'");
      }
    } catch (const ValidationError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!have_width) throw ParseError(lineno, "missing 'width' header");
  return c;
}

Circuit deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return deserialize(in);
}

}  // namespace qfl
