#include "qfl/compiler.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "qfl/error.hpp"

namespace qfl {

QubitLayout::QubitLayout(int m, std::size_t n, std::size_t g, bool use_reset)
    : m_(m), n_(n), g_(g), use_reset_(use_reset) {
  if (m < 1) throw InvalidInstance("layout needs m >= 1");
  if (n < 1) throw InvalidInstance("layout needs at least one vertex");
}

std::size_t QubitLayout::num_ancilla_blocks() const noexcept {
  if (g_ == 0) return 0;
  return use_reset_ ? 1 : g_;
}

Qubit QubitLayout::chain_base() const noexcept {
  return static_cast<Qubit>(n_ * m_ + num_ancilla_blocks() * (m_ + 1));
}

std::size_t QubitLayout::width() const noexcept {
  return g_ == 0 ? n_ * m_ : chain_base() + 2 * g_ - 1;
}

std::vector<Qubit> QubitLayout::data(std::size_t v) const {
  if (v >= n_) throw ValidationError("vertex " + std::to_string(v) + " out of range");
  std::vector<Qubit> out(m_);
  for (int i = 0; i < m_; ++i) out[i] = static_cast<Qubit>(v * m_ + i);
  return out;
}

std::vector<Qubit> QubitLayout::all_data() const {
  std::vector<Qubit> out(n_ * m_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Qubit>(i);
  return out;
}

std::vector<Qubit> QubitLayout::ancilla(std::size_t j) const {
  if (j < 1 || j > g_) throw ValidationError("edge " + std::to_string(j) + " out of range");
  const std::size_t block = use_reset_ ? 0 : j - 1;
  const std::size_t base = n_ * m_ + block * (m_ + 1);
  std::vector<Qubit> out(m_ + 1);
  for (int i = 0; i <= m_; ++i) out[i] = static_cast<Qubit>(base + i);
  return out;
}

Qubit QubitLayout::label(std::size_t j) const {
  if (j < 1 || j > g_) throw ValidationError("edge " + std::to_string(j) + " out of range");
  return j == 1 ? chain_base() : static_cast<Qubit>(chain_base() + 2 * j - 3);
}

Qubit QubitLayout::and_out(std::size_t j) const {
  if (j < 2 || j > g_) throw ValidationError("no AND output for edge " + std::to_string(j));
  return static_cast<Qubit>(chain_base() + 2 * j - 2);
}

std::optional<Qubit> QubitLayout::final_label() const {
  if (g_ == 0) return std::nullopt;
  return g_ == 1 ? label(1) : and_out(g_);
}

std::vector<QubitLayout::Role> QubitLayout::roles() const {
  std::vector<Role> out;
  for (std::size_t v = 0; v < n_; ++v) out.push_back({"data:" + std::to_string(v), data(v)});
  if (use_reset_ && g_ > 0) {
    out.push_back({"ancilla", ancilla(1)});
  } else {
    for (std::size_t j = 1; j <= g_; ++j) {
      out.push_back({"ancilla:" + std::to_string(j), ancilla(j)});
    }
  }
  for (std::size_t j = 1; j <= g_; ++j) {
    out.push_back({"label:" + std::to_string(j), {label(j)}});
    if (j >= 2) out.push_back({"and:" + std::to_string(j), {and_out(j)}});
  }
  if (auto f = final_label()) out.push_back({"final", {*f}});
  return out;
}

std::string serialize_layout(const QubitLayout& layout) {
  std::ostringstream out;
  for (const auto& role : layout.roles()) {
    out << "role " << role.name;
    for (Qubit q : role.qubits) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

std::vector<QubitLayout::Role> parse_layout(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<QubitLayout::Role> roles;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream tok(line);
    std::string tag;
    if (!(tok >> tag) || tag.front() == '#') continue;
    QubitLayout::Role role;
    if (tag != "role" || !(tok >> role.name)) throw ParseError(lineno, "expected 'role <name> ...'");
    long long q = 0;
    while (tok >> q) {
      if (q < 0) throw ParseError(lineno, "negative qubit index");
      role.qubits.push_back(static_cast<Qubit>(q));
    }
    if (!tok.eof()) throw ParseError(lineno, "bad qubit index");
    roles.push_back(std::move(role));
  }
  return roles;
}

namespace {

void require_distinct(std::initializer_list<std::span<const Qubit>> groups, const char* what) {
  std::unordered_set<Qubit> seen;
  for (auto group : groups) {
    for (Qubit q : group) {
      if (!seen.insert(q).second) {
        throw ValidationError(std::string(what) + ": qubit " + std::to_string(q) +
                              " appears in more than one role");
      }
    }
  }
}

}  // namespace

std::vector<Gate> build_subt_block(Qubit a, Qubit b, Qubit borrow_in, Qubit borrow_out) {
  const Qubit wires[] = {a, b, borrow_in, borrow_out};
  require_distinct({wires}, "subtraction block");
  // borrow = (a == b) & d_in  xor  !a & b ; the two terms are disjoint.
  return {
      Gate::mcx({pos(a), pos(b), pos(borrow_in)}, {borrow_out}),
      Gate::mcx({neg(a), neg(b), pos(borrow_in)}, {borrow_out}),
      Gate::cx(a, borrow_in),
      Gate::cx(b, borrow_in),
      Gate::mcx({neg(a), pos(b)}, {borrow_out}),
  };
}

std::vector<Gate> build_subtraction(std::span<const Qubit> a, std::span<const Qubit> b,
                                    std::span<const Qubit> out) {
  if (a.empty() || a.size() != b.size() || out.size() != a.size() + 1) {
    throw ValidationError("subtraction needs m-qubit operands and an (m+1)-qubit result");
  }
  require_distinct({a, b, out}, "subtraction");
  std::vector<Gate> gates;
  gates.reserve(5 * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto block = build_subt_block(a[i], b[i], out[i], out[i + 1]);
    gates.insert(gates.end(), block.begin(), block.end());
  }
  return gates;
}

std::vector<Gate> build_or(std::span<const Qubit> inputs, Qubit output) {
  const std::size_t t = inputs.size();
  if (t < 2) throw UnsupportedSize("OR circuit needs at least 2 inputs");
  if (t > 20) throw UnsupportedSize("OR circuit limited to 20 inputs");
  const Qubit out_arr[] = {output};
  require_distinct({inputs, out_arr}, "OR");

  const std::size_t head = t - 1;
  std::vector<Gate> gates;
  // Parity of ANDs over all nonempty subsets of the head inputs equals their OR.
  for (std::size_t u = 1; u <= head; ++u) {
    std::vector<bool> pick(head, false);
    std::fill(pick.begin(), pick.begin() + u, true);
    do {
      std::vector<Control> controls;
      for (std::size_t i = 0; i < head; ++i) {
        if (pick[i]) controls.push_back(pos(inputs[i]));
      }
      gates.push_back(Gate::mcx(std::move(controls), {output}));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  for (std::size_t i = 0; i < head; ++i) gates.push_back(Gate::x(inputs[i]));
  // Head inputs are now complemented: fires only for head == 0, last == 1.
  std::vector<Control> all;
  for (Qubit q : inputs) all.push_back(pos(q));
  gates.push_back(Gate::mcx(std::move(all), {output}));
  return gates;
}

std::uint64_t post_or_residue(std::uint64_t a, std::uint64_t b, int m) {
  const std::uint64_t modulus = 1ULL << (m + 1);
  const std::uint64_t diff = (a + modulus - b) % modulus;
  return diff ^ ((1ULL << m) - 1);
}

std::vector<Gate> build_reset(std::span<const Qubit> a, std::span<const Qubit> b,
                              std::span<const Qubit> ancilla) {
  const std::size_t m = a.size();
  if (m == 0 || b.size() != m || ancilla.size() != m + 1) {
    throw ValidationError("reset needs m-qubit data registers and an (m+1)-qubit ancilla");
  }
  if (m > 10) throw UnsupportedSize("reset circuit limited to m <= 10");
  require_distinct({a, b, ancilla}, "reset");

  const std::uint64_t values = 1ULL << m;
  std::vector<Gate> gates;
  gates.reserve(values * values - 1);
  for (std::uint64_t va = 0; va < values; ++va) {
    for (std::uint64_t vb = 0; vb < values; ++vb) {
      const std::uint64_t s = post_or_residue(va, vb, static_cast<int>(m));
      if (s == 0) continue;
      std::vector<Control> controls;
      controls.reserve(2 * m);
      for (std::size_t i = 0; i < m; ++i) {
        controls.push_back({a[i], (va >> i) & 1 ? Polarity::Positive : Polarity::Negative});
      }
      for (std::size_t i = 0; i < m; ++i) {
        controls.push_back({b[i], (vb >> i) & 1 ? Polarity::Positive : Polarity::Negative});
      }
      std::vector<Qubit> targets;
      for (std::size_t i = 0; i <= m; ++i) {
        if ((s >> i) & 1) targets.push_back(ancilla[i]);
      }
      gates.push_back(Gate::mcx(std::move(controls), std::move(targets)));
    }
  }
  return gates;
}

std::vector<Gate> build_and(Qubit in1, Qubit in2, Qubit out) {
  return {Gate::mcx({pos(in1), pos(in2)}, {out})};
}

namespace {

void check_edge(const ColoringInstance& inst, const QubitLayout& layout, std::size_t j) {
  if (layout.m() != inst.qubits_per_vertex() || layout.num_vertices() != inst.num_vertices() ||
      layout.num_edges() != inst.num_edges()) {
    throw CompileError("layout does not match instance");
  }
  if (j < 1 || j > inst.num_edges()) {
    throw CompileError("edge index " + std::to_string(j) + " out of range");
  }
}

std::vector<Gate> so_subtraction(const ColoringInstance& inst, const QubitLayout& layout,
                                 std::size_t j) {
  const Edge e = inst.edges()[j - 1];
  return build_subtraction(layout.data(e.u), layout.data(e.v), layout.ancilla(j));
}

std::vector<Gate> so_or(const QubitLayout& layout, std::size_t j) {
  return build_or(layout.ancilla(j), layout.label(j));
}

std::vector<Gate> sor_reset(const ColoringInstance& inst, const QubitLayout& layout,
                            std::size_t j) {
  const Edge e = inst.edges()[j - 1];
  return build_reset(layout.data(e.u), layout.data(e.v), layout.ancilla(j));
}

}  // namespace

std::vector<Gate> build_so_module(const ColoringInstance& inst, const QubitLayout& layout,
                                  std::size_t j) {
  check_edge(inst, layout, j);
  auto gates = so_subtraction(inst, layout, j);
  auto or_gates = so_or(layout, j);
  gates.insert(gates.end(), or_gates.begin(), or_gates.end());
  return gates;
}

std::vector<Gate> build_sor_module(const ColoringInstance& inst, const QubitLayout& layout,
                                   std::size_t j) {
  if (!layout.use_reset()) throw CompileError("SOR module needs a reset-mode layout");
  auto gates = build_so_module(inst, layout, j);
  auto reset = sor_reset(inst, layout, j);
  gates.insert(gates.end(), reset.begin(), reset.end());
  return gates;
}

CompiledQfl compile_qfl(const ColoringInstance& inst, const CompileOptions& opts) {
  QubitLayout layout(inst.qubits_per_vertex(), inst.num_vertices(), inst.num_edges(),
                     opts.use_reset);
  Circuit c(layout.width());
  if (opts.include_prep) {
    for (Qubit q : layout.all_data()) c.append(Gate::h(q), {StageKind::Prep, 0});
  }
  const int g = static_cast<int>(inst.num_edges());
  for (int j = 1; j <= g; ++j) {
    check_edge(inst, layout, j);
    c.append(so_subtraction(inst, layout, j), {StageKind::Subtraction, j});
    c.append(so_or(layout, j), {StageKind::Or, j});
    if (opts.use_reset) c.append(sor_reset(inst, layout, j), {StageKind::Reset, j});
    if (j == 2) {
      c.append(build_and(layout.label(1), layout.label(2), layout.and_out(2)),
               {StageKind::And, j});
    } else if (j > 2) {
      c.append(build_and(layout.and_out(j - 1), layout.label(j), layout.and_out(j)),
               {StageKind::And, j});
    }
  }
  const bool over = layout.width() > opts.sim_cap;
  return CompiledQfl{std::move(c), std::move(layout), over};
}

ResourceEstimate estimate_resources(const ColoringInstance& inst, bool use_reset) {
  const std::size_t m = static_cast<std::size_t>(inst.qubits_per_vertex());
  const std::size_t n = inst.num_vertices();
  const std::size_t g = inst.num_edges();
  ResourceEstimate est;
  est.subtraction_depth = 5 * m;
  est.or_depth = (1ULL << m) + 1;
  est.and_depth = 1;
  est.reset_depth = use_reset ? (1ULL << (2 * m)) - 1 : 0;
  if (g == 0) {
    est.qubits = m * n;
    est.depth = 0;
    return est;
  }
  est.qubits = use_reset ? m * n + m + 2 * g : m * n + (m + 3) * g - 1;
  est.depth = use_reset ? g * ((1ULL << (2 * m)) + (1ULL << m) + 5 * m + 1)
                        : g * (5 * m + (1ULL << m) + 2);
  return est;
}

}  // namespace qfl
