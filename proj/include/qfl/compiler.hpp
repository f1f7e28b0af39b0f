#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfl/circuit.hpp"
#include "qfl/graph.hpp"

namespace qfl {

/// Role-to-qubit map of a compiled labeling circuit.
///
///   [0, m n)            data; bit i of vertex v at v*m + i
///   next (m+1)          shared ancilla block (reset mode), or
///   next g*(m+1)        one ancilla block per edge (no-reset mode)
///   next 2g-1           label chain L_1..L_{2g-1} = d_1, d_2, D_2, d_3, D_3, ...
///
/// With g = 0 there are no ancilla or label qubits.
class QubitLayout {
 public:
  QubitLayout(int m, std::size_t n, std::size_t g, bool use_reset);

  int m() const noexcept { return m_; }
  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return g_; }
  bool use_reset() const noexcept { return use_reset_; }
  std::size_t width() const noexcept;

  std::vector<Qubit> data(std::size_t v) const;
  std::vector<Qubit> all_data() const;
  /// Ancilla block used by edge j (1-based); the same block for every j in reset mode.
  std::vector<Qubit> ancilla(std::size_t j) const;
  std::size_t num_ancilla_blocks() const noexcept;
  /// Qubit holding d_j.
  Qubit label(std::size_t j) const;
  /// Qubit holding D_j = d_1 & ... & d_j, for j in [2, g].
  Qubit and_out(std::size_t j) const;
  /// D_g, d_1 when g = 1, none when g = 0.
  std::optional<Qubit> final_label() const;

  struct Role {
    std::string name;
    std::vector<Qubit> qubits;
  };
  std::vector<Role> roles() const;

 private:
  Qubit chain_base() const noexcept;

  int m_;
  std::size_t n_;
  std::size_t g_;
  bool use_reset_;
};

/// `role <name> <indices...>` lines.
std::string serialize_layout(const QubitLayout& layout);
std::vector<QubitLayout::Role> parse_layout(std::string_view text);

/// One-bit full subtractor on wires I (a), II (b), III (borrow in, becomes
/// the difference bit) and IV (fresh, becomes borrow out). Five gates.
std::vector<Gate> build_subt_block(Qubit a, Qubit b, Qubit borrow_in, Qubit borrow_out);

/// |a, b, 0> -> |a, b, (a - b) mod 2^(m+1)>, LSB first, sign in out[m].
std::vector<Gate> build_subtraction(std::span<const Qubit> a, std::span<const Qubit> b,
                                    std::span<const Qubit> out);

/// Writes OR(inputs) to `output`. Leaves inputs[0..t-2] complemented and
/// inputs[t-1] intact. Throws UnsupportedSize for t < 2.
std::vector<Gate> build_or(std::span<const Qubit> inputs, Qubit output);

/// Returns the post-OR ancilla block to |0...0> using one MCX per (a, b)
/// data pattern with a nonzero residue; 2^(2m) - 1 gates.
std::vector<Gate> build_reset(std::span<const Qubit> a, std::span<const Qubit> b,
                              std::span<const Qubit> ancilla);

/// Ancilla contents after subtraction and OR for data values (a, b):
/// ((a - b) mod 2^(m+1)) with the low m bits complemented.
std::uint64_t post_or_residue(std::uint64_t a, std::uint64_t b, int m);

std::vector<Gate> build_and(Qubit in1, Qubit in2, Qubit out);

/// Subtraction then OR for edge j (1-based) of the layout.
std::vector<Gate> build_so_module(const ColoringInstance& inst, const QubitLayout& layout,
                                  std::size_t j);
/// SO module then reset. Throws CompileError unless the layout uses reset.
std::vector<Gate> build_sor_module(const ColoringInstance& inst, const QubitLayout& layout,
                                   std::size_t j);

struct CompileOptions {
  bool use_reset = true;
  /// Hadamard on every data qubit before the labeling stages.
  bool include_prep = true;
  /// Only used to raise `exceeds_sim_cap`; compilation always succeeds.
  std::size_t sim_cap = 28;
};

struct CompiledQfl {
  Circuit circuit;
  QubitLayout layout;
  bool exceeds_sim_cap = false;
};

CompiledQfl compile_qfl(const ColoringInstance& inst, const CompileOptions& opts = {});

/// Closed-form qubit and depth counts; the prep layer is not included.
struct ResourceEstimate {
  std::size_t qubits = 0;
  std::size_t depth = 0;
  /// Per-module terms; each is multiplied by g in `depth`.
  std::size_t subtraction_depth = 0;
  std::size_t or_depth = 0;
  std::size_t and_depth = 0;
  std::size_t reset_depth = 0;
};

ResourceEstimate estimate_resources(const ColoringInstance& inst, bool use_reset);

}  // namespace qfl
