#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string_view>
#include <utility>
#include <vector>

namespace qfl {

using Vertex = std::uint32_t;
using Color = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Smallest m with 2^m >= k. Throws InvalidInstance for k < 2.
int qubits_per_vertex(int k);

/// A k-coloring problem on an undirected simple graph.
///
/// Edges are stored as (min, max) pairs in order of first appearance with
/// duplicates removed. Vertices are 0-based.
class ColoringInstance {
 public:
  /// Validates and normalizes. Throws InvalidInstance on n < 1, k < 2,
  /// self-loops or out-of-range endpoints.
  ColoringInstance(std::size_t n, int k, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  int num_colors() const noexcept { return k_; }
  int qubits_per_vertex() const noexcept { return m_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// m * n, the number of data qubits.
  std::size_t data_bits() const noexcept { return n_ * static_cast<std::size_t>(m_); }

  /// Number of duplicate edges dropped during normalization.
  std::size_t duplicates_removed() const noexcept { return duplicates_; }

 private:
  std::size_t n_;
  int k_;
  int m_;
  std::vector<Edge> edges_;
  std::size_t duplicates_ = 0;
};

/// One color per vertex, each a full m-bit value.
struct Assignment {
  std::vector<Color> colors;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Data-register bit pattern: bit i of vertex v's color sits at v*m + i.
std::uint64_t encode_assignment(const ColoringInstance& inst, const Assignment& a);
Assignment decode_assignment(const ColoringInstance& inst, std::uint64_t pattern);

struct ParsedInstance {
  ColoringInstance instance;
  std::size_t declared_edges = 0;
  /// Set when the `p` line's edge count differs from the deduplicated count.
  bool edge_count_mismatch = false;
};

/// Reads DIMACS edge format (`c` comments, `p edge n g`, `e u v` 1-based).
/// Throws ParseError naming the offending line.
ParsedInstance parse_instance(std::istream& in, int k);
ParsedInstance parse_instance(std::string_view text, int k);

/// True iff no edge joins two equal m-bit values.
bool classical_feasible(const ColoringInstance& inst, const Assignment& a);

struct EnumerationOptions {
  int max_bits = 24;
  /// Drop assignments using a bit pattern >= k.
  bool restrict_to_k = false;
};

struct FeasibleSet {
  std::size_t count = 0;
  std::vector<Assignment> assignments;
};

/// Brute force over all 2^(m n) data patterns, ascending.
/// Throws ResourceLimit when m n exceeds `opts.max_bits`.
FeasibleSet enumerate_feasible(const ColoringInstance& inst,
                               const EnumerationOptions& opts = {});

}  // namespace qfl
