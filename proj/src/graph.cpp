#include "qfl/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "qfl/error.hpp"

namespace qfl {

int qubits_per_vertex(int k) {
  if (k < 2) {
    throw InvalidInstance("color count must be at least 2, got " + std::to_string(k));
  }
  int m = 0;
  while ((1LL << m) < k) ++m;
  return m;
}

ColoringInstance::ColoringInstance(std::size_t n, int k, std::vector<Edge> edges)
    : n_(n), k_(k), m_(qfl::qubits_per_vertex(k)) {
  if (n_ < 1) throw InvalidInstance("instance needs at least one vertex");
  std::set<std::pair<Vertex, Vertex>> seen;
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n_ || e.v >= n_) {
      throw InvalidInstance("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") out of range for " + std::to_string(n_) + " vertices");
    }
    if (e.u == e.v) {
      throw InvalidInstance("self-loop on vertex " + std::to_string(e.u));
    }
    Edge norm{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (seen.emplace(norm.u, norm.v).second) {
      edges_.push_back(norm);
    } else {
      ++duplicates_;
    }
  }
}

std::uint64_t encode_assignment(const ColoringInstance& inst, const Assignment& a) {
  const int m = inst.qubits_per_vertex();
  if (a.colors.size() != inst.num_vertices()) {
    throw InvalidInstance("assignment has " + std::to_string(a.colors.size()) +
                          " colors for " + std::to_string(inst.num_vertices()) + " vertices");
  }
  if (inst.data_bits() > 64) throw ResourceLimit("data register wider than 64 bits");
  std::uint64_t pattern = 0;
  for (std::size_t v = 0; v < a.colors.size(); ++v) {
    if (a.colors[v] >> m) {
      throw InvalidInstance("color " + std::to_string(a.colors[v]) + " does not fit in " +
                            std::to_string(m) + " bits");
    }
    pattern |= static_cast<std::uint64_t>(a.colors[v]) << (v * m);
  }
  return pattern;
}

Assignment decode_assignment(const ColoringInstance& inst, std::uint64_t pattern) {
  const int m = inst.qubits_per_vertex();
  const std::uint64_t mask = (1ULL << m) - 1;
  Assignment a;
  a.colors.resize(inst.num_vertices());
  for (std::size_t v = 0; v < a.colors.size(); ++v) {
    a.colors[v] = static_cast<Color>((pattern >> (v * m)) & mask);
  }
  return a;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    return true;
  }
  return false;
}

}  // namespace

ParsedInstance parse_instance(std::istream& in, int k) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t declared = 0;
  std::vector<Edge> edges;

  while (next_content_line(in, line, lineno)) {
    std::istringstream tokens(line);
    std::string tag;
    tokens >> tag;
    if (tag == "p") {
      if (have_header) throw ParseError(lineno, "duplicate 'p' line");
      std::string format;
      long long nv = -1;
      long long ne = -1;
      if (!(tokens >> format >> nv >> ne) || (format != "edge" && format != "col")) {
        throw ParseError(lineno, "expected 'p edge <n> <g>'");
      }
      if (nv < 1 || ne < 0) throw ParseError(lineno, "invalid vertex or edge count");
      n = static_cast<std::size_t>(nv);
      declared = static_cast<std::size_t>(ne);
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(lineno, "edge before 'p' line");
      long long u = 0;
      long long v = 0;
      if (!(tokens >> u >> v)) throw ParseError(lineno, "expected 'e <u> <v>'");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
        throw ParseError(lineno, "vertex out of range 1.." + std::to_string(n));
      }
      if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
    } else {
      throw ParseError(lineno, "unrecognized line '" + line + "'");
    }
    std::string extra;
    if (tokens >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
  }
  if (!have_header) throw ParseError(lineno, "missing 'p edge' line");

  ColoringInstance inst(n, k, std::move(edges));
  const bool mismatch = declared != inst.num_edges();
  return ParsedInstance{std::move(inst), declared, mismatch};
}

ParsedInstance parse_instance(std::string_view text, int k) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, k);
}

bool classical_feasible(const ColoringInstance& inst, const Assignment& a) {
  for (const Edge& e : inst.edges()) {
    if (a.colors.at(e.u) == a.colors.at(e.v)) return false;
  }
  return true;
}

FeasibleSet enumerate_feasible(const ColoringInstance& inst, const EnumerationOptions& opts) {
  const std::size_t bits = inst.data_bits();
  if (bits > static_cast<std::size_t>(opts.max_bits)) {
    throw ResourceLimit("enumeration needs " + std::to_string(bits) + " bits, cap is " +
                        std::to_string(opts.max_bits));
  }
  FeasibleSet result;
  const std::uint64_t total = 1ULL << bits;
  for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
    Assignment a = decode_assignment(inst, pattern);
    if (!classical_feasible(inst, a)) continue;
    if (opts.restrict_to_k &&
        std::any_of(a.colors.begin(), a.colors.end(),
                    [&](Color c) { return static_cast<int>(c) >= inst.num_colors(); })) {
      continue;
    }
    result.assignments.push_back(std::move(a));
  }
  result.count = result.assignments.size();
  return result;
}

}  // namespace qfl
