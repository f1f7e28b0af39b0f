#include "qfl/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qfl/compiler.hpp"

namespace qfl {

namespace {

std::uint64_t data_pattern(std::uint64_t index, std::size_t data_bits) {
  return data_bits >= 64 ? index : index & ((1ULL << data_bits) - 1);
}

bool labeled(std::uint64_t index, const QubitLayout& layout) {
  const auto f = layout.final_label();
  return !f || ((index >> *f) & 1ULL);
}

}  // namespace

SolutionSet extract_feasible_exact(const ColoringInstance& inst, bool use_reset,
                                   std::size_t cap) {
  const CompiledQfl compiled = compile_qfl(inst, {use_reset, true, cap});
  const Statevector state = run(compiled.circuit, 0, cap);

  SolutionSet out;
  out.method = SearchMethod::Exact;
  std::set<std::uint64_t> patterns;
  for (const BasisAmplitude& b : nonzero_states(state)) {
    if (!labeled(b.index, compiled.layout)) continue;
    out.retained_fraction += std::norm(b.amplitude);
    patterns.insert(data_pattern(b.index, inst.data_bits()));
  }
  for (std::uint64_t p : patterns) out.assignments.push_back(decode_assignment(inst, p));
  return out;
}

SolutionSet extract_feasible_sampled(const ColoringInstance& inst, std::uint64_t shots,
                                     std::uint64_t seed, bool use_reset, std::size_t cap) {
  const CompiledQfl compiled = compile_qfl(inst, {use_reset, true, cap});
  const Statevector state = run(compiled.circuit, 0, cap);

  SolutionSet out;
  out.method = SearchMethod::Sampled;
  out.shots = shots;
  out.seed = seed;
  std::set<std::uint64_t> patterns;
  for (const auto& [index, count] : sample_counts(state, shots, seed)) {
    if (!labeled(index, compiled.layout)) continue;
    out.retained_shots += count;
    patterns.insert(data_pattern(index, inst.data_bits()));
  }
  out.retained_fraction = static_cast<double>(out.retained_shots) / static_cast<double>(shots);
  for (std::uint64_t p : patterns) out.assignments.push_back(decode_assignment(inst, p));
  return out;
}

std::string solutions_to_csv(const ColoringInstance& inst, const SolutionSet& set) {
  std::ostringstream out;
  for (std::size_t v = 0; v < inst.num_vertices(); ++v) {
    out << (v ? "," : "") << "vertex" << v;
  }
  out << '\n';
  for (const Assignment& a : set.assignments) {
    for (std::size_t v = 0; v < a.colors.size(); ++v) out << (v ? "," : "") << a.colors[v];
    out << '\n';
  }
  return out.str();
}

std::string solution_summary(const SolutionSet& set) {
  std::ostringstream out;
  out << "solutions: " << set.assignments.size();
  if (set.method == SearchMethod::Exact) {
    out << " (exact), label-1 probability " << set.retained_fraction;
  } else {
    out << " (sampled), retained " << set.retained_shots << "/" << set.shots
        << " shots, fraction " << set.retained_fraction << ", seed " << set.seed;
  }
  return out.str();
}

}  // namespace qfl
