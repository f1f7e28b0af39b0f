#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qfl/graph.hpp"
#include "qfl/simulator.hpp"

namespace qfl {

enum class SearchMethod { Exact, Sampled };

/// Feasible colorings read off the labeled state.
struct SolutionSet {
  std::vector<Assignment> assignments;
  SearchMethod method = SearchMethod::Exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t retained_shots = 0;
  /// Probability mass (exact) or shot fraction (sampled) with label 1.
  double retained_fraction = 0.0;
};

/// Every data pattern carrying label 1 in the prepared state, ascending.
SolutionSet extract_feasible_exact(const ColoringInstance& inst, bool use_reset = true,
                                   std::size_t cap = kDefaultSimCap);

/// Post-selects sampled shots on label 1 and deduplicates.
SolutionSet extract_feasible_sampled(const ColoringInstance& inst, std::uint64_t shots,
                                     std::uint64_t seed, bool use_reset = true,
                                     std::size_t cap = kDefaultSimCap);

/// `vertex0,vertex1,...` header then one row of colors per assignment.
std::string solutions_to_csv(const ColoringInstance& inst, const SolutionSet& set);
std::string solution_summary(const SolutionSet& set);

}  // namespace qfl
