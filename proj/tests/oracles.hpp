#pragma once

// Test-only reference models. Nothing here calls into the library's
// compiler or simulator.

#include <cstdint>
#include <utility>
#include <vector>

namespace qfl::oracle {

/// One-bit full subtractor a - b - borrow_in: (difference, borrow_out).
inline std::pair<int, int> full_subtract(int a, int b, int borrow_in) {
  const int r = a - b - borrow_in;
  return {r & 1, r < 0 ? 1 : 0};
}

/// Counts proper colorings with values in [0, colors) by recursive search.
inline std::uint64_t count_colorings(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                     int colors) {
  std::vector<int> c(n, -1);
  auto ok = [&](std::size_t upto) {
    for (auto [u, v] : edges) {
      if (static_cast<std::size_t>(u) <= upto && static_cast<std::size_t>(v) <= upto &&
          c[u] == c[v]) {
        return false;
      }
    }
    return true;
  };
  std::uint64_t total = 0;
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      ++total;
      return;
    }
    for (int col = 0; col < colors; ++col) {
      c[v] = col;
      if (ok(v)) self(self, v + 1);
    }
    c[v] = -1;
  };
  rec(rec, 0);
  return total;
}

/// (a - b) mod 2^(m+1) by plain integer arithmetic.
inline std::uint64_t twos_difference(std::uint64_t a, std::uint64_t b, int m) {
  const std::int64_t d = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
  return static_cast<std::uint64_t>(d) & ((1ULL << (m + 1)) - 1);
}

}  // namespace qfl::oracle
