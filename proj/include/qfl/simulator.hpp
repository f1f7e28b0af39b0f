#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qfl/circuit.hpp"

namespace qfl {

inline constexpr std::size_t kDefaultSimCap = 28;
inline constexpr double kNonzeroThreshold = 1e-9;

/// Dense state over `width` qubits; bit i of a basis index is qubit i.
class Statevector {
 public:
  using Amplitude = std::complex<double>;

  /// |basis> over `width` qubits. Prefer init_state, which enforces the cap.
  Statevector(std::size_t width, std::uint64_t basis);

  std::size_t width() const noexcept { return width_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t index) const { return amps_[index]; }
  double norm() const;

  void apply(const Gate& gate);

  friend bool operator==(const Statevector&, const Statevector&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<Amplitude> amps_;
};

/// |basis>. Throws ResourceLimit when width exceeds cap.
Statevector init_state(std::size_t width, std::uint64_t basis = 0,
                       std::size_t cap = kDefaultSimCap);

void apply_gate(Statevector& s, const Gate& gate);

Statevector run(const Circuit& c, std::uint64_t initial = 0, std::size_t cap = kDefaultSimCap);

struct BasisAmplitude {
  std::uint64_t index;
  Statevector::Amplitude amplitude;
};

/// Basis states with |amp| above threshold, ascending by index.
std::vector<BasisAmplitude> nonzero_states(const Statevector& s,
                                           double threshold = kNonzeroThreshold);

/// Classical bit register for X/MCX-only circuits, which map basis states to
/// basis states. No width cap.
class BasisState {
 public:
  explicit BasisState(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}
  BasisState(std::size_t width, std::uint64_t low_bits);

  std::size_t width() const noexcept { return width_; }
  bool get(Qubit q) const { return (words_[q / 64] >> (q % 64)) & 1ULL; }
  void set(Qubit q, bool value);
  void flip(Qubit q) { words_[q / 64] ^= 1ULL << (q % 64); }

  /// Bits of the listed qubits packed LSB first.
  std::uint64_t extract(std::span<const Qubit> qubits) const;
  /// Qubit 0 rightmost.
  std::string to_string() const;

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::size_t width_;
  std::vector<std::uint64_t> words_;
};

/// Throws ValidationError on Hadamard, which has no basis-state image.
void apply_gate(BasisState& s, const Gate& gate);
BasisState run_basis(const Circuit& c, BasisState initial);

/// 64-bit Mersenne Twister seeded through SplitMix64, so nearby seeds give
/// unrelated streams. `split(i)` derives an independent child stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng split(std::uint64_t stream) const;
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  std::uint64_t next() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Basis index -> hit count for `shots` i.i.d. draws from |amp|^2, using
/// inverse CDF over ascending index.
std::map<std::uint64_t, std::uint64_t> sample_counts(const Statevector& s, std::uint64_t shots,
                                                     std::uint64_t seed);

struct MeasurementRecord {
  std::string bitstring;
  std::uint64_t count = 0;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// Bits of `index` for the listed qubits, the first listed qubit rightmost.
std::string render_bits(std::uint64_t index, std::span<const Qubit> qubits);
std::string render_bits(std::uint64_t index, std::size_t width);

/// Full-width records sorted by bitstring.
std::vector<MeasurementRecord> sample(const Statevector& s, std::uint64_t shots,
                                      std::uint64_t seed);

/// Records restricted to `qubits` (merged), sorted by bitstring.
std::vector<MeasurementRecord> project_counts(const std::map<std::uint64_t, std::uint64_t>& counts,
                                              std::span<const Qubit> qubits);

/// `bitstring,count` header plus one line per record.
std::string records_to_csv(std::span<const MeasurementRecord> records);

}  // namespace qfl
