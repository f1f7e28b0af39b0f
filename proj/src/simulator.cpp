#include "qfl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfl/error.hpp"

namespace qfl {

Statevector::Statevector(std::size_t width, std::uint64_t basis)
    : width_(width), amps_(std::size_t{1} << width, Amplitude{0.0, 0.0}) {
  if (basis >= amps_.size()) {
    throw ValidationError("basis index " + std::to_string(basis) + " out of range for " +
                          std::to_string(width) + " qubits");
  }
  amps_[basis] = 1.0;
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const Amplitude& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void Statevector::apply(const Gate& gate) {
  if (gate.max_qubit() >= width_) {
    throw ValidationError("gate touches qubit " + std::to_string(gate.max_qubit()) +
                          " on a " + std::to_string(width_) + "-qubit state");
  }
  const std::uint64_t dim = amps_.size();
  switch (gate.kind()) {
    case GateKind::PauliX: {
      const std::uint64_t bit = 1ULL << gate.targets()[0];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
      }
      break;
    }
    case GateKind::Hadamard: {
      const std::uint64_t bit = 1ULL << gate.targets()[0];
      const double r = 1.0 / std::sqrt(2.0);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Amplitude a = amps_[i];
        const Amplitude b = amps_[i | bit];
        amps_[i] = (a + b) * r;
        amps_[i | bit] = (a - b) * r;
      }
      break;
    }
    case GateKind::MCX: {
      std::uint64_t cmask = 0;
      std::uint64_t cvalue = 0;
      for (const Control& c : gate.controls()) {
        cmask |= 1ULL << c.qubit;
        if (c.polarity == Polarity::Positive) cvalue |= 1ULL << c.qubit;
      }
      std::uint64_t tmask = 0;
      Qubit top = 0;
      for (Qubit t : gate.targets()) {
        tmask |= 1ULL << t;
        top = std::max(top, t);
      }
      const std::uint64_t top_bit = 1ULL << top;
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & top_bit) || (i & cmask) != cvalue) continue;
        std::swap(amps_[i], amps_[i ^ tmask]);
      }
      break;
    }
  }
}

Statevector init_state(std::size_t width, std::uint64_t basis, std::size_t cap) {
  if (width > cap) {
    throw ResourceLimit("statevector of " + std::to_string(width) +
                        " qubits exceeds simulation cap " + std::to_string(cap));
  }
  if (width > 62) throw ResourceLimit("statevector wider than 62 qubits");
  return Statevector(width, basis);
}

void apply_gate(Statevector& s, const Gate& gate) { s.apply(gate); }

Statevector run(const Circuit& c, std::uint64_t initial, std::size_t cap) {
  Statevector s = init_state(c.width(), initial, cap);
  for (const Gate& g : c.gates()) s.apply(g);
  return s;
}

std::vector<BasisAmplitude> nonzero_states(const Statevector& s, double threshold) {
  std::vector<BasisAmplitude> out;
  const auto amps = s.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) > threshold) out.push_back({i, amps[i]});
  }
  return out;
}

BasisState::BasisState(std::size_t width, std::uint64_t low_bits) : BasisState(width) {
  if (width < 64 && (low_bits >> width) != 0) {
    throw ValidationError("initial pattern wider than " + std::to_string(width) + " qubits");
  }
  if (!words_.empty()) words_[0] = low_bits;
}

void BasisState::set(Qubit q, bool value) {
  if (get(q) != value) flip(q);
}

std::uint64_t BasisState::extract(std::span<const Qubit> qubits) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (get(qubits[i])) out |= 1ULL << i;
  }
  return out;
}

std::string BasisState::to_string() const {
  std::string s(width_, '0');
  for (std::size_t q = 0; q < width_; ++q) {
    if (get(static_cast<Qubit>(q))) s[width_ - 1 - q] = '1';
  }
  return s;
}

void apply_gate(BasisState& s, const Gate& gate) {
  if (gate.max_qubit() >= s.width()) {
    throw ValidationError("gate touches qubit " + std::to_string(gate.max_qubit()) +
                          " on a " + std::to_string(s.width()) + "-qubit register");
  }
  switch (gate.kind()) {
    case GateKind::PauliX:
      s.flip(gate.targets()[0]);
      return;
    case GateKind::Hadamard:
      throw ValidationError("Hadamard has no basis-state image");
    case GateKind::MCX:
      for (const Control& c : gate.controls()) {
        if (s.get(c.qubit) != (c.polarity == Polarity::Positive)) return;
      }
      for (Qubit t : gate.targets()) s.flip(t);
      return;
  }
}

BasisState run_basis(const Circuit& c, BasisState initial) {
  if (initial.width() != c.width()) {
    throw ValidationError("register width does not match circuit width");
  }
  for (const Gate& g : c.gates()) apply_gate(initial, g);
  return initial;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed) {
  std::uint64_t state = seed;
  std::mt19937_64 engine(splitmix64(state));
  return engine;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seeded_engine(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  std::uint64_t state = seed_ ^ (stream * 0xD1B54A32D192ED03ULL);
  return Rng(splitmix64(state));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::map<std::uint64_t, std::uint64_t> sample_counts(const Statevector& s, std::uint64_t shots,
                                                     std::uint64_t seed) {
  if (shots < 1) throw ValidationError("shots must be at least 1");
  const auto amps = s.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p > 0.0) last_nonzero = i;
    acc += p;
    cdf[i] = acc;
  }
  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t index = it == cdf.end() ? last_nonzero
                                          : static_cast<std::uint64_t>(it - cdf.begin());
    ++counts[index];
  }
  return counts;
}

std::string render_bits(std::uint64_t index, std::span<const Qubit> qubits) {
  std::string s(qubits.size(), '0');
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if ((index >> qubits[k]) & 1ULL) s[qubits.size() - 1 - k] = '1';
  }
  return s;
}

std::string render_bits(std::uint64_t index, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t q = 0; q < width; ++q) {
    if ((index >> q) & 1ULL) s[width - 1 - q] = '1';
  }
  return s;
}

std::vector<MeasurementRecord> project_counts(const std::map<std::uint64_t, std::uint64_t>& counts,
                                              std::span<const Qubit> qubits) {
  std::map<std::string, std::uint64_t> merged;
  for (const auto& [index, count] : counts) merged[render_bits(index, qubits)] += count;
  std::vector<MeasurementRecord> out;
  out.reserve(merged.size());
  for (auto& [bits, count] : merged) out.push_back({bits, count});
  return out;
}

std::vector<MeasurementRecord> sample(const Statevector& s, std::uint64_t shots,
                                      std::uint64_t seed) {
  std::vector<MeasurementRecord> out;
  for (const auto& [index, count] : sample_counts(s, shots, seed)) {
    out.push_back({render_bits(index, s.width()), count});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.bitstring < y.bitstring; });
  return out;
}

std::string records_to_csv(std::span<const MeasurementRecord> records) {
  std::ostringstream out;
  out << "bitstring,count\n";
  for (const auto& r : records) out << r.bitstring << ',' << r.count << '\n';
  return out.str();
}

}  // namespace qfl
