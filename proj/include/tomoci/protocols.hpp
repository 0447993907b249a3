#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tomoci/linalg.hpp"

namespace tomoci {

inline constexpr int kMaxStateQubits = 8;
inline constexpr int kMaxProcessQubits = 5;

struct Povm {
  Index dim = 0;
  std::vector<ComplexMatrix> elements;

  // Validates PSD elements (>= -kPsdTol) and resolution of identity
  // (kPsdTol entrywise).
  static Povm make(std::vector<ComplexMatrix> elements);

  Index size() const { return static_cast<Index>(elements.size()); }
};

enum class ReadoutKind { Mub, Sic };

std::string to_string(ReadoutKind kind);
ReadoutKind readout_from_string(const std::string& s);

struct MeasurementProtocol {
  int qubits = 0;
  ReadoutKind kind = ReadoutKind::Mub;
  std::int64_t shots_per_block = 0;
  std::vector<Povm> blocks;
  // "xz" style axis words for MUB, "sic" for the single SIC block.
  std::vector<std::string> block_labels;

  Index dim() const { return Index{1} << qubits; }
  Index total_outcomes() const;
  // Outcome key as stored in counts files: bitstring (MUB) or index (SIC).
  std::string outcome_label(Index block, Index outcome) const;
};

struct InputStateSet {
  std::vector<DensityMatrix> states;
  Index size() const { return static_cast<Index>(states.size()); }
};

struct ProcessProtocol {
  InputStateSet inputs;
  MeasurementProtocol readout;

  std::int64_t shots_per_configuration() const { return readout.shots_per_block; }
  Index configurations() const {
    return inputs.size() * static_cast<Index>(readout.blocks.size());
  }
};

// Unit Bloch vectors of the single-qubit tetrahedron (even sign parity).
const std::array<std::array<double, 3>, 4>& tetrahedron_bloch_vectors();

// 3^m blocks, one per axis word in {x,y,z}^m (lexicographic, x < y < z).
// Within a block outcome bit k (qubit 0 = most significant) is 0 for the +1
// eigenstate of the chosen Pauli on qubit k.
MeasurementProtocol mub_protocol(int qubits, std::int64_t shots);

Povm sic_povm(int qubits);
// Single-block protocol with the 4^m-outcome product SIC-POVM.
MeasurementProtocol sic_protocol(int qubits, std::int64_t shots);

MeasurementProtocol make_readout(ReadoutKind kind, int qubits, std::int64_t shots);

InputStateSet tetrahedron_states();
// All 4^m products, lexicographic in the per-qubit tetrahedron index.
InputStateSet product_input_states(int qubits);

ProcessProtocol process_protocol(int qubits, ReadoutKind readout, std::int64_t shots);

}  // namespace tomoci
