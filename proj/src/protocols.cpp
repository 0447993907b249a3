#include "tomoci/protocols.hpp"

#include <cmath>

namespace tomoci {
namespace {

ComplexMatrix single_qubit_pauli(int axis) {
  ComplexMatrix p(2, 2);
  switch (axis) {
    case 0: p << 0, 1, 1, 0; break;
    case 1: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

ComplexMatrix bloch_operator(const std::array<double, 3>& s, double weight) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  for (int a = 0; a < 3; ++a) m += s[static_cast<std::size_t>(a)] * single_qubit_pauli(a);
  return weight * m;
}

void check_qubits(int qubits, int limit, const char* what) {
  if (qubits < 1 || qubits > limit) {
    throw InvalidArgument(std::string(what) + ": qubit count must be in [1, " +
                          std::to_string(limit) + "], got " + std::to_string(qubits));
  }
}

void check_shots(std::int64_t shots) {
  if (shots < 1) throw InvalidArgument("shots per block must be positive");
}

}  // namespace

Povm Povm::make(std::vector<ComplexMatrix> elements) {
  if (elements.empty()) throw InvalidArgument("Povm: no elements");
  const Index d = elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements) {
    HermitianOperator op(e);
    if (op.dim() != d) throw InvalidArgument("Povm: elements differ in dimension");
    if (op.min_eigenvalue() < -kPsdTol) throw InvalidArgument("Povm: element is not PSD");
    sum += op.matrix();
  }
  if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kPsdTol) {
    throw InvalidArgument("Povm: elements do not sum to identity");
  }
  return {d, std::move(elements)};
}

std::string to_string(ReadoutKind kind) { return kind == ReadoutKind::Mub ? "mub" : "sic"; }

ReadoutKind readout_from_string(const std::string& s) {
  if (s == "mub") return ReadoutKind::Mub;
  if (s == "sic") return ReadoutKind::Sic;
  throw InvalidArgument("unknown readout '" + s + "' (expected mub or sic)");
}

Index MeasurementProtocol::total_outcomes() const {
  Index n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::string MeasurementProtocol::outcome_label(Index /*block*/, Index outcome) const {
  if (kind == ReadoutKind::Sic) return std::to_string(outcome);
  std::string s(static_cast<std::size_t>(qubits), '0');
  for (int k = 0; k < qubits; ++k) {
    if ((outcome >> (qubits - 1 - k)) & 1) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

const std::array<std::array<double, 3>, 4>& tetrahedron_bloch_vectors() {
  static const double a = 1.0 / std::sqrt(3.0);
  static const std::array<std::array<double, 3>, 4> v{{
      {a, a, a},
      {a, -a, -a},
      {-a, a, -a},
      {-a, -a, a},
  }};
  return v;
}

MeasurementProtocol mub_protocol(int qubits, std::int64_t shots) {
  check_qubits(qubits, kMaxStateQubits, "mub_protocol");
  check_shots(shots);
  static const char axes[3] = {'x', 'y', 'z'};

  // Per-axis projectors onto the +/- eigenstates.
  std::array<std::array<ComplexMatrix, 2>, 3> proj;
  for (int a = 0; a < 3; ++a) {
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    proj[a][0] = 0.5 * (id + single_qubit_pauli(a));
    proj[a][1] = 0.5 * (id - single_qubit_pauli(a));
  }

  MeasurementProtocol p;
  p.qubits = qubits;
  p.kind = ReadoutKind::Mub;
  p.shots_per_block = shots;
  Index words = 1;
  for (int k = 0; k < qubits; ++k) words *= 3;
  const Index outcomes = Index{1} << qubits;
  for (Index w = 0; w < words; ++w) {
    std::vector<int> word(static_cast<std::size_t>(qubits));
    std::string label(static_cast<std::size_t>(qubits), 'x');
    Index rem = w;
    for (int k = qubits - 1; k >= 0; --k) {
      word[static_cast<std::size_t>(k)] = static_cast<int>(rem % 3);
      label[static_cast<std::size_t>(k)] = axes[rem % 3];
      rem /= 3;
    }
    std::vector<ComplexMatrix> elems;
    elems.reserve(static_cast<std::size_t>(outcomes));
    for (Index o = 0; o < outcomes; ++o) {
      ComplexMatrix e = ComplexMatrix::Ones(1, 1);
      for (int k = 0; k < qubits; ++k) {
        const int sign_bit = static_cast<int>((o >> (qubits - 1 - k)) & 1);
        e = kron(e, proj[word[static_cast<std::size_t>(k)]][sign_bit]);
      }
      elems.push_back(std::move(e));
    }
    p.blocks.push_back(Povm::make(std::move(elems)));
    p.block_labels.push_back(label);
  }
  return p;
}

Povm sic_povm(int qubits) {
  check_qubits(qubits, kMaxStateQubits, "sic_povm");
  std::vector<ComplexMatrix> single;
  for (const auto& s : tetrahedron_bloch_vectors()) single.push_back(bloch_operator(s, 0.25));
  std::vector<ComplexMatrix> elems{ComplexMatrix::Ones(1, 1)};
  for (int k = 0; k < qubits; ++k) {
    std::vector<ComplexMatrix> next;
    next.reserve(elems.size() * 4);
    for (const auto& e : elems)
      for (const auto& s : single) next.push_back(kron(e, s));
    elems = std::move(next);
  }
  return Povm::make(std::move(elems));
}

MeasurementProtocol sic_protocol(int qubits, std::int64_t shots) {
  check_shots(shots);
  MeasurementProtocol p;
  p.qubits = qubits;
  p.kind = ReadoutKind::Sic;
  p.shots_per_block = shots;
  p.blocks.push_back(sic_povm(qubits));
  p.block_labels.emplace_back("sic");
  return p;
}

MeasurementProtocol make_readout(ReadoutKind kind, int qubits, std::int64_t shots) {
  return kind == ReadoutKind::Mub ? mub_protocol(qubits, shots) : sic_protocol(qubits, shots);
}

InputStateSet tetrahedron_states() {
  InputStateSet set;
  for (const auto& s : tetrahedron_bloch_vectors()) {
    set.states.push_back(DensityMatrix::make_physical(bloch_operator(s, 0.5)));
  }
  return set;
}

InputStateSet product_input_states(int qubits) {
  check_qubits(qubits, kMaxProcessQubits, "product_input_states");
  const InputStateSet single = tetrahedron_states();
  std::vector<ComplexMatrix> mats{ComplexMatrix::Ones(1, 1)};
  for (int k = 0; k < qubits; ++k) {
    std::vector<ComplexMatrix> next;
    next.reserve(mats.size() * 4);
    for (const auto& m : mats)
      for (const auto& s : single.states) next.push_back(kron(m, s.matrix()));
    mats = std::move(next);
  }
  InputStateSet set;
  for (const auto& m : mats) set.states.push_back(DensityMatrix::make_physical(m));
  return set;
}

ProcessProtocol process_protocol(int qubits, ReadoutKind readout, std::int64_t shots) {
  check_qubits(qubits, kMaxProcessQubits, "process_protocol");
  return {product_input_states(qubits), make_readout(readout, qubits, shots)};
}

}  // namespace tomoci
