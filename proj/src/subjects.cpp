#include "tomoci/subjects.hpp"

#include <cmath>
#include <numbers>

namespace tomoci {
namespace {

Subject state_subject(std::string name, int qubits, DensityMatrix rho) {
  Subject s;
  s.name = std::move(name);
  s.qubits = qubits;
  s.state = std::move(rho);
  return s;
}

Subject channel_subject(std::string name, int qubits, ChoiMatrix c) {
  Subject s;
  s.name = std::move(name);
  s.qubits = qubits;
  s.channel = std::move(c);
  return s;
}

DensityMatrix basis_superposition(Index d, const std::vector<std::pair<Index, Complex>>& amps) {
  ComplexVector psi = ComplexVector::Zero(d);
  for (const auto& [i, a] : amps) psi(i) = a;
  return DensityMatrix::pure(psi.normalized());
}

double parse_probability(const std::string& name, const std::string& tail) {
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(tail, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tail.size()) {
    throw InvalidArgument("subject '" + name + "': cannot parse depolarizing strength");
  }
  return p;
}

}  // namespace

Subject builtin_subject(const std::string& name) {
  using std::numbers::pi;
  const double h = 1.0 / std::sqrt(2.0);
  if (name == "qubit0") return state_subject(name, 1, basis_superposition(2, {{0, 1.0}}));
  if (name == "qubit-theta") {
    const Complex b = std::sin(pi / 8) * std::polar(1.0, pi / 4);
    return state_subject(name, 1, basis_superposition(2, {{0, std::cos(pi / 8)}, {1, b}}));
  }
  if (name == "mixed1") {
    return state_subject(name, 1, DensityMatrix::make_physical(ComplexMatrix::Identity(2, 2) / 2.0));
  }
  if (name == "zero2") return state_subject(name, 2, basis_superposition(4, {{0, 1.0}}));
  if (name == "bell2") return state_subject(name, 2, basis_superposition(4, {{0, h}, {3, h}}));
  if (name == "mixed2") {
    return state_subject(name, 2, DensityMatrix::make_physical(ComplexMatrix::Identity(4, 4) / 4.0));
  }
  if (name == "ghz3") return state_subject(name, 3, basis_superposition(8, {{0, h}, {7, h}}));

  const Complex i1(0.0, 1.0);
  ComplexMatrix u(2, 2);
  if (name == "hadamard") {
    u << h, h, h, -h;
    return channel_subject(name, 1, choi_of_unitary(u));
  }
  if (name == "rx90") {
    u << h, -i1 * h, -i1 * h, h;
    return channel_subject(name, 1, choi_of_unitary(u));
  }
  if (name == "ry90") {
    u << h, -h, h, h;
    return channel_subject(name, 1, choi_of_unitary(u));
  }
  if (name == "identity1") return channel_subject(name, 1, identity_channel(1));
  for (int m : {1, 2}) {
    const std::string prefix = "depol" + std::to_string(m) + "-";
    if (name.rfind(prefix, 0) == 0) {
      const double p = parse_probability(name, name.substr(prefix.size()));
      return channel_subject(name, m, depolarizing_channel(m, p));
    }
  }
  throw InvalidArgument("unknown subject '" + name + "'");
}

std::vector<std::string> builtin_subject_names() {
  return {"qubit0",   "qubit-theta", "mixed1", "zero2",     "bell2",     "mixed2",    "ghz3",
          "hadamard", "rx90",        "ry90",   "identity1", "depol1-0.1", "depol2-0.1"};
}

Experiment make_experiment(const Subject& subject, ReadoutKind readout, std::int64_t shots) {
  if (subject.is_process()) return process_experiment(subject.name, *subject.channel, readout, shots);
  return state_experiment(subject.name, *subject.state, readout, shots);
}

}  // namespace tomoci
