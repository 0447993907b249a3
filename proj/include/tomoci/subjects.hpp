#pragma once

// Named states and channels used by the calibration runs and the CLI.

#include <optional>
#include <string>
#include <vector>

#include "tomoci/qpt.hpp"
#include "tomoci/sim.hpp"

namespace tomoci {

struct Subject {
  std::string name;
  int qubits = 1;
  std::optional<DensityMatrix> state;
  std::optional<ChoiMatrix> channel;

  bool is_process() const { return channel.has_value(); }
};

// qubit0, qubit-theta, mixed1, zero2, bell2, mixed2, ghz3, hadamard, rx90,
// ry90, identity1, depol1-<p>, depol2-<p>. Throws InvalidArgument for
// anything else.
Subject builtin_subject(const std::string& name);

// The fixed roster, with the depolarizing channels at p = 0.1.
std::vector<std::string> builtin_subject_names();

Experiment make_experiment(const Subject& subject, ReadoutKind readout, std::int64_t shots);

}  // namespace tomoci
