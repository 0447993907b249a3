#pragma once

// Counts files.
//
//   {
//     "format_version": "1",
//     "kind": "qst" | "qpt",
//     "qubits": m,
//     "readout": "mub" | "sic",
//     "inputs": "none" | "tetrahedron",
//     "shots_per_block": N,
//     "blocks": [
//       {"input": i, "basis": "xz", "counts": {"00": 2510, "01": 2470, ...}},
//       ...
//     ]
//   }
//
// "input" is present for qpt only and indexes the product tetrahedron
// states. Outcome keys are bitstrings of length m (qubit 0 first) for MUB
// and decimal indices for SIC; absent outcomes count zero.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tomoci/protocols.hpp"
#include "tomoci/qst.hpp"

namespace tomoci {

struct CountsBlock {
  std::optional<Index> input;
  std::string basis;
  std::map<std::string, std::int64_t> counts;
};

struct CountsFile {
  std::string kind = "qst";
  int qubits = 1;
  ReadoutKind readout = ReadoutKind::Mub;
  std::string inputs = "none";
  std::int64_t shots_per_block = 0;
  std::vector<CountsBlock> blocks;

  bool is_process() const { return kind == "qpt"; }
};

// Throws SchemaError naming the offending field.
CountsFile parse_counts_text(const std::string& text);
// Throws IoError if the file cannot be read.
CountsFile parse_counts(const std::string& path);

std::string write_counts_text(const CountsFile& file);
void save_counts(const CountsFile& file, const std::string& path);

// Protocols implied by the header fields.
MeasurementProtocol readout_protocol(const CountsFile& file);
ProcessProtocol process_protocol_of(const CountsFile& file);

// Frequencies in model order: input-major, then basis in protocol order.
FrequencyVector to_frequency_vector(const CountsFile& file);

// Inverse of to_frequency_vector for a FrequencyVector carrying counts.
CountsFile counts_file_from_data(const MeasurementProtocol& readout, Index inputs,
                                 const FrequencyVector& data);

struct ImportOptions {
  std::string kind = "qst";
  ReadoutKind readout = ReadoutKind::Mub;
  // Keys list qubit 0 last (as many device toolkits do).
  bool little_endian = false;
};

// Converts a generic export
//   {"qubits": m, "circuits": [{"input": i, "basis": "xz", "counts": {...}}]}
// whose count keys are bitstrings (spaces ignored) or hex integers ("0x..")
// into a counts file. shots_per_block is the common per-circuit total.
CountsFile import_generic_counts(const std::string& text, const ImportOptions& opts);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tomoci
