#include "tomoci/counts_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tomoci {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string block_path(std::size_t i) { return "blocks[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path.empty() ? key : path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t require_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string describe(const CountsBlock& b) {
  std::string s = "basis '" + b.basis + "'";
  if (b.input) s = "input " + std::to_string(*b.input) + ", " + s;
  return s;
}

std::map<std::string, Index> outcome_index(const MeasurementProtocol& protocol, Index block) {
  std::map<std::string, Index> m;
  for (Index o = 0; o < protocol.blocks[static_cast<std::size_t>(block)].size(); ++o) {
    m.emplace(protocol.outcome_label(block, o), o);
  }
  return m;
}

Index input_count(const CountsFile& f) { return f.is_process() ? Index{1} << (2 * f.qubits) : 1; }

void validate_header(const CountsFile& f) {
  if (f.kind != "qst" && f.kind != "qpt") throw SchemaError("kind", "expected 'qst' or 'qpt'");
  const int max = f.is_process() ? kMaxProcessQubits : kMaxStateQubits;
  if (f.qubits < 1 || f.qubits > max) {
    throw SchemaError("qubits", "must lie in [1, " + std::to_string(max) + "]");
  }
  const std::string expected_inputs = f.is_process() ? "tetrahedron" : "none";
  if (f.inputs != expected_inputs) {
    throw SchemaError("inputs", "expected '" + expected_inputs + "' for kind '" + f.kind + "'");
  }
  if (f.shots_per_block < 1) throw SchemaError("shots_per_block", "must be positive");
}

// Returns, for each (input, protocol block), the index of the file block.
std::vector<std::size_t> validate_blocks(const CountsFile& f, const MeasurementProtocol& protocol) {
  const Index inputs = input_count(f);
  const auto nb = static_cast<Index>(protocol.blocks.size());
  std::map<std::string, Index> basis_index;
  for (Index b = 0; b < nb; ++b) basis_index.emplace(protocol.block_labels[static_cast<std::size_t>(b)], b);

  const std::size_t none = f.blocks.size();
  std::vector<std::size_t> slot(static_cast<std::size_t>(inputs * nb), none);
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    const CountsBlock& blk = f.blocks[i];
    const std::string path = block_path(i);
    Index input = 0;
    if (f.is_process()) {
      if (!blk.input) throw SchemaError(path + ".input", "missing field");
      input = *blk.input;
      if (input < 0 || input >= inputs) {
        throw SchemaError(path + ".input", "must lie in [0, " + std::to_string(inputs - 1) + "]");
      }
    } else if (blk.input) {
      throw SchemaError(path + ".input", "not allowed for kind 'qst'");
    }
    const auto bi = basis_index.find(blk.basis);
    if (bi == basis_index.end()) throw SchemaError(path + ".basis", "unknown basis word '" + blk.basis + "'");
    std::size_t& s = slot[static_cast<std::size_t>(input * nb + bi->second)];
    if (s != none) throw SchemaError(path, "duplicate block (" + describe(blk) + ")");
    s = i;

    const auto outcomes = outcome_index(protocol, bi->second);
    std::int64_t sum = 0;
    for (const auto& [key, n] : blk.counts) {
      if (!outcomes.count(key)) {
        throw SchemaError(path + ".counts", "unknown outcome '" + key + "' (" + describe(blk) + ")");
      }
      if (n < 0) throw SchemaError(path + ".counts." + key, "count must be nonnegative");
      sum += n;
    }
    if (sum != f.shots_per_block) {
      throw SchemaError(path + ".counts", "counts sum to " + std::to_string(sum) + ", expected " +
                                              std::to_string(f.shots_per_block) + " (" +
                                              describe(blk) + ")");
    }
  }
  for (Index in = 0; in < inputs; ++in)
    for (Index b = 0; b < nb; ++b) {
      if (slot[static_cast<std::size_t>(in * nb + b)] != none) continue;
      CountsBlock missing;
      if (f.is_process()) missing.input = in;
      missing.basis = protocol.block_labels[static_cast<std::size_t>(b)];
      throw SchemaError("blocks", "missing block (" + describe(missing) + ")");
    }
  return slot;
}

CountsFile from_json(const json& root) {
  if (!root.is_object()) throw SchemaError("$", "expected a JSON object");
  const std::string version = require_string(root, "format_version", "");
  if (version != "1") throw SchemaError("format_version", "unsupported version '" + version + "'");
  CountsFile f;
  f.kind = require_string(root, "kind", "");
  f.qubits = static_cast<int>(require_integer(require(root, "qubits", ""), "qubits"));
  const std::string readout = require_string(root, "readout", "");
  try {
    f.readout = readout_from_string(readout);
  } catch (const InvalidArgument&) {
    throw SchemaError("readout", "expected 'mub' or 'sic'");
  }
  f.inputs = require_string(root, "inputs", "");
  f.shots_per_block = require_integer(require(root, "shots_per_block", ""), "shots_per_block");
  const json& blocks = require(root, "blocks", "");
  if (!blocks.is_array()) throw SchemaError("blocks", "expected an array");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const json& b = blocks[i];
    const std::string path = block_path(i);
    if (!b.is_object()) throw SchemaError(path, "expected an object");
    CountsBlock blk;
    if (b.contains("input")) blk.input = require_integer(b["input"], path + ".input");
    blk.basis = require_string(b, "basis", path);
    const json& counts = require(b, "counts", path);
    if (!counts.is_object()) throw SchemaError(path + ".counts", "expected an object");
    for (const auto& [key, v] : counts.items()) {
      blk.counts[key] = require_integer(v, path + ".counts." + key);
    }
    f.blocks.push_back(std::move(blk));
  }
  return f;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", e.what());
  }
}

}  // namespace

MeasurementProtocol readout_protocol(const CountsFile& file) {
  validate_header(file);
  return make_readout(file.readout, file.qubits, file.shots_per_block);
}

ProcessProtocol process_protocol_of(const CountsFile& file) {
  validate_header(file);
  if (!file.is_process()) throw InvalidArgument("process_protocol_of: counts file is not qpt");
  return process_protocol(file.qubits, file.readout, file.shots_per_block);
}

CountsFile parse_counts_text(const std::string& text) {
  CountsFile f = from_json(parse_json(text));
  validate_blocks(f, readout_protocol(f));
  return f;
}

CountsFile parse_counts(const std::string& path) { return parse_counts_text(read_text_file(path)); }

FrequencyVector to_frequency_vector(const CountsFile& file) {
  const MeasurementProtocol protocol = readout_protocol(file);
  const auto slot = validate_blocks(file, protocol);
  std::vector<Index> sizes;
  std::vector<std::int64_t> counts;
  const auto nb = static_cast<Index>(protocol.blocks.size());
  for (Index in = 0; in < input_count(file); ++in)
    for (Index b = 0; b < nb; ++b) {
      const CountsBlock& blk = file.blocks[slot[static_cast<std::size_t>(in * nb + b)]];
      const Index len = protocol.blocks[static_cast<std::size_t>(b)].size();
      sizes.push_back(len);
      for (Index o = 0; o < len; ++o) {
        const auto it = blk.counts.find(protocol.outcome_label(b, o));
        counts.push_back(it == blk.counts.end() ? 0 : it->second);
      }
    }
  return FrequencyVector::from_counts(BlockLayout(sizes), std::move(counts));
}

CountsFile counts_file_from_data(const MeasurementProtocol& readout, Index inputs,
                                 const FrequencyVector& data) {
  if (!data.counts()) throw InvalidArgument("counts_file_from_data: data carries no counts");
  const auto nb = static_cast<Index>(readout.blocks.size());
  const BlockLayout& layout = data.layout();
  if (layout.blocks() != inputs * nb || layout.size() != inputs * readout.total_outcomes()) {
    throw InvalidArgument("counts_file_from_data: data layout does not match the protocol");
  }
  CountsFile f;
  f.kind = inputs > 1 ? "qpt" : "qst";
  f.qubits = readout.qubits;
  f.readout = readout.kind;
  f.inputs = inputs > 1 ? "tetrahedron" : "none";
  f.shots_per_block = readout.shots_per_block;
  const auto& c = *data.counts();
  for (Index in = 0; in < inputs; ++in)
    for (Index b = 0; b < nb; ++b) {
      const Index blk = in * nb + b;
      CountsBlock out;
      if (inputs > 1) out.input = in;
      out.basis = readout.block_labels[static_cast<std::size_t>(b)];
      for (Index o = 0; o < layout.length(blk); ++o) {
        out.counts[readout.outcome_label(b, o)] = c[static_cast<std::size_t>(layout.begin(blk) + o)];
      }
      if (data.shots()[static_cast<std::size_t>(blk)] != f.shots_per_block) {
        throw InvalidArgument("counts_file_from_data: block totals differ from shots_per_block");
      }
      f.blocks.push_back(std::move(out));
    }
  return f;
}

std::string write_counts_text(const CountsFile& file) {
  const MeasurementProtocol protocol = readout_protocol(file);
  validate_blocks(file, protocol);
  std::map<std::string, Index> basis_index;
  for (std::size_t b = 0; b < protocol.block_labels.size(); ++b) {
    basis_index.emplace(protocol.block_labels[b], static_cast<Index>(b));
  }
  ordered_json root;
  root["format_version"] = "1";
  root["kind"] = file.kind;
  root["qubits"] = file.qubits;
  root["readout"] = to_string(file.readout);
  root["inputs"] = file.inputs;
  root["shots_per_block"] = file.shots_per_block;
  ordered_json blocks = ordered_json::array();
  for (const auto& blk : file.blocks) {
    ordered_json b;
    if (blk.input) b["input"] = *blk.input;
    b["basis"] = blk.basis;
    ordered_json counts = ordered_json::object();
    const Index bi = basis_index.at(blk.basis);
    for (Index o = 0; o < protocol.blocks[static_cast<std::size_t>(bi)].size(); ++o) {
      const std::string key = protocol.outcome_label(bi, o);
      const auto it = blk.counts.find(key);
      if (it != blk.counts.end()) counts[key] = it->second;
    }
    b["counts"] = std::move(counts);
    blocks.push_back(std::move(b));
  }
  root["blocks"] = std::move(blocks);
  return root.dump(2) + "\n";
}

void save_counts(const CountsFile& file, const std::string& path) {
  write_text_file(path, write_counts_text(file));
}

CountsFile import_generic_counts(const std::string& text, const ImportOptions& opts) {
  const json root = parse_json(text);
  if (!root.is_object()) throw SchemaError("$", "expected a JSON object");
  CountsFile f;
  f.kind = opts.kind;
  f.readout = opts.readout;
  f.inputs = f.kind == "qpt" ? "tetrahedron" : "none";
  f.qubits = static_cast<int>(require_integer(require(root, "qubits", ""), "qubits"));
  if (f.qubits < 1 || f.qubits > kMaxStateQubits) throw SchemaError("qubits", "out of range");
  const json& circuits = require(root, "circuits", "");
  if (!circuits.is_array() || circuits.empty()) {
    throw SchemaError("circuits", "expected a non-empty array");
  }
  std::optional<std::int64_t> shots;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const json& c = circuits[i];
    const std::string path = "circuits[" + std::to_string(i) + "]";
    if (!c.is_object()) throw SchemaError(path, "expected an object");
    CountsBlock blk;
    if (c.contains("input")) blk.input = require_integer(c["input"], path + ".input");
    blk.basis = f.readout == ReadoutKind::Sic && !c.contains("basis")
                    ? "sic"
                    : require_string(c, "basis", path);
    const json& counts = require(c, "counts", path);
    if (!counts.is_object()) throw SchemaError(path + ".counts", "expected an object");
    std::int64_t total = 0;
    for (const auto& [raw, v] : counts.items()) {
      const std::string kpath = path + ".counts." + raw;
      std::string key;
      std::copy_if(raw.begin(), raw.end(), std::back_inserter(key), [](char ch) { return ch != ' '; });
      std::uint64_t value = 0;
      bool numeric = false;
      if (key.size() > 2 && key[0] == '0' && (key[1] == 'x' || key[1] == 'X')) {
        try {
          std::size_t used = 0;
          value = std::stoull(key.substr(2), &used, 16);
          if (used != key.size() - 2) throw SchemaError(kpath, "malformed hex key");
        } catch (const std::logic_error&) {
          throw SchemaError(kpath, "malformed hex key");
        }
        numeric = true;
      }
      if (f.readout == ReadoutKind::Mub) {
        if (numeric) {
          if (value >> f.qubits) throw SchemaError(kpath, "outcome exceeds the register width");
          key.clear();
          for (int b = f.qubits - 1; b >= 0; --b) key.push_back(((value >> b) & 1) ? '1' : '0');
        }
        if (static_cast<int>(key.size()) != f.qubits ||
            key.find_first_not_of("01") != std::string::npos) {
          throw SchemaError(kpath, "expected a " + std::to_string(f.qubits) + "-bit outcome");
        }
        if (opts.little_endian) std::reverse(key.begin(), key.end());
      } else if (numeric) {
        key = std::to_string(value);
      }
      const std::int64_t n = require_integer(v, kpath);
      blk.counts[key] += n;
      total += n;
    }
    if (shots && *shots != total) {
      throw SchemaError(path + ".counts", "total " + std::to_string(total) +
                                              " differs from the first circuit's " +
                                              std::to_string(*shots));
    }
    shots = total;
    f.blocks.push_back(std::move(blk));
  }
  f.shots_per_block = *shots;
  validate_header(f);
  validate_blocks(f, readout_protocol(f));
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace tomoci
