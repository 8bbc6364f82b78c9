#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qqft/circuit.hpp"

namespace qqft {

inline constexpr std::string_view kSequenceSchema = "qqft-seq/1";

/// Serialize to the qqft-seq/1 JSON document:
///
///   {"schema": "qqft-seq/1", "n_sites": N, "depth": D, "gate_count": G,
///    "gates": [{"kind": "swap", "site": j, "step": s},
///              {"kind": "mix", "site": j, "step": s, "theta": t, "phi": p},
///              {"kind": "phase", "site": j, "step": s, "lambda": l}, ...]}
///
/// Angles are written with round-trip precision.
std::string sequence_to_json(const CircuitSequence& seq, int indent = 2);

/// Parse and validate a qqft-seq/1 document. Throws InvalidSequenceError on
/// schema or content errors.
CircuitSequence sequence_from_json(std::string_view text);

void save_sequence(const CircuitSequence& seq, const std::filesystem::path& path);
CircuitSequence load_sequence(const std::filesystem::path& path);

}  // namespace qqft
