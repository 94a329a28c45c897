#pragma once

// Sequence files: one self-describing JSON document per sequence.
//
//   {"dim": d, "kind": "finite",    "level": J, "values": [num, ...]}
//   {"dim": d, "kind": "supported", "entries": [{"k": [int, ...], "v": num | [re, im]}, ...]}
//
// Values are stored with round-trip-exact decimal serialization.  On load,
// complex values [re, im] and negative reals are reduced to their modulus
// (the library computes with magnitudes only).  Witness writers may emit
// signed values for human inspection; those too load as magnitudes.

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "morrey/sequence.hpp"

namespace morrey {

/// Violation of the sequence-file schema (missing/extra structure, length
/// mismatch, non-finite or duplicate entries).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

using AnySequence = std::variant<FiniteSequence, SupportedSequence>;

AnySequence read_sequence_file(const std::string& path);

void write_sequence_file(const std::string& path, const FiniteSequence& seq);
void write_sequence_file(const std::string& path, const SupportedSequence& seq);

/// Supported-kind file with explicitly signed values (loads as magnitudes).
void write_signed_sequence_file(const std::string& path, int dim,
                                const std::vector<std::pair<Lattice, double>>& entries);

SupportedSequence as_supported(const AnySequence& seq);

} // namespace morrey
