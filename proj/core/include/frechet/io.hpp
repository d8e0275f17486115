#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "frechet/decider.hpp"
#include "frechet/exact.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

enum class CurveFormat { kCsv, kJson };

/// Guess the format from the file extension; defaults to CSV.
CurveFormat format_from_path(const std::string& path);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV: one vertex per line, comma-separated coordinates. JSON: an object
/// with "dimension" and "vertices". Throws ParseError (with a line number
/// for CSV) on malformed input, std::domain_error on empty input.
Curve parse_curve_file(const std::string& path, CurveFormat format);
Curve parse_curve_text(const std::string& text, CurveFormat format);

std::string serialize_curve(const Curve& c, CurveFormat format);
void write_curve_file(const Curve& c, const std::string& path, CurveFormat format);

/// FNV-1a 64-bit digest, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Machine-readable run summary. The JSON layout is deterministic for fixed
/// inputs and seed; wall_time_ms sits outside the digest-covered part.
struct RunReport {
    std::string command;
    std::string inputs_json;   // canonical JSON object of inputs and params
    std::string outcome_json;  // canonical JSON object for the outcome
    std::uint64_t probe_count = 0;
    double wall_time_ms = 0.0;

    /// Digest over {command, inputs, outcome, probe_count}.
    std::string digest() const;
    std::string to_json(bool pretty = true) const;
};

std::string alignment_to_json(const Curve& P, const Curve& Q, const Alignment& a);
std::string free_space_to_json(const FreeSpaceDiagram& d);

}  // namespace frechet
