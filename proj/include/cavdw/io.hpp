#pragma once

// Run configuration (JSON text with a strict schema) and CSV output.

#include "cavdw/experiments.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace cavdw::io {

struct Tolerances {
  double pole_epsilon = kDefaultPoleEpsilon;
  double ed_tolerance = ed::kDefaultTolerance;
  std::size_t max_dimension = ed::kDefaultMaxDimension;

  bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
  experiments::GeneratorSpec ensemble;
  std::optional<experiments::ScanSpec> scan;  // base/tolerances mirrored in
  std::string output;                         // empty: standard output
  std::uint64_t seed = 0;
  Tolerances tolerances;

  bool operator==(const RunConfig&) const = default;
};

// Throws Error(ParseError) for malformed text, unknown keys and wrong types,
// Error(ValidationError) for invariant breaches; both name the key path.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Canonical JSON rendering; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& c);

// Re-derives every seed/tolerance-dependent field after a CLI override.
void apply_overrides(RunConfig& c, std::optional<std::uint64_t> seed,
                     std::optional<bool> oracle, std::optional<std::string> output);

// Header, one line per row, then "# key = value" summary lines. Doubles use
// 17 significant digits; LF line endings.
std::string format_scan_csv(const experiments::ScanResult& r);
void write_scan_csv(const experiments::ScanResult& r, const std::string& path);

std::string format_double(double v);

}  // namespace cavdw::io
