#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"

namespace gibbsgraph {

/// Malformed input file; message carries the 1-based line number.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest decimal form of x that round-trips to the same double
/// (std::to_chars).  All numeric file output goes through this, which is
/// what makes rewrites byte-identical.
std::string format_double(double x);

/// 64-bit FNV-1a, used to fingerprint effective configurations in output
/// manifests.
std::uint64_t fnv1a64(std::string_view s);

/// 16 lowercase hex digits.
std::string hex16(std::uint64_t x);

/// Point file: header "x0,x1,...,x{d-1}", then one comma-separated row per
/// point.  Lines starting with '#' are comments and may appear anywhere
/// after the header; writers put provenance there.  LF line endings.
void write_points(std::ostream& out, const PointSet& points,
                  const std::vector<std::string>& comments = {});

/// Throws FormatError on malformed input (bad header, ragged rows,
/// unparsable numbers, duplicate points).
PointSet read_points(std::istream& in);

/// Configuration file: header "i,j", then one row per open edge (zero-based
/// vertex indices, i < j, canonical order).  Same comment convention as
/// point files.  The vertex count lives with the paired point file, not
/// here, so reading needs it as an argument.
void write_configuration(std::ostream& out, const Configuration& config,
                         const std::vector<std::string>& comments = {});

Configuration read_configuration(std::istream& in, int n_vertices);

// Small file helpers (binary mode, whole-file).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
PointSet read_points_file(const std::string& path);
Configuration read_configuration_file(const std::string& path, int n_vertices);

} // namespace gibbsgraph
