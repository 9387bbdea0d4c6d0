#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcomp/dynamics.hpp"
#include "kcomp/matrix.hpp"

namespace kcomp {

/// Malformed input file or command line; maps to exit code 2 in the CLI.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Reads a matrix from either format:
///   - plain text: first line "n m", then n rows of m decimals
///   - JSON: {"rows": n, "cols": m, "data": [[...], ...]} (row-major)
/// The format is detected from the first non-space character.
Matrix read_matrix_file(const std::string& path);
Matrix parse_matrix_text(std::istream& in, const std::string& origin);

/// Whitespace-separated decimals, any layout.
std::vector<double> read_vector_file(const std::string& path);

void write_matrix_text(const Matrix& m, std::ostream& out);
void write_matrix_file(const Matrix& m, const std::string& path);

/// Hopfield model config: flat "key = value" lines, '#' comments.
/// Keys: n, r (scalar or n values), W (rows separated by ';'), u,
/// activation_gain / activation_slope (scalar or n values, default 1),
/// m / M (derivative bounds, default 0 / gain·slope),
/// fixed_initial (optional ';'-separated states for simulation).
struct HopfieldConfig {
    HopfieldModel model;
    std::vector<std::vector<double>> fixed_initial;
};

HopfieldConfig read_hopfield_config(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a:<16 hex digits>".
std::string file_digest(const std::string& path);

}  // namespace kcomp
