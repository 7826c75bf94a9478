#pragma once

#include <iosfwd>
#include <string>

#include "rhomega/matrix.hpp"

namespace rhomega {

/// Shortest text with 17 significant digits; round-trips any double.
std::string format_double(double v);

/// Plain-text format: first line n, then n lines of n whitespace-separated
/// decimal numbers.  Negative values, NaN and infinities are rejected here,
/// with the offending row and column named in the diagnostic.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& a);

/// JSON alternative: {"n": <int>, "rows": [[...], ...]}.
Matrix read_matrix_json(const std::string& text);
std::string matrix_to_json(const Matrix& a);

/// Reads either format; a document starting with '{' is treated as JSON.
Matrix load_matrix(const std::string& path);

/// Writes JSON when the path ends in ".json", plain text otherwise.
void save_matrix(const std::string& path, const Matrix& a);

/// Right-aligned columns, for terminal echo of small matrices.
std::string format_matrix_pretty(const Matrix& a);

} // namespace rhomega
