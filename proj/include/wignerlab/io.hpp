#pragma once

#include "wignerlab/matrix.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wigner::io {

/// Largest matrix accepted from CSV.
inline constexpr std::size_t kMaxMatrixEntries = 100'000'000;

/// Shortest decimal string that parses back to the same double. NaN and
/// infinities print as "nan", "inf", "-inf".
std::string format_double(double x);

/// Parses a whole field as a double; throws DomainError otherwise.
double parse_double(std::string_view field);

/// Splits one CSV line on ','. Fields are not quoted.
std::vector<std::string> split_csv_line(std::string_view line);

/// Field content with ',' and line breaks replaced, for free-text columns.
std::string sanitize_field(std::string_view text);

void write_csv_row(std::ostream& os, std::span<const std::string> fields);

/// Header c1..cn followed by the rows.
void write_matrix_csv(std::ostream& os, const Matrix& m);

/// Reads a matrix written by write_matrix_csv (any header names are
/// accepted, but the header row is required). Throws DomainError for ragged
/// rows, bad numbers, an empty body or more than kMaxMatrixEntries entries.
Matrix read_matrix_csv(std::istream& is);

/// One-column CSV with the given header.
void write_column_csv(std::ostream& os, std::string_view header, std::span<const double> values);

/// Reads the first column of a CSV with a header row.
std::vector<double> read_column_csv(std::istream& is);

/// File helpers; throw DomainError when the file cannot be opened.
Matrix read_matrix_file(const std::string& path);
std::vector<double> read_column_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

} // namespace wigner::io
