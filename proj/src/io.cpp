#include "wignerlab/io.hpp"

#include "wignerlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wigner::io {

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view field)
{
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
        field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double x = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), x);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw DomainError("not a number: '" + std::string(field) + "'");
    return x;
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string sanitize_field(std::string_view text)
{
    std::string s(text);
    for (char& c : s) {
        if (c == ',') c = ';';
        else if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

void write_csv_row(std::ostream& os, std::span<const std::string> fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << '\n';
}

void write_matrix_csv(std::ostream& os, const Matrix& m)
{
    for (std::size_t k = 0; k < m.cols(); ++k) os << (k ? ",c" : "c") << k + 1;
    os << '\n';
    for (std::size_t j = 0; j < m.rows(); ++j) {
        const auto row = m.row(j);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ',';
            os << format_double(row[k]);
        }
        os << '\n';
    }
}

Matrix read_matrix_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw DomainError("matrix CSV: missing header row");
    const std::size_t cols = split_csv_line(line).size();
    if (cols > kMaxMatrixEntries) throw DomainError("matrix CSV: more than 1e8 entries");

    std::vector<double> data;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != cols)
            throw DomainError("matrix CSV: row " + std::to_string(rows + 1) + " has " +
                              std::to_string(fields.size()) + " fields, expected " + std::to_string(cols));
        if ((rows + 1) * cols > kMaxMatrixEntries) throw DomainError("matrix CSV: more than 1e8 entries");
        for (const auto& f : fields) data.push_back(parse_double(f));
        ++rows;
    }
    if (rows == 0) throw DomainError("matrix CSV: no data rows");
    Matrix m(rows, cols);
    std::copy(data.begin(), data.end(), m.data().begin());
    return m;
}

void write_column_csv(std::ostream& os, std::string_view header, std::span<const double> values)
{
    os << header << '\n';
    for (double v : values) os << format_double(v) << '\n';
}

std::vector<double> read_column_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw DomainError("CSV: missing header row");
    std::vector<double> out;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        out.push_back(parse_double(split_csv_line(line).front()));
        if (out.size() > kMaxMatrixEntries) throw DomainError("CSV: more than 1e8 entries");
    }
    if (out.empty()) throw DomainError("CSV: no data rows");
    return out;
}

namespace {

std::ifstream open_in(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open '" + path + "'");
    return f;
}

} // namespace

Matrix read_matrix_file(const std::string& path)
{
    auto f = open_in(path);
    return read_matrix_csv(f);
}

std::vector<double> read_column_file(const std::string& path)
{
    auto f = open_in(path);
    return read_column_csv(f);
}

std::string read_text_file(const std::string& path)
{
    auto f = open_in(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot write '" + path + "'");
    f << text;
    if (!f) throw DomainError("write failed for '" + path + "'");
}

} // namespace wigner::io
