#include "rhomega/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rhomega {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void check_entry(double v, int i, int j) {
    if (std::isnan(v) || std::isinf(v)) {
        throw ParseError("matrix entry at row " + std::to_string(i + 1) + ", column " +
                         std::to_string(j + 1) + " is not finite");
    }
    if (v < 0.0) {
        throw ParseError("matrix entry at row " + std::to_string(i + 1) + ", column " +
                         std::to_string(j + 1) + " is negative");
    }
}

} // namespace

Matrix read_matrix(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw ParseError("expected matrix dimension on the first line");
    if (n < 1) throw ParseError("matrix dimension must be at least 1");
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            if (!(in >> v)) {
                throw ParseError("missing or malformed entry at row " + std::to_string(i + 1) +
                                 ", column " + std::to_string(j + 1));
            }
            check_entry(v, i, j);
            a[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    return Matrix(n, std::move(a));
}

void write_matrix(std::ostream& out, const Matrix& a) {
    const int n = a.dim();
    out << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ' ';
            out << format_double(a(i, j));
        }
        out << '\n';
    }
}

Matrix read_matrix_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows"))
        throw ParseError("JSON matrix must be an object with fields \"n\" and \"rows\"");
    if (!doc["n"].is_number_integer()) throw ParseError("field \"n\" must be an integer");
    const int n = doc["n"].get<int>();
    if (n < 1) throw ParseError("matrix dimension must be at least 1");
    const auto& rows = doc["rows"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("field \"rows\" must be an array of n rows");
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("row " + std::to_string(i + 1) + " must hold exactly n numbers");
        for (int j = 0; j < n; ++j) {
            if (!row[j].is_number())
                throw ParseError("entry at row " + std::to_string(i + 1) + ", column " +
                                 std::to_string(j + 1) + " is not a number");
            const double v = row[j].get<double>();
            check_entry(v, i, j);
            a[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    return Matrix(n, std::move(a));
}

std::string matrix_to_json(const Matrix& a) {
    const int n = a.dim();
    std::ostringstream out;
    out << "{\"n\":" << n << ",\"rows\":[";
    for (int i = 0; i < n; ++i) {
        if (i) out << ',';
        out << '[';
        for (int j = 0; j < n; ++j) {
            if (j) out << ',';
            out << format_double(a(i, j));
        }
        out << ']';
    }
    out << "]}";
    return out.str();
}

Matrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty matrix file: " + path);
    if (text[first] == '{') return read_matrix_json(text);
    std::istringstream stream(text);
    return read_matrix(stream);
}

void save_matrix(const std::string& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        out << matrix_to_json(a) << '\n';
    else
        write_matrix(out, a);
}

std::string format_matrix_pretty(const Matrix& a) {
    const int n = a.dim();
    std::vector<std::string> cells(static_cast<std::size_t>(n) * n);
    std::size_t width = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", a(i, j));
            cells[static_cast<std::size_t>(i) * n + j] = buf;
            width = std::max(width, cells[static_cast<std::size_t>(i) * n + j].size());
        }
    }
    std::string out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::string& c = cells[static_cast<std::size_t>(i) * n + j];
            out.append(j ? 1 : 0, ' ');
            out.append(width - c.size(), ' ');
            out += c;
        }
        out += '\n';
    }
    return out;
}

} // namespace rhomega
