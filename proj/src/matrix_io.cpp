#include "lossy/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lossy {

namespace {

double parse_double_strict(const std::string& s, const std::string& what) {
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    // from_chars takes '-' but not a leading '+'; tokens like "1+0.5j"
    // split into a "+0.5" part, so accept one explicit plus here.
    if (first != last && *first == '+') {
        ++first;
        if (first == last || *first == '+' || *first == '-')
            throw matrix_parse_error(what + ": bad number '" + s + "'");
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw matrix_parse_error(what + ": bad number '" + s + "'");
    return value;
}

void check_finite(const ComplexMatrix& m, const std::string& what) {
    if (!all_finite(m)) throw matrix_parse_error(what + ": non-finite entry");
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex_token(const cplx& z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

cplx parse_complex_token(const std::string& token) {
    if (token.empty()) throw matrix_parse_error("empty complex token");
    if (token.back() != 'j' && token.back() != 'J')
        return cplx{parse_double_strict(token, "complex token"), 0.0};

    const std::string body = token.substr(0, token.size() - 1);
    // Split at the sign that starts the imaginary part: the last '+'/'-'
    // not preceded by an exponent marker and not at position 0.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        // Pure imaginary: "2j", "-0.5j".
        return cplx{0.0, parse_double_strict(body, "complex token '" + token + "'")};
    const double re = parse_double_strict(body.substr(0, split), "complex token '" + token + "'");
    const double im = parse_double_strict(body.substr(split), "complex token '" + token + "'");
    return cplx{re, im};
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw matrix_parse_error("matrix JSON: expected non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw matrix_parse_error("matrix JSON: row 1 is not a non-empty array");
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw matrix_parse_error("matrix JSON: row " + std::to_string(i + 1) +
                                     " has inconsistent length");
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& cell = j[i][k];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw matrix_parse_error("matrix JSON: entry (" + std::to_string(i + 1) + "," +
                                         std::to_string(k + 1) + ") is not a [re, im] pair");
            m(i, k) = cplx{cell[0].get<double>(), cell[1].get<double>()};
        }
    }
    check_finite(m, "matrix JSON");
    return m;
}

std::string matrix_to_json_text(const ComplexMatrix& m) {
    return matrix_to_json(m).dump();
}

ComplexMatrix matrix_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw matrix_parse_error(std::string("matrix JSON: ") + e.what());
    }
    return matrix_from_json(j);
}

std::string matrix_to_csv_text(const ComplexMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_complex_token(m(i, j));
        }
        out += '\n';
    }
    return out;
}

ComplexMatrix matrix_from_csv_text(const std::string& text) {
    std::vector<std::vector<cplx>> rows;
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<cplx> row;
        std::string token;
        while (fields >> token) {
            try {
                row.push_back(parse_complex_token(token));
            } catch (const matrix_parse_error& e) {
                throw matrix_parse_error("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (row.empty()) continue;  // blank line
        if (!rows.empty() && row.size() != rows.front().size())
            throw matrix_parse_error("line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(rows.front().size()) +
                                     " entries, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw matrix_parse_error("matrix CSV: no data rows");
    ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    check_finite(m, "matrix CSV");
    return m;
}

ComplexMatrix matrix_from_text(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '[' || c == '{') return matrix_from_json_text(text);
        break;
    }
    return matrix_from_csv_text(text);
}

}  // namespace lossy
