#pragma once

// Matrix Market reader/writer for dense complex matrices.
//
// The writer emits "array complex general" with entries in column-major
// order, one "real imag" pair per line, each number in shortest round-trip
// form, so write -> read reproduces the matrix bit for bit. The reader also
// accepts coordinate storage, real/integer/pattern fields and the
// symmetric/hermitian/skew-symmetric symmetry qualifiers.

#include "biortho/linalg.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace biortho {

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

inline std::string write_matrix_market(const ComplexMatrix& m) {
    std::string out = "%%MatrixMarket matrix array complex general\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            out += format_double(m(i, j).real());
            out += ' ';
            out += format_double(m(i, j).imag());
            out += '\n';
        }
    }
    return out;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline double parse_number(const Token& tok, std::size_t line) {
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw ParseError(line, tok.column, "expected a number, found '" + std::string(tok.text) + "'");
    }
    if (!std::isfinite(value)) throw ParseError(line, tok.column, "non-finite entry");
    return value;
}

inline Index parse_count(const Token& tok, std::size_t line, bool allow_zero) {
    long long value = 0;
    const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size() || value < (allow_zero ? 0 : 1)) {
        throw ParseError(line, tok.column, "expected a positive integer, found '" + std::string(tok.text) + "'");
    }
    return static_cast<Index>(value);
}

}  // namespace detail

inline ComplexMatrix read_matrix_market(std::string_view text) {
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= text.size();) {
        const std::size_t end = text.find('\n', pos);
        std::string_view l = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        lines.push_back(l);
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }

    if (lines.empty() || lines[0].substr(0, 14) != "%%MatrixMarket") {
        throw ParseError(1, 1, "missing %%MatrixMarket header");
    }
    const auto header = detail::tokenize(lines[0]);
    if (header.size() != 5) throw ParseError(1, 1, "header must read: %%MatrixMarket matrix <format> <field> <symmetry>");
    if (detail::lower(header[1].text) != "matrix") throw ParseError(1, header[1].column, "only 'matrix' objects are supported");
    const std::string format = detail::lower(header[2].text);
    const std::string field = detail::lower(header[3].text);
    const std::string symmetry = detail::lower(header[4].text);
    if (format != "array" && format != "coordinate") throw ParseError(1, header[2].column, "unknown format '" + format + "'");
    if (field != "complex" && field != "real" && field != "integer" && field != "pattern") {
        throw ParseError(1, header[3].column, "unknown field '" + field + "'");
    }
    if (field == "pattern" && format == "array") throw ParseError(1, header[3].column, "pattern field requires coordinate format");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian" && symmetry != "skew-symmetric") {
        throw ParseError(1, header[4].column, "unknown symmetry '" + symmetry + "'");
    }
    if (symmetry == "hermitian" && field != "complex") throw ParseError(1, header[4].column, "hermitian requires complex field");

    // Data lines, with their 1-based line numbers; comments and blank lines skipped.
    std::vector<std::pair<std::size_t, std::vector<detail::Token>>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (!lines[i].empty() && lines[i][0] == '%') continue;
        auto toks = detail::tokenize(lines[i]);
        if (toks.empty()) continue;
        rows.emplace_back(i + 1, std::move(toks));
    }
    if (rows.empty()) throw ParseError(lines.size(), 1, "missing size line");

    const auto& [size_line, size_toks] = rows.front();
    const std::size_t expected_size_tokens = format == "array" ? 2 : 3;
    if (size_toks.size() != expected_size_tokens) {
        throw ParseError(size_line, 1, "size line must hold " + std::to_string(expected_size_tokens) + " integers");
    }
    const Index nrows = detail::parse_count(size_toks[0], size_line, false);
    const Index ncols = detail::parse_count(size_toks[1], size_line, false);
    if (symmetry != "general" && nrows != ncols) throw ParseError(size_line, 1, symmetry + " matrix must be square");

    const std::size_t values_per_entry = field == "complex" ? 2 : field == "pattern" ? 0 : 1;
    auto read_value = [&](const std::vector<detail::Token>& toks, std::size_t offset, std::size_t line) {
        if (toks.size() != offset + values_per_entry) {
            const std::size_t col = toks.size() > offset + values_per_entry ? toks[offset + values_per_entry].column
                                                                            : toks.back().column;
            throw ParseError(line, col,
                             "expected " + std::to_string(offset + values_per_entry) + " values, found " +
                                 std::to_string(toks.size()));
        }
        if (values_per_entry == 0) return Complex(1.0, 0.0);
        const double re = detail::parse_number(toks[offset], line);
        const double im = values_per_entry == 2 ? detail::parse_number(toks[offset + 1], line) : 0.0;
        return Complex(re, im);
    };
    auto mirror = [&](Complex v) {
        if (symmetry == "hermitian") return std::conj(v);
        if (symmetry == "skew-symmetric") return -v;
        return v;
    };

    ComplexMatrix m = ComplexMatrix::Zero(nrows, ncols);
    std::size_t cursor = 1;
    if (format == "array") {
        // column-major; symmetric variants store the lower triangle only
        for (Index j = 0; j < ncols; ++j) {
            const Index first_row = symmetry == "general" ? 0 : symmetry == "skew-symmetric" ? j + 1 : j;
            for (Index i = first_row; i < nrows; ++i) {
                if (cursor >= rows.size()) throw ParseError(lines.size(), 1, "too few entries for a " +
                                                                                  std::to_string(nrows) + "x" +
                                                                                  std::to_string(ncols) + " matrix");
                const auto& [line, toks] = rows[cursor++];
                const Complex v = read_value(toks, 0, line);
                m(i, j) = v;
                if (i != j && symmetry != "general") m(j, i) = mirror(v);
            }
        }
    } else {
        const Index nnz = detail::parse_count(size_toks[2], size_line, true);
        for (Index k = 0; k < nnz; ++k) {
            if (cursor >= rows.size()) throw ParseError(lines.size(), 1, "too few coordinate entries");
            const auto& [line, toks] = rows[cursor++];
            if (toks.size() < 2) throw ParseError(line, 1, "expected row and column indices");
            const Index i = detail::parse_count(toks[0], line, false) - 1;
            const Index j = detail::parse_count(toks[1], line, false) - 1;
            if (i >= nrows) throw ParseError(line, toks[0].column, "row index out of range");
            if (j >= ncols) throw ParseError(line, toks[1].column, "column index out of range");
            const Complex v = read_value(toks, 2, line);
            m(i, j) += v;
            if (i != j && symmetry != "general") m(j, i) += mirror(v);
        }
    }
    if (cursor != rows.size()) {
        const auto& [line, toks] = rows[cursor];
        throw ParseError(line, toks.front().column, "unexpected trailing data");
    }
    return m;
}

inline ComplexMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_matrix_market(buf.str());
}

inline void write_matrix_market_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << write_matrix_market(m);
    if (!out) throw Error("write to '" + path + "' failed");
}

/// SHA-256 (hex) of the canonical Matrix Market text of m, so the digest
/// depends on the matrix content rather than on file formatting.
inline std::string matrix_digest(const ComplexMatrix& m) {
    const std::string text = write_matrix_market(m);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::ostringstream os;
    os << "sha256:";
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

}  // namespace biortho
