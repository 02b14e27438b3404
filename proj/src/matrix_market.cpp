#include "sympl/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "sympl/errors.hpp"

namespace sympl::io {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void malformed(std::size_t line, std::size_t column, const std::string& what) {
    throw Error(ErrorCode::MalformedEntry, "line " + std::to_string(line) + ", field " +
                                               std::to_string(column) + ": " + what);
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

double parse_real(const std::string& tok, std::size_t line, std::size_t column) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        malformed(line, column, "expected a finite real, got '" + tok + "'");
    return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line, std::size_t column) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        malformed(line, column, "expected a nonnegative integer, got '" + tok + "'");
    return v;
}

MatrixHeader parse_header(const std::string& line) {
    const auto tok = split(line);
    if (tok.size() != 5 || tok[0] != "%%MatrixMarket")
        throw Error(ErrorCode::UnsupportedHeader, "line 1: not a MatrixMarket banner: '" + line + "'");
    if (lower(tok[1]) != "matrix")
        throw Error(ErrorCode::UnsupportedHeader, "unsupported object '" + tok[1] + "'");
    MatrixHeader h;
    const std::string format = lower(tok[2]);
    if (format == "array") h.format = MatrixFormat::Array;
    else if (format == "coordinate") h.format = MatrixFormat::Coordinate;
    else throw Error(ErrorCode::UnsupportedHeader, "unsupported format '" + tok[2] + "'");
    if (lower(tok[3]) != "real")
        throw Error(ErrorCode::UnsupportedHeader, "unsupported field '" + tok[3] + "'; only real");
    const std::string sym = lower(tok[4]);
    if (sym == "general") h.symmetry = MatrixSymmetry::General;
    else if (sym == "symmetric") h.symmetry = MatrixSymmetry::Symmetric;
    else throw Error(ErrorCode::UnsupportedHeader, "unsupported symmetry '" + tok[4] + "'");
    return h;
}

}  // namespace

DenseMatrix parse_matrix(std::istream& in, MatrixHeader* header_out) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw Error(ErrorCode::UnsupportedHeader, "empty input");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const MatrixHeader header = parse_header(line);
    if (header_out) *header_out = header;

    // Data lines: skip comments and blanks, keep line numbers for messages.
    auto next_data = [&](std::vector<std::string>& tok) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '%') continue;
            tok = split(line);
            if (tok.empty()) continue;
            return true;
        }
        return false;
    };

    std::vector<std::string> tok;
    if (!next_data(tok)) throw Error(ErrorCode::DimensionMismatch, "missing size line");
    const bool coordinate = header.format == MatrixFormat::Coordinate;
    if (tok.size() != (coordinate ? 3u : 2u))
        malformed(lineno, tok.size() + 1, "size line needs " + std::string(coordinate ? "3" : "2") +
                                              " integers");
    const std::size_t rows = parse_index(tok[0], lineno, 1);
    const std::size_t cols = parse_index(tok[1], lineno, 2);
    const bool symmetric = header.symmetry == MatrixSymmetry::Symmetric;
    if (symmetric && rows != cols)
        throw Error(ErrorCode::DimensionMismatch, "symmetric storage needs a square matrix");

    DenseMatrix m(rows, cols);
    if (!coordinate) {
        // Column-major; symmetric files list the lower triangle only.
        std::size_t expected = symmetric ? rows * (rows + 1) / 2 : rows * cols;
        std::size_t i = 0, j = 0, seen = 0;
        while (seen < expected) {
            if (!next_data(tok))
                throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(expected) +
                                                              " entries, found " + std::to_string(seen));
            if (tok.size() != 1) malformed(lineno, 2, "array entries take one value per line");
            const double v = parse_real(tok[0], lineno, 1);
            m(i, j) = v;
            if (symmetric) m(j, i) = v;
            ++seen;
            if (++i == rows) {
                ++j;
                i = symmetric ? j : 0;
            }
        }
    } else {
        const std::size_t nnz = parse_index(tok[2], lineno, 3);
        for (std::size_t e = 0; e < nnz; ++e) {
            if (!next_data(tok))
                throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(nnz) +
                                                              " entries, found " + std::to_string(e));
            if (tok.size() != 3) malformed(lineno, tok.size(), "coordinate entries need 'i j value'");
            const std::size_t i = parse_index(tok[0], lineno, 1);
            const std::size_t j = parse_index(tok[1], lineno, 2);
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw Error(ErrorCode::DimensionMismatch,
                            "line " + std::to_string(lineno) + ": index (" + tok[0] + ", " + tok[1] +
                                ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
            if (symmetric && j > i)
                malformed(lineno, 2, "symmetric storage lists the lower triangle only");
            const double v = parse_real(tok[2], lineno, 3);
            m(i - 1, j - 1) = v;
            if (symmetric) m(j - 1, i - 1) = v;
        }
    }
    if (next_data(tok))
        throw Error(ErrorCode::DimensionMismatch,
                    "line " + std::to_string(lineno) + ": unexpected data after the last entry");
    return m;
}

DenseMatrix parse_matrix(const std::filesystem::path& path, MatrixHeader* header) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    return parse_matrix(in, header);
}

void write_matrix(std::ostream& out, const DenseMatrix& m, const std::string& comment) {
    out << "%%MatrixMarket matrix array real general\n";
    if (!comment.empty()) out << "% " << comment << '\n';
    out << m.rows() << ' ' << m.cols() << '\n';
    char buf[32];
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const int len = std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out.write(buf, len);
            out.put('\n');
        }
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    write_matrix(out, m, comment);
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

}  // namespace sympl::io
