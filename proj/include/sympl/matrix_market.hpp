#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sympl/matrix.hpp"

namespace sympl::io {

enum class MatrixFormat { Array, Coordinate };
enum class MatrixSymmetry { General, Symmetric };

struct MatrixHeader {
    MatrixFormat format = MatrixFormat::Array;
    MatrixSymmetry symmetry = MatrixSymmetry::General;
};

/// Reads a real MatrixMarket matrix (array or coordinate, general or
/// symmetric); symmetric storage is mirrored to full storage. Errors carry
/// the offending line number: UnsupportedHeader, MalformedEntry,
/// DimensionMismatch, IoError.
DenseMatrix parse_matrix(const std::filesystem::path& path, MatrixHeader* header = nullptr);
DenseMatrix parse_matrix(std::istream& in, MatrixHeader* header = nullptr);

/// Writes the general array variant, column-major, 17 significant digits.
void write_matrix(std::ostream& out, const DenseMatrix& m, const std::string& comment = {});
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m,
                  const std::string& comment = {});

}  // namespace sympl::io
