// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "leftmost/csr.hpp"

namespace leftmost {

/**
 * @brief Parse error with the 1-based line number where parsing stopped.
 */
class MatrixMarketError : public std::runtime_error {
 public:
  MatrixMarketError(const std::string& message, long line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

struct MmHeader {
  enum class Field { real, integer, pattern };
  enum class Symmetry { general, symmetric, skew_symmetric };
  Field field = Field::real;
  Symmetry symmetry = Symmetry::general;
};

// Parses the banner line "%%MatrixMarket matrix coordinate <field> <symmetry>".
// Tokens are case-insensitive. The complex field and hermitian symmetry are
// rejected by name; unknown tokens are named in the error.
MmHeader parse_mm_header(const std::string& line);

// Coordinate-format reader. Symmetric and skew-symmetric inputs are expanded
// to full storage (off-diagonal (i, j) also yields (j, i), negated for skew);
// pattern entries get the value 1.0. Indices are 1-based in the file and
// validated against the size line. Nothing proportional to the declared
// entry count is allocated before the size line has been validated.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::string& path);

// Writes "%%MatrixMarket matrix coordinate real general" with row-major
// entries, 1-based indices and values at 17 significant digits, so that
// write followed by read reproduces the matrix exactly, structural zeros
// included.
void write_matrix_market(const CsrMatrix& a, std::ostream& out);
void write_matrix_market(const CsrMatrix& a, const std::string& path);

// A + A^T for square A. Duplicate positions merge; the symmetric pattern is
// kept even where values cancel.
CsrMatrix symmetrize(const CsrMatrix& a);

}  // namespace leftmost
