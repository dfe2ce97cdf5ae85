#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "thinsys/linalg.hpp"

namespace thinsys {

/// Text format:
///
///     field rational            (or: field gf <p>)
///     <rows> <cols>
///     <row> <col> <scalar>      one line per nonzero, 0-based
///
/// '#' starts a comment that runs to the end of the line; blank lines are
/// ignored. Errors are reported as ParseError carrying the line number.
SparseMatrix read_matrix(std::istream& in);
SparseMatrix read_matrix_file(const std::string& path);
SparseMatrix parse_matrix(std::string_view text);

/// Canonical form: no comments, entries in row-major order, canonical
/// scalars. Reading it back reproduces the matrix, and writing a matrix
/// read from a canonical file reproduces the file byte for byte.
void write_matrix(std::ostream& out, const SparseMatrix& a);
std::string format_matrix(const SparseMatrix& a);

/// Dense whitespace-separated rendering of a vector, e.g. "1 0 -1/2".
std::string format_dense(const Vector& v);

} // namespace thinsys
