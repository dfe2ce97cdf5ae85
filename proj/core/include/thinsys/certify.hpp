#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "thinsys/bigraph.hpp"
#include "thinsys/linalg.hpp"

namespace thinsys {

/// Injection phi : J -> I with a_{phi(j), j} != 0 for every column j.
class Sdr {
public:
    /// `row_of_column[j]` is phi(j). Throws TheoremViolation if phi is not
    /// injective or hits a zero entry of `a`.
    Sdr(const SparseMatrix& a, std::vector<std::size_t> row_of_column);

    const std::vector<std::size_t>& row_of_column() const noexcept { return row_of_column_; }
    std::size_t operator()(std::size_t column) const { return row_of_column_.at(column); }

private:
    std::vector<std::size_t> row_of_column_;
};

/// Nonzero x with A x = 0, refuting independence of the columns.
class Dependence {
public:
    enum class Source { KernelBasis, HallViolator };

    /// Throws TheoremViolation unless x != 0 and A x = 0.
    Dependence(const SparseMatrix& a, Vector kernel_vector, Source source = Source::KernelBasis,
               std::vector<std::size_t> violator = {});

    const Vector& kernel_vector() const noexcept { return kernel_vector_; }
    Source source() const noexcept { return source_; }
    /// The Hall violator J0 the vector was localized to, when Source::HallViolator.
    const std::vector<std::size_t>& violator() const noexcept { return violator_; }

private:
    Vector kernel_vector_;
    Source source_;
    std::vector<std::size_t> violator_;
};

using Certificate = std::variant<Sdr, Dependence>;

struct CertifyOptions {
    /// When no matching covers the columns, extract the kernel vector from
    /// the submatrix N(J0) x J0 of a Hall violator J0 instead of the global
    /// kernel basis.
    bool via_violator = false;
};

/// Trivial kernel: an SDR from a maximum matching of the support graph
/// (which must cover every column; TheoremViolation otherwise). Nontrivial
/// kernel: a verified kernel vector.
Certificate certify_columns(const SparseMatrix& a, const CertifyOptions& options = {});

/// Bijection psi : J -> I with a_{psi(j), j} != 0, kept as two mutually
/// inverse index maps.
class Bijection {
public:
    /// Throws TheoremViolation on a non-bijective map or a zero entry.
    Bijection(const SparseMatrix& a, std::vector<std::size_t> row_of_column);

    const std::vector<std::size_t>& row_of_column() const noexcept { return row_of_column_; }
    const std::vector<std::size_t>& column_of_row() const noexcept { return column_of_row_; }

private:
    std::vector<std::size_t> row_of_column_;
    std::vector<std::size_t> column_of_row_;
};

/// Why diagonalize refused: the rows (Side::Row, vector over rows with
/// y^T A = 0) or the columns (Side::Column, A x = 0) are dependent.
struct SideDependence {
    Side side;
    Vector kernel_vector;
};

using DiagonalizeResult = std::variant<Bijection, SideDependence>;

/// Rows are tested first, then columns. If both families are independent
/// the row-covering and column-covering SDRs are merged into a perfect
/// matching. Throws PreconditionError for a non-square matrix.
DiagonalizeResult diagonalize(const SparseMatrix& a);

/// Matching view of an SDR.
Matching to_matching(const Sdr& sdr);

} // namespace thinsys
