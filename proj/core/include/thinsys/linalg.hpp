#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "thinsys/field.hpp"

namespace thinsys {

/// One stored nonzero of a sparse row or vector.
struct Entry {
    std::size_t index;
    FieldElement value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector with strictly increasing indices and nonzero values.
class Vector {
public:
    explicit Vector(const FieldSpec& spec, std::size_t length = 0) : spec_(spec), length_(length) {}

    /// Sorts `entries`, drops zeros; throws PreconditionError on duplicate or
    /// out-of-range indices and FieldError on foreign scalars.
    static Vector from_entries(const FieldSpec& spec, std::size_t length, std::vector<Entry> entries);
    static Vector from_dense(const FieldSpec& spec, std::span<const FieldElement> values);
    static Vector unit(const FieldSpec& spec, std::size_t length, std::size_t index);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t length() const noexcept { return length_; }
    std::span<const Entry> entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }

    FieldElement at(std::size_t index) const;
    std::vector<FieldElement> dense() const;
    /// Indices of the nonzero entries, ascending.
    std::vector<std::size_t> support() const;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    FieldSpec spec_;
    std::size_t length_;
    std::vector<Entry> entries_;
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    FieldElement value;
};

/// Row-thin matrix A : I x J -> F with I = [0, num_rows), J = [0, num_cols),
/// stored row-wise. Stored values are never zero.
class SparseMatrix {
public:
    SparseMatrix(const FieldSpec& spec, std::size_t num_rows, std::size_t num_cols);

    /// Rejects duplicates, zeros, out-of-range positions and foreign scalars.
    static SparseMatrix from_triplets(const FieldSpec& spec, std::size_t num_rows,
                                      std::size_t num_cols, std::vector<Triplet> triplets);
    /// Zeros are skipped. Every row must have `num_cols` values.
    static SparseMatrix from_dense(const FieldSpec& spec, std::size_t num_cols,
                                   const std::vector<std::vector<FieldElement>>& rows);
    static SparseMatrix from_integers(const FieldSpec& spec,
                                      const std::vector<std::vector<long>>& rows);
    static SparseMatrix identity(const FieldSpec& spec, std::size_t n);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t num_rows() const noexcept { return num_rows_; }
    std::size_t num_cols() const noexcept { return num_cols_; }
    std::size_t nonzeros() const noexcept;

    std::span<const Entry> row(std::size_t i) const { return rows_.at(i); }
    FieldElement at(std::size_t i, std::size_t j) const;
    Vector column(std::size_t j) const;

    SparseMatrix transpose() const;
    /// A restricted to `row_ids` x `col_ids`, renumbered densely in the
    /// order given. Ids must be distinct and in range.
    SparseMatrix restrict(std::span<const std::size_t> row_ids,
                          std::span<const std::size_t> col_ids) const;

    /// A x, with `x.length() == num_cols()`.
    Vector apply(const Vector& x) const;
    /// y^T A, with `y.length() == num_rows()`.
    Vector apply_transpose(const Vector& y) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    FieldSpec spec_;
    std::size_t num_rows_;
    std::size_t num_cols_;
    std::vector<std::vector<Entry>> rows_;
};

/// Incremental row-echelon form of a system of equations.
///
/// Equations are inserted one at a time. Each is reduced against the
/// existing pivot rows in increasing pivot-column order; if anything is
/// left, its lowest column becomes a new pivot and the row is scaled so the
/// pivot equals one. With provenance tracking, every stored row remembers the
/// combination of inserted equations it equals, which turns a residual
/// `0 = c` into a left-kernel certificate.
class RowEchelon {
public:
    struct Insertion {
        /// Column of the new pivot; empty if the row reduced to zero.
        std::optional<std::size_t> pivot;
        /// Right-hand side left over when the row reduced to zero.
        FieldElement residual;
        /// Coefficients over inserted equations (by insertion number) giving
        /// the reduced row. Empty unless provenance is tracked.
        std::vector<Entry> combination;
    };

    explicit RowEchelon(const FieldSpec& spec, bool track_provenance = false);

    /// `coeffs` must be sorted by strictly increasing column with nonzero values.
    Insertion insert(std::span<const Entry> coeffs, const FieldElement& rhs);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t equations() const noexcept { return inserted_; }
    std::vector<std::size_t> pivot_columns() const;

    /// Solution of the inserted equations with every free variable set to
    /// zero. Only meaningful when no insertion left a nonzero residual.
    Vector particular_solution(std::size_t num_cols) const;
    /// Basis of the solution space of the homogeneous system, each vector
    /// scaled so its lowest-index nonzero entry is one.
    std::vector<Vector> null_space(std::size_t num_cols) const;

private:
    struct StoredRow {
        std::vector<Entry> coeffs;
        FieldElement rhs;
        std::vector<Entry> provenance;
    };

    FieldSpec spec_;
    bool track_provenance_;
    std::size_t inserted_ = 0;
    std::vector<StoredRow> rows_;
    // pivot column -> index into rows_, kept sorted by column
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;

    const StoredRow* pivot_row(std::size_t col) const;
};

/// Left-kernel witness y of an inconsistent system: y^T A = 0 and y^T b != 0.
class UnsolvabilityCertificate {
public:
    /// Throws TheoremViolation unless both identities hold exactly.
    UnsolvabilityCertificate(Vector y, const SparseMatrix& a, const Vector& b);

    const Vector& y() const noexcept { return y_; }
    /// y^T b, nonzero.
    const FieldElement& value() const noexcept { return value_; }

private:
    Vector y_;
    FieldElement value_;
};

using SolveResult = std::variant<Vector, UnsolvabilityCertificate>;

std::size_t rank(const SparseMatrix& a);

/// Basis of {x : A x = 0}, canonical under the fixed pivot rule and scaled
/// so each vector's lowest-index nonzero is one. Empty iff the columns are
/// independent.
std::vector<Vector> kernel_basis(const SparseMatrix& a);

/// Either a verified solution (free variables zero) or a verified
/// certificate of unsolvability.
SolveResult solve(const SparseMatrix& a, const Vector& b);

/// Support of the unsolvability certificate: a row set whose subsystem is
/// already unsolvable. Not necessarily inclusion-minimal. Throws
/// PreconditionError on a solvable system.
std::vector<std::size_t> unsolvable_core(const SparseMatrix& a, const Vector& b);

/// Greedy row deletion on top of `core`: drops rows in increasing index order
/// as long as the rest stays unsolvable. The result is inclusion-minimal.
std::vector<std::size_t> minimize_core(const SparseMatrix& a, const Vector& b,
                                       std::vector<std::size_t> core);

/// True iff the subsystem on `rows` (all columns kept) is solvable.
bool subsystem_solvable(const SparseMatrix& a, const Vector& b, std::span<const std::size_t> rows);

} // namespace thinsys
