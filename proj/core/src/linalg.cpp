#include "thinsys/linalg.hpp"

#include <algorithm>
#include <string>

#include "thinsys/error.hpp"

namespace thinsys {

namespace {

void require_field(const FieldSpec& expected, const FieldSpec& actual, const char* what) {
    if (expected != actual) {
        throw FieldError(std::string(what) + ": field mismatch (" + expected.name() + " vs " +
                         actual.name() + ")");
    }
}

// out = x + factor * y, both sorted sparse rows.
std::vector<Entry> axpy(const std::vector<Entry>& x, const FieldElement& factor,
                        std::span<const Entry> y) {
    std::vector<Entry> out;
    out.reserve(x.size() + y.size());
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < x.size() || b < y.size()) {
        if (b == y.size() || (a < x.size() && x[a].index < y[b].index)) {
            out.push_back(x[a++]);
        } else if (a == x.size() || y[b].index < x[a].index) {
            out.push_back({y[b].index, factor * y[b].value});
            ++b;
        } else {
            FieldElement v = x[a].value + factor * y[b].value;
            if (!v.is_zero()) out.push_back({x[a].index, std::move(v)});
            ++a;
            ++b;
        }
    }
    return out;
}

void scale(std::vector<Entry>& row, const FieldElement& factor) {
    for (auto& e : row) e.value *= factor;
}

} // namespace

// ---------------------------------------------------------------------------
// Vector

Vector Vector::from_entries(const FieldSpec& spec, std::size_t length, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    Vector v(spec, length);
    for (auto& e : entries) {
        require_field(spec, e.value.spec(), "vector entry");
        if (e.index >= length) {
            throw PreconditionError("vector index " + std::to_string(e.index) + " out of range " +
                                    std::to_string(length));
        }
        if (!v.entries_.empty() && v.entries_.back().index == e.index) {
            throw PreconditionError("duplicate vector index " + std::to_string(e.index));
        }
        if (!e.value.is_zero()) v.entries_.push_back(std::move(e));
    }
    return v;
}

Vector Vector::from_dense(const FieldSpec& spec, std::span<const FieldElement> values) {
    Vector v(spec, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        require_field(spec, values[i].spec(), "vector entry");
        if (!values[i].is_zero()) v.entries_.push_back({i, values[i]});
    }
    return v;
}

Vector Vector::unit(const FieldSpec& spec, std::size_t length, std::size_t index) {
    return from_entries(spec, length, {{index, FieldElement::one(spec)}});
}

FieldElement Vector::at(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.index < i; });
    if (it != entries_.end() && it->index == index) return it->value;
    return FieldElement::zero(spec_);
}

std::vector<FieldElement> Vector::dense() const {
    std::vector<FieldElement> out(length_, FieldElement::zero(spec_));
    for (const auto& e : entries_) out[e.index] = e.value;
    return out;
}

std::vector<std::size_t> Vector::support() const {
    std::vector<std::size_t> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.index);
    return out;
}

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix::SparseMatrix(const FieldSpec& spec, std::size_t num_rows, std::size_t num_cols)
    : spec_(spec), num_rows_(num_rows), num_cols_(num_cols), rows_(num_rows) {}

SparseMatrix SparseMatrix::from_triplets(const FieldSpec& spec, std::size_t num_rows,
                                         std::size_t num_cols, std::vector<Triplet> triplets) {
    SparseMatrix m(spec, num_rows, num_cols);
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (auto& t : triplets) {
        require_field(spec, t.value.spec(), "matrix entry");
        const std::string where = "(" + std::to_string(t.row) + ", " + std::to_string(t.col) + ")";
        if (t.row >= num_rows || t.col >= num_cols) {
            throw PreconditionError("entry " + where + " out of range");
        }
        if (t.value.is_zero()) throw PreconditionError("explicit zero at " + where);
        auto& row = m.rows_[t.row];
        if (!row.empty() && row.back().index == t.col) {
            throw PreconditionError("duplicate entry at " + where);
        }
        row.push_back({t.col, std::move(t.value)});
    }
    return m;
}

SparseMatrix SparseMatrix::from_dense(const FieldSpec& spec, std::size_t num_cols,
                                      const std::vector<std::vector<FieldElement>>& rows) {
    SparseMatrix m(spec, rows.size(), num_cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != num_cols) throw PreconditionError("ragged dense matrix");
        for (std::size_t j = 0; j < num_cols; ++j) {
            require_field(spec, rows[i][j].spec(), "matrix entry");
            if (!rows[i][j].is_zero()) m.rows_[i].push_back({j, rows[i][j]});
        }
    }
    return m;
}

SparseMatrix SparseMatrix::from_integers(const FieldSpec& spec,
                                         const std::vector<std::vector<long>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<std::vector<FieldElement>> values;
    values.reserve(rows.size());
    for (const auto& r : rows) {
        auto& out = values.emplace_back();
        out.reserve(r.size());
        for (long v : r) out.push_back(FieldElement::from_integer(spec, std::int64_t{v}));
    }
    return from_dense(spec, cols, values);
}

SparseMatrix SparseMatrix::identity(const FieldSpec& spec, std::size_t n) {
    SparseMatrix m(spec, n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, FieldElement::one(spec)});
    return m;
}

std::size_t SparseMatrix::nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

FieldElement SparseMatrix::at(std::size_t i, std::size_t j) const {
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t c) { return e.index < c; });
    if (it != r.end() && it->index == j) return it->value;
    return FieldElement::zero(spec_);
}

Vector SparseMatrix::column(std::size_t j) const {
    if (j >= num_cols_) throw PreconditionError("column " + std::to_string(j) + " out of range");
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < num_rows_; ++i) {
        FieldElement v = at(i, j);
        if (!v.is_zero()) entries.push_back({i, std::move(v)});
    }
    return Vector::from_entries(spec_, num_rows_, std::move(entries));
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(spec_, num_cols_, num_rows_);
    for (std::size_t i = 0; i < num_rows_; ++i) {
        for (const auto& e : rows_[i]) t.rows_[e.index].push_back({i, e.value});
    }
    return t;
}

SparseMatrix SparseMatrix::restrict(std::span<const std::size_t> row_ids,
                                    std::span<const std::size_t> col_ids) const {
    constexpr std::size_t absent = static_cast<std::size_t>(-1);
    std::vector<std::size_t> col_pos(num_cols_, absent);
    for (std::size_t k = 0; k < col_ids.size(); ++k) {
        if (col_ids[k] >= num_cols_ || col_pos[col_ids[k]] != absent) {
            throw PreconditionError("invalid column selection");
        }
        col_pos[col_ids[k]] = k;
    }
    std::vector<bool> seen_row(num_rows_, false);
    SparseMatrix sub(spec_, row_ids.size(), col_ids.size());
    for (std::size_t k = 0; k < row_ids.size(); ++k) {
        const std::size_t i = row_ids[k];
        if (i >= num_rows_ || seen_row[i]) throw PreconditionError("invalid row selection");
        seen_row[i] = true;
        auto& out = sub.rows_[k];
        for (const auto& e : rows_[i]) {
            if (col_pos[e.index] != absent) out.push_back({col_pos[e.index], e.value});
        }
        std::sort(out.begin(), out.end(),
                  [](const Entry& a, const Entry& b) { return a.index < b.index; });
    }
    return sub;
}

Vector SparseMatrix::apply(const Vector& x) const {
    require_field(spec_, x.spec(), "matrix-vector product");
    if (x.length() != num_cols_) throw PreconditionError("vector length does not match columns");
    const auto dense = x.dense();
    std::vector<Entry> out;
    for (std::size_t i = 0; i < num_rows_; ++i) {
        FieldElement acc = FieldElement::zero(spec_);
        for (const auto& e : rows_[i]) {
            if (!dense[e.index].is_zero()) acc += e.value * dense[e.index];
        }
        if (!acc.is_zero()) out.push_back({i, std::move(acc)});
    }
    return Vector::from_entries(spec_, num_rows_, std::move(out));
}

Vector SparseMatrix::apply_transpose(const Vector& y) const {
    require_field(spec_, y.spec(), "vector-matrix product");
    if (y.length() != num_rows_) throw PreconditionError("vector length does not match rows");
    std::vector<FieldElement> acc(num_cols_, FieldElement::zero(spec_));
    for (const auto& yi : y.entries()) {
        for (const auto& e : rows_[yi.index]) acc[e.index] += yi.value * e.value;
    }
    return Vector::from_dense(spec_, acc);
}

// ---------------------------------------------------------------------------
// RowEchelon

RowEchelon::RowEchelon(const FieldSpec& spec, bool track_provenance)
    : spec_(spec), track_provenance_(track_provenance) {}

const RowEchelon::StoredRow* RowEchelon::pivot_row(std::size_t col) const {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                               [](const auto& p, std::size_t c) { return p.first < c; });
    if (it == pivots_.end() || it->first != col) return nullptr;
    return &rows_[it->second];
}

RowEchelon::Insertion RowEchelon::insert(std::span<const Entry> coeffs, const FieldElement& rhs) {
    require_field(spec_, rhs.spec(), "equation");
    std::vector<Entry> row(coeffs.begin(), coeffs.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
        require_field(spec_, row[k].value.spec(), "equation");
        if (row[k].value.is_zero() || (k > 0 && row[k - 1].index >= row[k].index)) {
            throw PreconditionError("equation coefficients must be sorted, distinct and nonzero");
        }
    }
    FieldElement value = rhs;
    std::vector<Entry> provenance;
    if (track_provenance_) provenance.push_back({inserted_, FieldElement::one(spec_)});
    ++inserted_;

    // Entries before `pos` have no pivot; eliminating the entry at `pos`
    // only touches columns beyond it since pivot rows start at their pivot.
    std::size_t pos = 0;
    while (pos < row.size()) {
        const StoredRow* p = pivot_row(row[pos].index);
        if (p == nullptr) {
            ++pos;
            continue;
        }
        const FieldElement factor = -row[pos].value;
        row = axpy(row, factor, p->coeffs);
        value += factor * p->rhs;
        if (track_provenance_) provenance = axpy(provenance, factor, p->provenance);
    }

    if (row.empty()) {
        return {std::nullopt, std::move(value), std::move(provenance)};
    }

    const FieldElement inv = row.front().value.inverse();
    scale(row, inv);
    value *= inv;
    if (track_provenance_) scale(provenance, inv);

    const std::size_t col = row.front().index;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col,
                               [](const auto& q, std::size_t c) { return q.first < c; });
    pivots_.insert(it, {col, rows_.size()});
    rows_.push_back({std::move(row), std::move(value), provenance});
    return {col, FieldElement::zero(spec_), std::move(provenance)};
}

std::vector<std::size_t> RowEchelon::pivot_columns() const {
    std::vector<std::size_t> out;
    out.reserve(pivots_.size());
    for (const auto& p : pivots_) out.push_back(p.first);
    return out;
}

Vector RowEchelon::particular_solution(std::size_t num_cols) const {
    std::vector<FieldElement> x(num_cols, FieldElement::zero(spec_));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        const StoredRow& r = rows_[it->second];
        if (it->first >= num_cols) throw PreconditionError("pivot column beyond solution length");
        FieldElement v = r.rhs;
        for (std::size_t k = 1; k < r.coeffs.size(); ++k) v -= r.coeffs[k].value * x[r.coeffs[k].index];
        x[it->first] = std::move(v);
    }
    return Vector::from_dense(spec_, x);
}

std::vector<Vector> RowEchelon::null_space(std::size_t num_cols) const {
    std::vector<bool> is_pivot(num_cols, false);
    for (const auto& p : pivots_) {
        if (p.first >= num_cols) throw PreconditionError("pivot column beyond kernel length");
        is_pivot[p.first] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < num_cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> x(num_cols, FieldElement::zero(spec_));
        x[free] = FieldElement::one(spec_);
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const StoredRow& r = rows_[it->second];
            FieldElement v = FieldElement::zero(spec_);
            for (std::size_t k = 1; k < r.coeffs.size(); ++k) {
                v -= r.coeffs[k].value * x[r.coeffs[k].index];
            }
            x[it->first] = std::move(v);
        }
        const auto lead = std::find_if(x.begin(), x.end(), [](const FieldElement& e) { return !e.is_zero(); });
        const FieldElement inv = lead->inverse();
        for (auto& e : x) e *= inv;
        basis.push_back(Vector::from_dense(spec_, x));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Certificates and operations

UnsolvabilityCertificate::UnsolvabilityCertificate(Vector y, const SparseMatrix& a, const Vector& b)
    : y_(std::move(y)), value_(FieldElement::zero(a.spec())) {
    if (!a.apply_transpose(y_).is_zero()) {
        throw TheoremViolation("unsolvability certificate: y^T A is not zero");
    }
    for (const auto& e : y_.entries()) value_ += e.value * b.at(e.index);
    if (value_.is_zero()) throw TheoremViolation("unsolvability certificate: y^T b is zero");
}

std::size_t rank(const SparseMatrix& a) {
    RowEchelon ech(a.spec());
    const auto zero = FieldElement::zero(a.spec());
    for (std::size_t i = 0; i < a.num_rows(); ++i) ech.insert(a.row(i), zero);
    return ech.rank();
}

std::vector<Vector> kernel_basis(const SparseMatrix& a) {
    RowEchelon ech(a.spec());
    const auto zero = FieldElement::zero(a.spec());
    for (std::size_t i = 0; i < a.num_rows(); ++i) ech.insert(a.row(i), zero);
    auto basis = ech.null_space(a.num_cols());
    for (const auto& v : basis) {
        if (!a.apply(v).is_zero()) throw TheoremViolation("kernel vector fails A x = 0");
    }
    return basis;
}

SolveResult solve(const SparseMatrix& a, const Vector& b) {
    require_field(a.spec(), b.spec(), "solve");
    if (b.length() != a.num_rows()) throw PreconditionError("right-hand side length does not match rows");
    RowEchelon ech(a.spec(), true);
    for (std::size_t i = 0; i < a.num_rows(); ++i) {
        auto ins = ech.insert(a.row(i), b.at(i));
        if (!ins.pivot && !ins.residual.is_zero()) {
            // Same normalization as kernel vectors: lowest-index entry one.
            const FieldElement lead = ins.combination.front().value.inverse();
            scale(ins.combination, lead);
            auto y = Vector::from_entries(a.spec(), a.num_rows(), std::move(ins.combination));
            return UnsolvabilityCertificate(std::move(y), a, b);
        }
    }
    Vector x = ech.particular_solution(a.num_cols());
    if (a.apply(x) != b) throw TheoremViolation("solution fails A x = b");
    return x;
}

bool subsystem_solvable(const SparseMatrix& a, const Vector& b, std::span<const std::size_t> rows) {
    RowEchelon ech(a.spec());
    for (std::size_t i : rows) {
        if (i >= a.num_rows()) throw PreconditionError("row index out of range");
        auto ins = ech.insert(a.row(i), b.at(i));
        if (!ins.pivot && !ins.residual.is_zero()) return false;
    }
    return true;
}

std::vector<std::size_t> unsolvable_core(const SparseMatrix& a, const Vector& b) {
    auto result = solve(a, b);
    const auto* cert = std::get_if<UnsolvabilityCertificate>(&result);
    if (cert == nullptr) throw PreconditionError("unsolvable_core called on a solvable system");
    auto core = cert->y().support();
    if (subsystem_solvable(a, b, core)) throw TheoremViolation("certificate support is solvable");
    return core;
}

std::vector<std::size_t> minimize_core(const SparseMatrix& a, const Vector& b,
                                       std::vector<std::size_t> core) {
    if (subsystem_solvable(a, b, core)) throw PreconditionError("minimize_core: subsystem is solvable");
    std::size_t k = 0;
    while (k < core.size()) {
        std::vector<std::size_t> trial = core;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
        if (!subsystem_solvable(a, b, trial)) {
            core = std::move(trial);
        } else {
            ++k;
        }
    }
    return core;
}

} // namespace thinsys
