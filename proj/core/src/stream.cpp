#include "thinsys/stream.hpp"

#include <algorithm>
#include <string>

#include "thinsys/error.hpp"

namespace thinsys {

StreamState::StreamState(const FieldSpec& spec) : spec_(spec), echelon_(spec, true) {}

const StreamState::Status& StreamState::push(std::vector<Entry> coeffs, const FieldElement& rhs) {
    if (rhs.spec() != spec_) throw FieldError("stream: right-hand side from field " + rhs.spec().name());
    std::sort(coeffs.begin(), coeffs.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    std::vector<Entry> row;
    row.reserve(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].value.spec() != spec_) {
            throw FieldError("stream: coefficient from field " + coeffs[k].value.spec().name());
        }
        if (k > 0 && coeffs[k - 1].index == coeffs[k].index) {
            throw PreconditionError("stream: column " + std::to_string(coeffs[k].index) + " repeated in a row");
        }
        if (!coeffs[k].value.is_zero()) row.push_back(std::move(coeffs[k]));
    }

    if (!row.empty()) num_columns_ = std::max(num_columns_, row.back().index + 1);
    rows_.push_back(row);
    rhs_.push_back(rhs);
    if (!status_.solvable) return status_;

    auto ins = echelon_.insert(row, rhs);
    if (!ins.pivot && !ins.residual.is_zero()) {
        status_.solvable = false;
        status_.prefix_length = rows_.size();
        status_.core.clear();
        for (const auto& e : ins.combination) status_.core.push_back(e.index);
        if (subsystem_solvable(matrix(), this->rhs(), status_.core)) {
            throw TheoremViolation("stream: reported core is solvable");
        }
    }
    return status_;
}

Vector StreamState::solution() const {
    if (!status_.solvable) throw PreconditionError("stream: no solution, prefix is unsolvable");
    Vector x = echelon_.particular_solution(num_columns_);
    if (matrix().apply(x) != this->rhs()) throw TheoremViolation("stream solution fails the accepted rows");
    return x;
}

SparseMatrix StreamState::matrix() const {
    std::vector<Triplet> triplets;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& e : rows_[i]) triplets.push_back({i, e.index, e.value});
    }
    return SparseMatrix::from_triplets(spec_, rows_.size(), num_columns_, std::move(triplets));
}

Vector StreamState::rhs() const { return Vector::from_dense(spec_, rhs_); }

} // namespace thinsys
