#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "thinsys/linalg.hpp"

namespace thinsys {

/// Incremental solvability of a thin system whose equations arrive one at a
/// time, with a growing variable set.
///
/// "All prefixes solvable" is evidence about the equations seen so far
/// only, never a claim about an unseen remainder of the system. Once a
/// prefix is unsolvable the status is frozen: later pushes are accepted
/// but ignored.
///
/// Single writer: pushes on one StreamState must be sequential.
class StreamState {
public:
    struct Status {
        bool solvable = true;
        /// Length of the first unsolvable prefix (0 while solvable).
        std::size_t prefix_length = 0;
        /// Rows whose subsystem alone is unsolvable, ascending.
        std::vector<std::size_t> core;
    };

    explicit StreamState(const FieldSpec& spec);

    /// Adds sum_k coeffs[k].value * x_{coeffs[k].index} = rhs. Coefficients
    /// may come unsorted; zeros are dropped. Throws PreconditionError on a
    /// repeated column and FieldError on a foreign scalar.
    const Status& push(std::vector<Entry> coeffs, const FieldElement& rhs);

    const FieldSpec& spec() const noexcept { return spec_; }
    const Status& status() const noexcept { return status_; }
    std::size_t rows_seen() const noexcept { return rows_.size(); }
    /// One past the largest variable index seen.
    std::size_t num_columns() const noexcept { return num_columns_; }

    /// Solution of the current prefix with free variables zero, verified
    /// against every accepted row. Throws PreconditionError once unsolvable.
    Vector solution() const;

    /// The accepted rows assembled as a matrix and right-hand side.
    SparseMatrix matrix() const;
    Vector rhs() const;

private:
    FieldSpec spec_;
    RowEchelon echelon_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<FieldElement> rhs_;
    std::size_t num_columns_ = 0;
    Status status_;
};

} // namespace thinsys
