#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thinsys/bigraph.hpp"
#include "thinsys/error.hpp"
#include "thinsys/linalg.hpp"

namespace thinsys {

/// Value in Z u {-inf, +inf}. Adding an integer to an infinite value leaves
/// it unchanged.
class MuValue {
public:
    enum class Kind { NegInfinity, Finite, PosInfinity };

    constexpr MuValue() noexcept = default;
    constexpr explicit MuValue(std::int64_t value) noexcept : kind_(Kind::Finite), value_(value) {}
    static constexpr MuValue neg_infinity() noexcept { return MuValue(Kind::NegInfinity); }
    static constexpr MuValue pos_infinity() noexcept { return MuValue(Kind::PosInfinity); }

    constexpr Kind kind() const noexcept { return kind_; }
    constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    /// Only meaningful when finite.
    constexpr std::int64_t value() const noexcept { return value_; }

    constexpr MuValue operator+(std::int64_t k) const noexcept {
        return is_finite() ? MuValue(value_ + k) : *this;
    }
    constexpr MuValue operator-(std::int64_t k) const noexcept { return *this + (-k); }

    friend constexpr bool operator==(const MuValue& a, const MuValue& b) noexcept {
        return a.kind_ == b.kind_ && (!a.is_finite() || a.value_ == b.value_);
    }
    friend constexpr bool operator<(const MuValue& a, const MuValue& b) noexcept {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        return a.is_finite() && a.value_ < b.value_;
    }

    /// "-inf", "+inf" or the integer.
    std::string to_string() const;

private:
    constexpr explicit MuValue(Kind kind) noexcept : kind_(kind) {}

    Kind kind_ = Kind::Finite;
    std::int64_t value_ = 0;
};

/// Injective finite sequence of vertices of a support graph in which every
/// column appears only after all of its neighbouring rows.
class SaturatedString {
public:
    SaturatedString() = default;

    /// Throws PreconditionError if `entries` is not injective, not
    /// saturated, or mentions a vertex outside `g`.
    static SaturatedString make(const SupportGraph& g, std::vector<Vertex> entries);

    const std::vector<Vertex>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// f restricted to its first `length` positions (still saturated).
    SaturatedString prefix(std::size_t length) const;
    /// ran_I(f) and ran_J(f), sorted.
    std::vector<std::size_t> rows() const;
    std::vector<std::size_t> columns() const;

private:
    explicit SaturatedString(std::vector<Vertex> entries) : entries_(std::move(entries)) {}

    std::vector<Vertex> entries_;
};

/// True iff `f` is injective and each column's neighbours all occur
/// strictly earlier. Throws PreconditionError for a vertex outside `g`.
bool is_saturated(const SupportGraph& g, const std::vector<Vertex>& f);

/// Rows absent from f have zero entries in every column of f. Holds for
/// every string saturated with respect to the support graph of `a`.
bool satisfies_zero_extension(const SparseMatrix& a, const std::vector<Vertex>& f);

/// mu by the successor rule: +1 per row entry, -1 per column entry.
MuValue mu_finite(const SaturatedString& f);
/// mu of every prefix f|0, f|1, ..., f|len.
std::vector<MuValue> mu_prefixes(const std::vector<Vertex>& f);

/// mu evaluated on any injective sequence, together with whether it is
/// saturated. The value carries no meaning for unsaturated input.
struct MuReport {
    MuValue mu;
    bool saturated;
};
MuReport evaluate_mu(const SupportGraph& g, const std::vector<Vertex>& f);

/// Violating string for a Hall violator J0: N(J0) in index order, then J0 in
/// index order. Its mu is |N(J0)| - |J0| < 0.
SaturatedString deficiency_string(const SupportGraph& g, const std::vector<std::size_t>& violator);

// ---------------------------------------------------------------------------
// Ordinal strings below omega^2

/// An omega-block: a finite preamble followed by `pattern` repeated forever.
/// Pattern instances stand for fresh vertices, so only the sides matter for mu.
struct OmegaBlock {
    std::vector<Side> preamble;
    std::vector<Side> pattern;
};

/// String of length omega*m + k: m omega-blocks followed by a finite tail.
struct OrdinalString {
    std::vector<OmegaBlock> blocks;
    std::vector<Side> tail;
};

/// Closed-form mu. Each block has period drift d = (#rows - #columns) per
/// pattern; the liminf at the block's limit is -inf for d < 0, +inf for
/// d > 0, and otherwise the entry value plus the smallest offset reached
/// inside the eventual cycle. Throws PreconditionError on an empty pattern.
MuValue mu_ordinal(const OrdinalString& f);

/// Parses "[preamble | pattern]" groups (an optional '*' may follow each ']')
/// then a tail. Tokens are 'r' or 'c', optionally followed by digits.
OrdinalString parse_ordinal_string(std::string_view text);

/// Parses whitespace-separated "r<id>" / "c<id>" tokens resolved through
/// the graph's vertex ids.
std::vector<Vertex> parse_string_literal(std::string_view text, const SupportGraph& g);
std::string format_string(const SupportGraph& g, const std::vector<Vertex>& f);

// ---------------------------------------------------------------------------
// Rank witnesses

/// Row set I' and column set J' with mu(f) = |I'| - rank(A|I' x J').
class WitnessPair {
public:
    /// Verifies I' within ran_I(f), J' within ran_J(f) and the rank
    /// identity; throws TheoremViolation otherwise.
    WitnessPair(const SparseMatrix& a, const SaturatedString& f, std::vector<std::size_t> rows,
                std::vector<std::size_t> columns);

    const std::vector<std::size_t>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& columns() const noexcept { return columns_; }
    std::int64_t mu() const noexcept { return mu_; }
    std::size_t rank() const noexcept { return rank_; }

private:
    std::vector<std::size_t> rows_;
    std::vector<std::size_t> columns_;
    std::int64_t mu_;
    std::size_t rank_;
};

/// The column step of the witness construction found the new column in the
/// span of the earlier ones; `kernel_vector` is the resulting nonzero
/// vector with A x = 0.
class DependentColumnsError : public Error {
public:
    DependentColumnsError(const std::string& what, Vector kernel_vector)
        : Error(what), kernel_vector_(std::move(kernel_vector)) {}

    const Vector& kernel_vector() const noexcept { return kernel_vector_; }

private:
    Vector kernel_vector_;
};

/// Builds (I', J') for a saturated string f of the support graph of `a`,
/// with `required_rows` (I0) contained in I'. Follows the induction over
/// the length of f: a row step adds the row to I' (the rank is unchanged
/// since the row is zero on every earlier column); a column step j0 solves
/// sum_{earlier j} a_ij x_j = a_ij0 over the earlier rows, whose
/// unsolvability certificate supplies rows I1 that are added to the
/// requirement for the shorter prefix, so the new column raises the rank.
///
/// Throws PreconditionError when f is not saturated, I0 is not within
/// ran_I(f), or mu is negative on a proper prefix; throws
/// DependentColumnsError when a column step is solvable.
WitnessPair lemma_witness(const SparseMatrix& a, const SaturatedString& f,
                          const std::vector<std::size_t>& required_rows);

} // namespace thinsys
