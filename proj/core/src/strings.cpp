#include "thinsys/strings.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace thinsys {

std::string MuValue::to_string() const {
    switch (kind_) {
    case Kind::NegInfinity: return "-inf";
    case Kind::PosInfinity: return "+inf";
    case Kind::Finite: break;
    }
    return std::to_string(value_);
}

// ---------------------------------------------------------------------------
// Saturated strings

namespace {

std::vector<std::size_t> indices_on(const std::vector<Vertex>& f, Side side) {
    std::vector<std::size_t> out;
    for (const auto& v : f) {
        if (v.side == side) out.push_back(v.index);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void require_in_graph(const SupportGraph& g, const Vertex& v) {
    if (!g.contains(v)) {
        throw PreconditionError(std::string("vertex ") + (v.side == Side::Column ? "c" : "r") +
                                std::to_string(v.index) + " is not in the graph");
    }
}

} // namespace

bool is_saturated(const SupportGraph& g, const std::vector<Vertex>& f) {
    std::vector<bool> seen_row(g.num_rows(), false);
    std::vector<bool> seen_col(g.num_columns(), false);
    bool ok = true;
    for (const auto& v : f) {
        require_in_graph(g, v);
        if (v.side == Side::Row) {
            if (seen_row[v.index]) ok = false;
            seen_row[v.index] = true;
        } else {
            if (seen_col[v.index]) ok = false;
            seen_col[v.index] = true;
            for (std::size_t i : g.rows_of(v.index)) {
                if (!seen_row[i]) ok = false;
            }
        }
    }
    return ok;
}

bool satisfies_zero_extension(const SparseMatrix& a, const std::vector<Vertex>& f) {
    std::vector<bool> listed_row(a.num_rows(), false);
    std::vector<bool> listed_col(a.num_cols(), false);
    for (const auto& v : f) {
        if (v.side == Side::Row) {
            listed_row.at(v.index) = true;
        } else {
            listed_col.at(v.index) = true;
        }
    }
    for (std::size_t i = 0; i < a.num_rows(); ++i) {
        if (listed_row[i]) continue;
        for (const auto& e : a.row(i)) {
            if (listed_col[e.index]) return false;
        }
    }
    return true;
}

SaturatedString SaturatedString::make(const SupportGraph& g, std::vector<Vertex> entries) {
    if (!is_saturated(g, entries)) throw PreconditionError("string is not saturated or not injective");
    return SaturatedString(std::move(entries));
}

SaturatedString SaturatedString::prefix(std::size_t length) const {
    if (length > entries_.size()) throw PreconditionError("prefix longer than string");
    return SaturatedString(std::vector<Vertex>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(length)));
}

std::vector<std::size_t> SaturatedString::rows() const { return indices_on(entries_, Side::Row); }
std::vector<std::size_t> SaturatedString::columns() const { return indices_on(entries_, Side::Column); }

std::vector<MuValue> mu_prefixes(const std::vector<Vertex>& f) {
    std::vector<MuValue> out;
    out.reserve(f.size() + 1);
    MuValue mu(0);
    out.push_back(mu);
    for (const auto& v : f) {
        mu = v.side == Side::Row ? mu + 1 : mu - 1;
        out.push_back(mu);
    }
    return out;
}

MuValue mu_finite(const SaturatedString& f) { return mu_prefixes(f.entries()).back(); }

MuReport evaluate_mu(const SupportGraph& g, const std::vector<Vertex>& f) {
    const bool saturated = is_saturated(g, f);
    return {mu_prefixes(f).back(), saturated};
}

SaturatedString deficiency_string(const SupportGraph& g, const std::vector<std::size_t>& violator) {
    std::vector<std::size_t> cols = violator;
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) {
        throw PreconditionError("deficiency_string: repeated column");
    }
    for (std::size_t j : cols) require_in_graph(g, Vertex::column(j));
    const auto nbrs = g.neighbourhood(cols);
    if (nbrs.size() >= cols.size()) {
        throw PreconditionError("deficiency_string: |N(J0)| = " + std::to_string(nbrs.size()) +
                                " is not below |J0| = " + std::to_string(cols.size()));
    }
    std::vector<Vertex> entries;
    entries.reserve(nbrs.size() + cols.size());
    for (std::size_t i : nbrs) entries.push_back(Vertex::row(i));
    for (std::size_t j : cols) entries.push_back(Vertex::column(j));
    return SaturatedString::make(g, std::move(entries));
}

// ---------------------------------------------------------------------------
// Ordinal strings

namespace {

std::int64_t drift(const std::vector<Side>& sides) {
    std::int64_t d = 0;
    for (Side s : sides) d += s == Side::Row ? 1 : -1;
    return d;
}

} // namespace

MuValue mu_ordinal(const OrdinalString& f) {
    MuValue mu(0);
    for (const auto& block : f.blocks) {
        if (block.pattern.empty()) throw PreconditionError("omega-block with empty pattern");
        if (!mu.is_finite()) continue;
        const std::int64_t entry = mu.value() + drift(block.preamble);
        const std::int64_t d = drift(block.pattern);
        if (d < 0) {
            mu = MuValue::neg_infinity();
        } else if (d > 0) {
            mu = MuValue::pos_infinity();
        } else {
            // Values attained infinitely often: entry + partial sums of one period.
            std::int64_t partial = 0;
            std::int64_t lowest = 0;
            for (Side s : block.pattern) {
                partial += s == Side::Row ? 1 : -1;
                lowest = std::min(lowest, partial);
            }
            mu = MuValue(entry + lowest);
        }
    }
    return mu + drift(f.tail);
}

namespace {

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ == text_.size();
    }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    /// 'r' or 'c' followed by an optional run of digits (required if `need_id`).
    std::pair<Side, std::optional<std::int64_t>> token(bool need_id) {
        const char c = peek();
        if (c != 'r' && c != 'c') fail("expected a vertex token");
        ++pos_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
            text_[pos_] != '|' && text_[pos_] != ']' && text_[pos_] != '[') {
            fail("unexpected character in vertex token");
        }
        std::optional<std::int64_t> id;
        if (pos_ > start) {
            const auto digits = text_.substr(start, pos_ - start);
            if (digits.size() > 18) fail("vertex id too large");
            id = std::stoll(std::string(digits));
        } else if (need_id) {
            fail("vertex token needs an index");
        }
        return {c == 'r' ? Side::Row : Side::Column, id};
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("string literal at offset " + std::to_string(pos_) + ": " + why);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

OrdinalString parse_ordinal_string(std::string_view text) {
    Scanner in(text);
    OrdinalString out;
    while (in.peek() == '[') {
        in.expect('[');
        OmegaBlock block;
        while (in.peek() != '|') {
            if (in.done()) in.fail("unterminated block");
            block.preamble.push_back(in.token(false).first);
        }
        in.expect('|');
        while (in.peek() != ']') {
            if (in.done()) in.fail("unterminated block");
            block.pattern.push_back(in.token(false).first);
        }
        in.expect(']');
        in.accept('*');
        if (block.pattern.empty()) in.fail("empty pattern");
        out.blocks.push_back(std::move(block));
    }
    while (!in.done()) {
        if (in.peek() == '[') in.fail("blocks must precede the finite tail");
        out.tail.push_back(in.token(false).first);
    }
    return out;
}

std::vector<Vertex> parse_string_literal(std::string_view text, const SupportGraph& g) {
    Scanner in(text);
    std::vector<Vertex> out;
    while (!in.done()) {
        const auto [side, id] = in.token(true);
        const auto index = g.index_of(side, *id);
        if (!index) {
            throw PreconditionError(std::string("vertex ") + (side == Side::Row ? "r" : "c") +
                                    std::to_string(*id) + " is not in the graph");
        }
        out.push_back({side, *index});
    }
    return out;
}

std::string format_string(const SupportGraph& g, const std::vector<Vertex>& f) {
    std::string out;
    for (const auto& v : f) {
        if (!out.empty()) out += ' ';
        out += g.label(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank witnesses

WitnessPair::WitnessPair(const SparseMatrix& a, const SaturatedString& f, std::vector<std::size_t> rows,
                         std::vector<std::size_t> columns)
    : rows_(std::move(rows)), columns_(std::move(columns)) {
    std::sort(rows_.begin(), rows_.end());
    std::sort(columns_.begin(), columns_.end());
    const auto f_rows = f.rows();
    const auto f_cols = f.columns();
    if (!std::includes(f_rows.begin(), f_rows.end(), rows_.begin(), rows_.end())) {
        throw TheoremViolation("witness rows are not within the rows of the string");
    }
    if (!std::includes(f_cols.begin(), f_cols.end(), columns_.begin(), columns_.end())) {
        throw TheoremViolation("witness columns are not within the columns of the string");
    }
    const MuValue mu = mu_finite(f);
    rank_ = thinsys::rank(a.restrict(rows_, columns_));
    mu_ = mu.value();
    if (mu_ != static_cast<std::int64_t>(rows_.size()) - static_cast<std::int64_t>(rank_)) {
        throw TheoremViolation("witness identity mu(f) = |I'| - rank fails");
    }
}

WitnessPair lemma_witness(const SparseMatrix& a, const SaturatedString& f,
                          const std::vector<std::size_t>& required_rows) {
    const SupportGraph g = SupportGraph::from_matrix(a);
    const auto& entries = f.entries();
    if (!is_saturated(g, entries)) {
        throw PreconditionError("lemma_witness: string is not saturated for this matrix");
    }
    const auto mus = mu_prefixes(entries);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!mus[k].is_finite() || mus[k].value() < 0) {
            throw PreconditionError("lemma_witness: mu is " + mus[k].to_string() + " on the prefix of length " +
                                    std::to_string(k));
        }
    }
    std::set<std::size_t> required(required_rows.begin(), required_rows.end());
    const auto f_rows = f.rows();
    if (!std::includes(f_rows.begin(), f_rows.end(), required.begin(), required.end())) {
        throw PreconditionError("lemma_witness: required rows are not within the rows of the string");
    }

    // Backward pass: each column step j0 at position k needs a finite row set
    // I1 among the earlier rows on which column j0 is not spanned by the
    // earlier columns. The requirement for prefix k is then I0 plus all I1
    // of later column steps, minus rows listed at or after k.
    std::vector<std::vector<std::size_t>> core_at(entries.size());
    for (std::size_t k = entries.size(); k-- > 0;) {
        const Vertex v = entries[k];
        if (v.side == Side::Row) {
            required.erase(v.index);
            continue;
        }
        const auto prefix = f.prefix(k);
        const auto earlier_rows = prefix.rows();
        const auto earlier_cols = prefix.columns();
        const SparseMatrix sub = a.restrict(earlier_rows, earlier_cols);
        std::vector<Entry> target;
        for (std::size_t r = 0; r < earlier_rows.size(); ++r) {
            FieldElement x = a.at(earlier_rows[r], v.index);
            if (!x.is_zero()) target.push_back({r, std::move(x)});
        }
        const Vector b = Vector::from_entries(a.spec(), earlier_rows.size(), std::move(target));
        auto result = solve(sub, b);
        if (const auto* x = std::get_if<Vector>(&result)) {
            std::vector<Entry> lambda;
            for (const auto& e : x->entries()) lambda.push_back({earlier_cols[e.index], e.value});
            lambda.push_back({v.index, -FieldElement::one(a.spec())});
            Vector kernel = Vector::from_entries(a.spec(), a.num_cols(), std::move(lambda));
            if (!a.apply(kernel).is_zero()) {
                throw TheoremViolation("column dependence on the string does not extend by zeros");
            }
            throw DependentColumnsError("column c" + std::to_string(v.index) +
                                            " is spanned by the earlier columns of the string",
                                        std::move(kernel));
        }
        const auto& cert = std::get<UnsolvabilityCertificate>(result);
        for (std::size_t r : cert.y().support()) {
            core_at[k].push_back(earlier_rows[r]);
            required.insert(earlier_rows[r]);
        }
    }
    if (!required.empty()) throw TheoremViolation("requirement left over at the empty prefix");

    // Forward pass from the empty witness.
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Vertex v = entries[k];
        if (v.side == Side::Row) {
            rows.push_back(v.index);
            continue;
        }
        std::vector<std::size_t> have = rows;
        std::sort(have.begin(), have.end());
        if (!std::includes(have.begin(), have.end(), core_at[k].begin(), core_at[k].end())) {
            throw TheoremViolation("unsolvable core not contained in the witness rows");
        }
        cols.push_back(v.index);
    }
    return WitnessPair(a, f, std::move(rows), std::move(cols));
}

} // namespace thinsys
