#include "thinsys/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "thinsys/error.hpp"

namespace thinsys {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::istringstream in(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
    std::size_t value = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line);
    }
    return value;
}

} // namespace

SparseMatrix read_matrix(std::istream& in) {
    std::optional<FieldSpec> spec;
    std::optional<std::pair<std::size_t, std::size_t>> dims;
    std::vector<Triplet> triplets;
    std::vector<std::size_t> triplet_lines;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (!spec) {
            if (fields[0] != "field") throw ParseError("expected 'field rational' or 'field gf <p>'", lineno);
            if (fields.size() == 2 && fields[1] == "rational") {
                spec = FieldSpec::rationals();
            } else if (fields.size() == 3 && fields[1] == "gf") {
                try {
                    spec = FieldSpec::prime_field(parse_count(fields[2], lineno, "modulus"));
                } catch (const FieldError& e) {
                    throw ParseError(e.what(), lineno);
                }
            } else {
                throw ParseError("expected 'field rational' or 'field gf <p>'", lineno);
            }
            continue;
        }
        if (!dims) {
            if (fields.size() != 2) throw ParseError("expected '<rows> <cols>'", lineno);
            dims = {parse_count(fields[0], lineno, "row count"), parse_count(fields[1], lineno, "column count")};
            continue;
        }
        if (fields.size() != 3) throw ParseError("expected '<row> <col> <scalar>'", lineno);
        const std::size_t r = parse_count(fields[0], lineno, "row index");
        const std::size_t c = parse_count(fields[1], lineno, "column index");
        if (r >= dims->first || c >= dims->second) throw ParseError("entry index out of range", lineno);
        FieldElement value = FieldElement::zero(*spec);
        try {
            value = parse_scalar(fields[2], *spec);
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
        if (value.is_zero()) throw ParseError("explicit zero entry", lineno);
        triplets.push_back({r, c, std::move(value)});
        triplet_lines.push_back(lineno);
    }
    if (!spec) throw ParseError("missing field header", lineno);
    if (!dims) throw ParseError("missing dimension line", lineno);

    // Duplicate detection with the offending line number.
    std::vector<std::size_t> order(triplets.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(triplets[a].row, triplets[a].col) < std::pair(triplets[b].row, triplets[b].col);
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& p = triplets[order[k - 1]];
        const auto& q = triplets[order[k]];
        if (p.row == q.row && p.col == q.col) {
            throw ParseError("duplicate entry (" + std::to_string(q.row) + ", " + std::to_string(q.col) + ")",
                             triplet_lines[order[k]]);
        }
    }
    return SparseMatrix::from_triplets(*spec, dims->first, dims->second, std::move(triplets));
}

SparseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return read_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

SparseMatrix parse_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const SparseMatrix& a) {
    out << "field " << a.spec().name() << '\n';
    out << a.num_rows() << ' ' << a.num_cols() << '\n';
    for (std::size_t i = 0; i < a.num_rows(); ++i) {
        for (const auto& e : a.row(i)) out << i << ' ' << e.index << ' ' << render(e.value) << '\n';
    }
}

std::string format_matrix(const SparseMatrix& a) {
    std::ostringstream out;
    write_matrix(out, a);
    return out.str();
}

std::string format_dense(const Vector& v) {
    std::string out;
    for (const auto& x : v.dense()) {
        if (!out.empty()) out += ' ';
        out += render(x);
    }
    return out;
}

} // namespace thinsys
