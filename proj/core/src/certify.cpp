#include "thinsys/certify.hpp"

#include <algorithm>
#include <string>

#include "thinsys/error.hpp"

namespace thinsys {

namespace {

void check_injective_nonzero(const SparseMatrix& a, const std::vector<std::size_t>& row_of_column,
                             const char* what) {
    if (row_of_column.size() != a.num_cols()) {
        throw TheoremViolation(std::string(what) + ": map does not cover every column");
    }
    std::vector<bool> used(a.num_rows(), false);
    for (std::size_t j = 0; j < row_of_column.size(); ++j) {
        const std::size_t i = row_of_column[j];
        if (i >= a.num_rows() || used[i]) throw TheoremViolation(std::string(what) + ": map is not injective");
        used[i] = true;
        if (a.at(i, j).is_zero()) {
            throw TheoremViolation(std::string(what) + ": c" + std::to_string(j) + " -> r" +
                                   std::to_string(i) + " hits a zero entry");
        }
    }
}

Sdr sdr_from_matching(const SparseMatrix& a, const Matching& m) {
    std::vector<std::size_t> phi(a.num_cols());
    for (const auto& [j, i] : m.pairs()) phi[j] = i;
    return Sdr(a, std::move(phi));
}

} // namespace

Sdr::Sdr(const SparseMatrix& a, std::vector<std::size_t> row_of_column)
    : row_of_column_(std::move(row_of_column)) {
    check_injective_nonzero(a, row_of_column_, "SDR");
}

Dependence::Dependence(const SparseMatrix& a, Vector kernel_vector, Source source,
                       std::vector<std::size_t> violator)
    : kernel_vector_(std::move(kernel_vector)), source_(source), violator_(std::move(violator)) {
    if (kernel_vector_.is_zero()) throw TheoremViolation("dependence vector is zero");
    if (!a.apply(kernel_vector_).is_zero()) throw TheoremViolation("dependence vector fails A x = 0");
}

Bijection::Bijection(const SparseMatrix& a, std::vector<std::size_t> row_of_column)
    : row_of_column_(std::move(row_of_column)) {
    if (a.num_rows() != a.num_cols()) throw TheoremViolation("bijection on a non-square matrix");
    check_injective_nonzero(a, row_of_column_, "bijection");
    column_of_row_.resize(a.num_rows());
    for (std::size_t j = 0; j < row_of_column_.size(); ++j) column_of_row_[row_of_column_[j]] = j;
}

Matching to_matching(const Sdr& sdr) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < sdr.row_of_column().size(); ++j) pairs.emplace_back(j, sdr(j));
    return Matching(std::move(pairs));
}

Certificate certify_columns(const SparseMatrix& a, const CertifyOptions& options) {
    const auto kernel = kernel_basis(a);
    const SupportGraph g = SupportGraph::from_matrix(a);

    if (kernel.empty()) {
        const Matching m = max_matching(g);
        if (!m.covers_columns(g)) {
            throw TheoremViolation("trivial kernel but no column-covering matching");
        }
        return sdr_from_matching(a, m);
    }

    if (options.via_violator) {
        if (auto violator = hall_violator(g)) {
            // Rows outside N(J0) vanish on J0, so a kernel vector of the
            // N(J0) x J0 block extends by zeros to one of A. The block has
            // fewer rows than columns, hence a nontrivial kernel.
            const auto rows = g.neighbourhood(*violator);
            const auto local = kernel_basis(a.restrict(rows, *violator));
            if (local.empty()) throw TheoremViolation("Hall violator block has a trivial kernel");
            std::vector<Entry> lifted;
            for (const auto& e : local.front().entries()) lifted.push_back({(*violator)[e.index], e.value});
            return Dependence(a, Vector::from_entries(a.spec(), a.num_cols(), std::move(lifted)),
                              Dependence::Source::HallViolator, *violator);
        }
    }
    return Dependence(a, kernel.front());
}

DiagonalizeResult diagonalize(const SparseMatrix& a) {
    if (a.num_rows() != a.num_cols()) {
        throw PreconditionError("diagonalize: shape " + std::to_string(a.num_rows()) + "x" +
                                std::to_string(a.num_cols()) +
                                " is not square, so rows and columns cannot both be independent");
    }
    const SparseMatrix t = a.transpose();

    const Certificate rows_cert = certify_columns(t);
    if (const auto* dep = std::get_if<Dependence>(&rows_cert)) {
        return SideDependence{Side::Row, dep->kernel_vector()};
    }
    const Certificate cols_cert = certify_columns(a);
    if (const auto* dep = std::get_if<Dependence>(&cols_cert)) {
        return SideDependence{Side::Column, dep->kernel_vector()};
    }

    const SupportGraph g = SupportGraph::from_matrix(a);
    const Matching cover_columns = to_matching(std::get<Sdr>(cols_cert));
    // The transpose's SDR maps each row to a column; flip it into (column, row) pairs.
    std::vector<std::pair<std::size_t, std::size_t>> flipped;
    const auto& row_sdr = std::get<Sdr>(rows_cert);
    for (std::size_t i = 0; i < row_sdr.row_of_column().size(); ++i) flipped.emplace_back(row_sdr(i), i);
    const Matching cover_rows(std::move(flipped));

    const Matching perfect = cantor_bernstein_merge(g, cover_columns, cover_rows);
    std::vector<std::size_t> psi(a.num_cols());
    for (const auto& [j, i] : perfect.pairs()) psi[j] = i;
    return Bijection(a, std::move(psi));
}

} // namespace thinsys
