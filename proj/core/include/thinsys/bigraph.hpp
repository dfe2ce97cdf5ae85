#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thinsys/linalg.hpp"

namespace thinsys {

/// Left side is the column set J, right side the row set I.
enum class Side { Column, Row };

struct Vertex {
    Side side;
    std::size_t index;

    static Vertex column(std::size_t j) { return {Side::Column, j}; }
    static Vertex row(std::size_t i) { return {Side::Row, i}; }

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Bipartite graph G_A = (J, I, E) on dense indices. External ids (the
/// labels printed as c<id> / r<id>) default to the dense index and may be
/// remapped, e.g. after renumbering the rows of a streamed prefix.
class SupportGraph {
public:
    /// `edges` are (column, row) pairs; duplicates are merged.
    SupportGraph(std::size_t num_columns, std::size_t num_rows,
                 std::vector<std::pair<std::size_t, std::size_t>> edges);

    /// Edge {i, j} iff a_{i,j} != 0.
    static SupportGraph from_matrix(const SparseMatrix& a);

    std::size_t num_columns() const noexcept { return column_adj_.size(); }
    std::size_t num_rows() const noexcept { return row_adj_.size(); }
    std::size_t num_edges() const noexcept { return num_edges_; }

    /// Sorted neighbourhoods.
    const std::vector<std::size_t>& rows_of(std::size_t column) const { return column_adj_.at(column); }
    const std::vector<std::size_t>& columns_of(std::size_t row) const { return row_adj_.at(row); }
    bool has_edge(std::size_t column, std::size_t row) const;
    bool contains(const Vertex& v) const noexcept;

    /// N(J0), sorted.
    std::vector<std::size_t> neighbourhood(const std::vector<std::size_t>& columns) const;

    void set_ids(std::vector<std::int64_t> column_ids, std::vector<std::int64_t> row_ids);
    std::int64_t id_of(const Vertex& v) const;
    /// Dense index for an external id, if present on that side.
    std::optional<std::size_t> index_of(Side side, std::int64_t id) const;
    /// "c<id>" or "r<id>".
    std::string label(const Vertex& v) const;

private:
    std::vector<std::vector<std::size_t>> column_adj_;
    std::vector<std::vector<std::size_t>> row_adj_;
    std::size_t num_edges_ = 0;
    std::vector<std::int64_t> column_ids_;
    std::vector<std::int64_t> row_ids_;
};

/// Set of (column, row) edges, no vertex repeated.
class Matching {
public:
    Matching() = default;
    /// Throws PreconditionError if a vertex repeats. Sorted by column.
    explicit Matching(std::vector<std::pair<std::size_t, std::size_t>> pairs);

    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }

    std::optional<std::size_t> row_of(std::size_t column) const;
    std::optional<std::size_t> column_of(std::size_t row) const;

    /// Every pair is an edge of `g`.
    bool is_valid_in(const SupportGraph& g) const;
    bool covers_columns(const SupportGraph& g) const;
    bool covers_rows(const SupportGraph& g) const;
    bool is_perfect(const SupportGraph& g) const { return covers_columns(g) && covers_rows(g); }

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Hopcroft-Karp with index-ordered scans; the result is a deterministic
/// function of the graph.
Matching max_matching(const SupportGraph& g);

/// A column set J0 with |N(J0)| < |J0|, or nothing iff some matching covers
/// all columns. J0 is the set of columns reachable by alternating paths from
/// the columns left unmatched by max_matching.
std::optional<std::vector<std::size_t>> hall_violator(const SupportGraph& g);

/// Perfect matching assembled from a column-covering `cover_columns` and a
/// row-covering `cover_rows`, taking per component of their union either
/// the first or the second matching's edges.
Matching cantor_bernstein_merge(const SupportGraph& g, const Matching& cover_columns,
                                const Matching& cover_rows);

} // namespace thinsys
