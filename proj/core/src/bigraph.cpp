#include "thinsys/bigraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "thinsys/error.hpp"

namespace thinsys {

namespace {

constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

} // namespace

// ---------------------------------------------------------------------------
// SupportGraph

SupportGraph::SupportGraph(std::size_t num_columns, std::size_t num_rows,
                           std::vector<std::pair<std::size_t, std::size_t>> edges)
    : column_adj_(num_columns), row_adj_(num_rows) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [j, i] : edges) {
        if (j >= num_columns || i >= num_rows) throw PreconditionError("edge endpoint out of range");
        column_adj_[j].push_back(i);
        row_adj_[i].push_back(j);
    }
    for (auto& adj : row_adj_) std::sort(adj.begin(), adj.end());
    num_edges_ = edges.size();
    column_ids_.resize(num_columns);
    row_ids_.resize(num_rows);
    for (std::size_t j = 0; j < num_columns; ++j) column_ids_[j] = static_cast<std::int64_t>(j);
    for (std::size_t i = 0; i < num_rows; ++i) row_ids_[i] = static_cast<std::int64_t>(i);
}

SupportGraph SupportGraph::from_matrix(const SparseMatrix& a) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(a.nonzeros());
    for (std::size_t i = 0; i < a.num_rows(); ++i) {
        for (const auto& e : a.row(i)) edges.emplace_back(e.index, i);
    }
    SupportGraph g(a.num_cols(), a.num_rows(), std::move(edges));
    if (g.num_edges() != a.nonzeros()) throw TheoremViolation("support graph edge count mismatch");
    return g;
}

bool SupportGraph::has_edge(std::size_t column, std::size_t row) const {
    const auto& adj = column_adj_.at(column);
    return std::binary_search(adj.begin(), adj.end(), row);
}

bool SupportGraph::contains(const Vertex& v) const noexcept {
    return v.side == Side::Column ? v.index < num_columns() : v.index < num_rows();
}

std::vector<std::size_t> SupportGraph::neighbourhood(const std::vector<std::size_t>& columns) const {
    std::vector<std::size_t> out;
    for (std::size_t j : columns) {
        const auto& adj = column_adj_.at(j);
        out.insert(out.end(), adj.begin(), adj.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void SupportGraph::set_ids(std::vector<std::int64_t> column_ids, std::vector<std::int64_t> row_ids) {
    if (column_ids.size() != num_columns() || row_ids.size() != num_rows()) {
        throw PreconditionError("id table size does not match the graph");
    }
    for (auto* ids : {&column_ids, &row_ids}) {
        auto sorted = *ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw PreconditionError("vertex ids must be distinct per side");
        }
    }
    column_ids_ = std::move(column_ids);
    row_ids_ = std::move(row_ids);
}

std::int64_t SupportGraph::id_of(const Vertex& v) const {
    return v.side == Side::Column ? column_ids_.at(v.index) : row_ids_.at(v.index);
}

std::optional<std::size_t> SupportGraph::index_of(Side side, std::int64_t id) const {
    const auto& ids = side == Side::Column ? column_ids_ : row_ids_;
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
}

std::string SupportGraph::label(const Vertex& v) const {
    return (v.side == Side::Column ? "c" : "r") + std::to_string(id_of(v));
}

// ---------------------------------------------------------------------------
// Matching

Matching::Matching(std::vector<std::pair<std::size_t, std::size_t>> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
        if (pairs_[k].first == pairs_[k - 1].first) throw PreconditionError("matching repeats a column");
    }
    std::vector<std::size_t> rows;
    rows.reserve(pairs_.size());
    for (const auto& p : pairs_) rows.push_back(p.second);
    std::sort(rows.begin(), rows.end());
    if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
        throw PreconditionError("matching repeats a row");
    }
}

std::optional<std::size_t> Matching::row_of(std::size_t column) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{column, std::size_t{0}});
    if (it == pairs_.end() || it->first != column) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Matching::column_of(std::size_t row) const {
    for (const auto& [j, i] : pairs_) {
        if (i == row) return j;
    }
    return std::nullopt;
}

bool Matching::is_valid_in(const SupportGraph& g) const {
    return std::all_of(pairs_.begin(), pairs_.end(), [&](const auto& p) {
        return p.first < g.num_columns() && p.second < g.num_rows() && g.has_edge(p.first, p.second);
    });
}

bool Matching::covers_columns(const SupportGraph& g) const {
    return is_valid_in(g) && pairs_.size() == g.num_columns();
}

bool Matching::covers_rows(const SupportGraph& g) const {
    return is_valid_in(g) && pairs_.size() == g.num_rows();
}

// ---------------------------------------------------------------------------
// Maximum matching

namespace {

class HopcroftKarp {
public:
    explicit HopcroftKarp(const SupportGraph& g)
        : g_(g), mate_col_(g.num_columns(), none), mate_row_(g.num_rows(), none),
          dist_(g.num_columns(), none) {}

    void run() {
        while (bfs()) {
            for (std::size_t j = 0; j < g_.num_columns(); ++j) {
                if (mate_col_[j] == none) augment(j);
            }
        }
    }

    Matching result() const {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t j = 0; j < mate_col_.size(); ++j) {
            if (mate_col_[j] != none) pairs.emplace_back(j, mate_col_[j]);
        }
        return Matching(std::move(pairs));
    }

private:
    // Layers free columns at distance 0; true iff some free row is reachable.
    bool bfs() {
        std::deque<std::size_t> queue;
        for (std::size_t j = 0; j < g_.num_columns(); ++j) {
            dist_[j] = mate_col_[j] == none ? 0 : none;
            if (dist_[j] == 0) queue.push_back(j);
        }
        bool found = false;
        while (!queue.empty()) {
            const std::size_t j = queue.front();
            queue.pop_front();
            for (std::size_t i : g_.rows_of(j)) {
                const std::size_t next = mate_row_[i];
                if (next == none) {
                    found = true;
                } else if (dist_[next] == none) {
                    dist_[next] = dist_[j] + 1;
                    queue.push_back(next);
                }
            }
        }
        return found;
    }

    // Iterative layered DFS from free column `root`.
    bool augment(std::size_t root) {
        struct Frame {
            std::size_t column;
            std::size_t next_edge;
        };
        std::vector<Frame> stack{{root, 0}};
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& adj = g_.rows_of(top.column);
            if (top.next_edge == adj.size()) {
                dist_[top.column] = none;
                stack.pop_back();
                continue;
            }
            const std::size_t i = adj[top.next_edge++];
            const std::size_t next = mate_row_[i];
            if (next == none) {
                // Flip the path: each column on the stack takes the row it
                // descended through.
                std::size_t row = i;
                for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                    const std::size_t prev = mate_col_[it->column];
                    mate_col_[it->column] = row;
                    mate_row_[row] = it->column;
                    row = prev;
                }
                return true;
            }
            if (dist_[next] == dist_[top.column] + 1) stack.push_back({next, 0});
        }
        return false;
    }

    const SupportGraph& g_;
    std::vector<std::size_t> mate_col_;
    std::vector<std::size_t> mate_row_;
    std::vector<std::size_t> dist_;
};

} // namespace

Matching max_matching(const SupportGraph& g) {
    HopcroftKarp hk(g);
    hk.run();
    return hk.result();
}

std::optional<std::vector<std::size_t>> hall_violator(const SupportGraph& g) {
    const Matching m = max_matching(g);
    if (m.size() == g.num_columns()) return std::nullopt;

    std::vector<std::size_t> mate_row(g.num_rows(), none);
    std::vector<bool> matched_col(g.num_columns(), false);
    for (const auto& [j, i] : m.pairs()) {
        mate_row[i] = j;
        matched_col[j] = true;
    }
    std::vector<bool> seen(g.num_columns(), false);
    std::deque<std::size_t> queue;
    for (std::size_t j = 0; j < g.num_columns(); ++j) {
        if (!matched_col[j]) {
            seen[j] = true;
            queue.push_back(j);
        }
    }
    while (!queue.empty()) {
        const std::size_t j = queue.front();
        queue.pop_front();
        for (std::size_t i : g.rows_of(j)) {
            const std::size_t next = mate_row[i];
            // Maximality: every row reached here is matched.
            if (next == none) throw TheoremViolation("augmenting path after maximum matching");
            if (!seen[next]) {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    std::vector<std::size_t> violator;
    for (std::size_t j = 0; j < g.num_columns(); ++j) {
        if (seen[j]) violator.push_back(j);
    }
    if (g.neighbourhood(violator).size() >= violator.size()) {
        throw TheoremViolation("alternating-reachable set is not a Hall violator");
    }
    return violator;
}

// ---------------------------------------------------------------------------
// Cantor-Bernstein merge

Matching cantor_bernstein_merge(const SupportGraph& g, const Matching& cover_columns,
                                const Matching& cover_rows) {
    if (!cover_columns.covers_columns(g)) {
        throw PreconditionError("cantor_bernstein_merge: first matching does not cover the columns");
    }
    if (!cover_rows.covers_rows(g)) {
        throw PreconditionError("cantor_bernstein_merge: second matching does not cover the rows");
    }

    const std::size_t nc = g.num_columns();
    const std::size_t nr = g.num_rows();
    std::vector<std::size_t> s_of_col(nc, none), s_of_row(nr, none);
    std::vector<std::size_t> t_of_col(nc, none), t_of_row(nr, none);
    for (const auto& [j, i] : cover_columns.pairs()) {
        s_of_col[j] = i;
        s_of_row[i] = j;
    }
    for (const auto& [j, i] : cover_rows.pairs()) {
        t_of_col[j] = i;
        t_of_row[i] = j;
    }

    // Components of the union: vertex ids are columns [0, nc) then rows.
    std::vector<std::size_t> component(nc + nr, none);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t start = 0; start < nc + nr; ++start) {
        if (component[start] != none) continue;
        const std::size_t c = members.size();
        auto& list = members.emplace_back();
        std::vector<std::size_t> stack{start};
        component[start] = c;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            list.push_back(v);
            std::size_t nbrs[2];
            if (v < nc) {
                nbrs[0] = s_of_col[v] == none ? none : nc + s_of_col[v];
                nbrs[1] = t_of_col[v] == none ? none : nc + t_of_col[v];
            } else {
                nbrs[0] = s_of_row[v - nc];
                nbrs[1] = t_of_row[v - nc];
            }
            for (std::size_t w : nbrs) {
                if (w != none && component[w] == none) {
                    component[w] = c;
                    stack.push_back(w);
                }
            }
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& list : members) {
        // A column missed by the row cover can only be served by the column
        // cover (path starting at that column), and symmetrically for rows.
        bool column_open = false;
        bool row_open = false;
        for (std::size_t v : list) {
            if (v < nc && t_of_col[v] == none) column_open = true;
            if (v >= nc && s_of_row[v - nc] == none) row_open = true;
        }
        if (column_open && row_open) {
            throw TheoremViolation("component open on both sides; coverings are inconsistent");
        }
        const bool use_rows_cover = row_open;
        for (std::size_t v : list) {
            if (use_rows_cover && v >= nc) pairs.emplace_back(t_of_row[v - nc], v - nc);
            if (!use_rows_cover && v < nc) pairs.emplace_back(v, s_of_col[v]);
        }
    }
    Matching merged(std::move(pairs));
    if (!merged.is_perfect(g)) throw TheoremViolation("merged matching is not perfect");
    return merged;
}

} // namespace thinsys
