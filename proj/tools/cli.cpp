#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "thinsys/bigraph.hpp"
#include "thinsys/certify.hpp"
#include "thinsys/error.hpp"
#include "thinsys/linalg.hpp"
#include "thinsys/matrix_io.hpp"
#include "thinsys/stream.hpp"
#include "thinsys/strings.hpp"

namespace thinsys::cli {

namespace {

std::string join_labels(char prefix, const std::vector<std::size_t>& ids) {
    std::string out;
    for (std::size_t id : ids) {
        if (!out.empty()) out += ", ";
        out += prefix + std::to_string(id);
    }
    return out;
}

std::string format_assignment(const std::vector<std::size_t>& row_of_column) {
    std::string out;
    for (std::size_t j = 0; j < row_of_column.size(); ++j) {
        if (!out.empty()) out += ", ";
        out += "c" + std::to_string(j) + " -> r" + std::to_string(row_of_column[j]);
    }
    return out;
}

FieldSpec parse_field_option(const std::string& text) {
    if (text == "rational") return FieldSpec::rationals();
    std::string rest;
    if (text.rfind("gf:", 0) == 0) {
        rest = text.substr(3);
    } else if (text.rfind("gf ", 0) == 0) {
        rest = text.substr(3);
    } else {
        throw ParseError("unknown field '" + text + "' (use 'rational' or 'gf:<p>')");
    }
    std::uint64_t p = 0;
    const auto* end = rest.data() + rest.size();
    auto [ptr, ec] = std::from_chars(rest.data(), end, p);
    if (ec != std::errc() || ptr != end) throw ParseError("invalid modulus '" + rest + "'");
    return FieldSpec::prime_field(p);
}

Vector parse_dense_vector(const std::string& text, const FieldSpec& spec, std::size_t length) {
    std::istringstream in(text);
    std::vector<FieldElement> values;
    for (std::string tok; in >> tok;) values.push_back(parse_scalar(tok, spec));
    if (values.size() != length) {
        throw ParseError("right-hand side has " + std::to_string(values.size()) + " entries, expected " +
                         std::to_string(length));
    }
    return Vector::from_dense(spec, values);
}

// "<rhs> ; <col>:<scalar> <col>:<scalar> ..."
std::pair<std::vector<Entry>, FieldElement> parse_stream_row(const std::string& line, const FieldSpec& spec,
                                                             std::size_t lineno) {
    const auto semi = line.find(';');
    if (semi == std::string::npos) throw ParseError("expected '<rhs> ; <col>:<scalar> ...'", lineno);
    FieldElement rhs = FieldElement::zero(spec);
    try {
        rhs = parse_scalar(line.substr(0, semi), spec);
    } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
    }
    std::vector<Entry> coeffs;
    std::istringstream in(line.substr(semi + 1));
    for (std::string tok; in >> tok;) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos || colon == 0) throw ParseError("expected '<col>:<scalar>', got '" + tok + "'", lineno);
        std::size_t col = 0;
        const char* first = tok.data();
        const char* last = tok.data() + colon;
        auto [ptr, ec] = std::from_chars(first, last, col);
        if (ec != std::errc() || ptr != last) throw ParseError("invalid column in '" + tok + "'", lineno);
        try {
            coeffs.push_back({col, parse_scalar(tok.substr(colon + 1), spec)});
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return {std::move(coeffs), std::move(rhs)};
}

bool is_blank_or_comment(const std::string& line) {
    const auto body = line.substr(0, line.find('#'));
    return std::all_of(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); });
}

int cmd_rank(const std::string& path, std::ostream& out) {
    const SparseMatrix a = read_matrix_file(path);
    out << "rank = " << rank(a) << '\n';
    return exit_positive;
}

int cmd_kernel(const std::string& path, std::ostream& out) {
    const SparseMatrix a = read_matrix_file(path);
    const auto basis = kernel_basis(a);
    out << "nullity = " << basis.size() << '\n';
    for (const auto& v : basis) out << "KERNEL: " << format_dense(v) << '\n';
    return basis.empty() ? exit_positive : exit_refutation;
}

int cmd_solve(const std::string& path, const std::string& rhs_text, bool minimize, std::ostream& out) {
    const SparseMatrix a = read_matrix_file(path);
    const Vector b = parse_dense_vector(rhs_text, a.spec(), a.num_rows());
    const SolveResult result = solve(a, b);
    if (const auto* x = std::get_if<Vector>(&result)) {
        out << "SOLUTION: " << format_dense(*x) << '\n';
        return exit_positive;
    }
    const auto& cert = std::get<UnsolvabilityCertificate>(result);
    out << "UNSOLVABLE: " << format_dense(cert.y()) << '\n';
    out << "y^T b = " << render(cert.value()) << '\n';
    auto core = cert.y().support();
    if (minimize) core = minimize_core(a, b, core);
    out << (minimize ? "minimal core: " : "core: ") << join_labels('r', core) << '\n';
    return exit_refutation;
}

int cmd_certify(const std::string& path, bool via_violator, std::ostream& out) {
    const SparseMatrix a = read_matrix_file(path);
    const Certificate cert = certify_columns(a, CertifyOptions{via_violator});
    if (const auto* sdr = std::get_if<Sdr>(&cert)) {
        out << "SDR: " << format_assignment(sdr->row_of_column()) << '\n';
        return exit_positive;
    }
    const auto& dep = std::get<Dependence>(cert);
    out << "KERNEL: " << format_dense(dep.kernel_vector()) << '\n';
    if (dep.source() == Dependence::Source::HallViolator) {
        const SupportGraph g = SupportGraph::from_matrix(a);
        out << "VIOLATOR: J0 = {" << join_labels('c', dep.violator()) << "}, N(J0) = {"
            << join_labels('r', g.neighbourhood(dep.violator())) << "}\n";
    }
    return exit_refutation;
}

int cmd_diagonalize(const std::string& path, std::ostream& out) {
    const SparseMatrix a = read_matrix_file(path);
    const DiagonalizeResult result = diagonalize(a);
    if (const auto* psi = std::get_if<Bijection>(&result)) {
        out << "PERMUTATION: " << format_assignment(psi->row_of_column()) << '\n';
        return exit_positive;
    }
    const auto& dep = std::get<SideDependence>(result);
    out << "KERNEL (" << (dep.side == Side::Row ? "rows" : "columns") << "): " << format_dense(dep.kernel_vector)
        << '\n';
    return exit_refutation;
}

int cmd_mu(const std::string& path, const std::string& literal, std::ostream& out) {
    if (literal.find('[') != std::string::npos) {
        // Ordinal strings use fresh vertices; the matrix file is still
        // parsed so that malformed input is reported consistently.
        (void)read_matrix_file(path);
        const OrdinalString f = parse_ordinal_string(literal);
        out << "mu = " << mu_ordinal(f).to_string() << ", length = omega*" << f.blocks.size() << " + "
            << f.tail.size() << '\n';
        return exit_positive;
    }
    const SparseMatrix a = read_matrix_file(path);
    const SupportGraph g = SupportGraph::from_matrix(a);
    const auto f = parse_string_literal(literal, g);
    const MuReport report = evaluate_mu(g, f);
    out << "mu = " << report.mu.to_string() << ", saturated = " << (report.saturated ? "true" : "false") << '\n';
    // A saturated string with negative mu refutes any column-covering matching.
    return report.saturated && report.mu < MuValue(0) ? exit_refutation : exit_positive;
}

int cmd_witness(const std::string& path, const std::string& literal, const std::string& rows_text,
                std::ostream& out) {
    const SparseMatrix a = read_matrix_file(path);
    const SupportGraph g = SupportGraph::from_matrix(a);
    const auto f = SaturatedString::make(g, parse_string_literal(literal, g));
    std::vector<std::size_t> required;
    for (const auto& v : parse_string_literal(rows_text, g)) {
        if (v.side != Side::Row) throw PreconditionError("--rows accepts row tokens only");
        required.push_back(v.index);
    }
    try {
        const WitnessPair w = lemma_witness(a, f, required);
        out << "I' = {" << join_labels('r', w.rows()) << "}\n";
        out << "J' = {" << join_labels('c', w.columns()) << "}\n";
        out << "mu = " << w.mu() << " = " << w.rows().size() << " - " << w.rank() << '\n';
        return exit_positive;
    } catch (const DependentColumnsError& e) {
        out << "KERNEL: " << format_dense(e.kernel_vector()) << '\n';
        out << "reason: " << e.what() << '\n';
        return exit_refutation;
    }
}

int cmd_stream(const std::string& field, std::istream& in, std::ostream& out) {
    StreamState state(parse_field_option(field));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        auto [coeffs, rhs] = parse_stream_row(line.substr(0, line.find('#')), state.spec(), lineno);
        try {
            state.push(std::move(coeffs), rhs);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    const auto& status = state.status();
    if (!status.solvable) {
        out << "UNSOLVABLE at prefix " << status.prefix_length << ", core: " << join_labels('r', status.core)
            << '\n';
        return exit_refutation;
    }
    out << "all prefixes solvable (" << state.rows_seen() << " rows)\n";
    out << "SOLUTION: " << format_dense(state.solution()) << '\n';
    return exit_positive;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certifying exact linear algebra for thin equation systems", "thinsys"};
    app.require_subcommand(1);

    std::string path;
    std::string literal;
    std::string rhs;
    std::string rows;
    std::string field = "rational";
    bool via_violator = false;
    bool minimize = false;
    std::function<int()> action;

    auto* rank_cmd = app.add_subcommand("rank", "Rank of a matrix");
    rank_cmd->add_option("matrix", path, "Matrix file")->required();
    rank_cmd->callback([&] { action = [&] { return cmd_rank(path, out); }; });

    auto* kernel_cmd = app.add_subcommand("kernel", "Canonical kernel basis");
    kernel_cmd->add_option("matrix", path, "Matrix file")->required();
    kernel_cmd->callback([&] { action = [&] { return cmd_kernel(path, out); }; });

    auto* solve_cmd = app.add_subcommand("solve", "Solve A x = b or certify unsolvability");
    solve_cmd->add_option("matrix", path, "Matrix file")->required();
    solve_cmd->add_option("--rhs", rhs, "Right-hand side, whitespace-separated scalars")->required();
    solve_cmd->add_flag("--minimize", minimize, "Shrink the unsolvable core to an inclusion-minimal one");
    solve_cmd->callback([&] { action = [&] { return cmd_solve(path, rhs, minimize, out); }; });

    auto* certify_cmd = app.add_subcommand("certify", "SDR of the columns or a kernel vector");
    certify_cmd->add_option("matrix", path, "Matrix file")->required();
    certify_cmd->add_flag("--via-violator", via_violator, "Localize the kernel vector to a Hall violator");
    certify_cmd->callback([&] { action = [&] { return cmd_certify(path, via_violator, out); }; });

    auto* diag_cmd = app.add_subcommand("diagonalize", "Row permutation with a nonzero diagonal");
    diag_cmd->add_option("matrix", path, "Matrix file")->required();
    diag_cmd->callback([&] { action = [&] { return cmd_diagonalize(path, out); }; });

    auto* mu_cmd = app.add_subcommand("mu", "Evaluate mu on a string literal");
    mu_cmd->add_option("matrix", path, "Matrix file")->required();
    mu_cmd->add_option("string", literal, "e.g. \"r0 c0\" or \"[r | r c]* c\"")->required();
    mu_cmd->callback([&] { action = [&] { return cmd_mu(path, literal, out); }; });

    auto* witness_cmd = app.add_subcommand("witness", "Rank witness (I', J') for a saturated string");
    witness_cmd->add_option("matrix", path, "Matrix file")->required();
    witness_cmd->add_option("string", literal, "Saturated string, e.g. \"r0 c0\"")->required();
    witness_cmd->add_option("--rows", rows, "Rows that must appear in I'");
    witness_cmd->callback([&] { action = [&] { return cmd_witness(path, literal, rows, out); }; });

    auto* stream_cmd = app.add_subcommand("stream", "Incremental solvability of rows read from stdin");
    stream_cmd->add_option("--field", field, "'rational' (default) or 'gf:<p>'");
    stream_cmd->callback([&] { action = [&] { return cmd_stream(field, in, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_positive : exit_usage;
    }

    try {
        return action();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const TheoremViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

} // namespace thinsys::cli
