#include "kindex/cli.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kindex/analytics.hpp"
#include "kindex/batch.hpp"
#include "kindex/errors.hpp"
#include "kindex/ingest.hpp"

namespace kindex::cli {

namespace {

CommandOutcome failure(int code, std::string message)
{
    CommandOutcome o;
    o.exit_code = code;
    o.diagnostics.push_back(std::move(message));
    return o;
}

CommandOutcome parse_failure(const std::string& path, const std::vector<ParseError>& errors)
{
    CommandOutcome o;
    o.exit_code = kExitValidation;
    for (const auto& e : errors) o.diagnostics.push_back(path + ": " + to_string(e));
    return o;
}

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

CommandOutcome unreadable(const std::string& path) { return failure(kExitUsage, "cannot read '" + path + "'"); }

// Loads the config file (defaults when none is given) and applies --precision.
std::optional<CommandOutcome> load_settings(const GlobalOptions& opts, Config& cfg)
{
    if (opts.config_path) {
        auto text = read_file(*opts.config_path);
        if (!text) return unreadable(*opts.config_path);
        auto parsed = load_config(*text);
        if (!parsed.ok()) return parse_failure(*opts.config_path, parsed.errors);
        cfg = std::move(parsed.value);
    }
    if (opts.precision) {
        if (*opts.precision < 0 || *opts.precision > 12) return failure(kExitUsage, "--precision must be within 0..12");
        cfg.analysis.precision = *opts.precision;
    }
    return std::nullopt;
}

// Sends the rendered text to --out or to `out`.
CommandOutcome emit(const std::string& text, const GlobalOptions& opts, std::ostream& out)
{
    if (opts.out_path) {
        std::ofstream file(*opts.out_path, std::ios::binary | std::ios::trunc);
        if (!file) return failure(kExitUsage, "cannot write '" + *opts.out_path + "'");
        file << text;
        if (!file) return failure(kExitUsage, "cannot write '" + *opts.out_path + "'");
    } else {
        out << text;
    }
    return {};
}

std::optional<CommandOutcome> check_input(const InputPaths& input)
{
    if (input.corpus_path.has_value() == input.summary_path.has_value()) {
        return failure(kExitUsage, "exactly one of --corpus or --summary is required");
    }
    return std::nullopt;
}

// Metrics for every selected author from whichever input kind was given.
std::optional<CommandOutcome> gather_metrics(const InputPaths& input, const std::vector<std::string>& author_filter,
                                             const Config& cfg, std::vector<AuthorMetrics>& metrics,
                                             std::vector<FilterAudit>* audits)
{
    const std::set<std::string> wanted(author_filter.begin(), author_filter.end());

    if (input.corpus_path) {
        const auto& path = *input.corpus_path;
        auto text = read_file(path);
        if (!text) return unreadable(path);
        auto parsed = parse_publications(*text);
        if (!parsed.ok()) return parse_failure(path, parsed.errors);
        const CorpusIndex index(parsed.value);

        std::vector<AuthorId> authors;
        if (wanted.empty()) {
            for (const auto& a : index.authors()) {
                const auto& pubs = index.publications_of(a);
                const bool has_indexed = std::any_of(pubs.begin(), pubs.end(),
                                                     [&](auto i) { return parsed.value.publications[i].indexed; });
                if (has_indexed) authors.push_back(a);
            }
        } else {
            authors.assign(wanted.begin(), wanted.end());
        }
        try {
            metrics = compute_all_metrics(index, authors, cfg);
        } catch (const NoPublications& e) {
            return failure(kExitValidation, fmt::format("unknown author '{}': {}", e.author(), e.what()));
        }
        if (audits != nullptr) {
            for (const auto& a : authors) {
                auto r = filter_citations(a, index, cfg.filter);
                audits->insert(audits->end(), r.audits.begin(), r.audits.end());
            }
        }
        return std::nullopt;
    }

    const auto& path = *input.summary_path;
    auto text = read_file(path);
    if (!text) return unreadable(path);
    auto parsed = parse_author_summaries(*text);
    if (!parsed.ok()) return parse_failure(path, parsed.errors);

    std::vector<AuthorSummaryRow> rows;
    std::set<std::string> found;
    for (auto& row : parsed.value.rows) {
        if (!wanted.empty() && !wanted.contains(row.author)) continue;
        found.insert(row.author);
        rows.push_back(std::move(row));
    }
    for (const auto& w : wanted) {
        if (!found.contains(w)) return failure(kExitValidation, fmt::format("unknown author '{}'", w));
    }
    CommandOutcome bad;
    bad.exit_code = kExitValidation;
    for (const auto& row : rows) {
        try {
            metrics.push_back(compute_author_metrics(row, cfg.analysis));
        } catch (const EmptyPortfolio& e) {
            bad.diagnostics.push_back(fmt::format("{}: author '{}': {}", path, row.author, e.what()));
        }
    }
    if (!bad.diagnostics.empty()) return bad;
    return std::nullopt;
}

// Value of a named summary column for one row, as used by `correlate`.
std::optional<double> column_value(const AuthorSummaryRow& row, const std::string& name)
{
    auto as_double = [](const auto& v) -> std::optional<double> {
        if (!v) return std::nullopt;
        return static_cast<double>(*v);
    };
    if (name == "H") return as_double(row.h_index);
    if (name == "DOC") return as_double(row.doc);
    if (name == "CIT") return as_double(row.cit);
    if (name == "CIT/DOC") {
        if (row.cit_per_doc) return row.cit_per_doc;
        if (row.cit && row.doc) return cit_per_doc(*row.cit, *row.doc);
        return std::nullopt;
    }
    if (name == "WFCI") return row.fwci_total;
    if (name == "k_r") return row.k_r;
    if (name == "K_p") return row.k_p;
    if (name == "K_c") return row.k_c;
    if (name == "K") return as_double(row.reported_k);
    if (auto role = parse_role(name)) return row.shares[index_of(*role)];
    if (name.size() == 5 && name.starts_with("FWCI") && name[4] >= '1' && name[4] <= '5') {
        return row.role_fwci[static_cast<std::size_t>(name[4] - '1')];
    }
    return std::nullopt;
}

bool column_available(const SummaryTable& table, const std::string& name)
{
    if (name == "CIT/DOC") return table.has_column("CIT/DOC") || (table.has_column("CIT") && table.has_column("DOC"));
    static const std::set<std::string> numeric = {"H",     "DOC",   "CIT",   "FA",    "LA",   "CoA", "CorA",
                                                  "SA",    "FWCI1", "FWCI2", "FWCI3", "FWCI4", "FWCI5", "WFCI",
                                                  "k_r",   "K_p",   "K_c",   "K"};
    return numeric.contains(name) && table.has_column(name);
}

}  // namespace

CommandOutcome cmd_validate(const std::string& corpus_path, const GlobalOptions& opts, std::ostream& out)
{
    auto text = read_file(corpus_path);
    if (!text) return unreadable(corpus_path);
    auto parsed = parse_publications(*text);
    if (!parsed.ok()) return parse_failure(corpus_path, parsed.errors);
    const auto& b = parsed.value;
    return emit(fmt::format("ok: {} publications, {} citations\n", b.publications.size(), b.citations.size()), opts,
                out);
}

CommandOutcome cmd_metrics(const InputPaths& input, const std::vector<std::string>& author_filter,
                           const std::optional<std::string>& audit_path, const GlobalOptions& opts, std::ostream& out)
{
    if (auto bad = check_input(input)) return *bad;
    if (audit_path && !input.corpus_path) return failure(kExitUsage, "--audit requires --corpus");
    Config cfg;
    if (auto bad = load_settings(opts, cfg)) return *bad;

    std::vector<AuthorMetrics> metrics;
    std::vector<FilterAudit> audits;
    if (auto bad = gather_metrics(input, author_filter, cfg, metrics, audit_path ? &audits : nullptr)) return *bad;

    if (audit_path) {
        std::ofstream file(*audit_path, std::ios::binary | std::ios::trunc);
        if (!file) return failure(kExitUsage, "cannot write '" + *audit_path + "'");
        write_csv(file, audit_table(audits));
    }

    std::ostringstream text;
    if (opts.format == OutputFormat::PlotData) {
        write_plotdata(text, metrics_plot(metrics), cfg.analysis.precision);
    } else {
        write_table(text, metrics_table(metrics, cfg.analysis.precision), opts.format);
    }
    return emit(text.str(), opts, out);
}

CommandOutcome cmd_rank(const InputPaths& input, const std::optional<std::string>& key, const GlobalOptions& opts,
                        std::ostream& out)
{
    if (auto bad = check_input(input)) return *bad;
    Config cfg;
    if (auto bad = load_settings(opts, cfg)) return *bad;
    RankKey rank_key = cfg.analysis.rank_key;
    if (key) {
        auto k = parse_rank_key(*key);
        if (!k) {
            return failure(kExitUsage,
                           fmt::format("unknown rank key '{}' (expected k_display, k_exact, h_index or cit_per_doc)", *key));
        }
        rank_key = *k;
    }

    std::vector<AuthorMetrics> metrics;
    if (auto bad = gather_metrics(input, {}, cfg, metrics, nullptr)) return *bad;
    const auto ranking = rank_authors(std::move(metrics), rank_key);

    std::ostringstream text;
    if (opts.format == OutputFormat::PlotData) {
        write_plotdata(text, ranking_plot(ranking), cfg.analysis.precision);
    } else {
        write_table(text, ranking_table(ranking, cfg.analysis.precision), opts.format);
    }
    return emit(text.str(), opts, out);
}

CommandOutcome cmd_correlate(const std::string& summary_path, const std::string& x_column,
                             const std::string& y_column, const GlobalOptions& opts, std::ostream& out)
{
    Config cfg;
    if (auto bad = load_settings(opts, cfg)) return *bad;
    auto text = read_file(summary_path);
    if (!text) return unreadable(summary_path);
    auto parsed = parse_author_summaries(*text);
    if (!parsed.ok()) return parse_failure(summary_path, parsed.errors);
    const auto& table = parsed.value;

    for (const auto& col : {x_column, y_column}) {
        if (!column_available(table, col)) {
            return failure(kExitUsage, fmt::format("column '{}' is not present in '{}'", col, summary_path));
        }
    }

    std::vector<double> xs, ys;
    std::vector<std::pair<double, double>> points;
    for (const auto& row : table.rows) {
        auto x = column_value(row, x_column);
        auto y = column_value(row, y_column);
        if (!x || !y) continue;
        xs.push_back(*x);
        ys.push_back(*y);
        points.emplace_back(*x, *y);
    }

    double r = 0.0;
    try {
        r = pearson(xs, ys);
    } catch (const Error& e) {
        return failure(kExitValidation, fmt::format("{} vs {}: {}", x_column, y_column, e.what()));
    }
    const TrendLine fit = linear_trend(points);  // x is non-constant once pearson succeeded
    const int p = cfg.analysis.precision;

    std::ostringstream rendered;
    if (opts.format == OutputFormat::PlotData) {
        const std::vector<PlotSeries> series = {{y_column + "_vs_" + x_column, points, fit}};
        write_plotdata(rendered, series, p);
    } else {
        TextTable t;
        t.header = {"x", "y", "n", "pearson_r", "slope", "intercept"};
        // The coefficient is reported with at least six decimals regardless of --precision.
        t.rows.push_back({x_column, y_column, std::to_string(xs.size()), format_fixed(r, std::max(p, 6)),
                          format_fixed(fit.slope, std::max(p, 6)), format_fixed(fit.intercept, std::max(p, 6))});
        write_table(rendered, t, opts.format);
    }
    return emit(rendered.str(), opts, out);
}

CommandOutcome cmd_yearly(const std::string& corpus_path, const GlobalOptions& opts, std::ostream& out)
{
    Config cfg;
    if (auto bad = load_settings(opts, cfg)) return *bad;
    auto text = read_file(corpus_path);
    if (!text) return unreadable(corpus_path);
    auto parsed = parse_publications(*text);
    if (!parsed.ok()) return parse_failure(corpus_path, parsed.errors);

    const auto rows = yearly_summary(parsed.value);
    std::ostringstream rendered;
    if (opts.format == OutputFormat::PlotData) {
        write_plotdata(rendered, yearly_plot(rows), cfg.analysis.precision);
    } else {
        write_table(rendered, yearly_table(rows, cfg.analysis.precision), opts.format);
    }
    return emit(rendered.str(), opts, out);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"kindex: K-index family of scientometric indicators"};
    app.require_subcommand(1);

    GlobalOptions global;
    std::string format = "table";
    app.add_option("--config", global.config_path, "Configuration file (key=value lines)");
    app.add_option("--out", global.out_path, "Write the result to this file instead of stdout");
    app.add_option("--precision", global.precision, "Decimal places for table values (default 2)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "plotdata"}));

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Parse and integrity-check a corpus file");
    validate->add_option("corpus", validate_path, "Corpus file")->required();

    InputPaths metrics_input;
    std::vector<std::string> authors;
    std::optional<std::string> audit_path;
    auto* metrics = app.add_subcommand("metrics", "Per-author indicator rows");
    auto* m_corpus = metrics->add_option("--corpus", metrics_input.corpus_path, "Corpus file");
    auto* m_summary = metrics->add_option("--summary", metrics_input.summary_path, "Author summary table");
    m_corpus->excludes(m_summary);
    metrics->add_option("--author", authors, "Restrict output to these author ids (repeatable)");
    metrics->add_option("--audit", audit_path, "Write the citation-filter audit (corpus input only)");

    InputPaths rank_input;
    std::optional<std::string> rank_key;
    auto* rank = app.add_subcommand("rank", "Rank authors by a metric");
    auto* r_corpus = rank->add_option("--corpus", rank_input.corpus_path, "Corpus file");
    auto* r_summary = rank->add_option("--summary", rank_input.summary_path, "Author summary table");
    r_corpus->excludes(r_summary);
    rank->add_option("--key", rank_key, "k_display (default), k_exact, h_index or cit_per_doc");

    std::string corr_path, x_col, y_col;
    auto* correlate = app.add_subcommand("correlate", "Pearson correlation and OLS trend between two columns");
    correlate->add_option("summary", corr_path, "Author summary table")->required();
    correlate->add_option("--x", x_col, "Column for x")->required();
    correlate->add_option("--y", y_col, "Column for y")->required();

    std::string yearly_path;
    auto* yearly = app.add_subcommand("yearly", "Per-year activity summary of a corpus");
    yearly->add_option("corpus", yearly_path, "Corpus file")->required();

    for (auto* sub : {validate, metrics, rank, correlate, yearly}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    global.format = *parse_output_format(format);

    CommandOutcome outcome;
    if (*validate) {
        outcome = cmd_validate(validate_path, global, out);
    } else if (*metrics) {
        outcome = cmd_metrics(metrics_input, authors, audit_path, global, out);
    } else if (*rank) {
        outcome = cmd_rank(rank_input, rank_key, global, out);
    } else if (*correlate) {
        outcome = cmd_correlate(corr_path, x_col, y_col, global, out);
    } else {
        outcome = cmd_yearly(yearly_path, global, out);
    }
    for (const auto& d : outcome.diagnostics) err << "kindex: " << d << '\n';
    return outcome.exit_code;
}

}  // namespace kindex::cli
