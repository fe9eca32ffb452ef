#include "kindex/report.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace kindex {

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept
{
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "plotdata") return OutputFormat::PlotData;
    return std::nullopt;
}

std::string format_fixed(double x, int precision)
{
    // Avoid printing "-0.00".
    std::string s = fmt::format("{:.{}f}", x, precision);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

namespace {

bool looks_numeric(const std::string& s)
{
    if (s.empty() || s == "-") return true;
    return std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || c == '.' || c == '-'; });
}

std::string opt_count(const std::optional<long long>& v) { return v ? std::to_string(*v) : "-"; }

std::string opt_fixed(const std::optional<double>& v, int precision) { return v ? format_fixed(*v, precision) : "-"; }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_aligned(std::ostream& out, const TextTable& table)
{
    std::vector<std::size_t> width(table.header.size(), 0);
    std::vector<bool> numeric(table.header.size(), true);
    for (std::size_t c = 0; c < table.header.size(); ++c) width[c] = table.header[c].size();
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
            numeric[c] = numeric[c] && looks_numeric(row[c]);
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) line += "  ";
            const auto pad = std::string(width[c] - std::min(width[c], cells[c].size()), ' ');
            line += numeric[c] ? pad + cells[c] : cells[c] + pad;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) emit(row);
}

void write_csv(std::ostream& out, const TextTable& table)
{
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) out << ',';
            out << csv_escape(cells[c]);
        }
        out << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) emit(row);
}

void write_plotdata(std::ostream& out, std::span<const PlotSeries> series, int precision)
{
    out << "series\tkind\tx\ty\n";
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            out << s.name << "\tpoint\t" << format_fixed(x, precision) << '\t' << format_fixed(y, precision) << '\n';
        }
        if (s.fit && !s.points.empty()) {
            const auto [lo, hi] = std::minmax_element(s.points.begin(), s.points.end(),
                                                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (double x : {lo->first, hi->first}) {
                out << s.name << "\tfit\t" << format_fixed(x, precision) << '\t' << format_fixed(s.fit->at(x), precision)
                    << '\n';
            }
        }
    }
}

void write_table(std::ostream& out, const TextTable& table, OutputFormat format)
{
    if (format == OutputFormat::Csv) {
        write_csv(out, table);
    } else {
        write_aligned(out, table);
    }
}

TextTable metrics_table(std::span<const AuthorMetrics> metrics, int precision)
{
    TextTable t;
    t.header = {"author", "name", "DOC", "CIT", "CIT/DOC", "H", "k_r", "FWCI", "K_exact", "K", "K_p", "K_c", "K_i"};
    for (const auto& m : metrics) {
        t.rows.push_back({m.author, m.display_name, opt_count(m.doc), opt_count(m.cit),
                          format_fixed(m.cit_per_doc, precision), opt_count(m.h_index), opt_fixed(m.k_r, precision),
                          opt_fixed(m.fwci_total, precision), format_fixed(m.k_exact, precision),
                          std::to_string(m.k_display), format_fixed(m.k_p, precision), format_fixed(m.k_c, precision),
                          format_fixed(m.k_integrated, precision)});
    }
    return t;
}

TextTable ranking_table(const RankingTable& ranking, int precision)
{
    TextTable t;
    t.header = {"rank", "author", "name", std::string(rank_key_name(ranking.key)), "K", "CIT/DOC", "H"};
    for (const auto& row : ranking.rows) {
        const auto& m = row.metrics;
        std::string key_cell = "-";
        if (auto v = rank_value(m, ranking.key)) {
            key_cell = (ranking.key == RankKey::KDisplay || ranking.key == RankKey::HIndex)
                           ? std::to_string(static_cast<long long>(*v))
                           : format_fixed(*v, precision);
        }
        t.rows.push_back({std::to_string(row.rank), m.author, m.display_name, key_cell, std::to_string(m.k_display),
                          format_fixed(m.cit_per_doc, precision), opt_count(m.h_index)});
    }
    return t;
}

TextTable yearly_table(std::span<const YearlySummaryRow> rows, int precision)
{
    TextTable t;
    t.header = {"YEAR", "DOC", "CIT(DOC)", "CIT", "SelfCIT", "CIT/DOC"};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.year), std::to_string(r.doc), std::to_string(r.cited_doc),
                          std::to_string(r.cit), std::to_string(r.self_cit), format_fixed(r.cit_per_doc, precision)});
    }
    return t;
}

TextTable audit_table(std::span<const FilterAudit> audits)
{
    TextTable t;
    t.header = {"cited_pub", "rule", "count"};
    for (const auto& a : audits) {
        t.rows.push_back({a.cited_pub, "accepted", std::to_string(a.accepted)});
        for (auto r : kFilterRules) {
            t.rows.push_back({a.cited_pub, std::string(filter_rule_name(r)), std::to_string(a.rejected_by(r))});
        }
    }
    return t;
}

namespace {

std::optional<TrendLine> try_fit(const std::vector<std::pair<double, double>>& pts)
{
    std::set<double> xs;
    for (const auto& p : pts) xs.insert(p.first);
    if (xs.size() < 2) return std::nullopt;
    return linear_trend(pts);
}

}  // namespace

std::vector<PlotSeries> metrics_plot(std::span<const AuthorMetrics> metrics)
{
    PlotSeries k{"K_vs_H", {}, std::nullopt};
    for (const auto& m : metrics) {
        if (m.h_index) k.points.emplace_back(static_cast<double>(*m.h_index), m.k_exact);
    }
    k.fit = try_fit(k.points);
    return {k};
}

std::vector<PlotSeries> ranking_plot(const RankingTable& ranking)
{
    PlotSeries s{std::string(rank_key_name(ranking.key)), {}, std::nullopt};
    for (const auto& row : ranking.rows) {
        if (auto v = rank_value(row.metrics, ranking.key)) s.points.emplace_back(static_cast<double>(row.rank), *v);
    }
    return {s};
}

std::vector<PlotSeries> yearly_plot(std::span<const YearlySummaryRow> rows)
{
    PlotSeries doc{"DOC", {}, std::nullopt}, cit{"CIT", {}, std::nullopt}, self{"SelfCIT", {}, std::nullopt},
        ratio{"CIT/DOC", {}, std::nullopt};
    for (const auto& r : rows) {
        const auto x = static_cast<double>(r.year);
        doc.points.emplace_back(x, static_cast<double>(r.doc));
        cit.points.emplace_back(x, static_cast<double>(r.cit));
        self.points.emplace_back(x, static_cast<double>(r.self_cit));
        ratio.points.emplace_back(x, r.cit_per_doc);
    }
    ratio.fit = try_fit(ratio.points);
    return {doc, cit, self, ratio};
}

}  // namespace kindex
