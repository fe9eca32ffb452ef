#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kindex/analytics.hpp"
#include "kindex/citation_filter.hpp"
#include "kindex/indices.hpp"

namespace kindex {

enum class OutputFormat { Table, Csv, PlotData };

std::optional<OutputFormat> parse_output_format(std::string_view s) noexcept;

/// A rectangular block of already-formatted cells.
struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Column-aligned text, two spaces between columns, numbers right-aligned.
void write_aligned(std::ostream& out, const TextTable& table);
/// Comma-separated with RFC 4180 quoting.
void write_csv(std::ostream& out, const TextTable& table);

/// One named x/y series, optionally with a fitted trend line.
struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
    std::optional<TrendLine> fit;
};

/// Tab-separated `series kind x y` lines; a fit is written as its two endpoints
/// over the series' x range.
void write_plotdata(std::ostream& out, std::span<const PlotSeries> series, int precision);

/// Fixed-point, locale-independent.
std::string format_fixed(double x, int precision);

TextTable metrics_table(std::span<const AuthorMetrics> metrics, int precision);
TextTable ranking_table(const RankingTable& ranking, int precision);
TextTable yearly_table(std::span<const YearlySummaryRow> rows, int precision);
/// One row per (cited publication, outcome): `accepted` followed by every rule.
TextTable audit_table(std::span<const FilterAudit> audits);

void write_table(std::ostream& out, const TextTable& table, OutputFormat format);

std::vector<PlotSeries> metrics_plot(std::span<const AuthorMetrics> metrics);
std::vector<PlotSeries> ranking_plot(const RankingTable& ranking);
std::vector<PlotSeries> yearly_plot(std::span<const YearlySummaryRow> rows);

}  // namespace kindex
