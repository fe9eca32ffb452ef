#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kindex/citation_filter.hpp"
#include "kindex/indices.hpp"
#include "kindex/options.hpp"

namespace kindex {

/// Product-moment correlation, accumulated in one streaming pass.
/// Throws DomainError on length mismatch or fewer than two points, and
/// UndefinedCorrelation when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct TrendLine {
    double slope = 0.0;
    double intercept = 0.0;

    double at(double x) const noexcept { return slope * x + intercept; }
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x values.
TrendLine linear_trend(std::span<const std::pair<double, double>> points);

struct RankingRow {
    long long rank = 0;
    AuthorMetrics metrics;
};

struct RankingTable {
    RankKey key = RankKey::KDisplay;
    std::vector<RankingRow> rows;
};

/// The ranked value of `m` under `key`; absent when the metric is unknown (H from a ratio-only row).
std::optional<double> rank_value(const AuthorMetrics& m, RankKey key);

/// Descending by key; ties by CIT/DOC descending, then display name, then author id.
/// Rows lacking the key value sort last. Ranks run 1..n.
RankingTable rank_authors(std::vector<AuthorMetrics> metrics, RankKey key);

struct YearlySummaryRow {
    int year = 0;
    long long doc = 0;
    long long cited_doc = 0;
    long long cit = 0;
    long long self_cit = 0;
    double cit_per_doc = 0.0;

    friend bool operator==(const YearlySummaryRow&, const YearlySummaryRow&) = default;
};

/// Per-year corpus activity over raw (unfiltered) citation mentions, years ascending.
/// Publications are aggregated in parallel; the merge is order-independent.
std::vector<YearlySummaryRow> yearly_summary(const CorpusIndex& index);
std::vector<YearlySummaryRow> yearly_summary(const CorpusBundle& corpus);

/// Single-threaded reference that walks the citation list instead of the publications.
std::vector<YearlySummaryRow> yearly_summary_serial(const CorpusBundle& corpus);

}  // namespace kindex
