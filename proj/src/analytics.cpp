#include "kindex/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "kindex/errors.hpp"

namespace kindex {

double pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw DomainError("pearson: series lengths differ");
    if (x.size() < 2) throw DomainError("pearson: at least two points are required");

    // Welford-style running co-moments.
    double mean_x = 0.0, mean_y = 0.0, m2_x = 0.0, m2_y = 0.0, c_xy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double dx = x[i] - mean_x;
        mean_x += dx / n;
        const double dy = y[i] - mean_y;
        mean_y += dy / n;
        m2_x += dx * (x[i] - mean_x);
        m2_y += dy * (y[i] - mean_y);
        c_xy += dx * (y[i] - mean_y);
    }
    if (m2_x <= 0.0 || m2_y <= 0.0) throw UndefinedCorrelation("pearson: correlation of a constant series is undefined");
    const double r = c_xy / std::sqrt(m2_x * m2_y);
    return std::clamp(r, -1.0, 1.0);
}

TrendLine linear_trend(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 2) throw DomainError("linear_trend: at least two points are required");
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx <= 0.0) throw DomainError("linear_trend: all x values are equal");
    TrendLine t;
    t.slope = sxy / sxx;
    t.intercept = mean_y - t.slope * mean_x;
    return t;
}

std::optional<double> rank_value(const AuthorMetrics& m, RankKey key)
{
    switch (key) {
        case RankKey::KDisplay: return static_cast<double>(m.k_display);
        case RankKey::KExact: return m.k_exact;
        case RankKey::HIndex:
            if (!m.h_index) return std::nullopt;
            return static_cast<double>(*m.h_index);
        case RankKey::CitPerDoc: return m.cit_per_doc;
    }
    return std::nullopt;
}

RankingTable rank_authors(std::vector<AuthorMetrics> metrics, RankKey key)
{
    std::sort(metrics.begin(), metrics.end(), [key](const AuthorMetrics& a, const AuthorMetrics& b) {
        const auto va = rank_value(a, key), vb = rank_value(b, key);
        if (va.has_value() != vb.has_value()) return va.has_value();
        if (va && *va != *vb) return *va > *vb;
        if (a.cit_per_doc != b.cit_per_doc) return a.cit_per_doc > b.cit_per_doc;
        if (a.display_name != b.display_name) return a.display_name < b.display_name;
        return a.author < b.author;
    });
    RankingTable table;
    table.key = key;
    table.rows.reserve(metrics.size());
    long long rank = 0;
    for (auto& m : metrics) table.rows.push_back({++rank, std::move(m)});
    return table;
}

namespace {

struct YearTotals {
    long long doc = 0, cited_doc = 0, cit = 0, self_cit = 0;
};

std::vector<YearlySummaryRow> to_rows(const std::map<int, YearTotals>& totals)
{
    std::vector<YearlySummaryRow> rows;
    rows.reserve(totals.size());
    for (const auto& [year, t] : totals) {
        YearlySummaryRow row{year, t.doc, t.cited_doc, t.cit, t.self_cit, 0.0};
        if (t.doc > 0) row.cit_per_doc = static_cast<double>(t.cit) / static_cast<double>(t.doc);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::vector<YearlySummaryRow> yearly_summary(const CorpusIndex& index)
{
    const auto& corpus = index.bundle();
    const auto& pubs = corpus.publications;

    std::vector<int> years;
    years.reserve(pubs.size());
    for (const auto& p : pubs) years.push_back(p.year);
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    std::unordered_map<int, std::size_t> slot;
    for (std::size_t i = 0; i < years.size(); ++i) slot.emplace(years[i], i);

    std::vector<std::size_t> pub_slot(pubs.size());
    for (std::size_t i = 0; i < pubs.size(); ++i) pub_slot[i] = slot.at(pubs[i].year);

    std::vector<YearTotals> totals(years.size());
    const auto n = static_cast<std::ptrdiff_t>(pubs.size());

#pragma omp parallel
    {
        std::vector<YearTotals> local(years.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto& pub = pubs[static_cast<std::size_t>(i)];
            auto& t = local[pub_slot[static_cast<std::size_t>(i)]];
            ++t.doc;
            const auto& incoming = index.citations_to(pub.pub_id);
            if (!incoming.empty()) ++t.cited_doc;
            for (auto ci : incoming) {
                const auto& cite = corpus.citations[ci];
                t.cit += cite.mention_count;
                if (is_self_citation(cite, pub)) t.self_cit += cite.mention_count;
            }
        }
#pragma omp critical(kindex_yearly_merge)
        for (std::size_t s = 0; s < local.size(); ++s) {
            totals[s].doc += local[s].doc;
            totals[s].cited_doc += local[s].cited_doc;
            totals[s].cit += local[s].cit;
            totals[s].self_cit += local[s].self_cit;
        }
    }

    std::map<int, YearTotals> by_year;
    for (std::size_t s = 0; s < years.size(); ++s) by_year.emplace(years[s], totals[s]);
    return to_rows(by_year);
}

std::vector<YearlySummaryRow> yearly_summary(const CorpusBundle& corpus)
{
    return yearly_summary(CorpusIndex(corpus));
}

std::vector<YearlySummaryRow> yearly_summary_serial(const CorpusBundle& corpus)
{
    std::map<int, YearTotals> by_year;
    std::unordered_map<std::string_view, const PublicationRecord*> by_id;
    for (const auto& p : corpus.publications) {
        ++by_year[p.year].doc;
        by_id.emplace(p.pub_id, &p);
    }
    std::unordered_map<std::string_view, bool> cited;
    for (const auto& c : corpus.citations) {
        const auto* pub = by_id.at(c.cited_pub);
        auto& t = by_year[pub->year];
        t.cit += c.mention_count;
        if (is_self_citation(c, *pub)) t.self_cit += c.mention_count;
        if (!cited[pub->pub_id]) {
            cited[pub->pub_id] = true;
            ++t.cited_doc;
        }
    }
    return to_rows(by_year);
}

}  // namespace kindex
