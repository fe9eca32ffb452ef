#include "kindex/batch.hpp"

#include <exception>

namespace kindex {

namespace {

template <typename Fn>
std::vector<AuthorMetrics> parallel_map(std::size_t count, Fn&& fn)
{
    std::vector<AuthorMetrics> out(count);
    std::vector<std::exception_ptr> failures(count);
    const auto n = static_cast<std::ptrdiff_t>(count);

#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = fn(k);
        } catch (...) {
            failures[k] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return out;
}

}  // namespace

std::vector<AuthorMetrics> compute_all_metrics(const CorpusIndex& index, std::span<const AuthorId> authors,
                                               const Config& cfg)
{
    return parallel_map(authors.size(), [&](std::size_t i) { return compute_author_metrics(authors[i], index, cfg); });
}

std::vector<AuthorMetrics> compute_all_metrics_serial(const CorpusIndex& index, std::span<const AuthorId> authors,
                                                      const Config& cfg)
{
    std::vector<AuthorMetrics> out;
    out.reserve(authors.size());
    for (const auto& a : authors) out.push_back(compute_author_metrics(a, index, cfg));
    return out;
}

std::vector<AuthorMetrics> compute_all_metrics(std::span<const AuthorSummaryRow> rows, const AnalysisOptions& opts)
{
    return parallel_map(rows.size(), [&](std::size_t i) { return compute_author_metrics(rows[i], opts); });
}

std::vector<AuthorMetrics> compute_all_metrics_serial(std::span<const AuthorSummaryRow> rows,
                                                      const AnalysisOptions& opts)
{
    std::vector<AuthorMetrics> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(compute_author_metrics(r, opts));
    return out;
}

}  // namespace kindex
