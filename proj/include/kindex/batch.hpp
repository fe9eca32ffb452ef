#pragma once

#include <span>
#include <vector>

#include "kindex/citation_filter.hpp"
#include "kindex/indices.hpp"
#include "kindex/ingest.hpp"
#include "kindex/options.hpp"

namespace kindex {

// Batch metric kernels. Output order always follows the input order.

/// Per-author metrics over a corpus, one OpenMP task per author. If any author
/// fails, the first failure in input order is rethrown after the loop.
std::vector<AuthorMetrics> compute_all_metrics(const CorpusIndex& index, std::span<const AuthorId> authors,
                                               const Config& cfg);

/// Serial reference for compute_all_metrics.
std::vector<AuthorMetrics> compute_all_metrics_serial(const CorpusIndex& index, std::span<const AuthorId> authors,
                                                      const Config& cfg);

/// Summary-row path, parallel and serial.
std::vector<AuthorMetrics> compute_all_metrics(std::span<const AuthorSummaryRow> rows, const AnalysisOptions& opts);
std::vector<AuthorMetrics> compute_all_metrics_serial(std::span<const AuthorSummaryRow> rows,
                                                      const AnalysisOptions& opts);

}  // namespace kindex
