#pragma once

#include <optional>
#include <span>
#include <string>

#include "kindex/citation_filter.hpp"
#include "kindex/ingest.hpp"
#include "kindex/model.hpp"
#include "kindex/options.hpp"

namespace kindex {

/// The indicator bundle for one author.
///
/// DOC, CIT and H are absent when the metrics come from a pre-aggregated row
/// that only reports the CIT/DOC ratio.
struct AuthorMetrics {
    AuthorId author;
    std::string display_name;
    std::optional<long long> doc;
    std::optional<long long> cit;
    double cit_per_doc = 0.0;
    std::optional<long long> h_index;
    std::optional<double> k_r;
    std::optional<double> fwci_total;
    double k_exact = 0.0;
    long long k_display = 0;
    double k_p = 0.0;
    double k_c = 0.0;
    double k_integrated = 0.0;

    friend bool operator==(const AuthorMetrics&, const AuthorMetrics&) = default;
};

/// Largest h such that at least h entries are >= h.
long long h_index(std::span<const long long> citation_counts);

/// CIT/DOC. Throws EmptyPortfolio when doc == 0.
double cit_per_doc(long long cit, long long doc);

/// Role dominance coefficient: (1 + FA + CorA + SA) / (1 + CoA + LA) with shares as
/// fractions of one; absent shares count as zero. Pinned to 1 for alphabetical bylines.
double role_dominance(const RoleProfile& profile, bool alphabetical_field);

/// Sum of the mean FWCI over all five role slots; absent slots contribute zero.
double fwci_total(const std::array<std::optional<double>, kRoleCount>& role_fwci);

struct KIndex {
    double exact = 0.0;
    long long display = 0;
};

/// Nearest integer, halves rounded away from zero.
long long round_half_away(double x);

/// K = k_r * FWCI + CIT/DOC, with an absent k_r taken as 1 and an absent FWCI as 0.
KIndex k_index(std::optional<double> k_r, std::optional<double> fwci_total, long long cit, long long doc);
/// Same, from an already computed CIT/DOC ratio.
KIndex k_index(std::optional<double> k_r, std::optional<double> fwci_total, double cit_per_doc);

/// K + K_p + K_c.
double integrated_k(double k_exact, double k_p, double k_c);

/// Average individual contribution (percent) of each of n coauthors: 100 - 7(n - 1),
/// floored at 0. Throws DomainError for n == 0.
double ringelmann_share(long long n_coauthors);

/// Full pipeline over a corpus: roles, profile, filtered citations, every index.
/// Throws NoPublications when the author has no indexed publication.
AuthorMetrics compute_author_metrics(const AuthorId& author, const CorpusIndex& index, const Config& cfg);
AuthorMetrics compute_author_metrics(const AuthorId& author, const CorpusBundle& corpus, const FilterConfig& cfg);

/// Metrics from a pre-aggregated summary row (no citation filtering).
///
/// Reported k_r / WFCI / CIT/DOC cells take precedence; otherwise they are derived
/// from the role shares, the per-role FWCI cells, and CIT and DOC. Throws
/// EmptyPortfolio when neither CIT/DOC nor both CIT and DOC are available.
AuthorMetrics compute_author_metrics(const AuthorSummaryRow& row, const AnalysisOptions& opts = {});

}  // namespace kindex
