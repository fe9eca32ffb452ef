#include "kindex/indices.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kindex/errors.hpp"

namespace kindex {

long long h_index(std::span<const long long> citation_counts)
{
    // Bucket counts by min(c, n); h is then the largest h with suffix-sum >= h.
    const auto n = citation_counts.size();
    std::vector<std::size_t> buckets(n + 1, 0);
    for (long long c : citation_counts) {
        if (c <= 0) continue;
        ++buckets[std::min<std::size_t>(static_cast<std::size_t>(c), n)];
    }
    std::size_t at_least = 0;
    for (std::size_t h = n; h > 0; --h) {
        at_least += buckets[h];
        if (at_least >= h) return static_cast<long long>(h);
    }
    return 0;
}

double cit_per_doc(long long cit, long long doc)
{
    if (doc <= 0) throw EmptyPortfolio();
    return static_cast<double>(cit) / static_cast<double>(doc);
}

double role_dominance(const RoleProfile& profile, bool alphabetical_field)
{
    if (alphabetical_field) return 1.0;
    auto share = [&](Role r) { return profile.share(r).value_or(0.0); };
    const double winning = share(Role::FA) + share(Role::CorA) + share(Role::SA);
    const double losing = share(Role::CoA) + share(Role::LA);
    return (1.0 + winning) / (1.0 + losing);
}

double fwci_total(const std::array<std::optional<double>, kRoleCount>& role_fwci)
{
    double sum = 0.0;
    for (const auto& v : role_fwci) sum += v.value_or(0.0);
    return sum;
}

long long round_half_away(double x) { return std::llround(x); }

KIndex k_index(std::optional<double> k_r, std::optional<double> fwci, double cpd)
{
    KIndex k;
    k.exact = k_r.value_or(1.0) * fwci.value_or(0.0) + cpd;
    k.display = round_half_away(k.exact);
    return k;
}

KIndex k_index(std::optional<double> k_r, std::optional<double> fwci, long long cit, long long doc)
{
    return k_index(k_r, fwci, cit_per_doc(cit, doc));
}

double integrated_k(double k_exact, double k_p, double k_c) { return k_exact + k_p + k_c; }

double ringelmann_share(long long n_coauthors)
{
    if (n_coauthors < 1) throw DomainError("ringelmann_share: the number of coauthors must be at least 1");
    return std::max(0.0, 100.0 - 7.0 * static_cast<double>(n_coauthors - 1));
}

namespace {

std::optional<double> lookup(const std::map<AuthorId, double>& m, const AuthorId& a)
{
    auto it = m.find(a);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

template <typename Array>
bool any_present(const Array& a)
{
    return std::any_of(a.begin(), a.end(), [](const auto& v) { return v.has_value(); });
}

void finish(AuthorMetrics& m, std::optional<double> k_p, std::optional<double> k_c)
{
    const auto k = k_index(m.k_r, m.fwci_total, m.cit_per_doc);
    m.k_exact = k.exact;
    m.k_display = k.display;
    m.k_p = k_p.value_or(0.0);
    m.k_c = k_c.value_or(0.0);
    m.k_integrated = integrated_k(m.k_exact, m.k_p, m.k_c);
}

}  // namespace

AuthorMetrics compute_author_metrics(const AuthorId& author, const CorpusIndex& index, const Config& cfg)
{
    const auto& corpus = index.bundle();
    std::vector<PublicationRecord> portfolio;
    for (auto i : index.publications_of(author)) {
        if (corpus.publications[i].indexed) portfolio.push_back(corpus.publications[i]);
    }
    if (portfolio.empty()) throw NoPublications(author);

    const RoleProfile profile = build_role_profile(author, portfolio);

    bool alphabetical = cfg.analysis.alphabetical_field;
    if (!alphabetical) {
        bool any_multi = false, all_alpha = true;
        for (const auto& p : portfolio) {
            if (p.authors.size() < 2) continue;
            any_multi = true;
            all_alpha = all_alpha && p.alphabetical_order;
        }
        alphabetical = any_multi && all_alpha;
    }

    const FilterResult filtered = filter_citations(author, index, cfg.filter);
    std::vector<long long> per_pub;
    per_pub.reserve(filtered.audits.size());
    for (const auto& a : filtered.audits) per_pub.push_back(a.accepted);

    AuthorMetrics m;
    m.author = author;
    m.display_name = author;
    m.doc = static_cast<long long>(portfolio.size());
    m.cit = filtered.valid_count;
    m.cit_per_doc = cit_per_doc(*m.cit, *m.doc);
    m.h_index = h_index(per_pub);
    m.k_r = role_dominance(profile, alphabetical);
    if (any_present(profile.role_fwci)) m.fwci_total = fwci_total(profile.role_fwci);
    finish(m, lookup(cfg.analysis.k_p, author), lookup(cfg.analysis.k_c, author));
    return m;
}

AuthorMetrics compute_author_metrics(const AuthorId& author, const CorpusBundle& corpus, const FilterConfig& cfg)
{
    Config config;
    config.filter = cfg;
    return compute_author_metrics(author, CorpusIndex(corpus), config);
}

AuthorMetrics compute_author_metrics(const AuthorSummaryRow& row, const AnalysisOptions& opts)
{
    AuthorMetrics m;
    m.author = row.author;
    m.display_name = row.display_name.empty() ? row.author : row.display_name;
    m.doc = row.doc;
    m.cit = row.cit;
    m.h_index = row.h_index;

    if (row.cit_per_doc) {
        m.cit_per_doc = *row.cit_per_doc;
    } else if (row.doc && row.cit) {
        m.cit_per_doc = cit_per_doc(*row.cit, *row.doc);
    } else {
        throw EmptyPortfolio();
    }

    if (row.alphabetical || opts.alphabetical_field) {
        m.k_r = 1.0;
    } else if (row.k_r) {
        m.k_r = row.k_r;
    } else if (any_present(row.shares)) {
        RoleProfile profile;
        profile.author = row.author;
        profile.shares = row.shares;
        profile.role_fwci = row.role_fwci;
        m.k_r = role_dominance(profile, false);
    }

    if (row.fwci_total) {
        m.fwci_total = row.fwci_total;
    } else if (any_present(row.role_fwci)) {
        m.fwci_total = fwci_total(row.role_fwci);
    }

    auto k_p = row.k_p ? row.k_p : lookup(opts.k_p, row.author);
    auto k_c = row.k_c ? row.k_c : lookup(opts.k_c, row.author);
    finish(m, k_p, k_c);
    return m;
}

}  // namespace kindex
