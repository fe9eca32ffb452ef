#include "kindex/citation_filter.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "kindex/errors.hpp"

namespace kindex {

CorpusIndex::CorpusIndex(const CorpusBundle& bundle) : bundle_(&bundle)
{
    const auto& pubs = bundle.publications;
    for (std::size_t i = 0; i < pubs.size(); ++i) {
        pub_by_id_.emplace(pubs[i].pub_id, i);
        for (const auto& a : pubs[i].authors) pubs_by_author_[a].push_back(i);
    }
    for (std::size_t i = 0; i < bundle.citations.size(); ++i) {
        cites_by_cited_[bundle.citations[i].cited_pub].push_back(i);
    }
    authors_.reserve(pubs_by_author_.size());
    for (const auto& [a, _] : pubs_by_author_) authors_.push_back(a);
    std::sort(authors_.begin(), authors_.end());
}

const PublicationRecord* CorpusIndex::find_publication(const PubId& id) const
{
    auto it = pub_by_id_.find(id);
    return it == pub_by_id_.end() ? nullptr : &bundle_->publications[it->second];
}

const std::vector<std::size_t>& CorpusIndex::publications_of(const AuthorId& author) const
{
    static const std::vector<std::size_t> none;
    auto it = pubs_by_author_.find(author);
    return it == pubs_by_author_.end() ? none : it->second;
}

const std::vector<std::size_t>& CorpusIndex::citations_to(const PubId& id) const
{
    static const std::vector<std::size_t> none;
    auto it = cites_by_cited_.find(id);
    return it == cites_by_cited_.end() ? none : it->second;
}

std::string_view filter_rule_name(FilterRule r) noexcept
{
    switch (r) {
        case FilterRule::RequireIndexedSource: return "require_indexed_source";
        case FilterRule::ExcludeFlagged: return "exclude_flagged";
        case FilterRule::DedupePerDocument: return "dedupe_per_document";
        case FilterRule::ExcludeSelf: return "exclude_self_citations";
        case FilterRule::ExcludeCloseAssociates: return "exclude_close_associates";
        case FilterRule::OnePerAuthorPerSource: return "one_per_author_per_source";
    }
    return "?";
}

namespace {

bool FilterConfig::*rule_member(FilterRule r) noexcept
{
    switch (r) {
        case FilterRule::RequireIndexedSource: return &FilterConfig::require_indexed_source;
        case FilterRule::ExcludeFlagged: return &FilterConfig::exclude_flagged;
        case FilterRule::DedupePerDocument: return &FilterConfig::dedupe_per_document;
        case FilterRule::ExcludeSelf: return &FilterConfig::exclude_self;
        case FilterRule::ExcludeCloseAssociates: return &FilterConfig::exclude_close_associates;
        case FilterRule::OnePerAuthorPerSource: return &FilterConfig::one_per_author_per_source;
    }
    return &FilterConfig::require_indexed_source;
}

template <typename A, typename B>
bool intersects(const A& a, const B& b)
{
    return std::any_of(a.begin(), a.end(), [&](const auto& x) { return b.contains(x); });
}

}  // namespace

bool rule_enabled(const FilterConfig& cfg, FilterRule r) noexcept { return cfg.*rule_member(r); }
void set_rule(FilterConfig& cfg, FilterRule r, bool on) noexcept { cfg.*rule_member(r) = on; }

long long FilterAudit::inspected() const
{
    return std::accumulate(rejected.begin(), rejected.end(), accepted);
}

CloseAssociates close_associates(const AuthorId& author, const CorpusIndex& index)
{
    const auto& mine = index.publications_of(author);
    if (mine.empty()) throw NoPublications(author);
    CloseAssociates out;
    for (auto i : mine) {
        const auto& pub = index.bundle().publications[i];
        for (const auto& a : pub.authors) {
            if (a != author) out.coauthors.insert(a);
        }
        if (auto it = pub.institution_by_author.find(author); it != pub.institution_by_author.end()) {
            out.institutions.insert(it->second);
        }
    }
    return out;
}

CloseAssociates close_associates(const AuthorId& author, const CorpusBundle& corpus)
{
    return close_associates(author, CorpusIndex(corpus));
}

bool is_self_citation(const CitationRecord& cite, const PublicationRecord& cited)
{
    return std::any_of(cite.citing_authors.begin(), cite.citing_authors.end(),
                       [&](const AuthorId& a) { return cited.has_author(a); });
}

FilterResult filter_citations(const AuthorId& target_author, const CorpusIndex& index, const FilterConfig& cfg)
{
    FilterResult result;
    const auto& mine = index.publications_of(target_author);
    if (mine.empty()) return result;

    CloseAssociates associates;
    if (cfg.exclude_close_associates) associates = close_associates(target_author, index);

    const auto& corpus = index.bundle();
    for (auto pi : mine) {
        const auto& pub = corpus.publications[pi];
        if (!pub.indexed) continue;

        FilterAudit audit;
        audit.cited_pub = pub.pub_id;
        std::set<PubId> deduped_sources;
        std::map<PubId, long long> accepted_per_source;

        for (auto ci : index.citations_to(pub.pub_id)) {
            const auto& cite = corpus.citations[ci];
            long long units = cite.mention_count;
            auto reject = [&](FilterRule r, long long n) {
                audit.rejected[static_cast<std::size_t>(r)] += n;
                units -= n;
            };

            if (cfg.require_indexed_source && !cite.citing_indexed) {
                reject(FilterRule::RequireIndexedSource, units);
            }
            if (units > 0 && cfg.exclude_flagged) {
                const auto* citing = index.find_publication(cite.citing_pub);
                if (citing != nullptr && citing->flagged()) reject(FilterRule::ExcludeFlagged, units);
            }
            if (units > 0 && cfg.dedupe_per_document) {
                const bool first = deduped_sources.insert(cite.citing_pub).second;
                reject(FilterRule::DedupePerDocument, first ? units - 1 : units);
            }
            if (units > 0 && cfg.exclude_self && is_self_citation(cite, pub)) {
                reject(FilterRule::ExcludeSelf, units);
            }
            if (units > 0 && cfg.exclude_close_associates &&
                (intersects(cite.citing_authors, associates.coauthors) ||
                 intersects(cite.citing_institutions, associates.institutions))) {
                reject(FilterRule::ExcludeCloseAssociates, units);
            }
            if (units > 0 && cfg.one_per_author_per_source) {
                // Each distinct citing author may carry one unit; an authorless source carries one.
                std::set<AuthorId> distinct(cite.citing_authors.begin(), cite.citing_authors.end());
                const long long cap = std::max<long long>(1, static_cast<long long>(distinct.size()));
                auto& used = accepted_per_source[cite.citing_pub];
                const long long allowed = std::max<long long>(0, cap - used);
                if (units > allowed) reject(FilterRule::OnePerAuthorPerSource, units - allowed);
                used += units;
            }

            if (units > 0) {
                audit.accepted += units;
                CitationRecord kept = cite;
                kept.mention_count = static_cast<int>(units);
                result.accepted_links.push_back(std::move(kept));
            }
        }
        result.valid_count += audit.accepted;
        result.audits.push_back(std::move(audit));
    }
    return result;
}

FilterResult filter_citations(const AuthorId& target_author, const CorpusBundle& corpus, const FilterConfig& cfg)
{
    return filter_citations(target_author, CorpusIndex(corpus), cfg);
}

}  // namespace kindex
