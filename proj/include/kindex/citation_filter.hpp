#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kindex/ingest.hpp"
#include "kindex/model.hpp"
#include "kindex/options.hpp"

namespace kindex {

/// Lookup tables over a CorpusBundle. The bundle must outlive the index.
class CorpusIndex {
  public:
    explicit CorpusIndex(const CorpusBundle& bundle);

    const CorpusBundle& bundle() const noexcept { return *bundle_; }

    const PublicationRecord* find_publication(const PubId& id) const;
    /// Indices into bundle().publications, in corpus order. Empty for unknown authors.
    const std::vector<std::size_t>& publications_of(const AuthorId& author) const;
    /// Indices into bundle().citations whose cited_pub is `id`, in corpus order.
    const std::vector<std::size_t>& citations_to(const PubId& id) const;
    /// Every author appearing in a byline, sorted.
    const std::vector<AuthorId>& authors() const noexcept { return authors_; }

  private:
    const CorpusBundle* bundle_;
    std::unordered_map<PubId, std::size_t> pub_by_id_;
    std::unordered_map<AuthorId, std::vector<std::size_t>> pubs_by_author_;
    std::unordered_map<PubId, std::vector<std::size_t>> cites_by_cited_;
    std::vector<AuthorId> authors_;
};

/// The validity rules, in the order they are applied.
enum class FilterRule {
    RequireIndexedSource,
    ExcludeFlagged,
    DedupePerDocument,
    ExcludeSelf,
    ExcludeCloseAssociates,
    OnePerAuthorPerSource,
};

inline constexpr std::array<FilterRule, 6> kFilterRules = {
    FilterRule::RequireIndexedSource, FilterRule::ExcludeFlagged,         FilterRule::DedupePerDocument,
    FilterRule::ExcludeSelf,          FilterRule::ExcludeCloseAssociates, FilterRule::OnePerAuthorPerSource,
};

std::string_view filter_rule_name(FilterRule r) noexcept;
bool rule_enabled(const FilterConfig& cfg, FilterRule r) noexcept;
void set_rule(FilterConfig& cfg, FilterRule r, bool on) noexcept;

/// Per cited publication: how many citation units were accepted and which rule
/// rejected the rest. A unit is one mention of the cited publication.
struct FilterAudit {
    PubId cited_pub;
    long long accepted = 0;
    std::array<long long, kFilterRules.size()> rejected{};

    long long rejected_by(FilterRule r) const { return rejected[static_cast<std::size_t>(r)]; }
    long long inspected() const;
};

struct FilterResult {
    long long valid_count = 0;
    std::vector<FilterAudit> audits;             // one per portfolio publication, corpus order
    std::vector<CitationRecord> accepted_links;  // surviving links, mention_count = accepted units
};

struct CloseAssociates {
    std::set<AuthorId> coauthors;
    std::set<std::string> institutions;
};

/// Direct coauthors of `author` plus the institutions the author is listed with.
/// Throws NoPublications for an author absent from the corpus.
CloseAssociates close_associates(const AuthorId& author, const CorpusIndex& index);
CloseAssociates close_associates(const AuthorId& author, const CorpusBundle& corpus);

/// A citing document that shares at least one author with the cited publication.
bool is_self_citation(const CitationRecord& cite, const PublicationRecord& cited);

/// Applies the enabled rules to every citation of the author's indexed publications.
/// An author with no publications yields a zero count and no audits.
FilterResult filter_citations(const AuthorId& target_author, const CorpusIndex& index, const FilterConfig& cfg);
FilterResult filter_citations(const AuthorId& target_author, const CorpusBundle& corpus, const FilterConfig& cfg);

}  // namespace kindex
