#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "kindex/model.hpp"

namespace kindex {

/// Switches for the six citation-validity rules. Every rule is on by default.
struct FilterConfig {
    bool require_indexed_source = true;
    bool exclude_flagged = true;
    bool dedupe_per_document = true;
    bool exclude_self = true;
    bool exclude_close_associates = true;
    bool one_per_author_per_source = true;

    static FilterConfig all_off() { return {false, false, false, false, false, false}; }

    friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

enum class RankKey { KDisplay, KExact, HIndex, CitPerDoc };

std::string_view rank_key_name(RankKey k) noexcept;
std::optional<RankKey> parse_rank_key(std::string_view s) noexcept;

struct AnalysisOptions {
    RankKey rank_key = RankKey::KDisplay;
    int precision = 2;
    // The whole field publishes in alphabetical byline order: k_r is pinned to 1.
    bool alphabetical_field = false;
    // Externally supplied patent and commercialization components, per author.
    std::map<AuthorId, double> k_p;
    std::map<AuthorId, double> k_c;
};

struct Config {
    FilterConfig filter;
    AnalysisOptions analysis;
};

}  // namespace kindex
