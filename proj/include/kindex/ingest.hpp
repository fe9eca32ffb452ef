#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kindex/model.hpp"
#include "kindex/options.hpp"

namespace kindex {

struct ParseError {
    std::size_t line = 0;  // 1-based; 0 when the error is not tied to a line
    std::string message;
};

std::string to_string(const ParseError& e);

/// Result of a parse: either a complete value or a non-empty list of errors.
template <typename T>
struct Parsed {
    T value{};
    std::vector<ParseError> errors;

    bool ok() const noexcept { return errors.empty(); }
};

/// One pre-aggregated author row (the role-share or ranking tables).
///
/// Every numeric cell is optional; "-" or an empty cell stays absent.
struct AuthorSummaryRow {
    AuthorId author;
    std::string display_name;
    std::optional<long long> h_index;
    std::optional<long long> doc;
    std::optional<long long> cit;
    std::array<std::optional<double>, kRoleCount> shares{};
    std::array<std::optional<double>, kRoleCount> role_fwci{};
    std::optional<double> cit_per_doc;  // reported ratio, when DOC/CIT are not given
    std::optional<double> fwci_total;   // reported WFCI
    std::optional<double> k_r;          // reported role dominance
    std::optional<double> k_p;
    std::optional<double> k_c;
    std::optional<long long> reported_k;
    bool alphabetical = false;

    friend bool operator==(const AuthorSummaryRow&, const AuthorSummaryRow&) = default;
};

struct SummaryTable {
    std::vector<std::string> columns;  // header as read
    std::vector<AuthorSummaryRow> rows;

    bool has_column(std::string_view name) const;
};

struct CorpusBundle {
    std::vector<PublicationRecord> publications;
    std::vector<CitationRecord> citations;
    std::vector<AuthorSummaryRow> summaries;

    friend bool operator==(const CorpusBundle&, const CorpusBundle&) = default;
};

/// Reads the line-delimited `key=value` record format (see docs/formats.md).
Parsed<CorpusBundle> parse_publications(std::istream& in);
Parsed<CorpusBundle> parse_publications(std::string_view text);

/// Writes a bundle in the same format; parse_publications reads it back unchanged.
void write_publications(std::ostream& out, const CorpusBundle& bundle);

/// Reads a tab- or semicolon-delimited summary table with a named header line.
Parsed<SummaryTable> parse_author_summaries(std::istream& in);
Parsed<SummaryTable> parse_author_summaries(std::string_view text);

/// Reads `key=value` configuration lines; omitted keys keep their defaults.
Parsed<Config> load_config(std::istream& in);
Parsed<Config> load_config(std::string_view text);

namespace detail {
// Numeric cell helpers shared by the summary reader and the CLI.
std::optional<double> parse_decimal(std::string_view cell);
std::optional<long long> parse_count(std::string_view cell);
}  // namespace detail

}  // namespace kindex
