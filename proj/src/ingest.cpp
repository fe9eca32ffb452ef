#include "kindex/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "kindex/errors.hpp"

namespace kindex {

std::string to_string(const ParseError& e)
{
    if (e.line == 0) return e.message;
    return fmt::format("line {}: {}", e.line, e.message);
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Reads every line, stripping a trailing CR. Calls fn(line_number, line).
void for_each_line(std::istream& in, const std::function<void(std::size_t, std::string_view)>& fn)
{
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string_view view = line;
        if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
        fn(n, view);
    }
}

[[noreturn]] void fail(const std::string& msg) { throw MalformedRecord(msg); }

bool valid_token(std::string_view s)
{
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](char c) {
        return c == ',' || c == '|' || c == ':' || c == '=' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
}

std::string token(std::string_view key, std::string_view v)
{
    if (!valid_token(v)) fail(fmt::format("field '{}': invalid identifier '{}'", key, v));
    return std::string(v);
}

std::vector<AuthorId> id_list(std::string_view key, std::string_view v)
{
    std::vector<AuthorId> out;
    if (v.empty()) return out;
    for (auto part : split(v, ',')) out.push_back(token(key, part));
    return out;
}

bool parse_bool(std::string_view key, std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(fmt::format("field '{}': expected true or false, got '{}'", key, v));
}

long long parse_integer(std::string_view key, std::string_view v)
{
    long long x = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (v.empty() || ec != std::errc{} || p != end) fail(fmt::format("field '{}': '{}' is not an integer", key, v));
    return x;
}

double parse_double(std::string_view key, std::string_view v)
{
    double x = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (v.empty() || ec != std::errc{} || p != end) fail(fmt::format("field '{}': '{}' is not a number", key, v));
    return x;
}

std::string institution(std::string_view key, std::string_view v)
{
    if (v.empty() || v.find('|') != std::string_view::npos) {
        fail(fmt::format("field '{}': invalid institution '{}'", key, v));
    }
    return std::string(v);
}

using FieldMap = std::vector<std::pair<std::string_view, std::string_view>>;

FieldMap split_fields(std::string_view line)
{
    FieldMap fields;
    std::set<std::string_view> seen;
    for (auto part : split(line, '\t')) {
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) fail(fmt::format("field '{}' has no '='", part));
        const auto key = part.substr(0, eq);
        if (!seen.insert(key).second) fail(fmt::format("duplicate field '{}'", key));
        fields.emplace_back(key, part.substr(eq + 1));
    }
    return fields;
}

PublicationRecord parse_pub_fields(const FieldMap& fields)
{
    PublicationRecord pub;
    bool have_id = false, have_year = false, have_authors = false;
    for (const auto& [key, v] : fields) {
        if (key == "type") {
            continue;
        } else if (key == "pub_id") {
            pub.pub_id = token(key, v);
            have_id = true;
        } else if (key == "year") {
            pub.year = static_cast<int>(parse_integer(key, v));
            have_year = true;
        } else if (key == "authors") {
            pub.authors = id_list(key, v);
            have_authors = true;
        } else if (key == "corresponding") {
            for (auto& a : id_list(key, v)) pub.corresponding.insert(std::move(a));
        } else if (key == "venue_tier") {
            auto tier = parse_venue_tier(v);
            if (!tier) fail(fmt::format("field 'venue_tier': unknown tier '{}'", v));
            pub.venue_tier = *tier;
        } else if (key == "fwci") {
            if (v != "-" && !v.empty()) pub.fwci = parse_double(key, v);
        } else if (key == "indexed") {
            pub.indexed = parse_bool(key, v);
        } else if (key == "alphabetical") {
            pub.alphabetical_order = parse_bool(key, v);
        } else if (key == "flags") {
            if (v.empty()) continue;
            for (auto f : split(v, ',')) {
                auto flag = parse_pub_flag(f);
                if (!flag) fail(fmt::format("field 'flags': unknown flag '{}'", f));
                pub.flags.insert(*flag);
            }
        } else if (key == "institutions") {
            if (v.empty()) continue;
            for (auto entry : split(v, '|')) {
                const auto colon = entry.find(':');
                if (colon == std::string_view::npos) {
                    fail(fmt::format("field 'institutions': expected author:institution, got '{}'", entry));
                }
                auto who = token(key, entry.substr(0, colon));
                if (!pub.institution_by_author.emplace(who, institution(key, entry.substr(colon + 1))).second) {
                    fail(fmt::format("field 'institutions': author '{}' listed twice", who));
                }
            }
        } else {
            fail(fmt::format("unknown publication field '{}'", key));
        }
    }
    if (!have_id) fail("publication record lacks pub_id");
    if (!have_year) fail("publication record lacks year");
    if (!have_authors) fail("publication record lacks authors");
    validate(pub);
    for (const auto& [who, _] : pub.institution_by_author) {
        if (!pub.has_author(who)) fail(fmt::format("institution given for '{}', who is not an author", who));
    }
    return pub;
}

CitationRecord parse_cite_fields(const FieldMap& fields)
{
    CitationRecord cite;
    bool have_citing = false, have_cited = false;
    for (const auto& [key, v] : fields) {
        if (key == "type") {
            continue;
        } else if (key == "citing_pub") {
            cite.citing_pub = token(key, v);
            have_citing = true;
        } else if (key == "cited_pub") {
            cite.cited_pub = token(key, v);
            have_cited = true;
        } else if (key == "citing_authors") {
            cite.citing_authors = id_list(key, v);
        } else if (key == "citing_institutions") {
            if (v.empty()) continue;
            for (auto inst : split(v, '|')) cite.citing_institutions.insert(institution(key, inst));
        } else if (key == "citing_indexed") {
            cite.citing_indexed = parse_bool(key, v);
        } else if (key == "mentions") {
            const auto m = parse_integer(key, v);
            if (m < 1 || m > std::numeric_limits<int>::max()) fail("field 'mentions' must be a positive integer");
            cite.mention_count = static_cast<int>(m);
        } else {
            fail(fmt::format("unknown citation field '{}'", key));
        }
    }
    if (!have_citing) fail("citation record lacks citing_pub");
    if (!have_cited) fail("citation record lacks cited_pub");
    validate(cite);
    return cite;
}

}  // namespace

Parsed<CorpusBundle> parse_publications(std::istream& in)
{
    Parsed<CorpusBundle> result;
    auto& bundle = result.value;
    std::unordered_set<std::string> pub_ids;
    std::vector<std::size_t> cite_lines;

    for_each_line(in, [&](std::size_t n, std::string_view line) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') return;
        try {
            const auto fields = split_fields(line);
            auto type = std::find_if(fields.begin(), fields.end(), [](const auto& f) { return f.first == "type"; });
            if (type == fields.end()) fail("record lacks a type field");
            if (type->second == "pub") {
                auto pub = parse_pub_fields(fields);
                if (!pub_ids.insert(pub.pub_id).second) fail(fmt::format("duplicate pub_id '{}'", pub.pub_id));
                bundle.publications.push_back(std::move(pub));
            } else if (type->second == "cite") {
                bundle.citations.push_back(parse_cite_fields(fields));
                cite_lines.push_back(n);
            } else {
                fail(fmt::format("unknown record type '{}'", type->second));
            }
        } catch (const MalformedRecord& e) {
            result.errors.push_back({n, e.what()});
        }
    });

    for (std::size_t i = 0; i < bundle.citations.size(); ++i) {
        const auto& c = bundle.citations[i];
        if (!pub_ids.contains(c.cited_pub)) {
            result.errors.push_back(
                {cite_lines[i], fmt::format("citation references unknown publication '{}'", c.cited_pub)});
        }
    }
    std::stable_sort(result.errors.begin(), result.errors.end(),
                     [](const ParseError& a, const ParseError& b) { return a.line < b.line; });
    if (!result.ok()) result.value = {};
    return result;
}

Parsed<CorpusBundle> parse_publications(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_publications(in);
}

namespace {

template <typename Range, typename Fn>
std::string join(const Range& items, std::string_view sep, Fn&& fn)
{
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) out += sep;
        first = false;
        out += fn(item);
    }
    return out;
}

const auto kIdentity = [](const auto& s) -> std::string { return std::string(s); };

}  // namespace

void write_publications(std::ostream& out, const CorpusBundle& bundle)
{
    for (const auto& p : bundle.publications) {
        out << "type=pub\tpub_id=" << p.pub_id << "\tyear=" << p.year << "\tauthors=" << join(p.authors, ",", kIdentity)
            << "\tcorresponding=" << join(p.corresponding, ",", kIdentity)
            << "\tvenue_tier=" << venue_tier_name(p.venue_tier)
            << "\tfwci=" << (p.fwci ? fmt::format("{}", *p.fwci) : std::string("-"))
            << "\tindexed=" << (p.indexed ? "true" : "false")
            << "\talphabetical=" << (p.alphabetical_order ? "true" : "false")
            << "\tflags=" << join(p.flags, ",", [](PubFlag f) { return std::string(pub_flag_name(f)); })
            << "\tinstitutions="
            << join(p.institution_by_author, "|", [](const auto& kv) { return kv.first + ":" + kv.second; })
            << '\n';
    }
    for (const auto& c : bundle.citations) {
        out << "type=cite\tciting_pub=" << c.citing_pub << "\tcited_pub=" << c.cited_pub
            << "\tciting_authors=" << join(c.citing_authors, ",", kIdentity)
            << "\tciting_institutions=" << join(c.citing_institutions, "|", kIdentity)
            << "\tciting_indexed=" << (c.citing_indexed ? "true" : "false") << "\tmentions=" << c.mention_count
            << '\n';
    }
}

// ---------------------------------------------------------------------------
// Summary tables

namespace detail {

namespace {

// Normalizes a numeric cell: drops grouping spaces and maps a decimal comma to a point.
// Returns nullopt for absent cells ("-", empty, or a parenthesized placeholder).
std::optional<std::string> normalize_numeric(std::string_view cell)
{
    cell = trim(cell);
    if (cell.empty() || cell == "-") return std::nullopt;
    if (cell.front() == '(' && cell.back() == ')') return std::nullopt;
    std::string s;
    s.reserve(cell.size());
    for (char c : cell) {
        if (c == ' ') continue;
        s.push_back(c == ',' ? '.' : c);
    }
    return s;
}

}  // namespace

std::optional<double> parse_decimal(std::string_view cell)
{
    auto s = normalize_numeric(cell);
    if (!s) return std::nullopt;
    double x = 0;
    auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), x);
    if (ec != std::errc{} || p != s->data() + s->size()) fail(fmt::format("'{}' is not a number", trim(cell)));
    return x;
}

std::optional<long long> parse_count(std::string_view cell)
{
    auto s = normalize_numeric(cell);
    if (!s) return std::nullopt;
    long long x = 0;
    auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), x);
    if (ec != std::errc{} || p != s->data() + s->size()) fail(fmt::format("'{}' is not an integer", trim(cell)));
    if (x < 0) fail(fmt::format("negative count '{}'", trim(cell)));
    return x;
}

}  // namespace detail

namespace {

enum class Col {
    Rank, Author, Name, H, Doc, Cit, Share, RoleFwci, CitPerDoc, Wfci, Kr, Kp, Kc, K, Alphabetical
};

struct ColumnSpec {
    Col kind;
    Role role = Role::FA;
};

std::optional<ColumnSpec> column_spec(std::string_view name)
{
    static const std::unordered_map<std::string_view, ColumnSpec> specs = {
        {"rank", {Col::Rank}},
        {"author", {Col::Author}},
        {"name", {Col::Name}},
        {"H", {Col::H}},
        {"DOC", {Col::Doc}},
        {"CIT", {Col::Cit}},
        {"FA", {Col::Share, Role::FA}},
        {"LA", {Col::Share, Role::LA}},
        {"CoA", {Col::Share, Role::CoA}},
        {"CorA", {Col::Share, Role::CorA}},
        {"SA", {Col::Share, Role::SA}},
        {"FWCI1", {Col::RoleFwci, Role::FA}},
        {"FWCI2", {Col::RoleFwci, Role::LA}},
        {"FWCI3", {Col::RoleFwci, Role::CoA}},
        {"FWCI4", {Col::RoleFwci, Role::CorA}},
        {"FWCI5", {Col::RoleFwci, Role::SA}},
        {"CIT/DOC", {Col::CitPerDoc}},
        {"WFCI", {Col::Wfci}},
        {"k_r", {Col::Kr}},
        {"K_p", {Col::Kp}},
        {"K_c", {Col::Kc}},
        {"K", {Col::K}},
        {"alphabetical", {Col::Alphabetical}},
    };
    auto it = specs.find(name);
    if (it == specs.end()) return std::nullopt;
    return it->second;
}

// Share cells are percentages with an optional '%' suffix.
std::optional<double> parse_share(std::string_view cell)
{
    cell = trim(cell);
    if (!cell.empty() && cell.back() == '%') cell.remove_suffix(1);
    auto pct = detail::parse_decimal(cell);
    if (!pct) return std::nullopt;
    if (*pct < 0.0 || *pct > 100.0) fail(fmt::format("share '{}' is outside 0..100%", cell));
    return *pct / 100.0;
}

std::optional<double> parse_non_negative(std::string_view cell)
{
    auto v = detail::parse_decimal(cell);
    if (v && *v < 0.0) fail(fmt::format("negative value '{}'", trim(cell)));
    return v;
}

}  // namespace

bool SummaryTable::has_column(std::string_view name) const
{
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

Parsed<SummaryTable> parse_author_summaries(std::istream& in)
{
    Parsed<SummaryTable> result;
    auto& table = result.value;
    std::vector<ColumnSpec> specs;
    char delim = ';';
    bool have_header = false;
    std::unordered_set<std::string> ids;

    for_each_line(in, [&](std::size_t n, std::string_view line) {
        if (trim(line).empty() || trim(line).front() == '#') return;
        if (!have_header) {
            have_header = true;
            delim = line.find('\t') != std::string_view::npos ? '\t' : ';';
            std::set<std::string_view> seen;
            for (auto raw : split(line, delim)) {
                const auto name = trim(raw);
                auto spec = column_spec(name);
                if (!spec) {
                    result.errors.push_back({n, fmt::format("unknown column '{}'", name)});
                    continue;
                }
                if (!seen.insert(name).second) result.errors.push_back({n, fmt::format("duplicate column '{}'", name)});
                table.columns.emplace_back(name);
                specs.push_back(*spec);
            }
            if (std::none_of(specs.begin(), specs.end(), [](const ColumnSpec& s) { return s.kind == Col::Author; })) {
                result.errors.push_back({n, "header lacks the 'author' column"});
            }
            return;
        }
        if (!result.ok()) return;
        const auto cells = split(line, delim);
        if (cells.size() != specs.size()) {
            result.errors.push_back({n, fmt::format("expected {} cells, found {}", specs.size(), cells.size())});
            return;
        }
        try {
            AuthorSummaryRow row;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const auto cell = trim(cells[i]);
                const auto& spec = specs[i];
                try {
                    switch (spec.kind) {
                        case Col::Rank: break;
                        case Col::Author: row.author = token("author", cell); break;
                        case Col::Name: row.display_name = std::string(cell); break;
                        case Col::H: row.h_index = detail::parse_count(cell); break;
                        case Col::Doc: row.doc = detail::parse_count(cell); break;
                        case Col::Cit: row.cit = detail::parse_count(cell); break;
                        case Col::Share: row.shares[index_of(spec.role)] = parse_share(cell); break;
                        case Col::RoleFwci: row.role_fwci[index_of(spec.role)] = parse_non_negative(cell); break;
                        case Col::CitPerDoc: row.cit_per_doc = parse_non_negative(cell); break;
                        case Col::Wfci: row.fwci_total = parse_non_negative(cell); break;
                        case Col::Kr: {
                            row.k_r = parse_non_negative(cell);
                            if (row.k_r && *row.k_r <= 0.0) fail("k_r must be positive");
                            break;
                        }
                        case Col::Kp: row.k_p = parse_non_negative(cell); break;
                        case Col::Kc: row.k_c = parse_non_negative(cell); break;
                        case Col::K: {
                            auto k = detail::parse_decimal(cell);
                            if (k) row.reported_k = static_cast<long long>(*k);
                            break;
                        }
                        case Col::Alphabetical: row.alphabetical = !cell.empty() && parse_bool("alphabetical", cell); break;
                    }
                } catch (const MalformedRecord& e) {
                    fail(fmt::format("column '{}': {}", table.columns[i], e.what()));
                }
            }
            if (row.display_name.empty()) row.display_name = row.author;
            if (row.doc && *row.doc < 1) fail("DOC must be at least 1");
            if (row.h_index && row.doc && *row.h_index > *row.doc) {
                fail(fmt::format("H ({}) exceeds DOC ({})", *row.h_index, *row.doc));
            }
            if (!ids.insert(row.author).second) fail(fmt::format("duplicate author '{}'", row.author));
            table.rows.push_back(std::move(row));
        } catch (const MalformedRecord& e) {
            result.errors.push_back({n, e.what()});
        }
    });

    if (!result.ok()) result.value = {};
    return result;
}

Parsed<SummaryTable> parse_author_summaries(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_author_summaries(in);
}

// ---------------------------------------------------------------------------
// Configuration

Parsed<Config> load_config(std::istream& in)
{
    Parsed<Config> result;
    auto& cfg = result.value;
    std::set<std::string> seen;

    const std::unordered_map<std::string_view, bool FilterConfig::*> switches = {
        {"require_indexed_source", &FilterConfig::require_indexed_source},
        {"exclude_flagged", &FilterConfig::exclude_flagged},
        {"dedupe_per_document", &FilterConfig::dedupe_per_document},
        {"exclude_self_citations", &FilterConfig::exclude_self},
        {"exclude_close_associates", &FilterConfig::exclude_close_associates},
        {"one_per_author_per_source", &FilterConfig::one_per_author_per_source},
    };

    for_each_line(in, [&](std::size_t n, std::string_view line) {
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) return;
        try {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) fail(fmt::format("expected key=value, got '{}'", line));
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (key.empty()) fail("empty key");
            if (!seen.insert(std::string(key)).second) fail(fmt::format("duplicate key '{}'", key));

            if (auto it = switches.find(key); it != switches.end()) {
                cfg.filter.*(it->second) = parse_bool(key, value);
            } else if (key == "rank_key") {
                auto k = parse_rank_key(value);
                if (!k) fail(fmt::format("key 'rank_key': unknown metric '{}'", value));
                cfg.analysis.rank_key = *k;
            } else if (key == "precision") {
                const auto p = parse_integer(key, value);
                if (p < 0 || p > 12) fail("key 'precision' must be within 0..12");
                cfg.analysis.precision = static_cast<int>(p);
            } else if (key == "alphabetical_field") {
                cfg.analysis.alphabetical_field = parse_bool(key, value);
            } else if (key.starts_with("k_p.") || key.starts_with("k_c.")) {
                const auto who = token(key, key.substr(4));
                const auto x = parse_double(key, value);
                if (!(x >= 0.0)) fail(fmt::format("key '{}' must be non-negative", key));
                (key[2] == 'p' ? cfg.analysis.k_p : cfg.analysis.k_c)[who] = x;
            } else {
                fail(fmt::format("unknown key '{}'", key));
            }
        } catch (const MalformedRecord& e) {
            result.errors.push_back({n, e.what()});
        }
    });
    if (!result.ok()) result.value = {};
    return result;
}

Parsed<Config> load_config(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return load_config(in);
}

}  // namespace kindex
