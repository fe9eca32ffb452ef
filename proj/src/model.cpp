#include "kindex/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "kindex/errors.hpp"

namespace kindex {

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {"FA", "LA", "CoA", "CorA", "SA"};
constexpr std::array<std::string_view, 6> kTierNames = {"Q1", "Q2", "Q3", "Q4", "BOOK", "UNRANKED"};
constexpr std::array<std::string_view, 2> kFlagNames = {"ERRONEOUS", "NONSCIENTIFIC"};

}  // namespace

std::string_view role_name(Role r) noexcept { return kRoleNames[index_of(r)]; }

std::optional<Role> parse_role(std::string_view name) noexcept
{
    for (Role r : kAllRoles) {
        if (kRoleNames[index_of(r)] == name) return r;
    }
    return std::nullopt;
}

std::string_view venue_tier_name(VenueTier t) noexcept { return kTierNames[static_cast<std::size_t>(t)]; }

std::optional<VenueTier> parse_venue_tier(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kTierNames.size(); ++i) {
        if (kTierNames[i] == s) return static_cast<VenueTier>(i);
    }
    return std::nullopt;
}

std::string_view pub_flag_name(PubFlag f) noexcept { return kFlagNames[static_cast<std::size_t>(f)]; }

std::optional<PubFlag> parse_pub_flag(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kFlagNames.size(); ++i) {
        if (kFlagNames[i] == s) return static_cast<PubFlag>(i);
    }
    return std::nullopt;
}

bool PublicationRecord::has_author(const AuthorId& a) const
{
    return std::find(authors.begin(), authors.end(), a) != authors.end();
}

void validate(const PublicationRecord& pub)
{
    if (pub.pub_id.empty()) throw MalformedRecord("publication has an empty pub_id");
    if (pub.authors.empty()) throw MalformedRecord("publication '" + pub.pub_id + "' has no authors");
    std::unordered_set<std::string_view> seen;
    for (const auto& a : pub.authors) {
        if (a.empty()) throw MalformedRecord("publication '" + pub.pub_id + "' has an empty author id");
        if (!seen.insert(a).second) {
            throw MalformedRecord("publication '" + pub.pub_id + "' lists author '" + a + "' twice");
        }
    }
    for (const auto& c : pub.corresponding) {
        if (!seen.contains(c)) {
            throw MalformedRecord("publication '" + pub.pub_id + "': corresponding author '" + c +
                                  "' is not in the byline");
        }
    }
    if (pub.fwci && !(*pub.fwci >= 0.0)) {
        throw MalformedRecord("publication '" + pub.pub_id + "' has a negative fwci");
    }
}

void validate(const CitationRecord& cite)
{
    if (cite.citing_pub.empty() || cite.cited_pub.empty()) throw MalformedRecord("citation with empty pub id");
    if (cite.citing_pub == cite.cited_pub) {
        throw MalformedRecord("publication '" + cite.cited_pub + "' cites itself");
    }
    if (cite.mention_count < 1) {
        throw MalformedRecord("citation " + cite.citing_pub + " -> " + cite.cited_pub + " has mention_count < 1");
    }
}

RoleAssignment classify_roles(const PublicationRecord& pub)
{
    validate(pub);
    RoleAssignment out;
    out.publication = pub.pub_id;
    const std::size_t n = pub.authors.size();
    for (std::size_t i = 0; i < n; ++i) {
        RoleSet roles;
        if (n == 1) {
            roles.add(Role::SA);
        } else if (i == 0) {
            roles.add(Role::FA);
        } else if (i + 1 == n) {
            roles.add(Role::LA);
        } else {
            roles.add(Role::CoA);
        }
        if (pub.corresponding.contains(pub.authors[i])) roles.add(Role::CorA);
        out.roles.emplace(pub.authors[i], roles);
    }
    return out;
}

RoleProfile build_role_profile(const AuthorId& author, std::span<const PublicationRecord> corpus)
{
    std::array<std::size_t, kRoleCount> held{};
    std::array<double, kRoleCount> fwci_sum{};
    std::array<std::size_t, kRoleCount> fwci_n{};
    std::size_t total = 0;

    for (const auto& pub : corpus) {
        if (!pub.has_author(author)) continue;
        const RoleSet roles = classify_roles(pub).roles.at(author);
        ++total;
        for (Role r : kAllRoles) {
            if (!roles.has(r)) continue;
            ++held[index_of(r)];
            if (pub.fwci) {
                fwci_sum[index_of(r)] += *pub.fwci;
                ++fwci_n[index_of(r)];
            }
        }
    }
    if (total == 0) throw NoPublications(author);

    RoleProfile profile;
    profile.author = author;
    for (Role r : kAllRoles) {
        const auto i = index_of(r);
        profile.shares[i] = static_cast<double>(held[i]) / static_cast<double>(total);
        if (fwci_n[i] > 0) profile.role_fwci[i] = fwci_sum[i] / static_cast<double>(fwci_n[i]);
    }
    return profile;
}

}  // namespace kindex
