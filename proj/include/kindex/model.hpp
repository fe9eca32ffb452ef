#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kindex {

using AuthorId = std::string;
using PubId = std::string;

/// Coauthorship role functions, in the column order of the role-share tables:
/// first author, last author, middle coauthor, corresponding author, single author.
enum class Role : std::uint8_t { FA = 0, LA = 1, CoA = 2, CorA = 3, SA = 4 };

inline constexpr std::array<Role, 5> kAllRoles = {Role::FA, Role::LA, Role::CoA, Role::CorA, Role::SA};
inline constexpr std::size_t kRoleCount = kAllRoles.size();

constexpr std::size_t index_of(Role r) noexcept { return static_cast<std::size_t>(r); }
std::string_view role_name(Role r) noexcept;
std::optional<Role> parse_role(std::string_view name) noexcept;

/// Small bitset of roles held by one author on one publication.
class RoleSet {
  public:
    constexpr RoleSet() = default;
    constexpr RoleSet(std::initializer_list<Role> roles)
    {
        for (Role r : roles) add(r);
    }

    constexpr void add(Role r) noexcept { bits_ |= bit(r); }
    constexpr bool has(Role r) const noexcept { return (bits_ & bit(r)) != 0; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(__builtin_popcount(bits_)); }

    friend constexpr bool operator==(RoleSet, RoleSet) = default;

  private:
    static constexpr std::uint8_t bit(Role r) noexcept { return static_cast<std::uint8_t>(1u << index_of(r)); }
    std::uint8_t bits_ = 0;
};

enum class VenueTier : std::uint8_t { Q1, Q2, Q3, Q4, Book, Unranked };
std::string_view venue_tier_name(VenueTier t) noexcept;
std::optional<VenueTier> parse_venue_tier(std::string_view s) noexcept;

enum class PubFlag : std::uint8_t { Erroneous, NonScientific };
std::string_view pub_flag_name(PubFlag f) noexcept;
std::optional<PubFlag> parse_pub_flag(std::string_view s) noexcept;

struct PublicationRecord {
    PubId pub_id;
    int year = 0;
    std::vector<AuthorId> authors;  // byline order
    std::set<AuthorId> corresponding;
    VenueTier venue_tier = VenueTier::Unranked;
    std::optional<double> fwci;
    bool indexed = true;
    bool alphabetical_order = false;
    std::set<PubFlag> flags;
    std::map<AuthorId, std::string> institution_by_author;

    bool has_author(const AuthorId& a) const;
    bool flagged() const noexcept { return !flags.empty(); }

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Throws MalformedRecord if the publication breaks its invariants.
void validate(const PublicationRecord& pub);

struct CitationRecord {
    PubId citing_pub;
    PubId cited_pub;
    std::vector<AuthorId> citing_authors;
    std::set<std::string> citing_institutions;
    bool citing_indexed = true;
    int mention_count = 1;

    friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
};

void validate(const CitationRecord& cite);

struct RoleAssignment {
    PubId publication;
    std::map<AuthorId, RoleSet> roles;
};

/// Positional role classification of one byline. Pure and deterministic.
RoleAssignment classify_roles(const PublicationRecord& pub);

/// Per-author role shares and mean FWCI per role.
///
/// Shares over {FA, LA, CoA, SA} partition the author's publications; CorA is an
/// overlay, so the five shares together may exceed 1.
struct RoleProfile {
    AuthorId author;
    std::array<std::optional<double>, kRoleCount> shares{};
    std::array<std::optional<double>, kRoleCount> role_fwci{};

    std::optional<double> share(Role r) const { return shares[index_of(r)]; }
    std::optional<double> fwci(Role r) const { return role_fwci[index_of(r)]; }
};

/// Counts the author's roles over `corpus`. Throws NoPublications when the author
/// does not appear in any publication.
RoleProfile build_role_profile(const AuthorId& author, std::span<const PublicationRecord> corpus);

}  // namespace kindex
