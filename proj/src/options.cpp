#include "kindex/options.hpp"

#include <array>

namespace kindex {

namespace {

constexpr std::array<std::string_view, 4> kRankKeyNames = {"k_display", "k_exact", "h_index", "cit_per_doc"};

}  // namespace

std::string_view rank_key_name(RankKey k) noexcept { return kRankKeyNames[static_cast<std::size_t>(k)]; }

std::optional<RankKey> parse_rank_key(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kRankKeyNames.size(); ++i) {
        if (kRankKeyNames[i] == s) return static_cast<RankKey>(i);
    }
    return std::nullopt;
}

}  // namespace kindex
