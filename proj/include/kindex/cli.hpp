#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kindex/report.hpp"

namespace kindex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Exit status plus the messages explaining a nonzero status.
struct CommandOutcome {
    int exit_code = kExitOk;
    std::vector<std::string> diagnostics;

    bool ok() const noexcept { return exit_code == kExitOk; }
};

struct GlobalOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;  // stdout when absent
    std::optional<int> precision;         // overrides the config file
    OutputFormat format = OutputFormat::Table;
};

/// Exactly one of the two paths must be set.
struct InputPaths {
    std::optional<std::string> corpus_path;
    std::optional<std::string> summary_path;
};

CommandOutcome cmd_validate(const std::string& corpus_path, const GlobalOptions& opts, std::ostream& out);

CommandOutcome cmd_metrics(const InputPaths& input, const std::vector<std::string>& author_filter,
                           const std::optional<std::string>& audit_path, const GlobalOptions& opts, std::ostream& out);

CommandOutcome cmd_rank(const InputPaths& input, const std::optional<std::string>& key, const GlobalOptions& opts,
                        std::ostream& out);

CommandOutcome cmd_correlate(const std::string& summary_path, const std::string& x_column,
                             const std::string& y_column, const GlobalOptions& opts, std::ostream& out);

CommandOutcome cmd_yearly(const std::string& corpus_path, const GlobalOptions& opts, std::ostream& out);

/// Parses argv and dispatches; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kindex::cli
