#ifndef WSX_COMMANDS_HH
#define WSX_COMMANDS_HH 1

#include <wsx/io.hh>
#include <wsx/limits.hh>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace wsx
{
    /// Exit codes shared by every command.
    namespace exit_code
    {
        inline constexpr int ok = 0;
        inline constexpr int negative = 1;
        inline constexpr int invalid = 2;
        inline constexpr int budget = 3;
        inline constexpr int usage = 64;
        inline constexpr int internal = 70;
    }

    struct CommandOptions
    {
        bool normalize = true;
        /// Witnesses listed in a check report.
        std::uint64_t limit = 1000;
        SearchLimits limits;
    };

    struct CommandResult
    {
        int exit_code = 0;
        /// Machine-readable report, "schema_version": 1.
        io::Json report;
        std::string text;
        /// A file the command produces (canonical form, rebuilt or pulled-back extension).
        std::optional<std::string> artifact;
    };

    auto run_check(const std::filesystem::path & extension, const io::ThetaText & theta, const CommandOptions & options)
        -> CommandResult;

    auto run_canonicalize(const std::filesystem::path & extension, const io::ThetaText & theta,
            const CommandOptions & options) -> CommandResult;

    auto run_gamma_check(const std::filesystem::path & gamma, const CommandOptions & options) -> CommandResult;

    auto run_pullback(const std::filesystem::path & extension, const std::filesystem::path & hom,
            const io::ThetaText & theta, const CommandOptions & options) -> CommandResult;

    /// The argument is an algebra file: the kernel of X --id--> X --> 1.
    auto run_product_check(const std::filesystem::path & algebra, const io::ThetaText & theta,
            const CommandOptions & options) -> CommandResult;

    auto run_morphism_check(const std::filesystem::path & morphism, const io::ThetaText & theta,
            const CommandOptions & options) -> CommandResult;

    /// An error report for failures outside any command, such as an unreadable theta file.
    auto error_result(const std::string & command, int code, const std::string & error_name, const std::string & message)
        -> CommandResult;
}

#endif
