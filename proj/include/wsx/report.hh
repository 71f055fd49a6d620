#ifndef WSX_REPORT_HH
#define WSX_REPORT_HH 1

#include <string>
#include <vector>

namespace wsx
{
    struct LawResult
    {
        std::string law;
        bool passed;
        std::string detail;
    };

    /// Ordered pass/fail entries; `detail` carries the first counterexample on failure.
    struct LawReport
    {
        std::vector<LawResult> entries;

        void add(std::string law, bool passed, std::string detail = {});
        auto passed() const -> bool;
        auto find(const std::string & law) const -> const LawResult *;
        auto failures() const -> std::string;
    };
}

#endif
