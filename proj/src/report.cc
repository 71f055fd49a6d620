#include <wsx/report.hh>

#include <algorithm>

namespace wsx
{
    void LawReport::add(std::string law, bool passed, std::string detail)
    {
        entries.push_back(LawResult{ std::move(law), passed, std::move(detail) });
    }

    auto LawReport::passed() const -> bool
    {
        return std::all_of(entries.begin(), entries.end(), [] (const LawResult & r) { return r.passed; });
    }

    auto LawReport::find(const std::string & law) const -> const LawResult *
    {
        for (auto & r : entries)
            if (r.law == law)
                return &r;
        return nullptr;
    }

    auto LawReport::failures() const -> std::string
    {
        std::string out;
        for (auto & r : entries)
            if (! r.passed) {
                if (! out.empty())
                    out += "; ";
                out += r.law;
                if (! r.detail.empty())
                    out += " (" + r.detail + ")";
            }
        return out;
    }
}
