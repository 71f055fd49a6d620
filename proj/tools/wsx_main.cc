#include <wsx.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using std::string;
using std::vector;

namespace
{
    struct Common
    {
        string theta_file;
        vector<string> theta_vars;
        string theta_term;
        bool no_normalize = false;
        uint64_t limit = 1000;
        uint64_t budget = 10'000'000;
        unsigned workers = 1;
        bool json = false;
        string out;
    };

    constexpr int exit_usage = 64;
    constexpr int exit_internal = 70;

    using Theta = std::unique_ptr<wsx_theta, decltype(&wsx_theta_free)>;
    using Report = std::unique_ptr<wsx_report, decltype(&wsx_report_free)>;

    void add_theta_flags(CLI::App * app, Common & c)
    {
        app->add_option("--theta", c.theta_file, "theta file {\"vars\": [...], \"term\": \"...\"}");
        app->add_option("--theta-vars", c.theta_vars, "theta variables, last one distinguished")->delimiter(',');
        app->add_option("--theta-term", c.theta_term, "theta as an s-expression");
    }

    void add_search_flags(CLI::App * app, Common & c)
    {
        app->add_flag("--json", c.json, "print the JSON report");
        app->add_option("--budget", c.budget, "search node cap")->capture_default_str();
        app->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    }

    auto load_theta(const Common & c) -> std::optional<Theta>
    {
        wsx_theta * raw = nullptr;
        wsx_status status;
        if (! c.theta_term.empty() || ! c.theta_vars.empty()) {
            if (c.theta_term.empty() || c.theta_vars.empty()) {
                std::cerr << "wsx: --theta-vars and --theta-term go together\n";
                return std::nullopt;
            }
            vector<const char *> vars;
            for (auto & v : c.theta_vars)
                vars.push_back(v.c_str());
            status = wsx_theta_create(vars.data(), vars.size(), c.theta_term.c_str(), &raw);
        }
        else if (! c.theta_file.empty())
            status = wsx_theta_load(c.theta_file.c_str(), &raw);
        else {
            std::cerr << "wsx: theta is required (--theta FILE or --theta-vars/--theta-term)\n";
            return std::nullopt;
        }
        if (status != WSX_OK) {
            std::cerr << "wsx: theta: " << wsx_last_error() << "\n";
            return std::nullopt;
        }
        return Theta{ raw, &wsx_theta_free };
    }

    auto options_of(const Common & c) -> wsx_options
    {
        wsx_options o;
        wsx_options_default(&o);
        o.normalize = c.no_normalize ? 0 : 1;
        o.limit = c.limit;
        o.budget = c.budget;
        o.workers = c.workers;
        return o;
    }

    auto emit(wsx_status status, wsx_report * const * raw, const Common & c) -> int
    {
        if (status != WSX_OK) {
            std::cerr << "wsx: " << wsx_last_error() << "\n";
            return exit_internal;
        }
        Report report{ *raw, &wsx_report_free };
        if (c.json)
            std::cout << wsx_report_json(report.get());
        else
            std::cout << wsx_report_text(report.get());

        if (auto artifact = wsx_report_artifact(report.get())) {
            if (! c.out.empty()) {
                std::ofstream file(c.out, std::ios::binary);
                file << artifact;
                if (! file) {
                    std::cerr << "wsx: cannot write '" << c.out << "'\n";
                    return exit_usage;
                }
            }
            else if (! c.json)
                std::cout << artifact;
        }
        return wsx_report_exit_code(report.get());
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Split extensions of finite algebras: witness search, canonical forms, gamma reconstruction" };
    app.require_subcommand(1);
    Common c;
    string input, hom;

    auto check = app.add_subcommand("check", "validate an extension and enumerate theta witnesses");
    check->add_option("extension", input, "extension file")->required();
    add_theta_flags(check, c);
    check->add_flag("--no-normalize", c.no_normalize, "also list witnesses with q(0) != 0");
    check->add_option("--limit", c.limit, "witnesses listed")->capture_default_str();
    add_search_flags(check, c);

    auto canonicalize = app.add_subcommand("canonicalize", "build the canonical form on Y");
    canonicalize->add_option("extension", input, "extension file")->required();
    add_theta_flags(canonicalize, c);
    canonicalize->add_flag("--no-normalize", c.no_normalize, "search unnormalized witnesses");
    canonicalize->add_option("--out", c.out, "canonical form output file");
    add_search_flags(canonicalize, c);

    auto gamma = app.add_subcommand("gamma-check", "check gamma data and rebuild the extension");
    gamma->add_option("gamma", input, "gamma or canonical file")->required();
    gamma->add_option("--out", c.out, "rebuilt extension output file");
    add_search_flags(gamma, c);

    auto pullback = app.add_subcommand("pullback", "pull an extension back along f: B' -> B");
    pullback->add_option("extension", input, "extension file")->required();
    pullback->add_option("hom", hom, "homomorphism file {\"B_prime\", \"f\"}")->required();
    add_theta_flags(pullback, c);
    pullback->add_option("--out", c.out, "pulled-back extension output file");
    add_search_flags(pullback, c);

    auto product = app.add_subcommand("product-check", "does X -> X -> 1 admit a witness");
    product->add_option("algebra", input, "algebra file")->required();
    add_theta_flags(product, c);
    add_search_flags(product, c);

    auto morphism = app.add_subcommand("morphism-check", "morphism laws and surjectivity");
    morphism->add_option("morphism", input, "morphism file")->required();
    add_theta_flags(morphism, c);
    add_search_flags(morphism, c);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_usage;
    }

    auto options = options_of(c);
    wsx_report * raw = nullptr;

    if (gamma->parsed())
        return emit(wsx_cmd_gamma_check(input.c_str(), &options, &raw), &raw, c);

    auto theta = load_theta(c);
    if (! theta)
        return exit_usage;

    if (check->parsed())
        return emit(wsx_cmd_check(input.c_str(), theta->get(), &options, &raw), &raw, c);
    if (canonicalize->parsed())
        return emit(wsx_cmd_canonicalize(input.c_str(), theta->get(), &options, &raw), &raw, c);
    if (pullback->parsed())
        return emit(wsx_cmd_pullback(input.c_str(), hom.c_str(), theta->get(), &options, &raw), &raw, c);
    if (product->parsed())
        return emit(wsx_cmd_product_check(input.c_str(), theta->get(), &options, &raw), &raw, c);
    if (morphism->parsed())
        return emit(wsx_cmd_morphism_check(input.c_str(), theta->get(), &options, &raw), &raw, c);
    return exit_usage;
}
