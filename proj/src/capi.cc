#include <wsx.h>
#include <wsx/commands.hh>
#include <wsx/error.hh>

#include <new>

using std::size_t;
using std::string;

struct wsx_algebra
{
    wsx::FiniteAlgebra algebra;
};

struct wsx_extension
{
    wsx::SplitExtension extension;
};

struct wsx_theta
{
    wsx::io::ThetaText text;
};

struct wsx_report
{
    wsx::CommandResult result;
    string json;
};

namespace
{
    thread_local string last_error;

    auto status_of(wsx::ErrorCode code) -> wsx_status
    {
        return static_cast<wsx_status>(static_cast<int>(code) + 1);
    }

    template <typename Body>
    auto guarded(Body && body) -> wsx_status
    {
        last_error.clear();
        try {
            body();
            return WSX_OK;
        }
        catch (const wsx::Error & e) {
            last_error = e.what();
            return status_of(e.code());
        }
        catch (const std::exception & e) {
            last_error = e.what();
            return WSX_E_INTERNAL;
        }
    }

    auto null_argument() -> wsx_status
    {
        last_error = "null argument";
        return WSX_E_NULL_ARGUMENT;
    }

    auto to_options(const wsx_options * options) -> wsx::CommandOptions
    {
        wsx::CommandOptions out;
        if (options) {
            out.normalize = options->normalize != 0;
            out.limit = options->limit;
            out.limits.node_budget = options->budget;
            out.limits.workers = options->workers == 0 ? 1 : options->workers;
        }
        return out;
    }

    auto make_report(wsx::CommandResult result, wsx_report ** out) -> wsx_status
    {
        auto json = wsx::io::dump(result.report);
        *out = new wsx_report{ std::move(result), std::move(json) };
        return WSX_OK;
    }
}

extern "C"
{
    void wsx_options_default(wsx_options * options)
    {
        if (! options)
            return;
        wsx::CommandOptions defaults;
        options->normalize = defaults.normalize ? 1 : 0;
        options->limit = defaults.limit;
        options->budget = defaults.limits.node_budget;
        options->workers = defaults.limits.workers;
    }

    const char * wsx_last_error(void)
    {
        return last_error.c_str();
    }

    const char * wsx_status_name(wsx_status status)
    {
        if (status == WSX_OK)
            return "Ok";
        if (status == WSX_E_NULL_ARGUMENT)
            return "NullArgument";
        if (status > WSX_OK && status <= WSX_E_INTERNAL)
            return wsx::error_code_name(static_cast<wsx::ErrorCode>(status - 1)).data();
        return "Unknown";
    }

    wsx_status wsx_algebra_load(const char * path, wsx_algebra ** out)
    {
        if (! path || ! out)
            return null_argument();
        return guarded([&] {
            std::filesystem::path p{ path };
            auto value = wsx::io::parse_json(wsx::io::read_file(p));
            *out = new wsx_algebra{ wsx::io::algebra_from_json(value, p.parent_path()) };
        });
    }

    wsx_status wsx_algebra_parse(const char * json, wsx_algebra ** out)
    {
        if (! json || ! out)
            return null_argument();
        return guarded([&] {
            *out = new wsx_algebra{ wsx::io::algebra_from_json(wsx::io::parse_json(json), ".") };
        });
    }

    size_t wsx_algebra_size(const wsx_algebra * algebra)
    {
        return algebra ? algebra->algebra.size() : 0;
    }

    uint32_t wsx_algebra_zero(const wsx_algebra * algebra)
    {
        return algebra ? algebra->algebra.zero() : 0;
    }

    wsx_status wsx_algebra_apply(const wsx_algebra * algebra, const char * op, const uint32_t * args,
            size_t arg_count, uint32_t * result)
    {
        if (! algebra || ! op || ! result || (arg_count > 0 && ! args))
            return null_argument();
        return guarded([&] {
            auto & a = algebra->algebra;
            auto index = a.signature().find(op);
            if (! index)
                throw wsx::Error{ wsx::ErrorCode::UnknownSymbol, string("no operation '") + op + "'" };
            if (a.signature().op(*index).arity != arg_count)
                throw wsx::Error{ wsx::ErrorCode::ArityMismatch, string("'") + op + "' takes "
                    + std::to_string(a.signature().op(*index).arity) + " arguments" };
            for (size_t i = 0 ; i < arg_count ; ++i)
                if (args[i] >= a.size())
                    throw wsx::Error{ wsx::ErrorCode::EntryOutOfRange, "argument outside the carrier" };
            *result = a.apply(*index, std::span<const wsx::Element>(args, arg_count));
        });
    }

    void wsx_algebra_free(wsx_algebra * algebra)
    {
        delete algebra;
    }

    wsx_status wsx_theta_create(const char * const * vars, size_t var_count, const char * term, wsx_theta ** out)
    {
        if (! term || ! out || (var_count > 0 && ! vars))
            return null_argument();
        return guarded([&] {
            wsx::io::ThetaText text;
            for (size_t i = 0 ; i < var_count ; ++i) {
                if (! vars[i])
                    throw wsx::Error{ wsx::ErrorCode::FileFormat, "null variable name" };
                text.vars.emplace_back(vars[i]);
            }
            text.term = term;
            *out = new wsx_theta{ std::move(text) };
        });
    }

    wsx_status wsx_theta_load(const char * path, wsx_theta ** out)
    {
        if (! path || ! out)
            return null_argument();
        return guarded([&] {
            *out = new wsx_theta{ wsx::io::theta_from_json(wsx::io::parse_json(wsx::io::read_file(path))) };
        });
    }

    void wsx_theta_free(wsx_theta * theta)
    {
        delete theta;
    }

    wsx_status wsx_extension_load(const char * path, wsx_extension ** out)
    {
        if (! path || ! out)
            return null_argument();
        return guarded([&] {
            std::filesystem::path p{ path };
            auto doc = wsx::io::extension_from_json(wsx::io::parse_json(wsx::io::read_file(p)), p.parent_path());
            *out = new wsx_extension{ std::move(doc.extension) };
        });
    }

    wsx_status wsx_extension_parse(const char * json, const char * base_dir, wsx_extension ** out)
    {
        if (! json || ! out)
            return null_argument();
        return guarded([&] {
            auto doc = wsx::io::extension_from_json(wsx::io::parse_json(json), base_dir ? base_dir : ".");
            *out = new wsx_extension{ std::move(doc.extension) };
        });
    }

    void wsx_extension_sizes(const wsx_extension * extension, size_t * x, size_t * a, size_t * b)
    {
        if (! extension)
            return;
        if (x)
            *x = extension->extension.kernel.size();
        if (a)
            *a = extension->extension.middle.size();
        if (b)
            *b = extension->extension.base.size();
    }

    wsx_status wsx_extension_is_valid(const wsx_extension * extension, int * valid)
    {
        if (! extension || ! valid)
            return null_argument();
        return guarded([&] {
            *valid = wsx::validate_split_extension(extension->extension).passed() ? 1 : 0;
        });
    }

    wsx_status wsx_extension_count_witnesses(const wsx_extension * extension, const wsx_theta * theta,
            const wsx_options * options, uint64_t * count, int * saturated)
    {
        if (! extension || ! theta || ! count)
            return null_argument();
        return guarded([&] {
            auto opts = to_options(options);
            auto & e = extension->extension;
            auto spec = theta->text.bind(e.middle.signature());
            auto result = wsx::find_witnesses(e, spec, wsx::WitnessSearchOptions{ opts.normalize, 0 }, opts.limits);
            *count = result.total;
            if (saturated)
                *saturated = result.total_saturated ? 1 : 0;
        });
    }

    wsx_status wsx_extension_witness(const wsx_extension * extension, const wsx_theta * theta,
            const wsx_options * options, uint64_t index, uint32_t * q, size_t capacity, size_t * n)
    {
        if (! extension || ! theta || ! q || ! n)
            return null_argument();
        return guarded([&] {
            auto opts = to_options(options);
            auto & e = extension->extension;
            auto spec = theta->text.bind(e.middle.signature());
            if (index == std::numeric_limits<uint64_t>::max())
                throw wsx::Error{ wsx::ErrorCode::EntryOutOfRange, "witness index too large" };
            auto result = wsx::find_witnesses(e, spec, wsx::WitnessSearchOptions{ opts.normalize, index + 1 },
                    opts.limits);
            if (index >= result.witnesses.size())
                throw wsx::Error{ wsx::ErrorCode::EntryOutOfRange, "only " + std::to_string(result.total)
                    + " witnesses exist" };
            auto & w = result.witnesses[index];
            auto size = e.middle.size();
            if (capacity < w.n() * size)
                throw wsx::Error{ wsx::ErrorCode::SizeMismatch, "output buffer needs "
                    + std::to_string(w.n() * size) + " entries" };
            for (size_t i = 0 ; i < w.n() ; ++i)
                for (size_t a = 0 ; a < size ; ++a)
                    q[i * size + a] = w.q[i](static_cast<wsx::Element>(a));
            *n = w.n();
        });
    }

    wsx_status wsx_extension_is_schreier(const wsx_extension * extension, const wsx_theta * theta,
            const wsx_options * options, int * schreier)
    {
        if (! extension || ! theta || ! schreier)
            return null_argument();
        return guarded([&] {
            auto opts = to_options(options);
            auto & e = extension->extension;
            *schreier = wsx::is_schreier(e, theta->text.bind(e.middle.signature()), opts.limits) ? 1 : 0;
        });
    }

    void wsx_extension_free(wsx_extension * extension)
    {
        delete extension;
    }

    wsx_status wsx_cmd_check(const char * extension_path, const wsx_theta * theta, const wsx_options * options,
            wsx_report ** out)
    {
        if (! extension_path || ! theta || ! out)
            return null_argument();
        return guarded([&] { make_report(wsx::run_check(extension_path, theta->text, to_options(options)), out); });
    }

    wsx_status wsx_cmd_canonicalize(const char * extension_path, const wsx_theta * theta,
            const wsx_options * options, wsx_report ** out)
    {
        if (! extension_path || ! theta || ! out)
            return null_argument();
        return guarded([&] {
            make_report(wsx::run_canonicalize(extension_path, theta->text, to_options(options)), out);
        });
    }

    wsx_status wsx_cmd_gamma_check(const char * gamma_path, const wsx_options * options, wsx_report ** out)
    {
        if (! gamma_path || ! out)
            return null_argument();
        return guarded([&] { make_report(wsx::run_gamma_check(gamma_path, to_options(options)), out); });
    }

    wsx_status wsx_cmd_pullback(const char * extension_path, const char * hom_path, const wsx_theta * theta,
            const wsx_options * options, wsx_report ** out)
    {
        if (! extension_path || ! hom_path || ! theta || ! out)
            return null_argument();
        return guarded([&] {
            make_report(wsx::run_pullback(extension_path, hom_path, theta->text, to_options(options)), out);
        });
    }

    wsx_status wsx_cmd_product_check(const char * algebra_path, const wsx_theta * theta,
            const wsx_options * options, wsx_report ** out)
    {
        if (! algebra_path || ! theta || ! out)
            return null_argument();
        return guarded([&] {
            make_report(wsx::run_product_check(algebra_path, theta->text, to_options(options)), out);
        });
    }

    wsx_status wsx_cmd_morphism_check(const char * morphism_path, const wsx_theta * theta,
            const wsx_options * options, wsx_report ** out)
    {
        if (! morphism_path || ! theta || ! out)
            return null_argument();
        return guarded([&] {
            make_report(wsx::run_morphism_check(morphism_path, theta->text, to_options(options)), out);
        });
    }

    int wsx_report_exit_code(const wsx_report * report)
    {
        return report ? report->result.exit_code : wsx::exit_code::internal;
    }

    const char * wsx_report_json(const wsx_report * report)
    {
        return report ? report->json.c_str() : "";
    }

    const char * wsx_report_text(const wsx_report * report)
    {
        return report ? report->result.text.c_str() : "";
    }

    const char * wsx_report_artifact(const wsx_report * report)
    {
        return report && report->result.artifact ? report->result.artifact->c_str() : nullptr;
    }

    void wsx_report_free(wsx_report * report)
    {
        delete report;
    }
}
