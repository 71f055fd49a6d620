#include <wsx/gamma.hh>
#include <wsx/error.hh>

#include <algorithm>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace wsx
{
    auto GammaData::coder() const -> TupleCoder
    {
        return TupleCoder::ambient(kernel.size(), n(), base.size());
    }

    auto extract_gamma(const CanonicalExtension & c, vector<Equation> axioms) -> GammaData
    {
        vector<size_t> section;
        for (Element b = 0 ; b < c.source.base.size() ; ++b)
            section.push_back(c.y[c.iota_base(b)] / c.source.base.size());
        return GammaData{ c.source.kernel, c.source.base, c.theta, c.gamma, std::move(axioms), std::move(section),
            c.gamma_id };
    }

    void validate_gamma_shape(const GammaData & g)
    {
        auto & sig = g.base.signature();
        if (g.kernel.signature() != sig)
            throw Error{ ErrorCode::SignatureMismatch, "kernel and base algebras have different signatures" };
        require_term_over(g.theta.term(), sig);
        for (auto & eq : g.axioms) {
            require_term_over(eq.lhs, sig);
            require_term_over(eq.rhs, sig);
        }
        auto coder = g.coder();
        auto xn = TupleCoder::power(g.kernel.size(), g.n()).count();
        // ambient_algebra checks the gamma tables themselves
        (void) ambient_algebra(g.kernel, g.base, g.n(), g.gamma);
        if (g.section.size() != g.base.size())
            throw Error{ ErrorCode::SizeMismatch, "section has " + to_string(g.section.size()) + " entries, base has "
                + to_string(g.base.size()) + " elements" };
        for (auto v : g.section)
            if (v >= xn)
                throw Error{ ErrorCode::EntryOutOfRange, "section entry outside X^n" };
        if (g.gamma_id) {
            if (g.gamma_id->size() != coder.count())
                throw Error{ ErrorCode::SizeMismatch, "gamma_id has " + to_string(g.gamma_id->size()) + " entries, expected "
                    + to_string(coder.count()) };
            for (auto v : *g.gamma_id)
                if (v >= xn)
                    throw Error{ ErrorCode::EntryOutOfRange, "gamma_id entry outside X^n" };
        }
    }

    namespace
    {
        struct Context
        {
            const GammaData & g;
            TupleCoder coder;
            TupleCoder kernel_coder;
            FiniteAlgebra ambient;
            Element zero_code;

            explicit Context(const GammaData & data) :
                g(data),
                coder(data.coder()),
                kernel_coder(TupleCoder::power(data.kernel.size(), data.n())),
                ambient(ambient_algebra(data.kernel, data.base, data.n(), data.gamma)),
                zero_code(0)
            {
                vector<Element> zeros(data.n(), data.kernel.zero());
                zeros.push_back(data.base.zero());
                zero_code = static_cast<Element>(coder.encode(zeros));
            }

            auto b_size() const -> size_t
            {
                return g.base.size();
            }

            auto code(size_t xcode, Element b) const -> Element
            {
                return static_cast<Element>(xcode * b_size() + b);
            }

            /// gamma_omega(0, ..., 0, t) as an X^n code, omega evaluated in the ambient algebra.
            auto gamma_unit(const TermSpec & omega, Element t) const -> size_t
            {
                vector<Element> args(omega.vars.size(), zero_code);
                args.back() = t;
                return evaluate(omega.term, ambient, args) / b_size();
            }

            /// theta_X(y, 0) for an X^n code y.
            auto theta_kernel(size_t ycode) const -> Element
            {
                vector<Element> env(g.n() + 1);
                kernel_coder.decode_into(ycode, std::span<Element>(env.data(), g.n()));
                env[g.n()] = g.kernel.zero();
                return evaluate(g.theta.term(), g.kernel, env);
            }

            auto y_by_theta() const -> vector<size_t>
            {
                vector<size_t> y;
                for (size_t t = 0 ; t < coder.count() ; ++t)
                    if (gamma_unit(g.theta.spec(), static_cast<Element>(t)) == t / b_size())
                        y.push_back(t);
                return y;
            }
        };

        auto format_code(const TupleCoder & coder, size_t code) -> string
        {
            auto tuple = coder.decode(code);
            string out = "(";
            for (size_t i = 0 ; i < tuple.size() ; ++i)
                out += (i ? "," : "") + to_string(tuple[i]);
            return out + ")";
        }
    }

    auto compute_y(const GammaData & g, const vector<TermSpec> & extra_terms) -> vector<size_t>
    {
        validate_gamma_shape(g);
        Context ctx{ g };
        auto y = ctx.y_by_theta();
        vector<bool> member(ctx.coder.count(), false);
        for (auto t : y)
            member[t] = true;

        if (g.gamma_id)
            for (size_t t = 0 ; t < ctx.coder.count() ; ++t)
                if (((*g.gamma_id)[t] == t / ctx.b_size()) != member[t])
                    throw Error{ ErrorCode::MembershipDiscrepancy, "gamma_id and gamma_theta disagree at "
                        + format_code(ctx.coder, t) };

        for (auto & omega : extra_terms) {
            require_term_over(omega.term, g.base.signature());
            if (omega.vars.empty())
                throw Error{ ErrorCode::ArityMismatch, "membership term needs at least one variable" };
            for (size_t t = 0 ; t < ctx.coder.count() ; ++t)
                if ((ctx.gamma_unit(omega, static_cast<Element>(t)) == t / ctx.b_size()) != member[t])
                    throw Error{ ErrorCode::MembershipDiscrepancy, "gamma of '" + to_sexpr(omega.term)
                        + "' and gamma_theta disagree at " + format_code(ctx.coder, t) };
        }
        return y;
    }

    auto check_conditions(const GammaData & g, const SearchLimits & limits) -> GammaConditions
    {
        validate_gamma_shape(g);
        Context ctx{ g };
        auto n = g.n();
        auto & X = g.kernel;
        auto & sig = g.base.signature();

        GammaConditions result;
        result.y = ctx.y_by_theta();
        vector<bool> member(ctx.coder.count(), false);
        for (auto t : result.y)
            member[t] = true;

        // (1) the variety's identities on Y
        {
            string detail;
            vector<Element> members(result.y.begin(), result.y.end());
            if (auto failure = find_closure_failure(ctx.ambient, members)) {
                detail = "Y is not closed under '" + failure->op + "': result " + format_code(ctx.coder, failure->result);
            }
            else {
                auto y_alg = induced_subalgebra(ctx.ambient, members);
                for (size_t i = 0 ; i < g.axioms.size() && detail.empty() ; ++i) {
                    auto check = check_equation(y_alg, g.axioms[i], limits);
                    if (! check) {
                        detail = to_sexpr(g.axioms[i].lhs) + " = " + to_sexpr(g.axioms[i].rhs) + " fails at";
                        for (auto v : *check.counterexample)
                            detail += " " + format_code(ctx.coder, result.y[v]);
                    }
                }
            }
            result.conditions.add("axioms", detail.empty(), detail);
        }

        // (2) unique y with (y, 0) in Y and theta_X(y, 0) = x
        vector<size_t> fibre;
        vector<optional<size_t>> preimage(X.size());
        {
            string detail;
            vector<size_t> counts(X.size(), 0);
            for (size_t ycode = 0 ; ycode < ctx.kernel_coder.count() ; ++ycode) {
                if (! member[ctx.code(ycode, g.base.zero())])
                    continue;
                fibre.push_back(ycode);
                auto x = ctx.theta_kernel(ycode);
                if (counts[x]++ == 0)
                    preimage[x] = ycode;
            }
            for (Element x = 0 ; x < X.size() && detail.empty() ; ++x)
                if (counts[x] != 1)
                    detail = "x = " + to_string(x) + " has " + to_string(counts[x]) + " candidates";
            result.conditions.add("kernel_map_unique", detail.empty(), detail);
        }

        // (3) (y, 0) |-> theta_X(y, 0) preserves every operation
        {
            string detail;
            vector<Element> codes, thetas;
            for (size_t op = 0 ; op < sig.size() && detail.empty() ; ++op) {
                auto arity = sig.op(op).arity;
                auto count = saturating_pow(fibre.size(), arity);
                require_budget(limits, count, "kernel homomorphism condition");
                codes.resize(arity);
                thetas.resize(arity);
                for (std::uint64_t c = 0 ; c < count && detail.empty() ; ++c) {
                    auto pos = table_args(c, arity, fibre.size());
                    for (unsigned i = 0 ; i < arity ; ++i) {
                        codes[i] = ctx.code(fibre[pos[i]], g.base.zero());
                        thetas[i] = ctx.theta_kernel(fibre[pos[i]]);
                    }
                    auto lhs = ctx.theta_kernel(ctx.ambient.apply(op, codes) / ctx.b_size());
                    auto rhs = X.apply(op, thetas);
                    if (lhs != rhs) {
                        detail = sig.op(op).name + " at";
                        for (auto t : codes)
                            detail += " " + format_code(ctx.coder, t);
                    }
                }
            }
            result.conditions.add("kernel_map_homomorphism", detail.empty(), detail);
        }

        // (4) the projections witness the theta condition
        {
            string detail;
            auto count = saturating_mul(saturating_pow(fibre.size(), n), g.base.size());
            require_budget(limits, count, "witness condition");
            vector<Element> args(n + 1), xs(n);
            for (std::uint64_t c = 0 ; c < count && detail.empty() ; ++c) {
                auto b = static_cast<Element>(c % g.base.size());
                auto pos = table_args(c / g.base.size(), static_cast<unsigned>(n), fibre.size());
                for (size_t i = 0 ; i < n ; ++i) {
                    args[i] = ctx.code(fibre[pos[i]], g.base.zero());
                    xs[i] = ctx.theta_kernel(fibre[pos[i]]);
                }
                auto xcode = ctx.kernel_coder.encode(xs);
                if (! member[ctx.code(xcode, b)])
                    continue;
                args[n] = ctx.code(g.section[b], b);
                auto value = evaluate(g.theta.term(), ctx.ambient, args) / ctx.b_size();
                if (value != xcode) {
                    detail = "at";
                    for (auto t : args)
                        detail += " " + format_code(ctx.coder, t);
                }
            }
            result.conditions.add("witness_condition", detail.empty(), detail);
        }

        result.section_in_y = true;
        for (Element b = 0 ; b < g.base.size() ; ++b)
            result.section_in_y = result.section_in_y && member[ctx.code(g.section[b], b)];
        return result;
    }

    auto build_extension_from_gamma(const GammaData & g, const SearchLimits & limits) -> RebuiltExtension
    {
        auto conditions = check_conditions(g, limits);
        if (! conditions.passed())
            throw Error{ ErrorCode::ConditionsFailed, conditions.conditions.failures() };
        if (! conditions.section_in_y)
            throw Error{ ErrorCode::IotaNotInY, "some (section(b), b) is not in Y" };

        Context ctx{ g };
        auto & y = conditions.y;
        vector<Element> members(y.begin(), y.end());
        auto y_alg = induced_subalgebra(ctx.ambient, members);
        auto position = [&] (size_t code) {
            return static_cast<Element>(std::lower_bound(y.begin(), y.end(), code) - y.begin());
        };

        vector<Element> k_prime(g.kernel.size()), pi(y.size()), iota(g.base.size());
        for (size_t ycode = 0 ; ycode < ctx.kernel_coder.count() ; ++ycode) {
            auto code = ctx.code(ycode, g.base.zero());
            if (std::binary_search(y.begin(), y.end(), code))
                k_prime[ctx.theta_kernel(ycode)] = position(code);
        }
        for (size_t i = 0 ; i < y.size() ; ++i)
            pi[i] = static_cast<Element>(y[i] % ctx.b_size());
        for (Element b = 0 ; b < g.base.size() ; ++b)
            iota[b] = position(ctx.code(g.section[b], b));

        auto size = y.size();
        SplitExtension extension{ g.kernel, std::move(y_alg), g.base, FnTable{ size, std::move(k_prime) },
            FnTable{ g.base.size(), std::move(pi) }, FnTable{ size, std::move(iota) } };

        auto report = validate_split_extension(extension);
        if (! report.passed())
            throw Error{ ErrorCode::ConditionsFailed, "rebuilt extension is not split: " + report.failures() };

        vector<vector<Element>> q(g.n(), vector<Element>(size));
        for (size_t pos = 0 ; pos < size ; ++pos) {
            auto tuple = ctx.coder.decode(y[pos]);
            for (size_t i = 0 ; i < g.n() ; ++i)
                q[i][pos] = tuple[i];
        }
        Witness witness;
        for (auto & qi : q)
            witness.q.emplace_back(g.kernel.size(), std::move(qi));
        auto check = check_witness(extension, g.theta, witness);
        if (! check)
            throw Error{ ErrorCode::ConditionsFailed, "projections do not witness theta: " + check.problem };

        return RebuiltExtension{ std::move(extension), std::move(witness), std::move(y) };
    }
}
