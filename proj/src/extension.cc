#include <wsx/extension.hh>
#include <wsx/error.hh>
#include <wsx/tuple_code.hh>

#include "parallel.hh"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace wsx
{
    auto Witness::tuple_at(Element a) const -> vector<Element>
    {
        vector<Element> out;
        for (auto & qi : q)
            out.push_back(qi(a));
        return out;
    }

    namespace
    {
        auto describe(const HomCheck & check) -> string
        {
            if (check)
                return {};
            auto & ce = *check.counterexample;
            std::ostringstream out;
            out << ce.op << "(";
            for (size_t i = 0 ; i < ce.args.size() ; ++i)
                out << (i ? "," : "") << ce.args[i];
            out << "): " << ce.image_of_result << " != " << ce.result_of_images;
            return out.str();
        }

        void require_sizes(const FnTable & f, size_t dom, size_t cod, const string & name)
        {
            if (f.dom_size() != dom || f.cod_size() != cod)
                throw Error{ ErrorCode::SizeMismatch, name + " is " + to_string(f.dom_size()) + "->"
                    + to_string(f.cod_size()) + ", expected " + to_string(dom) + "->" + to_string(cod) };
        }

        void require_theta(const SplitExtension & e, const ThetaSpec & theta)
        {
            require_term_over(theta.term(), e.middle.signature());
            require_theta_admissible(theta, e.kernel, "the kernel algebra");
            require_theta_admissible(theta, e.middle, "the middle algebra");
            require_theta_admissible(theta, e.base, "the base algebra");
        }

        auto phi_value(const SplitExtension & e, const ThetaSpec & theta, std::span<const Element> xs, Element b,
                vector<Element> & env) -> Element
        {
            for (size_t i = 0 ; i < xs.size() ; ++i)
                env[i] = e.inclusion(xs[i]);
            env[xs.size()] = e.section(b);
            return evaluate(theta.term(), e.middle, env);
        }

        auto kernel_preimage(const SplitExtension & e) -> vector<optional<Element>>
        {
            vector<optional<Element>> inverse(e.middle.size());
            for (Element x = 0 ; x < e.kernel.size() ; ++x)
                inverse[e.inclusion(x)] = x;
            return inverse;
        }
    }

    auto validate_split_extension(const SplitExtension & e) -> LawReport
    {
        if (e.kernel.signature() != e.middle.signature() || e.middle.signature() != e.base.signature())
            throw Error{ ErrorCode::SignatureMismatch, "extension algebras have different signatures" };
        require_sizes(e.inclusion, e.kernel.size(), e.middle.size(), "k");
        require_sizes(e.projection, e.middle.size(), e.base.size(), "p");
        require_sizes(e.section, e.base.size(), e.middle.size(), "s");

        LawReport report;
        auto k_hom = is_homomorphism(e.inclusion, e.kernel, e.middle);
        report.add("k_homomorphism", k_hom.ok, describe(k_hom));
        auto p_hom = is_homomorphism(e.projection, e.middle, e.base);
        report.add("p_homomorphism", p_hom.ok, describe(p_hom));
        auto s_hom = is_homomorphism(e.section, e.base, e.middle);
        report.add("s_homomorphism", s_hom.ok, describe(s_hom));

        string section_detail;
        for (Element b = 0 ; b < e.base.size() && section_detail.empty() ; ++b)
            if (e.projection(e.section(b)) != b)
                section_detail = "p(s(" + to_string(b) + ")) = " + to_string(e.projection(e.section(b)));
        report.add("section_law", section_detail.empty(), section_detail);

        string injective_detail;
        {
            vector<optional<Element>> seen(e.middle.size());
            for (Element x = 0 ; x < e.kernel.size() && injective_detail.empty() ; ++x) {
                auto img = e.inclusion(x);
                if (seen[img])
                    injective_detail = "k(" + to_string(*seen[img]) + ") = k(" + to_string(x) + ")";
                seen[img] = x;
            }
        }
        report.add("k_injective", injective_detail.empty(), injective_detail);

        string kernel_detail;
        {
            vector<bool> in_image(e.middle.size(), false);
            for (Element x = 0 ; x < e.kernel.size() ; ++x)
                in_image[e.inclusion(x)] = true;
            for (Element a = 0 ; a < e.middle.size() && kernel_detail.empty() ; ++a) {
                bool in_kernel = e.projection(a) == e.base.zero();
                if (in_kernel && ! in_image[a])
                    kernel_detail = "p(" + to_string(a) + ") = 0 but " + to_string(a) + " is not in im(k)";
                else if (! in_kernel && in_image[a])
                    kernel_detail = to_string(a) + " is in im(k) but p(" + to_string(a) + ") != 0";
            }
        }
        report.add("kernel_law", kernel_detail.empty(), kernel_detail);
        return report;
    }

    void require_valid(const SplitExtension & e)
    {
        auto report = validate_split_extension(e);
        if (! report.passed())
            throw Error{ ErrorCode::InvalidExtension, report.failures() };
    }

    auto check_witness(const SplitExtension & e, const ThetaSpec & theta, const Witness & w) -> WitnessCheck
    {
        if (w.n() != theta.n())
            return WitnessCheck{ false, std::nullopt, "witness has " + to_string(w.n()) + " maps, theta needs "
                + to_string(theta.n()) };
        for (size_t i = 0 ; i < w.n() ; ++i)
            if (w.q[i].dom_size() != e.middle.size() || w.q[i].cod_size() != e.kernel.size())
                return WitnessCheck{ false, std::nullopt, "q_" + to_string(i + 1) + " has the wrong shape" };
        require_term_over(theta.term(), e.middle.signature());

        vector<Element> env(theta.n() + 1);
        for (Element a = 0 ; a < e.middle.size() ; ++a) {
            for (size_t i = 0 ; i < w.n() ; ++i)
                env[i] = e.inclusion(w.q[i](a));
            env[w.n()] = e.section(e.projection(a));
            auto value = evaluate(theta.term(), e.middle, env);
            if (value != a)
                return WitnessCheck{ false, a, "theta(k q(a), s p(a)) = " + to_string(value) + " at a = " + to_string(a) };
        }
        return WitnessCheck{};
    }

    auto find_witnesses(const SplitExtension & e, const ThetaSpec & theta, const WitnessSearchOptions & options,
            const SearchLimits & limits) -> WitnessSearchResult
    {
        require_valid(e);
        require_theta(e, theta);

        auto n = theta.n();
        auto tuples = TupleCoder::power(e.kernel.size(), n);
        require_budget(limits, saturating_mul(tuples.count(), e.base.size()), "witness search");

        using Fibres = vector<vector<size_t>>;
        vector<Fibres> partial(std::max(1u, limits.workers), Fibres(e.middle.size()));
        auto chunks = detail::run_chunked(tuples.count(), limits.workers, [&] (size_t begin, size_t end, size_t chunk) {
            auto & local = partial[chunk];
            vector<Element> xs(n), env(n + 1);
            for (Element b = 0 ; b < e.base.size() ; ++b)
                for (size_t code = begin ; code < end ; ++code) {
                    tuples.decode_into(code, xs);
                    auto a = phi_value(e, theta, xs, b, env);
                    if (e.projection(a) == b)
                        local[a].push_back(code);
                }
        });

        WitnessSearchResult result;
        result.fibres.assign(e.middle.size(), {});
        for (size_t c = 0 ; c < chunks ; ++c)
            for (Element a = 0 ; a < e.middle.size() ; ++a)
                result.fibres[a].insert(result.fibres[a].end(), partial[c][a].begin(), partial[c][a].end());

        if (options.normalize) {
            auto zero = tuples.encode(vector<Element>(n, e.kernel.zero()));
            auto & at_zero = result.fibres[e.middle.zero()];
            if (std::find(at_zero.begin(), at_zero.end(), zero) == at_zero.end())
                internal_error("the zero tuple is not admissible at the zero element");
            at_zero = { zero };
        }

        result.total = 1;
        for (auto & f : result.fibres) {
            result.total = saturating_mul(result.total, f.size());
            if (result.total == std::numeric_limits<std::uint64_t>::max())
                result.total_saturated = true;
        }
        if (result.total == 0)
            return result;

        std::uint64_t wanted = options.limit ? std::min(*options.limit, result.total) : result.total;
        vector<size_t> choice(e.middle.size(), 0);
        vector<Element> xs(n);
        for (std::uint64_t count = 0 ; count < wanted ; ++count) {
            vector<vector<Element>> q(n, vector<Element>(e.middle.size()));
            for (Element a = 0 ; a < e.middle.size() ; ++a) {
                tuples.decode_into(result.fibres[a][choice[a]], xs);
                for (size_t i = 0 ; i < n ; ++i)
                    q[i][a] = xs[i];
            }
            Witness w;
            for (auto & qi : q)
                w.q.emplace_back(e.kernel.size(), std::move(qi));
            result.witnesses.push_back(std::move(w));

            for (size_t a = e.middle.size() ; a-- > 0 ; ) {
                if (++choice[a] < result.fibres[a].size())
                    break;
                choice[a] = 0;
            }
        }
        return result;
    }

    auto semiabelian_witness(const SplitExtension & e, const ThetaSpec & theta, const vector<TermSpec> & alphas) -> Witness
    {
        require_valid(e);
        auto n = theta.n();
        if (alphas.size() != n)
            throw Error{ ErrorCode::AlphaAxiomFailed, "expected " + to_string(n) + " alpha terms, got " + to_string(alphas.size()) };
        for (auto & alpha : alphas) {
            if (alpha.vars.size() != 2)
                throw Error{ ErrorCode::AlphaAxiomFailed, "alpha terms must be binary" };
            require_term_over(alpha.term, e.middle.signature());
        }
        require_term_over(theta.term(), e.middle.signature());

        auto & m = e.middle;
        vector<Element> pair(2), env(n + 1);
        for (size_t i = 0 ; i < n ; ++i)
            for (Element x = 0 ; x < m.size() ; ++x) {
                pair = { x, x };
                if (evaluate(alphas[i].term, m, pair) != m.zero())
                    throw Error{ ErrorCode::AlphaAxiomFailed, "alpha_" + to_string(i + 1) + "(x,x) != 0 at x = " + to_string(x) };
            }
        for (Element x = 0 ; x < m.size() ; ++x)
            for (Element y = 0 ; y < m.size() ; ++y) {
                pair = { x, y };
                for (size_t i = 0 ; i < n ; ++i)
                    env[i] = evaluate(alphas[i].term, m, pair);
                env[n] = y;
                if (evaluate(theta.term(), m, env) != x)
                    throw Error{ ErrorCode::AlphaAxiomFailed, "theta(alpha(x,y), y) != x at (" + to_string(x) + ","
                        + to_string(y) + ")" };
            }

        auto preimage = kernel_preimage(e);
        vector<vector<Element>> q(n, vector<Element>(m.size()));
        for (Element a = 0 ; a < m.size() ; ++a) {
            pair = { a, e.section(e.projection(a)) };
            for (size_t i = 0 ; i < n ; ++i) {
                auto v = evaluate(alphas[i].term, m, pair);
                if (! preimage[v])
                    throw Error{ ErrorCode::KernelPreimageMissing, "alpha_" + to_string(i + 1) + "(a, sp(a)) = "
                        + to_string(v) + " is outside im(k) at a = " + to_string(a) };
                q[i][a] = *preimage[v];
            }
        }
        Witness w;
        for (auto & qi : q)
            w.q.emplace_back(e.kernel.size(), std::move(qi));
        return w;
    }

    auto is_schreier(const SplitExtension & e, const ThetaSpec & theta, const SearchLimits & limits) -> bool
    {
        require_valid(e);
        require_theta(e, theta);
        auto ambient = TupleCoder::ambient(e.kernel.size(), theta.n(), e.base.size());
        require_budget(limits, ambient.count(), "Schreier check");
        // injective on a set of the same size, so every a has exactly one decomposition
        if (ambient.count() != e.middle.size())
            return false;

        vector<bool> hit(e.middle.size(), false);
        vector<Element> tuple(ambient.width()), env(theta.n() + 1);
        for (size_t code = 0 ; code < ambient.count() ; ++code) {
            ambient.decode_into(code, tuple);
            auto a = phi_value(e, theta, std::span<const Element>(tuple.data(), theta.n()), tuple.back(), env);
            if (hit[a])
                return false;
            hit[a] = true;
        }
        return true;
    }

    auto pullback_extension(const SplitExtension & e, const FiniteAlgebra & base_prime, const FnTable & f,
            const Witness & w) -> PulledBackExtension
    {
        require_valid(e);
        require_homomorphism(f, base_prime, e.base, "f");
        for (auto & qi : w.q)
            require_sizes(qi, e.middle.size(), e.kernel.size(), "q");

        auto pb = pullback_algebra(e.middle, e.base, e.projection, base_prime, f);
        std::map<std::pair<Element, Element>, Element> position;
        for (size_t i = 0 ; i < pb.pairs.size() ; ++i)
            position[pb.pairs[i]] = static_cast<Element>(i);

        vector<Element> k_values, s_values;
        for (Element x = 0 ; x < e.kernel.size() ; ++x)
            k_values.push_back(position.at({ e.inclusion(x), base_prime.zero() }));
        for (Element b = 0 ; b < base_prime.size() ; ++b)
            s_values.push_back(position.at({ e.section(f(b)), b }));

        Witness transported;
        for (auto & qi : w.q)
            transported.q.push_back(compose(qi, pb.proj_a));

        auto size = pb.algebra.size();
        SplitExtension result{ e.kernel, std::move(pb.algebra), base_prime,
            FnTable{ size, std::move(k_values) }, pb.proj_b, FnTable{ size, std::move(s_values) } };
        return PulledBackExtension{ std::move(result), std::move(transported), pb.proj_a, std::move(pb.pairs) };
    }

    auto product_extension_check(const FiniteAlgebra & kernel, const ThetaSpec & theta, const SearchLimits & limits)
        -> ProductCheck
    {
        require_theta_admissible(theta, kernel, "the algebra");
        auto n = theta.n();
        auto tuples = TupleCoder::power(kernel.size(), n);
        require_budget(limits, tuples.count(), "product extension check");

        vector<optional<size_t>> first(kernel.size());
        vector<Element> env(n + 1);
        for (size_t code = 0 ; code < tuples.count() ; ++code) {
            tuples.decode_into(code, std::span<Element>(env.data(), n));
            env[n] = kernel.zero();
            auto x = evaluate(theta.term(), kernel, env);
            if (! first[x])
                first[x] = code;
        }

        ProductCheck result;
        for (Element x = 0 ; x < kernel.size() ; ++x)
            if (! first[x]) {
                result.ok = false;
                result.obstruction = x;
                return result;
            }
        vector<vector<Element>> q(n, vector<Element>(kernel.size()));
        for (Element x = 0 ; x < kernel.size() ; ++x) {
            auto ys = tuples.decode(*first[x]);
            for (size_t i = 0 ; i < n ; ++i)
                q[i][x] = ys[i];
        }
        for (auto & qi : q)
            result.choice.emplace_back(kernel.size(), std::move(qi));
        return result;
    }

    auto validate_morphism(const ExtensionMorphism & m) -> LawReport
    {
        auto & s = m.source;
        auto & t = m.target;
        require_sizes(m.on_kernel, s.kernel.size(), t.kernel.size(), "f");
        require_sizes(m.on_middle, s.middle.size(), t.middle.size(), "g");
        require_sizes(m.on_base, s.base.size(), t.base.size(), "h");

        LawReport report;
        auto f_hom = is_homomorphism(m.on_kernel, s.kernel, t.kernel);
        report.add("f_homomorphism", f_hom.ok, describe(f_hom));
        auto g_hom = is_homomorphism(m.on_middle, s.middle, t.middle);
        report.add("g_homomorphism", g_hom.ok, describe(g_hom));
        auto h_hom = is_homomorphism(m.on_base, s.base, t.base);
        report.add("h_homomorphism", h_hom.ok, describe(h_hom));

        auto square = [&] (const string & law, const FnTable & lhs, const FnTable & rhs) {
            string detail;
            for (Element x = 0 ; x < lhs.dom_size() && detail.empty() ; ++x)
                if (lhs(x) != rhs(x))
                    detail = "differs at " + to_string(x) + ": " + to_string(lhs(x)) + " != " + to_string(rhs(x));
            report.add(law, detail.empty(), detail);
        };
        square("kernel_square", compose(m.on_middle, s.inclusion), compose(t.inclusion, m.on_kernel));
        square("projection_square", compose(t.projection, m.on_middle), compose(m.on_base, s.projection));
        square("section_square", compose(m.on_middle, s.section), compose(t.section, m.on_base));
        return report;
    }

    auto check_morphism_surjectivity(const ExtensionMorphism & m, const ThetaSpec & theta, const SearchLimits & limits)
        -> SurjectivityReport
    {
        for (auto * e : { &m.source, &m.target }) {
            auto r = validate_split_extension(*e);
            if (! r.passed())
                throw Error{ ErrorCode::InvalidMorphism, string(e == &m.source ? "source" : "target")
                    + " is not a split extension: " + r.failures() };
        }
        auto laws = validate_morphism(m);
        if (! laws.passed())
            throw Error{ ErrorCode::InvalidMorphism, laws.failures() };

        SurjectivityReport r{};
        r.kernel_surjective = is_surjective(m.on_kernel);
        r.middle_surjective = is_surjective(m.on_middle);
        r.base_surjective = is_surjective(m.on_base);

        auto via_kernel = compose(m.on_middle, m.source.inclusion);
        auto via_section = compose(m.on_middle, m.source.section);
        vector<Element> generators = via_kernel.values();
        generators.insert(generators.end(), via_section.values().begin(), via_section.values().end());
        auto generated = generated_subalgebra(m.target.middle, generators);
        r.jointly_generating = std::all_of(generated.begin(), generated.end(), [] (bool b) { return b; });

        r.target_in_class = find_witnesses(m.target, theta, WitnessSearchOptions{ true, 0 }, limits).exists();
        r.lemma_applicable = r.kernel_surjective && r.base_surjective && r.target_in_class;
        r.lemma_holds = ! r.lemma_applicable || (r.middle_surjective && r.jointly_generating);
        return r;
    }
}
