#ifndef WSX_TESTS_SUPPORT_HH
#define WSX_TESTS_SUPPORT_HH 1

#include <wsx/canonical.hh>
#include <wsx/extension.hh>
#include <wsx/gamma.hh>
#include <wsx/io.hh>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

namespace wsx::test
{
    inline auto fixture(const std::string & relative) -> std::filesystem::path
    {
        return std::filesystem::path(WSX_FIXTURE_DIR) / relative;
    }

    inline auto load_algebra(const std::string & name) -> FiniteAlgebra
    {
        auto path = fixture("algebras/" + name + ".json");
        return io::algebra_from_json(io::parse_json(io::read_file(path)), path.parent_path());
    }

    inline auto load_document(const std::string & name) -> io::ExtensionDocument
    {
        auto path = fixture("extensions/" + name + ".json");
        return io::extension_from_json(io::parse_json(io::read_file(path)), path.parent_path());
    }

    inline auto load_extension(const std::string & name) -> SplitExtension
    {
        return load_document(name).extension;
    }

    inline auto load_theta(const std::string & name, const Signature & signature) -> ThetaSpec
    {
        return io::theta_from_json(io::parse_json(io::read_file(fixture("theta/" + name + ".json")))).bind(signature);
    }

    /// Every extension fixture with the theta it is read against.
    struct Case
    {
        std::string extension;
        std::string theta;
    };

    inline auto cases() -> std::vector<Case>
    {
        return {
            { "example_a5", "monoid_xzy" },
            { "n2_direct_product", "monoid_sum" },
            { "n2_trivial", "monoid_sum" },
            { "klein4", "group_mul" },
            { "s3", "group_mul" },
            { "heyting3", "heyting" },
        };
    }

    inline auto algebra_names() -> std::vector<std::string>
    {
        return { "n2", "trivial_monoid", "a5", "n2_x_n2", "z2", "z3", "klein4", "s3", "heyting2", "heyting_x",
            "heyting3", "left_unital_magma" };
    }

    // Oracles below share nothing with the library beyond the table layout of FiniteAlgebra.

    inline auto oracle_apply(const FiniteAlgebra & a, std::size_t op, const std::vector<Element> & args) -> Element
    {
        std::size_t index = 0;
        for (auto x : args)
            index = index * a.size() + x;
        return a.table(op)[index];
    }

    inline auto oracle_eval(const Term & t, const FiniteAlgebra & a, const std::vector<Element> & env) -> Element
    {
        if (t.is_variable())
            return env[t.index()];
        std::vector<Element> args;
        for (auto & u : t.args())
            args.push_back(oracle_eval(u, a, env));
        return oracle_apply(a, t.index(), args);
    }

    inline auto oracle_is_hom(const std::vector<Element> & f, const FiniteAlgebra & from, const FiniteAlgebra & to) -> bool
    {
        for (std::size_t op = 0 ; op < from.signature().size() ; ++op) {
            auto arity = from.signature().op(op).arity;
            std::vector<Element> args(arity, 0);
            while (true) {
                std::vector<Element> images;
                for (auto x : args)
                    images.push_back(f[x]);
                if (f[oracle_apply(from, op, args)] != oracle_apply(to, op, images))
                    return false;
                std::size_t i = arity;
                while (i > 0 && ++args[i - 1] == from.size())
                    args[--i] = 0;
                if (i == 0)
                    break;
            }
        }
        return true;
    }

    /// Calls body on every function {0..dom-1} -> {0..cod-1}, lexicographically.
    template <typename Body>
    void each_function(std::size_t dom, std::size_t cod, Body && body)
    {
        std::vector<Element> f(dom, 0);
        while (true) {
            body(f);
            std::size_t i = dom;
            while (i > 0 && ++f[i - 1] == cod)
                f[--i] = 0;
            if (i == 0)
                return;
        }
    }

    inline auto oracle_homs(const FiniteAlgebra & from, const FiniteAlgebra & to) -> std::vector<std::vector<Element>>
    {
        std::vector<std::vector<Element>> out;
        each_function(from.size(), to.size(), [&] (const std::vector<Element> & f) {
            if (oracle_is_hom(f, from, to))
                out.push_back(f);
        });
        return out;
    }

    /// All witnesses by brute force over every n-tuple of functions A -> X, as
    /// the concatenation q_1 ++ ... ++ q_n.
    inline auto oracle_witnesses(const SplitExtension & e, const ThetaSpec & theta, bool normalize)
        -> std::vector<std::vector<Element>>
    {
        auto n = theta.n();
        auto m = e.middle.size();
        std::vector<std::vector<Element>> out;
        each_function(n * m, e.kernel.size(), [&] (const std::vector<Element> & q) {
            for (Element a = 0 ; a < m ; ++a) {
                std::vector<Element> env;
                for (std::size_t i = 0 ; i < n ; ++i)
                    env.push_back(e.inclusion.values()[q[i * m + a]]);
                env.push_back(e.section.values()[e.projection.values()[a]]);
                if (oracle_eval(theta.term(), e.middle, env) != a)
                    return;
                if (normalize && a == e.middle.zero())
                    for (std::size_t i = 0 ; i < n ; ++i)
                        if (q[i * m + a] != e.kernel.zero())
                            return;
            }
            out.push_back(q);
        });
        return out;
    }

    inline auto flatten(const Witness & w) -> std::vector<Element>
    {
        std::vector<Element> out;
        for (auto & qi : w.q)
            out.insert(out.end(), qi.values().begin(), qi.values().end());
        return out;
    }

    /// Enumeration order of the library: a = 0 most significant, then tuple order.
    inline auto witness_key(const std::vector<Element> & q, std::size_t n, std::size_t m) -> std::vector<Element>
    {
        std::vector<Element> key;
        for (std::size_t a = 0 ; a < m ; ++a)
            for (std::size_t i = 0 ; i < n ; ++i)
                key.push_back(q[i * m + a]);
        return key;
    }
}

#endif
