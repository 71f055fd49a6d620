#include <wsx/canonical.hh>
#include <wsx/error.hh>

#include "parallel.hh"

#include <algorithm>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace wsx
{
    auto ambient_algebra(const FiniteAlgebra & kernel, const FiniteAlgebra & base, size_t n, const GammaTables & gamma)
        -> FiniteAlgebra
    {
        auto coder = TupleCoder::ambient(kernel.size(), n, base.size());
        auto xn = TupleCoder::power(kernel.size(), n).count();
        auto & sig = base.signature();
        if (gamma.size() != sig.size())
            throw Error{ ErrorCode::MissingTable, "expected " + to_string(sig.size()) + " gamma tables, got "
                + to_string(gamma.size()) };

        vector<vector<Element>> tables;
        vector<Element> bs;
        for (size_t op = 0 ; op < sig.size() ; ++op) {
            auto arity = sig.op(op).arity;
            auto expected = saturating_pow(coder.count(), arity);
            if (gamma[op].size() != expected)
                throw Error{ ErrorCode::ArityMismatch, "gamma table for '" + sig.op(op).name + "' has "
                    + to_string(gamma[op].size()) + " entries, expected " + to_string(expected) };
            vector<Element> table(gamma[op].size());
            bs.resize(arity);
            for (size_t j = 0 ; j < table.size() ; ++j) {
                if (gamma[op][j] >= xn)
                    throw Error{ ErrorCode::EntryOutOfRange, "gamma table for '" + sig.op(op).name + "' entry "
                        + to_string(j) + " outside X^n" };
                auto args = table_args(j, arity, coder.count());
                for (unsigned i = 0 ; i < arity ; ++i)
                    bs[i] = static_cast<Element>(args[i] % base.size());
                table[j] = static_cast<Element>(gamma[op][j] * base.size() + base.apply(op, bs));
            }
            tables.push_back(std::move(table));
        }
        return FiniteAlgebra{ sig, coder.count(), std::move(tables) };
    }

    auto CanonicalExtension::coder() const -> TupleCoder
    {
        return TupleCoder::ambient(source.kernel.size(), n(), source.base.size());
    }

    auto CanonicalExtension::kernel_coder() const -> TupleCoder
    {
        return TupleCoder::power(source.kernel.size(), n());
    }

    auto CanonicalExtension::position_in_y(size_t ambient_code) const -> optional<Element>
    {
        auto it = std::lower_bound(y.begin(), y.end(), ambient_code);
        if (it == y.end() || *it != ambient_code)
            return std::nullopt;
        return static_cast<Element>(it - y.begin());
    }

    auto CanonicalExtension::as_extension() const -> SplitExtension
    {
        return SplitExtension{ source.kernel, y_algebra, source.base, k_prime, pi_base, iota_base };
    }

    auto CanonicalExtension::projection_witness() const -> Witness
    {
        auto c = coder();
        vector<vector<Element>> q(n(), vector<Element>(y.size()));
        for (size_t pos = 0 ; pos < y.size() ; ++pos) {
            auto tuple = c.decode(y[pos]);
            for (size_t i = 0 ; i < n() ; ++i)
                q[i][pos] = tuple[i];
        }
        Witness w;
        for (auto & qi : q)
            w.q.emplace_back(source.kernel.size(), std::move(qi));
        return w;
    }

    auto psi(const SplitExtension & e, const Witness & w) -> FnTable
    {
        auto coder = TupleCoder::ambient(e.kernel.size(), w.n(), e.base.size());
        vector<Element> values(e.middle.size());
        for (Element a = 0 ; a < e.middle.size() ; ++a) {
            auto tuple = w.tuple_at(a);
            tuple.push_back(e.projection(a));
            values[a] = static_cast<Element>(coder.encode(tuple));
        }
        return FnTable{ coder.count(), std::move(values) };
    }

    auto phi(const SplitExtension & e, const ThetaSpec & theta) -> FnTable
    {
        require_term_over(theta.term(), e.middle.signature());
        auto coder = TupleCoder::ambient(e.kernel.size(), theta.n(), e.base.size());
        vector<Element> values(coder.count()), tuple(coder.width()), env(theta.n() + 1);
        for (size_t code = 0 ; code < coder.count() ; ++code) {
            coder.decode_into(code, tuple);
            for (size_t i = 0 ; i < theta.n() ; ++i)
                env[i] = e.inclusion(tuple[i]);
            env[theta.n()] = e.section(tuple.back());
            values[code] = evaluate(theta.term(), e.middle, env);
        }
        return FnTable{ e.middle.size(), std::move(values) };
    }

    namespace
    {
        // gamma_omega at one argument tuple of ambient codes, by the defining formula
        // q(omega_A(phi t^1, ..., phi t^m)), returned as a code of X^n.
        auto gamma_by_formula(const CanonicalExtension & c, const FnTable & psi_ambient, const Term & omega,
                std::span<const Element> codes, vector<Element> & images) -> size_t
        {
            images.resize(codes.size());
            for (size_t i = 0 ; i < codes.size() ; ++i)
                images[i] = c.phi(codes[i]);
            return psi_ambient(evaluate(omega, c.source.middle, images)) / c.source.base.size();
        }

        auto ambient_psi(const CanonicalExtension & c) -> FnTable
        {
            vector<Element> values(c.source.middle.size());
            for (Element a = 0 ; a < values.size() ; ++a)
                values[a] = static_cast<Element>(c.y[c.psi(a)]);
            return FnTable{ c.coder().count(), std::move(values) };
        }
    }

    auto build_canonical(const SplitExtension & e, const ThetaSpec & theta, const Witness & w, const SearchLimits & limits)
        -> CanonicalExtension
    {
        require_valid(e);
        require_theta_admissible(theta, e.kernel, "the kernel algebra");
        require_theta_admissible(theta, e.middle, "the middle algebra");
        require_theta_admissible(theta, e.base, "the base algebra");
        auto check = check_witness(e, theta, w);
        if (! check)
            throw Error{ ErrorCode::WitnessInvalid, check.problem };

        auto n = theta.n();
        auto coder = TupleCoder::ambient(e.kernel.size(), n, e.base.size());
        auto & sig = e.middle.signature();
        std::uint64_t cost = 0;
        for (auto & op : sig.ops())
            cost += saturating_pow(coder.count(), op.arity);
        require_budget(limits, cost, "canonical construction");

        auto psi_table = psi(e, w);
        auto phi_table = phi(e, theta);

        vector<size_t> image(psi_table.values().begin(), psi_table.values().end());
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());

        vector<size_t> fixpoints;
        for (size_t t = 0 ; t < coder.count() ; ++t)
            if (psi_table(phi_table(static_cast<Element>(t))) == t)
                fixpoints.push_back(t);
        if (image != fixpoints)
            internal_error("image of psi differs from the fixpoint set of psi o phi");
        if (image.size() != e.middle.size())
            internal_error("psi is not injective");

        auto position = [&] (size_t code) {
            return static_cast<Element>(std::lower_bound(image.begin(), image.end(), code) - image.begin());
        };

        GammaTables gamma;
        vector<vector<Element>> transported;
        for (size_t op = 0 ; op < sig.size() ; ++op) {
            auto arity = sig.op(op).arity;
            vector<size_t> table(saturating_pow(coder.count(), arity));
            detail::run_chunked(table.size(), limits.workers, [&] (size_t begin, size_t end, size_t) {
                vector<Element> images(arity);
                for (size_t j = begin ; j < end ; ++j) {
                    auto args = table_args(j, arity, coder.count());
                    for (unsigned i = 0 ; i < arity ; ++i)
                        images[i] = phi_table(args[i]);
                    table[j] = psi_table(e.middle.apply(op, images)) / e.base.size();
                }
            });
            gamma.push_back(std::move(table));

            vector<Element> y_table(saturating_pow(image.size(), arity)), images(arity);
            for (size_t j = 0 ; j < y_table.size() ; ++j) {
                auto args = table_args(j, arity, image.size());
                for (unsigned i = 0 ; i < arity ; ++i)
                    images[i] = phi_table(static_cast<Element>(image[args[i]]));
                y_table[j] = position(psi_table(e.middle.apply(op, images)));
            }
            transported.push_back(std::move(y_table));
        }

        FiniteAlgebra y_algebra{ sig, image.size(), std::move(transported) };
        {
            vector<Element> members(image.begin(), image.end());
            auto ambient = ambient_algebra(e.kernel, e.base, n, gamma);
            if (induced_subalgebra(ambient, members) != y_algebra)
                internal_error("transported operations disagree with the gamma description");
        }

        vector<size_t> gamma_id(coder.count());
        for (size_t t = 0 ; t < coder.count() ; ++t)
            gamma_id[t] = psi_table(phi_table(static_cast<Element>(t))) / e.base.size();

        vector<Element> psi_pos(e.middle.size()), k_prime(e.kernel.size()), pi(image.size()), iota(e.base.size());
        for (Element a = 0 ; a < e.middle.size() ; ++a)
            psi_pos[a] = position(psi_table(a));
        for (Element x = 0 ; x < e.kernel.size() ; ++x)
            k_prime[x] = psi_pos[e.inclusion(x)];
        for (size_t i = 0 ; i < image.size() ; ++i)
            pi[i] = static_cast<Element>(image[i] % e.base.size());
        for (Element b = 0 ; b < e.base.size() ; ++b)
            iota[b] = psi_pos[e.section(b)];

        auto y_size = image.size();
        return CanonicalExtension{
            e, theta, w,
            std::move(image),
            std::move(y_algebra),
            std::move(gamma),
            std::move(gamma_id),
            FnTable{ y_size, std::move(psi_pos) },
            std::move(phi_table),
            FnTable{ y_size, std::move(k_prime) },
            FnTable{ e.base.size(), std::move(pi) },
            FnTable{ y_size, std::move(iota) }
        };
    }

    auto verify_isomorphism(const SplitExtension & e, const CanonicalExtension & c, const Witness & w) -> LawReport
    {
        LawReport report;
        auto coder = c.coder();
        auto n = c.n();
        auto y_size = c.y.size();
        auto code_of = [&] (Element pos) { return static_cast<Element>(c.y[pos]); };

        string detail;
        for (Element a = 0 ; a < e.middle.size() && detail.empty() ; ++a)
            if (c.phi(code_of(c.psi(a))) != a)
                detail = "phi(psi(" + to_string(a) + ")) = " + to_string(c.phi(code_of(c.psi(a))));
        report.add("phi_psi_identity", detail.empty(), detail);

        detail.clear();
        for (Element pos = 0 ; pos < y_size && detail.empty() ; ++pos)
            if (c.psi(c.phi(code_of(pos))) != pos)
                detail = "psi(phi(y_" + to_string(pos) + ")) = y_" + to_string(c.psi(c.phi(code_of(pos))));
        report.add("psi_phi_identity_on_y", detail.empty(), detail);

        auto hom_detail = [] (const HomCheck & h) -> string {
            if (h)
                return {};
            auto & ce = *h.counterexample;
            string out = ce.op + "(";
            for (size_t i = 0 ; i < ce.args.size() ; ++i)
                out += (i ? "," : "") + to_string(ce.args[i]);
            return out + "): " + to_string(ce.image_of_result) + " != " + to_string(ce.result_of_images);
        };
        auto psi_hom = is_homomorphism(c.psi, e.middle, c.y_algebra);
        report.add("psi_homomorphism", psi_hom.ok, hom_detail(psi_hom));

        vector<Element> phi_on_y(y_size);
        for (Element pos = 0 ; pos < y_size ; ++pos)
            phi_on_y[pos] = c.phi(code_of(pos));
        auto phi_hom = is_homomorphism(FnTable{ e.middle.size(), phi_on_y }, c.y_algebra, e.middle);
        report.add("phi_homomorphism", phi_hom.ok, hom_detail(phi_hom));

        auto same = [&] (const string & law, const FnTable & lhs, const FnTable & rhs) {
            string d;
            if (lhs.dom_size() != rhs.dom_size())
                d = "domain sizes differ";
            for (Element x = 0 ; x < lhs.dom_size() && d.empty() ; ++x)
                if (lhs(x) != rhs(x))
                    d = "differs at " + to_string(x);
            report.add(law, d.empty(), d);
        };
        same("k_prime", c.k_prime, compose(c.psi, e.inclusion));
        same("projection", e.projection, compose(c.pi_base, c.psi));
        same("section", compose(c.psi, e.section), c.iota_base);

        detail.clear();
        {
            vector<Element> tuple(coder.width()), env(n + 1);
            for (Element x = 0 ; x < e.kernel.size() && detail.empty() ; ++x) {
                vector<Element> found;
                for (Element pos = 0 ; pos < y_size ; ++pos) {
                    coder.decode_into(c.y[pos], tuple);
                    if (tuple.back() != e.base.zero())
                        continue;
                    std::copy_n(tuple.begin(), n, env.begin());
                    env[n] = e.kernel.zero();
                    if (evaluate(c.theta.term(), e.kernel, env) == x)
                        found.push_back(pos);
                }
                if (found.size() != 1 || found[0] != c.k_prime(x))
                    detail = "x = " + to_string(x) + " has " + to_string(found.size()) + " candidates";
            }
        }
        report.add("k_prime_unique", detail.empty(), detail);

        detail.clear();
        for (Element pos = 0 ; pos < y_size && detail.empty() ; ++pos) {
            auto tuple = coder.decode(c.y[pos]);
            auto a = c.phi(code_of(pos));
            for (size_t i = 0 ; i < n && detail.empty() ; ++i)
                if (w.q[i](a) != tuple[i])
                    detail = "q_" + to_string(i + 1) + " at y_" + to_string(pos);
        }
        report.add("projection_witness", detail.empty(), detail);

        detail.clear();
        {
            vector<Element> zero_tuple(n, e.kernel.zero());
            zero_tuple.push_back(e.base.zero());
            auto pos = c.position_in_y(coder.encode(zero_tuple));
            if (! pos)
                detail = "(0,...,0,0) is not in Y";
            else if (c.y_algebra.zero() != *pos)
                detail = "zero of Y is y_" + to_string(c.y_algebra.zero());
        }
        report.add("zero_tuple", detail.empty(), detail);

        detail.clear();
        {
            auto & sig = c.y_algebra.signature();
            vector<Element> codes, bs;
            for (size_t op = 0 ; op < sig.size() && detail.empty() ; ++op) {
                auto arity = sig.op(op).arity;
                codes.resize(arity);
                bs.resize(arity);
                for (size_t j = 0 ; j < c.y_algebra.table(op).size() && detail.empty() ; ++j) {
                    auto args = table_args(j, arity, y_size);
                    for (unsigned i = 0 ; i < arity ; ++i) {
                        codes[i] = code_of(args[i]);
                        bs[i] = static_cast<Element>(codes[i] % e.base.size());
                    }
                    auto expected = c.gamma[op][table_index(codes, coder.count())] * e.base.size() + e.base.apply(op, bs);
                    if (c.y[c.y_algebra.table(op)[j]] != expected)
                        detail = sig.op(op).name + " at Y-entry " + to_string(j);
                }
            }
        }
        report.add("gamma_consistency", detail.empty(), detail);
        return report;
    }

    auto gamma_table(const CanonicalExtension & c, const TermSpec & omega, const SearchLimits & limits) -> vector<size_t>
    {
        require_term_over(omega.term, c.source.middle.signature());
        auto coder = c.coder();
        auto arity = omega.vars.size();
        auto count = saturating_pow(coder.count(), arity);
        require_budget(limits, count, "gamma table");

        auto psi_ambient = ambient_psi(c);
        optional<FiniteAlgebra> ambient;
        if (! omega.term.is_variable())
            ambient.emplace(ambient_algebra(c.source.kernel, c.source.base, c.n(), c.gamma));

        vector<size_t> table(count);
        vector<Element> images;
        for (size_t j = 0 ; j < count ; ++j) {
            auto codes = table_args(j, static_cast<unsigned>(arity), coder.count());
            table[j] = gamma_by_formula(c, psi_ambient, omega.term, codes, images);
            if (ambient) {
                auto evaluated = evaluate(omega.term, *ambient, codes) / c.source.base.size();
                if (evaluated != table[j])
                    internal_error("gamma of '" + to_sexpr(omega.term) + "' differs between formula and evaluation at entry "
                        + to_string(j));
            }
        }
        return table;
    }

    auto membership_predicates(const CanonicalExtension & c) -> MembershipPredicates
    {
        auto coder = c.coder();
        auto b_size = c.source.base.size();
        auto psi_ambient = ambient_psi(c);
        auto ambient = ambient_algebra(c.source.kernel, c.source.base, c.n(), c.gamma);

        vector<Element> zero_tuple(c.n(), c.source.kernel.zero());
        zero_tuple.push_back(c.source.base.zero());
        auto zero_code = static_cast<Element>(coder.encode(zero_tuple));

        MembershipPredicates result;
        result.via_identity.resize(coder.count());
        result.via_theta.resize(coder.count());
        vector<Element> args(c.n() + 1, zero_code), images;
        for (size_t t = 0 ; t < coder.count() ; ++t) {
            result.via_identity[t] = c.gamma_id[t] == t / b_size;
            args.back() = static_cast<Element>(t);
            auto by_formula = gamma_by_formula(c, psi_ambient, c.theta.term(), args, images);
            if (! c.theta.term().is_variable() && evaluate(c.theta.term(), ambient, args) / b_size != by_formula)
                internal_error("gamma_theta differs between formula and evaluation");
            result.via_theta[t] = by_formula == t / b_size;
            if (result.via_theta[t] != result.via_identity[t])
                internal_error("Y membership via gamma_id and gamma_theta disagree at ambient " + to_string(t));
        }
        return result;
    }

    auto sigma_tau_decompose(const SplitExtension & e, const ThetaSpec & theta, const Witness & w) -> SigmaTau
    {
        auto & sig = e.middle.signature();
        optional<size_t> plus;
        for (size_t op = 0 ; op < sig.size() ; ++op) {
            if (op == sig.constant_index())
                continue;
            if (sig.op(op).arity != 2 || plus)
                throw Error{ ErrorCode::WrongSignature, "expected exactly one binary operation and the constant" };
            plus = op;
        }
        if (! plus)
            throw Error{ ErrorCode::WrongSignature, "no binary operation" };
        require_valid(e);
        if (theta.n() != 2)
            throw Error{ ErrorCode::WrongTheta, "theta must be ternary" };
        require_term_over(theta.term(), sig);

        auto & m = e.middle;
        auto add = [&] (const FiniteAlgebra & alg, Element x, Element y) {
            Element args[2] = { x, y };
            return alg.apply(*plus, args);
        };
        for (Element x = 0 ; x < m.size() ; ++x)
            for (Element y = 0 ; y < m.size() ; ++y)
                for (Element z = 0 ; z < m.size() ; ++z) {
                    Element env[3] = { x, y, z };
                    if (evaluate(theta.term(), m, env) != add(m, add(m, x, z), y))
                        throw Error{ ErrorCode::WrongTheta, "theta is not x + z + y on the middle algebra" };
                }
        auto check = check_witness(e, theta, w);
        if (! check)
            throw Error{ ErrorCode::WitnessInvalid, check.problem };

        auto & X = e.kernel;
        auto & B = e.base;
        auto k = [&] (Element x) { return e.inclusion(x); };
        auto s = [&] (Element b) { return e.section(b); };

        SigmaTau result;
        for (int i = 0 ; i < 2 ; ++i) {
            result.sigma[i].resize(B.size() * X.size() * B.size());
            result.tau[i].resize(X.size() * B.size() * X.size());
        }
        for (Element b = 0 ; b < B.size() ; ++b)
            for (Element x = 0 ; x < X.size() ; ++x)
                for (Element b2 = 0 ; b2 < B.size() ; ++b2) {
                    auto a = add(m, add(m, s(b), k(x)), s(b2));
                    for (int i = 0 ; i < 2 ; ++i)
                        result.sigma[i][(b * X.size() + x) * B.size() + b2] = w.q[i](a);
                }
        for (Element x = 0 ; x < X.size() ; ++x)
            for (Element b = 0 ; b < B.size() ; ++b)
                for (Element x2 = 0 ; x2 < X.size() ; ++x2) {
                    auto a = add(m, add(m, k(x), s(b)), k(x2));
                    for (int i = 0 ; i < 2 ; ++i)
                        result.tau[i][(x * B.size() + b) * X.size() + x2] = w.q[i](a);
                }

        auto sigma = [&] (int i, Element b, Element x, Element b2) {
            return result.sigma[i][(b * X.size() + x) * B.size() + b2];
        };
        auto tau = [&] (int i, Element x, Element b, Element x2) {
            return result.tau[i][(x * B.size() + b) * X.size() + x2];
        };

        auto coder = TupleCoder::ambient(X.size(), 2, B.size());
        for (size_t t1 = 0 ; t1 < coder.count() ; ++t1)
            for (size_t t2 = 0 ; t2 < coder.count() ; ++t2) {
                auto u = coder.decode(t1);
                auto v = coder.decode(t2);
                auto lhs_a = add(m, add(m, add(m, k(u[0]), s(u[2])), k(u[1])),
                        add(m, add(m, k(v[0]), s(v[2])), k(v[1])));
                auto mid = add(X, u[1], v[0]);
                auto bb = add(B, u[2], v[2]);
                auto s1 = sigma(0, u[2], mid, v[2]);
                auto s2 = sigma(1, u[2], mid, v[2]);
                auto left = add(X, u[0], s1);
                auto right = add(X, s2, v[1]);
                ++result.pairs_checked;
                bool ok = true;
                for (int i = 0 ; i < 2 ; ++i)
                    ok = ok && w.q[i](lhs_a) == tau(i, left, bb, right);
                if (! ok) {
                    if (! result.first_failure)
                        result.first_failure = std::make_pair(t1, t2);
                    ++result.failures;
                }
            }
        return result;
    }
}
