#include <wsx/algebra.hh>
#include <wsx/error.hh>

#include <algorithm>
#include <set>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace
{
    auto format_tuple(std::span<const wsx::Element> args) -> string
    {
        std::ostringstream out;
        out << "(";
        for (size_t i = 0 ; i < args.size() ; ++i)
            out << (i ? "," : "") << args[i];
        out << ")";
        return out.str();
    }

    auto power(size_t base, unsigned exp) -> size_t
    {
        size_t result = 1;
        for (unsigned i = 0 ; i < exp ; ++i)
            result *= base;
        return result;
    }
}

namespace wsx
{
    Signature::Signature(vector<OperationSymbol> ops, const string & constant_name) :
        _ops(std::move(ops))
    {
        std::set<string> seen;
        optional<size_t> constant;
        for (size_t i = 0 ; i < _ops.size() ; ++i) {
            if (_ops[i].name.empty())
                throw Error{ ErrorCode::InvalidSignature, "empty operation name" };
            if (! seen.insert(_ops[i].name).second)
                throw Error{ ErrorCode::InvalidSignature, "duplicate operation '" + _ops[i].name + "'" };
            if (_ops[i].name == constant_name)
                constant = i;
        }
        if (! constant)
            throw Error{ ErrorCode::InvalidSignature, "constant '" + constant_name + "' is not an operation" };
        if (_ops[*constant].arity != 0)
            throw Error{ ErrorCode::InvalidSignature, "constant '" + constant_name + "' has nonzero arity" };
        _constant = *constant;
    }

    auto Signature::find(std::string_view name) const -> optional<size_t>
    {
        for (size_t i = 0 ; i < _ops.size() ; ++i)
            if (_ops[i].name == name)
                return i;
        return std::nullopt;
    }

    FiniteAlgebra::FiniteAlgebra(Signature signature, size_t size, vector<vector<Element>> tables) :
        _signature(std::move(signature)),
        _size(size),
        _tables(std::move(tables))
    {
        if (_size == 0)
            throw Error{ ErrorCode::SizeMismatch, "empty carrier" };
        if (_tables.size() != _signature.size())
            throw Error{ ErrorCode::MissingTable, "expected " + to_string(_signature.size()) + " tables, got "
                + to_string(_tables.size()) };
        for (size_t op = 0 ; op < _tables.size() ; ++op) {
            auto & sym = _signature.op(op);
            if (_tables[op].size() != power(_size, sym.arity))
                throw Error{ ErrorCode::ArityMismatch, "table for '" + sym.name + "' has " + to_string(_tables[op].size())
                    + " entries, arity " + to_string(sym.arity) + " needs " + to_string(power(_size, sym.arity)) };
            for (size_t i = 0 ; i < _tables[op].size() ; ++i)
                if (_tables[op][i] >= _size)
                    throw Error{ ErrorCode::EntryOutOfRange, "table for '" + sym.name + "' entry " + to_string(i)
                        + " is " + to_string(_tables[op][i]) + " in a carrier of size " + to_string(_size) };
        }
    }

    auto FiniteAlgebra::apply(size_t op, std::span<const Element> args) const -> Element
    {
        return _tables[op][table_index(args, _size)];
    }

    auto make_algebra(const Signature & signature, size_t size, const std::map<string, vector<Element>> & tables)
        -> FiniteAlgebra
    {
        vector<vector<Element>> ordered;
        for (auto & sym : signature.ops()) {
            auto t = tables.find(sym.name);
            if (t == tables.end())
                throw Error{ ErrorCode::MissingTable, "no table for '" + sym.name + "'" };
            ordered.push_back(t->second);
        }
        for (auto & [name, _] : tables)
            if (! signature.find(name))
                throw Error{ ErrorCode::UnknownSymbol, "table for unknown operation '" + name + "'" };
        return FiniteAlgebra{ signature, size, std::move(ordered) };
    }

    auto trivial_algebra(const Signature & signature) -> FiniteAlgebra
    {
        vector<vector<Element>> tables;
        for (size_t i = 0 ; i < signature.size() ; ++i)
            tables.emplace_back(1, 0);
        return FiniteAlgebra{ signature, 1, std::move(tables) };
    }

    auto table_index(std::span<const Element> args, size_t carrier_size) -> size_t
    {
        size_t index = 0;
        for (auto a : args)
            index = index * carrier_size + a;
        return index;
    }

    auto table_args(size_t index, unsigned arity, size_t carrier_size) -> vector<Element>
    {
        vector<Element> args(arity);
        for (unsigned i = arity ; i-- > 0 ; ) {
            args[i] = static_cast<Element>(index % carrier_size);
            index /= carrier_size;
        }
        return args;
    }

    FnTable::FnTable(size_t cod_size, vector<Element> values) :
        _cod_size(cod_size),
        _values(std::move(values))
    {
        if (_values.empty() || _cod_size == 0)
            throw Error{ ErrorCode::SizeMismatch, "function table with empty domain or codomain" };
        for (size_t i = 0 ; i < _values.size() ; ++i)
            if (_values[i] >= _cod_size)
                throw Error{ ErrorCode::EntryOutOfRange, "function value " + to_string(_values[i]) + " at "
                    + to_string(i) + " outside codomain of size " + to_string(_cod_size) };
    }

    auto FnTable::identity(size_t size) -> FnTable
    {
        vector<Element> values(size);
        for (size_t i = 0 ; i < size ; ++i)
            values[i] = static_cast<Element>(i);
        return FnTable{ size, std::move(values) };
    }

    auto FnTable::constant(size_t dom_size, size_t cod_size, Element value) -> FnTable
    {
        return FnTable{ cod_size, vector<Element>(dom_size, value) };
    }

    auto compose(const FnTable & outer, const FnTable & inner) -> FnTable
    {
        if (inner.cod_size() != outer.dom_size())
            throw Error{ ErrorCode::SizeMismatch, "cannot compose: inner codomain " + to_string(inner.cod_size())
                + " vs outer domain " + to_string(outer.dom_size()) };
        vector<Element> values(inner.dom_size());
        for (size_t i = 0 ; i < values.size() ; ++i)
            values[i] = outer(inner(static_cast<Element>(i)));
        return FnTable{ outer.cod_size(), std::move(values) };
    }

    auto is_injective(const FnTable & f) -> bool
    {
        vector<bool> hit(f.cod_size(), false);
        for (auto v : f.values()) {
            if (hit[v])
                return false;
            hit[v] = true;
        }
        return true;
    }

    auto is_surjective(const FnTable & f) -> bool
    {
        vector<bool> hit(f.cod_size(), false);
        for (auto v : f.values())
            hit[v] = true;
        return std::all_of(hit.begin(), hit.end(), [] (bool b) { return b; });
    }

    auto is_homomorphism(const FnTable & f, const FiniteAlgebra & from, const FiniteAlgebra & to) -> HomCheck
    {
        if (f.dom_size() != from.size() || f.cod_size() != to.size())
            throw Error{ ErrorCode::SizeMismatch, "map " + to_string(f.dom_size()) + "->" + to_string(f.cod_size())
                + " against algebras of sizes " + to_string(from.size()) + " and " + to_string(to.size()) };
        if (from.signature() != to.signature())
            throw Error{ ErrorCode::SignatureMismatch, "homomorphism between algebras of different signatures" };

        vector<Element> image;
        for (size_t op = 0 ; op < from.signature().size() ; ++op) {
            auto arity = from.signature().op(op).arity;
            auto & table = from.table(op);
            image.resize(arity);
            for (size_t idx = 0 ; idx < table.size() ; ++idx) {
                auto args = table_args(idx, arity, from.size());
                for (unsigned i = 0 ; i < arity ; ++i)
                    image[i] = f(args[i]);
                auto lhs = f(table[idx]);
                auto rhs = to.apply(op, image);
                if (lhs != rhs)
                    return HomCheck{ false, HomCounterexample{ from.signature().op(op).name, args, lhs, rhs } };
            }
        }
        return HomCheck{};
    }

    void require_homomorphism(const FnTable & f, const FiniteAlgebra & from, const FiniteAlgebra & to, const string & name)
    {
        auto check = is_homomorphism(f, from, to);
        if (! check) {
            auto & ce = *check.counterexample;
            throw Error{ ErrorCode::NotHomomorphism, name + " fails at " + ce.op + format_tuple(ce.args) + ": "
                + to_string(ce.image_of_result) + " != " + to_string(ce.result_of_images) };
        }
    }

    namespace
    {
        struct HomSearch
        {
            const FiniteAlgebra & from;
            const FiniteAlgebra & to;
            const SearchLimits & limits;

            vector<optional<Element>> forced;
            vector<Element> assignment;
            vector<FnTable> results;
            std::uint64_t nodes = 0;

            // Checks every tuple over {0..a} containing a, forcing unassigned results.
            // Returns false on conflict; records forced positions for undo.
            auto propagate(Element a, vector<Element> & trail) -> bool
            {
                vector<Element> args, image;
                for (size_t op = 0 ; op < from.signature().size() ; ++op) {
                    auto arity = from.signature().op(op).arity;
                    if (arity == 0)
                        continue;
                    args.assign(arity, 0);
                    image.resize(arity);
                    size_t count = power(a + 1, arity);
                    for (size_t c = 0 ; c < count ; ++c) {
                        size_t rest = c;
                        bool contains = false;
                        for (unsigned i = arity ; i-- > 0 ; ) {
                            args[i] = static_cast<Element>(rest % (a + 1));
                            rest /= (a + 1);
                            contains = contains || args[i] == a;
                        }
                        if (! contains)
                            continue;
                        for (unsigned i = 0 ; i < arity ; ++i)
                            image[i] = assignment[args[i]];
                        auto result = from.apply(op, args);
                        auto expected = to.apply(op, image);
                        if (result <= a) {
                            if (assignment[result] != expected)
                                return false;
                        }
                        else if (forced[result]) {
                            if (*forced[result] != expected)
                                return false;
                        }
                        else {
                            forced[result] = expected;
                            trail.push_back(result);
                        }
                    }
                }
                return true;
            }

            void search(Element a)
            {
                if (a == from.size()) {
                    results.emplace_back(to.size(), assignment);
                    return;
                }
                Element lo = 0, hi = static_cast<Element>(to.size());
                if (forced[a]) {
                    lo = *forced[a];
                    hi = lo + 1;
                }
                for (Element v = lo ; v < hi ; ++v) {
                    if (++nodes > limits.node_budget)
                        throw Error{ ErrorCode::SearchBudgetExceeded, "homomorphism enumeration exceeded "
                            + to_string(limits.node_budget) + " nodes" };
                    assignment[a] = v;
                    vector<Element> trail;
                    if (propagate(a, trail))
                        search(a + 1);
                    for (auto t : trail)
                        forced[t] = std::nullopt;
                }
            }
        };
    }

    auto enumerate_homomorphisms(const FiniteAlgebra & from, const FiniteAlgebra & to,
            const vector<optional<Element>> & fixed, const SearchLimits & limits) -> vector<FnTable>
    {
        if (from.signature() != to.signature())
            throw Error{ ErrorCode::SignatureMismatch, "homomorphism enumeration between different signatures" };
        if (! fixed.empty() && fixed.size() != from.size())
            throw Error{ ErrorCode::SizeMismatch, "partial assignment has " + to_string(fixed.size())
                + " entries for a domain of size " + to_string(from.size()) };

        HomSearch s{ from, to, limits, {}, vector<Element>(from.size(), 0), {} };
        s.forced.assign(from.size(), std::nullopt);
        for (size_t i = 0 ; i < fixed.size() ; ++i)
            if (fixed[i]) {
                if (*fixed[i] >= to.size())
                    throw Error{ ErrorCode::EntryOutOfRange, "fixed value out of range" };
                s.forced[i] = fixed[i];
            }

        // Arity-0 operations: the constants must correspond.
        for (size_t op = 0 ; op < from.signature().size() ; ++op) {
            if (from.signature().op(op).arity != 0)
                continue;
            auto src = from.table(op)[0];
            auto dst = to.table(op)[0];
            if (s.forced[src] && *s.forced[src] != dst)
                return {};
            s.forced[src] = dst;
        }

        s.search(0);
        return std::move(s.results);
    }

    auto product_algebra(const FiniteAlgebra & a, const FiniteAlgebra & b) -> FiniteAlgebra
    {
        if (a.signature() != b.signature())
            throw Error{ ErrorCode::SignatureMismatch, "product of algebras of different signatures" };
        size_t size = a.size() * b.size();
        vector<vector<Element>> tables;
        vector<Element> left, right;
        for (size_t op = 0 ; op < a.signature().size() ; ++op) {
            auto arity = a.signature().op(op).arity;
            vector<Element> table(power(size, arity));
            left.resize(arity);
            right.resize(arity);
            for (size_t idx = 0 ; idx < table.size() ; ++idx) {
                auto args = table_args(idx, arity, size);
                for (unsigned i = 0 ; i < arity ; ++i) {
                    left[i] = static_cast<Element>(args[i] / b.size());
                    right[i] = static_cast<Element>(args[i] % b.size());
                }
                table[idx] = static_cast<Element>(a.apply(op, left) * b.size() + b.apply(op, right));
            }
            tables.push_back(std::move(table));
        }
        return FiniteAlgebra{ a.signature(), size, std::move(tables) };
    }

    auto find_closure_failure(const FiniteAlgebra & algebra, std::span<const Element> members) -> optional<ClosureFailure>
    {
        vector<bool> in(algebra.size(), false);
        for (auto m : members)
            in[m] = true;
        vector<Element> args;
        for (size_t op = 0 ; op < algebra.signature().size() ; ++op) {
            auto arity = algebra.signature().op(op).arity;
            args.resize(arity);
            size_t count = power(members.size(), arity);
            for (size_t c = 0 ; c < count ; ++c) {
                auto pos = table_args(c, arity, members.size());
                for (unsigned i = 0 ; i < arity ; ++i)
                    args[i] = members[pos[i]];
                auto r = algebra.apply(op, args);
                if (! in[r])
                    return ClosureFailure{ algebra.signature().op(op).name, args, r };
            }
        }
        return std::nullopt;
    }

    auto induced_subalgebra(const FiniteAlgebra & algebra, std::span<const Element> members) -> FiniteAlgebra
    {
        if (auto failure = find_closure_failure(algebra, members))
            internal_error("subset not closed under '" + failure->op + "' at " + format_tuple(failure->args));
        vector<optional<Element>> position(algebra.size());
        for (size_t i = 0 ; i < members.size() ; ++i)
            position[members[i]] = static_cast<Element>(i);

        vector<vector<Element>> tables;
        vector<Element> args;
        for (size_t op = 0 ; op < algebra.signature().size() ; ++op) {
            auto arity = algebra.signature().op(op).arity;
            vector<Element> table(power(members.size(), arity));
            args.resize(arity);
            for (size_t c = 0 ; c < table.size() ; ++c) {
                auto pos = table_args(c, arity, members.size());
                for (unsigned i = 0 ; i < arity ; ++i)
                    args[i] = members[pos[i]];
                table[c] = *position[algebra.apply(op, args)];
            }
            tables.push_back(std::move(table));
        }
        return FiniteAlgebra{ algebra.signature(), members.size(), std::move(tables) };
    }

    auto pullback_algebra(const FiniteAlgebra & a, const FiniteAlgebra & b, const FnTable & p,
            const FiniteAlgebra & b_prime, const FnTable & f) -> Pullback
    {
        require_homomorphism(p, a, b, "p");
        require_homomorphism(f, b_prime, b, "f");

        auto product = product_algebra(a, b_prime);
        vector<Element> members;
        vector<std::pair<Element, Element>> pairs;
        for (Element x = 0 ; x < a.size() ; ++x)
            for (Element y = 0 ; y < b_prime.size() ; ++y)
                if (p(x) == f(y)) {
                    members.push_back(static_cast<Element>(x * b_prime.size() + y));
                    pairs.emplace_back(x, y);
                }

        auto algebra = induced_subalgebra(product, members);
        vector<Element> to_a, to_b;
        for (auto & [x, y] : pairs) {
            to_a.push_back(x);
            to_b.push_back(y);
        }
        return Pullback{ std::move(algebra), FnTable{ a.size(), std::move(to_a) },
            FnTable{ b_prime.size(), std::move(to_b) }, std::move(pairs) };
    }

    auto generated_subalgebra(const FiniteAlgebra & algebra, std::span<const Element> generators) -> vector<bool>
    {
        vector<bool> in(algebra.size(), false);
        for (auto g : generators)
            in[g] = true;
        vector<Element> args;
        bool changed = true;
        while (changed) {
            changed = false;
            vector<Element> members;
            for (Element x = 0 ; x < algebra.size() ; ++x)
                if (in[x])
                    members.push_back(x);
            for (size_t op = 0 ; op < algebra.signature().size() ; ++op) {
                auto arity = algebra.signature().op(op).arity;
                args.resize(arity);
                size_t count = power(members.size(), arity);
                for (size_t c = 0 ; c < count ; ++c) {
                    auto pos = table_args(c, arity, members.size());
                    for (unsigned i = 0 ; i < arity ; ++i)
                        args[i] = members[pos[i]];
                    auto r = algebra.apply(op, args);
                    if (! in[r]) {
                        in[r] = true;
                        changed = true;
                    }
                }
            }
        }
        return in;
    }
}
