#ifndef WSX_ALGEBRA_HH
#define WSX_ALGEBRA_HH 1

#include <wsx/limits.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsx
{
    using Element = std::uint32_t;

    struct OperationSymbol
    {
        std::string name;
        unsigned arity;

        auto operator== (const OperationSymbol &) const -> bool = default;
    };

    /**
     * An ordered list of operation symbols, one of which (arity 0) is the
     * distinguished constant. Operation indices are positions in this list.
     */
    class Signature
    {
        private:
            std::vector<OperationSymbol> _ops;
            std::size_t _constant = 0;

        public:
            Signature(std::vector<OperationSymbol> ops, const std::string & constant_name);

            auto ops() const -> const std::vector<OperationSymbol> &
            {
                return _ops;
            }

            auto op(std::size_t index) const -> const OperationSymbol &
            {
                return _ops.at(index);
            }

            auto size() const -> std::size_t
            {
                return _ops.size();
            }

            auto constant_index() const -> std::size_t
            {
                return _constant;
            }

            auto constant_name() const -> const std::string &
            {
                return _ops[_constant].name;
            }

            auto find(std::string_view name) const -> std::optional<std::size_t>;

            auto operator== (const Signature &) const -> bool = default;
    };

    /**
     * A finite algebra on the carrier {0, ..., size-1}. Each operation of arity k
     * has a row-major table of size^k entries: the entry for (a_1, ..., a_k) sits
     * at sum a_i * size^(k-i). The zero element is the value of the constant's
     * table, which need not be index 0.
     */
    class FiniteAlgebra
    {
        private:
            Signature _signature;
            std::size_t _size;
            std::vector<std::vector<Element>> _tables;

        public:
            /// Tables indexed by operation index. Validates shapes and ranges.
            FiniteAlgebra(Signature signature, std::size_t size, std::vector<std::vector<Element>> tables);

            auto signature() const -> const Signature &
            {
                return _signature;
            }

            auto size() const -> std::size_t
            {
                return _size;
            }

            auto zero() const -> Element
            {
                return _tables[_signature.constant_index()][0];
            }

            auto table(std::size_t op) const -> const std::vector<Element> &
            {
                return _tables.at(op);
            }

            auto tables() const -> const std::vector<std::vector<Element>> &
            {
                return _tables;
            }

            auto apply(std::size_t op, std::span<const Element> args) const -> Element;

            auto operator== (const FiniteAlgebra &) const -> bool = default;
    };

    /// Builds an algebra from tables keyed by operation name.
    auto make_algebra(const Signature & signature, std::size_t size,
            const std::map<std::string, std::vector<Element>> & tables) -> FiniteAlgebra;

    auto trivial_algebra(const Signature & signature) -> FiniteAlgebra;

    /// Row-major index of an argument tuple in a table over a carrier of the given size.
    auto table_index(std::span<const Element> args, std::size_t carrier_size) -> std::size_t;

    /// Inverse of table_index.
    auto table_args(std::size_t index, unsigned arity, std::size_t carrier_size) -> std::vector<Element>;

    /// A total function {0..dom-1} -> {0..cod-1}. Homomorphism status is checked per use.
    class FnTable
    {
        private:
            std::size_t _cod_size;
            std::vector<Element> _values;

        public:
            FnTable(std::size_t cod_size, std::vector<Element> values);

            static auto identity(std::size_t size) -> FnTable;
            static auto constant(std::size_t dom_size, std::size_t cod_size, Element value) -> FnTable;

            auto dom_size() const -> std::size_t
            {
                return _values.size();
            }

            auto cod_size() const -> std::size_t
            {
                return _cod_size;
            }

            auto operator() (Element x) const -> Element
            {
                return _values[x];
            }

            auto values() const -> const std::vector<Element> &
            {
                return _values;
            }

            auto operator== (const FnTable &) const -> bool = default;
    };

    /// outer ∘ inner
    auto compose(const FnTable & outer, const FnTable & inner) -> FnTable;
    auto is_injective(const FnTable & f) -> bool;
    auto is_surjective(const FnTable & f) -> bool;

    struct HomCounterexample
    {
        std::string op;
        std::vector<Element> args;
        Element image_of_result;
        Element result_of_images;
    };

    struct HomCheck
    {
        bool ok = true;
        std::optional<HomCounterexample> counterexample;

        explicit operator bool() const
        {
            return ok;
        }
    };

    /// Scans operations in signature order and argument tuples in table order.
    auto is_homomorphism(const FnTable & f, const FiniteAlgebra & from, const FiniteAlgebra & to) -> HomCheck;

    /// Throws NotHomomorphism (with the counterexample) unless f is a homomorphism.
    void require_homomorphism(const FnTable & f, const FiniteAlgebra & from, const FiniteAlgebra & to,
            const std::string & name);

    /**
     * All homomorphisms from -> to agreeing with `fixed` (indexed by elements of
     * `from`; empty means unconstrained), in lexicographic order of their value
     * arrays. Each value tried counts as one node against the budget.
     */
    auto enumerate_homomorphisms(const FiniteAlgebra & from, const FiniteAlgebra & to,
            const std::vector<std::optional<Element>> & fixed = {},
            const SearchLimits & limits = {}) -> std::vector<FnTable>;

    /// Carrier index of (a, b) is a * |B| + b.
    auto product_algebra(const FiniteAlgebra & a, const FiniteAlgebra & b) -> FiniteAlgebra;

    struct Pullback
    {
        FiniteAlgebra algebra;
        FnTable proj_a;
        FnTable proj_b;
        std::vector<std::pair<Element, Element>> pairs;
    };

    /// {(a, b') : p(a) = f(b')} ordered lexicographically in (a, b').
    auto pullback_algebra(const FiniteAlgebra & a, const FiniteAlgebra & b, const FnTable & p,
            const FiniteAlgebra & b_prime, const FnTable & f) -> Pullback;

    /// The first operation application leaving `members` (a sorted element list), if any.
    struct ClosureFailure
    {
        std::string op;
        std::vector<Element> args;
        Element result;
    };

    auto find_closure_failure(const FiniteAlgebra & algebra, std::span<const Element> members)
        -> std::optional<ClosureFailure>;

    /// The subalgebra on a sorted, operation-closed element list; element i is members[i].
    auto induced_subalgebra(const FiniteAlgebra & algebra, std::span<const Element> members) -> FiniteAlgebra;

    /// Membership flags of the subalgebra generated by `generators` (fixpoint of the tables).
    auto generated_subalgebra(const FiniteAlgebra & algebra, std::span<const Element> generators) -> std::vector<bool>;
}

#endif
