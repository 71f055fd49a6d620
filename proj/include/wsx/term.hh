#ifndef WSX_TERM_HH
#define WSX_TERM_HH 1

#include <wsx/algebra.hh>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsx
{
    /**
     * A term over a signature. Variables refer to a position in an ordered
     * variable list; applications refer to an operation index of the signature
     * the term was parsed against.
     */
    class Term
    {
        public:
            enum class Kind { Variable, Apply };

        private:
            Kind _kind;
            std::string _name;
            std::size_t _index;
            std::vector<Term> _args;

            Term(Kind kind, std::string name, std::size_t index, std::vector<Term> args);

        public:
            static auto variable(std::string name, std::size_t index) -> Term;
            static auto apply(std::string op, std::size_t op_index, std::vector<Term> args) -> Term;

            auto kind() const -> Kind
            {
                return _kind;
            }

            auto is_variable() const -> bool
            {
                return _kind == Kind::Variable;
            }

            /// Variable name or operation name.
            auto name() const -> const std::string &
            {
                return _name;
            }

            /// Variable position or operation index.
            auto index() const -> std::size_t
            {
                return _index;
            }

            auto args() const -> const std::vector<Term> &
            {
                return _args;
            }

            auto operator== (const Term &) const -> bool = default;
    };

    /// A term together with its ordered variable list.
    struct TermSpec
    {
        std::vector<std::string> vars;
        Term term;
    };

    /// An (n+1)-ary term; the last variable is the distinguished one. n >= 1.
    class ThetaSpec
    {
        private:
            TermSpec _spec;

        public:
            ThetaSpec(std::vector<std::string> vars, Term term);

            auto n() const -> std::size_t
            {
                return _spec.vars.size() - 1;
            }

            auto vars() const -> const std::vector<std::string> &
            {
                return _spec.vars;
            }

            auto term() const -> const Term &
            {
                return _spec.term;
            }

            auto spec() const -> const TermSpec &
            {
                return _spec;
            }
    };

    /**
     * Parses `(op t1 ... tk)`, a variable name, or a bare 0-ary operation name.
     * Variable names shadow operation names. Throws SyntaxError (with a byte
     * offset), UnknownSymbol, or ArityMismatch.
     */
    auto parse_term(std::string_view text, const Signature & signature, const std::vector<std::string> & vars) -> Term;

    auto parse_theta(const std::vector<std::string> & vars, std::string_view text, const Signature & signature) -> ThetaSpec;

    /// Canonical s-expression: single spaces, 0-ary operations written bare.
    auto to_sexpr(const Term & term) -> std::string;

    /// Throws SignatureMismatch unless every operation of `term` matches `signature` by index, name, and arity.
    void require_term_over(const Term & term, const Signature & signature);

    /// Evaluation with the environment indexed by variable position. No validation.
    auto evaluate(const Term & term, const FiniteAlgebra & algebra, std::span<const Element> env) -> Element;

    /// Evaluation with a named environment; throws UnboundVariable.
    auto eval_term(const Term & term, const FiniteAlgebra & algebra, const std::map<std::string, Element> & env) -> Element;

    struct AdmissibilityCheck
    {
        bool ok = true;
        std::optional<Element> counterexample;

        explicit operator bool() const
        {
            return ok;
        }
    };

    /// theta(0, ..., 0, x) = x for every x in the carrier.
    auto check_theta_admissible(const ThetaSpec & theta, const FiniteAlgebra & algebra) -> AdmissibilityCheck;

    /// Throws ThetaNotAdmissible naming `what` on failure.
    void require_theta_admissible(const ThetaSpec & theta, const FiniteAlgebra & algebra, const std::string & what);

    struct CommutingCheck
    {
        bool ok = true;
        /// Row-major m x (n+1) argument matrix of the first failure.
        std::optional<std::vector<Element>> counterexample;

        explicit operator bool() const
        {
            return ok;
        }
    };

    /**
     * Interchange law: for every m x (n+1) matrix M, theta applied to the
     * column-wise omega results equals omega applied to the row-wise theta
     * results. Costs |A|^(m(n+1)) evaluations.
     */
    auto check_commuting(const TermSpec & omega, const ThetaSpec & theta, const FiniteAlgebra & algebra,
            const SearchLimits & limits = {}) -> CommutingCheck;

    struct Equation
    {
        std::vector<std::string> vars;
        Term lhs;
        Term rhs;
    };

    auto parse_equation(const std::vector<std::string> & vars, std::string_view lhs, std::string_view rhs,
            const Signature & signature) -> Equation;

    struct EquationCheck
    {
        bool ok = true;
        std::optional<std::vector<Element>> counterexample;

        explicit operator bool() const
        {
            return ok;
        }
    };

    /// Exhaustive over all assignments, first variable most significant.
    auto check_equation(const FiniteAlgebra & algebra, const Equation & equation, const SearchLimits & limits = {})
        -> EquationCheck;
}

#endif
