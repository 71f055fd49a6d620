#include <wsx/term.hh>
#include <wsx/error.hh>

#include <array>
#include <cctype>

using std::size_t;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace wsx
{
    Term::Term(Kind kind, string name, size_t index, vector<Term> args) :
        _kind(kind),
        _name(std::move(name)),
        _index(index),
        _args(std::move(args))
    {
    }

    auto Term::variable(string name, size_t index) -> Term
    {
        return Term{ Kind::Variable, std::move(name), index, {} };
    }

    auto Term::apply(string op, size_t op_index, vector<Term> args) -> Term
    {
        return Term{ Kind::Apply, std::move(op), op_index, std::move(args) };
    }

    namespace
    {
        void check_vars_used(const Term & term, size_t count)
        {
            if (term.is_variable()) {
                if (term.index() >= count)
                    throw Error{ ErrorCode::UnboundVariable, "variable '" + term.name() + "' is not declared" };
                return;
            }
            for (auto & a : term.args())
                check_vars_used(a, count);
        }
    }

    ThetaSpec::ThetaSpec(vector<string> vars, Term term) :
        _spec{ std::move(vars), std::move(term) }
    {
        if (_spec.vars.size() < 2)
            throw Error{ ErrorCode::ArityMismatch, "theta needs at least two variables, got "
                + to_string(_spec.vars.size()) };
        check_vars_used(_spec.term, _spec.vars.size());
    }

    namespace
    {
        struct Token
        {
            enum Kind { Open, Close, Symbol, End } kind;
            string text;
            size_t position;
        };

        class Lexer
        {
            private:
                string_view _text;
                size_t _pos = 0;

            public:
                explicit Lexer(string_view text) :
                    _text(text)
                {
                }

                auto next() -> Token
                {
                    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                        ++_pos;
                    if (_pos == _text.size())
                        return Token{ Token::End, "", _pos };
                    char c = _text[_pos];
                    if (c == '(')
                        return Token{ Token::Open, "(", _pos++ };
                    if (c == ')')
                        return Token{ Token::Close, ")", _pos++ };
                    size_t start = _pos;
                    while (_pos < _text.size() && ! std::isspace(static_cast<unsigned char>(_text[_pos]))
                            && _text[_pos] != '(' && _text[_pos] != ')') {
                        if (static_cast<unsigned char>(_text[_pos]) > 127)
                            throw SyntaxError{ _pos, "non-ASCII character in symbol" };
                        ++_pos;
                    }
                    return Token{ Token::Symbol, string(_text.substr(start, _pos - start)), start };
                }
        };

        class Parser
        {
            private:
                Lexer _lexer;
                Token _current;
                const Signature & _signature;
                const vector<string> & _vars;

                void advance()
                {
                    _current = _lexer.next();
                }

                auto find_var(const string & name) const -> std::optional<size_t>
                {
                    for (size_t i = 0 ; i < _vars.size() ; ++i)
                        if (_vars[i] == name)
                            return i;
                    return std::nullopt;
                }

                auto symbol(const Token & tok) -> Term
                {
                    if (auto v = find_var(tok.text))
                        return Term::variable(tok.text, *v);
                    auto op = _signature.find(tok.text);
                    if (! op)
                        throw Error{ ErrorCode::UnknownSymbol, "'" + tok.text + "' at offset " + to_string(tok.position) };
                    auto arity = _signature.op(*op).arity;
                    if (arity != 0)
                        throw Error{ ErrorCode::ArityMismatch, "'" + tok.text + "' at offset " + to_string(tok.position)
                            + " takes " + to_string(arity) + " arguments, used bare" };
                    return Term::apply(tok.text, *op, {});
                }

            public:
                Parser(string_view text, const Signature & signature, const vector<string> & vars) :
                    _lexer(text),
                    _current{ Token::End, "", 0 },
                    _signature(signature),
                    _vars(vars)
                {
                    advance();
                }

                auto at_end() const -> bool
                {
                    return _current.kind == Token::End;
                }

                auto current() const -> const Token &
                {
                    return _current;
                }

                auto term() -> Term
                {
                    switch (_current.kind) {
                        case Token::End:
                            throw SyntaxError{ _current.position, "unexpected end of input" };
                        case Token::Close:
                            throw SyntaxError{ _current.position, "unexpected ')'" };
                        case Token::Symbol: {
                            auto tok = _current;
                            advance();
                            return symbol(tok);
                        }
                        case Token::Open:
                            break;
                    }

                    auto open = _current;
                    advance();
                    if (_current.kind != Token::Symbol)
                        throw SyntaxError{ _current.position, "expected an operation name after '('" };
                    auto head = _current;
                    if (find_var(head.text))
                        throw Error{ ErrorCode::UnknownSymbol, "variable '" + head.text + "' used as an operation at offset "
                            + to_string(head.position) };
                    auto op = _signature.find(head.text);
                    if (! op)
                        throw Error{ ErrorCode::UnknownSymbol, "'" + head.text + "' at offset " + to_string(head.position) };
                    advance();

                    vector<Term> args;
                    while (_current.kind != Token::Close) {
                        if (_current.kind == Token::End)
                            throw SyntaxError{ open.position, "unclosed '('" };
                        args.push_back(term());
                    }
                    advance();

                    auto arity = _signature.op(*op).arity;
                    if (args.size() != arity)
                        throw Error{ ErrorCode::ArityMismatch, "'" + head.text + "' at offset " + to_string(head.position)
                            + " takes " + to_string(arity) + " arguments, given " + to_string(args.size()) };
                    return Term::apply(head.text, *op, std::move(args));
                }
        };

        void print(const Term & term, string & out)
        {
            if (term.is_variable() || term.args().empty()) {
                out += term.name();
                return;
            }
            out += '(';
            out += term.name();
            for (auto & a : term.args()) {
                out += ' ';
                print(a, out);
            }
            out += ')';
        }
    }

    auto parse_term(string_view text, const Signature & signature, const vector<string> & vars) -> Term
    {
        Parser parser{ text, signature, vars };
        auto result = parser.term();
        if (! parser.at_end())
            throw SyntaxError{ parser.current().position, "trailing input after term" };
        return result;
    }

    auto parse_theta(const vector<string> & vars, string_view text, const Signature & signature) -> ThetaSpec
    {
        return ThetaSpec{ vars, parse_term(text, signature, vars) };
    }

    auto to_sexpr(const Term & term) -> string
    {
        string out;
        print(term, out);
        return out;
    }

    void require_term_over(const Term & term, const Signature & signature)
    {
        if (term.is_variable())
            return;
        if (term.index() >= signature.size() || signature.op(term.index()).name != term.name()
                || signature.op(term.index()).arity != term.args().size())
            throw Error{ ErrorCode::SignatureMismatch, "operation '" + term.name() + "' does not match the algebra's signature" };
        for (auto & a : term.args())
            require_term_over(a, signature);
    }

    auto evaluate(const Term & term, const FiniteAlgebra & algebra, std::span<const Element> env) -> Element
    {
        if (term.is_variable())
            return env[term.index()];
        auto & args = term.args();
        if (args.size() <= 8) {
            std::array<Element, 8> values;
            for (size_t i = 0 ; i < args.size() ; ++i)
                values[i] = evaluate(args[i], algebra, env);
            return algebra.apply(term.index(), std::span<const Element>(values.data(), args.size()));
        }
        vector<Element> values(args.size());
        for (size_t i = 0 ; i < args.size() ; ++i)
            values[i] = evaluate(args[i], algebra, env);
        return algebra.apply(term.index(), values);
    }

    namespace
    {
        auto eval_named(const Term & term, const FiniteAlgebra & algebra, const std::map<string, Element> & env) -> Element
        {
            if (term.is_variable()) {
                auto v = env.find(term.name());
                if (v == env.end())
                    throw Error{ ErrorCode::UnboundVariable, "'" + term.name() + "'" };
                if (v->second >= algebra.size())
                    throw Error{ ErrorCode::EntryOutOfRange, "value of '" + term.name() + "' outside the carrier" };
                return v->second;
            }
            vector<Element> values;
            for (auto & a : term.args())
                values.push_back(eval_named(a, algebra, env));
            return algebra.apply(term.index(), values);
        }
    }

    auto eval_term(const Term & term, const FiniteAlgebra & algebra, const std::map<string, Element> & env) -> Element
    {
        require_term_over(term, algebra.signature());
        return eval_named(term, algebra, env);
    }

    auto check_theta_admissible(const ThetaSpec & theta, const FiniteAlgebra & algebra) -> AdmissibilityCheck
    {
        require_term_over(theta.term(), algebra.signature());
        vector<Element> env(theta.n() + 1, algebra.zero());
        for (Element x = 0 ; x < algebra.size() ; ++x) {
            env.back() = x;
            if (evaluate(theta.term(), algebra, env) != x)
                return AdmissibilityCheck{ false, x };
        }
        return AdmissibilityCheck{};
    }

    void require_theta_admissible(const ThetaSpec & theta, const FiniteAlgebra & algebra, const string & what)
    {
        auto check = check_theta_admissible(theta, algebra);
        if (! check)
            throw Error{ ErrorCode::ThetaNotAdmissible, "theta(0,...,0,x) != x on " + what + " at x = "
                + to_string(*check.counterexample) };
    }

    auto check_commuting(const TermSpec & omega, const ThetaSpec & theta, const FiniteAlgebra & algebra,
            const SearchLimits & limits) -> CommutingCheck
    {
        require_term_over(omega.term, algebra.signature());
        require_term_over(theta.term(), algebra.signature());
        size_t rows = omega.vars.size();
        size_t cols = theta.n() + 1;
        size_t cells = rows * cols;
        auto cost = saturating_pow(algebra.size(), cells);
        require_budget(limits, cost, "commutation check");

        vector<Element> matrix(cells, 0), column(rows), row(cols), thetas(rows), omegas(cols);
        for (std::uint64_t c = 0 ; c < cost ; ++c) {
            auto rest = c;
            for (size_t i = cells ; i-- > 0 ; ) {
                matrix[i] = static_cast<Element>(rest % algebra.size());
                rest /= algebra.size();
            }
            for (size_t j = 0 ; j < cols ; ++j) {
                for (size_t i = 0 ; i < rows ; ++i)
                    column[i] = matrix[i * cols + j];
                omegas[j] = evaluate(omega.term, algebra, column);
            }
            for (size_t i = 0 ; i < rows ; ++i) {
                for (size_t j = 0 ; j < cols ; ++j)
                    row[j] = matrix[i * cols + j];
                thetas[i] = evaluate(theta.term(), algebra, row);
            }
            if (evaluate(theta.term(), algebra, omegas) != evaluate(omega.term, algebra, thetas))
                return CommutingCheck{ false, matrix };
        }
        return CommutingCheck{};
    }

    auto parse_equation(const vector<string> & vars, string_view lhs, string_view rhs, const Signature & signature)
        -> Equation
    {
        return Equation{ vars, parse_term(lhs, signature, vars), parse_term(rhs, signature, vars) };
    }

    auto check_equation(const FiniteAlgebra & algebra, const Equation & equation, const SearchLimits & limits)
        -> EquationCheck
    {
        require_term_over(equation.lhs, algebra.signature());
        require_term_over(equation.rhs, algebra.signature());
        auto count = saturating_pow(algebra.size(), equation.vars.size());
        require_budget(limits, count, "equation check");
        vector<Element> env(equation.vars.size());
        for (std::uint64_t c = 0 ; c < count ; ++c) {
            auto rest = c;
            for (size_t i = env.size() ; i-- > 0 ; ) {
                env[i] = static_cast<Element>(rest % algebra.size());
                rest /= algebra.size();
            }
            if (evaluate(equation.lhs, algebra, env) != evaluate(equation.rhs, algebra, env))
                return EquationCheck{ false, env };
        }
        return EquationCheck{};
    }
}
