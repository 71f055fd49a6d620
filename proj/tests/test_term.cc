#include "support.hh"

#include <wsx/error.hh>

#include <doctest.h>

using namespace wsx;
using namespace wsx::test;
using std::string;
using std::vector;

namespace
{
    auto code_of(auto && body) -> std::optional<ErrorCode>
    {
        try {
            body();
        }
        catch (const Error & e) {
            return e.code();
        }
        return std::nullopt;
    }

    auto syntax_position(auto && body) -> std::optional<std::size_t>
    {
        try {
            body();
        }
        catch (const SyntaxError & e) {
            return e.position();
        }
        return std::nullopt;
    }
}

TEST_CASE("parse_term examples")
{
    auto a5 = load_algebra("a5");
    auto theta = parse_theta({ "x1", "x2", "y" }, "(+ x1 (+ y x2))", a5.signature());
    CHECK(theta.n() == 2);
    CHECK(to_sexpr(theta.term()) == "(+ x1 (+ y x2))");
    CHECK(theta.term().args()[1].args()[0].index() == 2);

    auto x = parse_term("x", a5.signature(), { "x" });
    CHECK(x.is_variable());
    CHECK(x.index() == 0);

    auto h = load_algebra("heyting3");
    auto ht = parse_theta({ "x1", "x2", "y" }, "(meet (imp x1 y) x2)", h.signature());
    CHECK(to_sexpr(ht.term()) == "(meet (imp x1 y) x2)");

    auto zero = parse_term("0", a5.signature(), {});
    CHECK(! zero.is_variable());
    CHECK(to_sexpr(parse_term("  ( +   x\n0 ) ", a5.signature(), { "x" })) == "(+ x 0)");
    CHECK(to_sexpr(parse_term("(0)", a5.signature(), {})) == "0");
}

TEST_CASE("parse_term errors")
{
    auto sig = load_algebra("a5").signature();
    CHECK(syntax_position([&] { parse_term("(+ x", sig, { "x" }); }));
    CHECK(syntax_position([&] { parse_term("(+ x x))", sig, { "x" }); }) == 7u);
    CHECK(syntax_position([&] { parse_term("", sig, { "x" }); }));
    CHECK(syntax_position([&] { parse_term("()", sig, { "x" }); }));
    CHECK(code_of([&] { parse_term("(* x x)", sig, { "x" }); }) == ErrorCode::UnknownSymbol);
    CHECK(code_of([&] { parse_term("y", sig, { "x" }); }) == ErrorCode::UnknownSymbol);
    CHECK(code_of([&] { parse_term("(+ x)", sig, { "x" }); }) == ErrorCode::ArityMismatch);
    CHECK(code_of([&] { parse_term("+", sig, { "x" }); }) == ErrorCode::ArityMismatch);
    CHECK(code_of([&] { parse_term("(x 0 0)", sig, { "x" }); }) == ErrorCode::UnknownSymbol);
    CHECK(code_of([&] { parse_theta({ "x" }, "x", sig); }));
    CHECK(code_of([&] { parse_term("(+ x \xc3\xa9)", sig, { "x" }); }) == ErrorCode::SyntaxError);
}

TEST_CASE("variables shadow operation names")
{
    auto sig = load_algebra("a5").signature();
    auto t = parse_term("(+ 0 x)", sig, { "0", "x" });
    CHECK(t.args()[0].is_variable());
}

TEST_CASE("s-expression round trip on fixture terms")
{
    vector<std::pair<string, string>> files{ { "monoid_sum", "a5" }, { "monoid_xzy", "a5" }, { "group_mul", "s3" },
        { "heyting", "heyting3" }, { "magma_mul", "left_unital_magma" } };
    for (auto & [theta_name, algebra] : files) {
        auto sig = load_algebra(algebra).signature();
        auto theta = load_theta(theta_name, sig);
        auto again = parse_term(to_sexpr(theta.term()), sig, theta.vars());
        CHECK(again == theta.term());
    }
    auto doc = load_document("heyting3");
    for (auto & eq : doc.axioms) {
        CHECK(parse_term(to_sexpr(eq.lhs), doc.extension.middle.signature(), eq.vars) == eq.lhs);
        CHECK(parse_term(to_sexpr(eq.rhs), doc.extension.middle.signature(), eq.vars) == eq.rhs);
    }
}

TEST_CASE("eval_term examples")
{
    auto a5 = load_algebra("a5");
    auto theta = parse_theta({ "x1", "x2", "y" }, "(+ x1 (+ y x2))", a5.signature());
    CHECK(eval_term(theta.term(), a5, { { "x1", 1 }, { "x2", 0 }, { "y", 2 } }) == 4);
    CHECK(eval_term(theta.term(), a5, { { "x1", 0 }, { "x2", 1 }, { "y", 2 } }) == 3);
    CHECK(code_of([&] { eval_term(theta.term(), a5, { { "x1", 0 } }); }) == ErrorCode::UnboundVariable);

    auto one = load_algebra("trivial_monoid");
    CHECK(eval_term(theta.term(), one, { { "x1", 0 }, { "x2", 0 }, { "y", 0 } }) == 0);
}

TEST_CASE("evaluation agrees with direct table lookup at depth one")
{
    for (auto & name : algebra_names()) {
        auto a = load_algebra(name);
        auto & sig = a.signature();
        for (std::size_t op = 0 ; op < sig.size() ; ++op) {
            vector<string> vars;
            string text = "(" + sig.op(op).name;
            for (unsigned i = 0 ; i < sig.op(op).arity ; ++i) {
                vars.push_back("v" + std::to_string(i));
                text += " v" + std::to_string(i);
            }
            text += ")";
            auto t = parse_term(text, sig, vars);
            auto count = saturating_pow(a.size(), sig.op(op).arity);
            for (std::uint64_t c = 0 ; c < count ; ++c) {
                auto args = table_args(c, sig.op(op).arity, a.size());
                CHECK(evaluate(t, a, args) == a.table(op)[c]);
                CHECK(evaluate(t, a, args) == oracle_apply(a, op, args));
            }
        }
    }
}

TEST_CASE("check_theta_admissible examples")
{
    for (auto & name : { "n2", "a5", "n2_x_n2", "trivial_monoid" }) {
        auto a = load_algebra(name);
        CHECK(check_theta_admissible(load_theta("monoid_sum", a.signature()), a).ok);
    }
    auto h = load_algebra("heyting3");
    CHECK(check_theta_admissible(load_theta("heyting", h.signature()), h).ok);
    auto magma = load_algebra("left_unital_magma");
    CHECK(check_theta_admissible(load_theta("magma_mul", magma.signature()), magma).ok);

    auto right = parse_theta({ "y", "x" }, "(* x y)", magma.signature());
    auto check = check_theta_admissible(right, magma);
    CHECK(! check.ok);
    CHECK(*check.counterexample == 1);
    CHECK(code_of([&] { require_theta_admissible(right, magma, "magma"); }) == ErrorCode::ThetaNotAdmissible);
}

TEST_CASE("check_commuting examples")
{
    auto n2 = load_algebra("n2");
    auto sum = load_theta("monoid_sum", n2.signature());
    CHECK(check_commuting(sum.spec(), sum, n2).ok);

    auto one = load_algebra("trivial_monoid");
    CHECK(check_commuting(sum.spec(), load_theta("monoid_xzy", one.signature()), one).ok);

    auto a5 = load_algebra("a5");
    auto failing = check_commuting(sum.spec(), load_theta("monoid_xzy", a5.signature()), a5);
    CHECK(! failing.ok);
    REQUIRE(failing.counterexample);
    CHECK(failing.counterexample->size() == 6);

    SearchLimits tiny{ 10, 1 };
    CHECK(code_of([&] { check_commuting(sum.spec(), load_theta("monoid_xzy", a5.signature()), a5, tiny); })
            == ErrorCode::SearchBudgetExceeded);

    auto z3 = load_algebra("z3");
    auto mul = load_theta("group_mul", z3.signature());
    CHECK(check_commuting(mul.spec(), mul, z3).ok);
    auto s3 = load_algebra("s3");
    CHECK(! check_commuting(mul.spec(), mul, s3).ok);
}

TEST_CASE("term equality ignores nothing")
{
    auto sig = load_algebra("a5").signature();
    CHECK(parse_term("(+ x y)", sig, { "x", "y" }) != parse_term("(+ y x)", sig, { "x", "y" }));
    CHECK(code_of([&] { require_term_over(parse_term("(mul x y)", load_algebra("z2").signature(), { "x", "y" }), sig); })
            == ErrorCode::SignatureMismatch);
}
