#include "support.hh"

#include <wsx/error.hh>

#include <doctest.h>

using namespace wsx;
using namespace wsx::test;
using std::size_t;
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

    auto canonical_of(const Case & cs) -> std::pair<io::ExtensionDocument, CanonicalExtension>
    {
        auto doc = load_document(cs.extension);
        auto theta = load_theta(cs.theta, doc.extension.middle.signature());
        auto c = build_canonical(doc.extension, theta, *doc.witness);
        return { std::move(doc), std::move(c) };
    }

    /// X = B = N2, theta = x + y, gamma_+ adds the X coordinates: the data of N2 x N2.
    auto product_data() -> GammaData
    {
        auto n2 = load_algebra("n2");
        auto theta = load_theta("monoid_sum", n2.signature());
        vector<size_t> plus(16);
        for (size_t s = 0 ; s < 4 ; ++s)
            for (size_t t = 0 ; t < 4 ; ++t)
                plus[s * 4 + t] = std::min<size_t>(1, s / 2 + t / 2);
        return GammaData{ n2, n2, theta, { plus, { 0 } }, load_document("n2_direct_product").axioms, { 0, 0 },
            std::nullopt };
    }

    auto alternative_unit(const Signature & sig) -> TermSpec
    {
        if (sig.find("+"))
            return TermSpec{ { "x", "y" }, parse_term("(+ (+ x x) y)", sig, { "x", "y" }) };
        if (sig.find("mul"))
            return TermSpec{ { "x", "y" }, parse_term("(mul (inv x) y)", sig, { "x", "y" }) };
        return TermSpec{ { "x", "y" }, parse_term("(meet (imp x y) y)", sig, { "x", "y" }) };
    }
}

TEST_CASE("compute_y on extracted data")
{
    auto [doc, c] = canonical_of({ "example_a5", "monoid_xzy" });
    auto g = extract_gamma(c, doc.axioms);
    auto y = compute_y(g);
    CHECK(y.size() == 5);
    CHECK(y == c.y);

    g.gamma_id.reset();
    CHECK(compute_y(g) == c.y);
}

TEST_CASE("compute_y on direct-product data is everything")
{
    auto g = product_data();
    CHECK(compute_y(g) == vector<size_t>{ 0, 1, 2, 3 });
}

TEST_CASE("a disagreeing gamma_id is a data error")
{
    auto [doc, c] = canonical_of({ "example_a5", "monoid_xzy" });
    auto g = extract_gamma(c, doc.axioms);
    auto t = c.y[4];
    (*g.gamma_id)[t] = ((*g.gamma_id)[t] + 1) % 4;
    CHECK(code_of([&] { compute_y(g); }) == ErrorCode::MembershipDiscrepancy);
}

TEST_CASE("every alternative unit term cuts out the same Y")
{
    for (auto & cs : cases()) {
        auto [doc, c] = canonical_of(cs);
        auto g = extract_gamma(c, doc.axioms);
        auto omega = alternative_unit(g.base.signature());
        for (auto & alg : { g.kernel, g.base, doc.extension.middle }) {
            vector<Element> env(2, alg.zero());
            for (Element x = 0 ; x < alg.size() ; ++x) {
                env[1] = x;
                REQUIRE(evaluate(omega.term, alg, env) == x);
            }
        }
        CHECK(compute_y(g, { omega }) == c.y);
    }
}

TEST_CASE("check_conditions passes on genuine data")
{
    for (auto & cs : cases()) {
        auto [doc, c] = canonical_of(cs);
        auto conditions = check_conditions(extract_gamma(c, doc.axioms));
        CAPTURE(cs.extension);
        CHECK(conditions.passed());
        CHECK(conditions.section_in_y);
        CHECK(conditions.conditions.entries.size() == 4);
        CHECK(conditions.y == c.y);
    }
    CHECK(check_conditions(product_data()).passed());
}

TEST_CASE("rebuilding from gamma is the identity on Y")
{
    for (auto & cs : cases()) {
        auto [doc, c] = canonical_of(cs);
        auto rebuilt = build_extension_from_gamma(extract_gamma(c, doc.axioms));
        CAPTURE(cs.extension);
        CHECK(rebuilt.y == c.y);
        CHECK(rebuilt.extension.middle == c.y_algebra);
        CHECK(rebuilt.extension.inclusion == c.k_prime);
        CHECK(rebuilt.extension.projection == c.pi_base);
        CHECK(rebuilt.extension.section == c.iota_base);
        CHECK(rebuilt.witness == c.projection_witness());
    }
}

TEST_CASE("direct-product data rebuilds the product extension")
{
    auto rebuilt = build_extension_from_gamma(product_data());
    auto product = load_extension("n2_direct_product");
    CHECK(rebuilt.extension.middle == product.middle);
    CHECK(rebuilt.extension.inclusion == product.inclusion);
    CHECK(rebuilt.extension.projection == product.projection);
    CHECK(rebuilt.extension.section == product.section);
}

TEST_CASE("Heyting data rebuilds a three-element chain")
{
    auto [doc, c] = canonical_of({ "heyting3", "heyting" });
    auto rebuilt = build_extension_from_gamma(extract_gamma(c, doc.axioms));
    CHECK(rebuilt.y.size() == 3);
    CHECK(is_homomorphism(c.psi, doc.extension.middle, rebuilt.extension.middle).ok);
    CHECK(is_injective(c.psi));
    CHECK(is_surjective(c.psi));
    // witness with q2(0) = a: the section leaves the zero tuple at b = 0
    CHECK(c.iota_base(0) != c.position_in_y(0).value_or(99));
}

TEST_CASE("single-entry mutations of gamma_+ on the example")
{
    auto [doc, c] = canonical_of({ "example_a5", "monoid_xzy" });
    auto base = extract_gamma(c, doc.axioms);
    base.gamma_id.reset();
    size_t failed = 0, passed = 0;
    for (size_t entry = 0 ; entry < base.gamma[0].size() ; ++entry)
        for (size_t value = 0 ; value < 4 ; ++value) {
            if (value == base.gamma[0][entry])
                continue;
            auto g = base;
            g.gamma[0][entry] = value;
            auto conditions = check_conditions(g);
            if (! conditions.passed()) {
                ++failed;
                CHECK(! conditions.conditions.failures().empty());
                for (auto & r : conditions.conditions.entries)
                    if (! r.passed)
                        CHECK(! r.detail.empty());
                CHECK(code_of([&] { build_extension_from_gamma(g); }) == ErrorCode::ConditionsFailed);
                continue;
            }
            ++passed;
            // whatever survives the four conditions must rebuild into a witnessed split extension
            if (! conditions.section_in_y) {
                CHECK(code_of([&] { build_extension_from_gamma(g); }) == ErrorCode::IotaNotInY);
                continue;
            }
            auto rebuilt = build_extension_from_gamma(g);
            CHECK(validate_split_extension(rebuilt.extension).passed());
            CHECK(check_witness(rebuilt.extension, g.theta, rebuilt.witness).ok);
        }
    CHECK(failed > 0);
    MESSAGE("mutations failing a condition: " << failed << ", passing: " << passed);
}

TEST_CASE("a section outside Y is reported")
{
    auto [doc, c] = canonical_of({ "example_a5", "monoid_xzy" });
    auto g = extract_gamma(c, doc.axioms);
    g.section[1] = 3;
    auto conditions = check_conditions(g);
    CHECK(! conditions.section_in_y);
    auto code = code_of([&] { build_extension_from_gamma(g); });
    CHECK((code == ErrorCode::IotaNotInY || code == ErrorCode::ConditionsFailed));
}

TEST_CASE("shape validation")
{
    auto g = product_data();
    auto short_table = g;
    short_table.gamma[0].pop_back();
    CHECK(code_of([&] { validate_gamma_shape(short_table); }) == ErrorCode::ArityMismatch);

    auto wide = g;
    wide.gamma[0][3] = 2;
    CHECK(code_of([&] { validate_gamma_shape(wide); }) == ErrorCode::EntryOutOfRange);

    auto missing = g;
    missing.gamma.pop_back();
    CHECK(code_of([&] { validate_gamma_shape(missing); }) == ErrorCode::MissingTable);

    auto section = g;
    section.section.push_back(0);
    CHECK(code_of([&] { validate_gamma_shape(section); }) == ErrorCode::SizeMismatch);
}

TEST_CASE("axioms are checked on Y")
{
    auto g = product_data();
    g.axioms.push_back(parse_equation({ "x", "y" }, "(+ x y)", "x", g.base.signature()));
    auto conditions = check_conditions(g);
    CHECK(! conditions.conditions.find("axioms")->passed);
    CHECK(conditions.conditions.find("kernel_map_unique")->passed);
}
