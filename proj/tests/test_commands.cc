#include "support.hh"

#include <wsx/commands.hh>

#include <doctest.h>

#include <fstream>

using namespace wsx;
using namespace wsx::test;
using std::string;

namespace
{
    auto theta(const string & name) -> io::ThetaText
    {
        return io::theta_from_json(io::parse_json(io::read_file(fixture("theta/" + name + ".json"))));
    }

    auto ext(const string & name) -> std::filesystem::path
    {
        return fixture("extensions/" + name + ".json");
    }

    auto scratch(const string & name, const string & contents) -> std::filesystem::path
    {
        auto path = std::filesystem::temp_directory_path() / ("wsx_test_" + name);
        std::ofstream(path) << contents;
        return path;
    }
}

TEST_CASE("check on the five-element example")
{
    auto r = run_check(ext("example_a5"), theta("monoid_xzy"), {});
    CHECK(r.exit_code == exit_code::ok);
    CHECK(r.report["schema_version"] == 1);
    CHECK(r.report["status"] == "weakly_schreier");
    CHECK(r.report["witnesses"]["count"] == 6);
    CHECK(r.report["witnesses"]["list"].size() == 6);
    CHECK(r.report["sizes"]["A"] == 5);
    CHECK(r.report["sizes"]["X_times_B"] == 4);
    CHECK(r.text.find("|A| = 5, |X×B| = 4") != string::npos);
    CHECK(r.report["given_witness"]["ok"] == true);

    CommandOptions capped;
    capped.limit = 2;
    auto c = run_check(ext("example_a5"), theta("monoid_xzy"), capped);
    CHECK(c.report["witnesses"]["count"] == 6);
    CHECK(c.report["witnesses"]["listed"] == 2);

    auto sum = run_check(ext("example_a5"), theta("monoid_sum"), {});
    CHECK(sum.exit_code == exit_code::negative);
    CHECK(sum.report["status"] == "no_witness");
    CHECK(sum.text.find("no decomposition of a = 3") != string::npos);
}

TEST_CASE("loading errors are usage errors, later ones are invalid input")
{
    auto malformed = run_check(fixture("../tests/data/malformed.json"), theta("monoid_xzy"), {});
    CHECK(malformed.exit_code == exit_code::usage);
    CHECK(malformed.report["status"] == "error");

    auto missing = run_check(ext("no_such_extension"), theta("monoid_xzy"), {});
    CHECK(missing.exit_code == exit_code::usage);

    auto bad_term = run_check(ext("example_a5"), { { "x", "y", "z" }, "(+ x" }, {});
    CHECK(bad_term.exit_code == exit_code::usage);
    CHECK(bad_term.report["error"]["code"] == "SyntaxError");

    auto bad_section = run_check(fixture("../tests/data/bad_section.json"), theta("monoid_xzy"), {});
    CHECK(bad_section.exit_code == exit_code::invalid);
}

TEST_CASE("budget exhaustion")
{
    CommandOptions tight;
    tight.limits.node_budget = 1;
    auto r = run_check(ext("heyting3"), theta("heyting"), tight);
    CHECK(r.exit_code == exit_code::budget);
    CHECK(r.report["error"]["code"] == "SearchBudgetExceeded");
}

TEST_CASE("canonicalize output feeds gamma-check")
{
    for (auto & cs : cases()) {
        CAPTURE(cs.extension);
        auto r = run_canonicalize(ext(cs.extension), theta(cs.theta), {});
        REQUIRE(r.exit_code == exit_code::ok);
        REQUIRE(r.artifact);
        CHECK(*r.artifact == *run_canonicalize(ext(cs.extension), theta(cs.theta), {}).artifact);
        CHECK(io::dump(r.report) == io::dump(run_canonicalize(ext(cs.extension), theta(cs.theta), {}).report));

        auto g = run_gamma_check(scratch(cs.extension + "_canonical.json", *r.artifact), {});
        CHECK(g.exit_code == exit_code::ok);
        CHECK(g.report["section_in_Y"] == true);
        REQUIRE(g.artifact);

        auto rebuilt = scratch(cs.extension + "_rebuilt.json", *g.artifact);
        CHECK(run_check(rebuilt, theta(cs.theta), {}).exit_code == exit_code::ok);
    }

    auto r = run_canonicalize(ext("example_a5"), theta("monoid_xzy"), {});
    auto & y = r.report["Y"];
    REQUIRE(y.size() == 5);
    for (std::size_t i = 1 ; i < y.size() ; ++i)
        CHECK(y[i - 1] < y[i]);
}

TEST_CASE("gamma-check rejects the mutated table")
{
    auto r = run_gamma_check(fixture("gamma/example_a5_mutated.json"), {});
    CHECK(r.exit_code == exit_code::negative);
    CHECK(r.report["status"] == "conditions_failed");
    CHECK(! r.artifact);
}

TEST_CASE("pullback artifacts are valid extensions")
{
    for (auto hom : { "n2_identity", "n2_x_n2_onto_n2", "trivial_into_n2" }) {
        CAPTURE(hom);
        auto r = run_pullback(ext("n2_direct_product"), fixture(string("homs/") + hom + ".json"), theta("monoid_sum"), {});
        REQUIRE(r.exit_code == exit_code::ok);
        REQUIRE(r.artifact);
        auto path = scratch(string(hom) + "_pullback.json", *r.artifact);
        auto check = run_check(path, theta("monoid_sum"), {});
        CHECK(check.exit_code == exit_code::ok);
        CHECK(check.report["given_witness"]["ok"] == true);
    }
    auto swap = run_pullback(ext("n2_direct_product"), fixture("../tests/data/swap_hom.json"), theta("monoid_sum"), {});
    CHECK(swap.exit_code == exit_code::invalid);
}

TEST_CASE("product and morphism checks")
{
    CHECK(run_product_check(fixture("algebras/n2.json"), theta("monoid_sum"), {}).exit_code == exit_code::ok);
    CHECK(run_product_check(fixture("algebras/s3.json"), theta("group_mul"), {}).exit_code == exit_code::ok);
    auto magma = run_product_check(fixture("algebras/left_unital_magma.json"), theta("magma_mul"), {});
    CHECK(magma.exit_code == exit_code::negative);
    CHECK(magma.report["obstruction"] == 1);

    auto m = run_morphism_check(fixture("morphisms/example_identity.json"), theta("monoid_xzy"), {});
    CHECK(m.exit_code == exit_code::ok);
    CHECK(run_morphism_check(fixture("morphisms/product_onto_trivial.json"), theta("monoid_sum"), {}).exit_code
            == exit_code::ok);
}
