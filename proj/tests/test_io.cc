#include "support.hh"

#include <wsx/error.hh>

#include <doctest.h>

using namespace wsx;
using namespace wsx::test;
using io::Json;
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

    auto n2_json() -> Json
    {
        return io::parse_json(R"({"signature": {"ops": [{"name": "+", "arity": 2}, {"name": "0", "arity": 0}],
            "constant": "0"}, "size": 2, "tables": {"+": [[0, 1], [1, 1]], "0": 0}})");
    }
}

TEST_CASE("algebra files")
{
    auto a = io::algebra_from_json(n2_json(), ".");
    CHECK(a == load_algebra("n2"));

    auto named = n2_json();
    named["element_names"] = { "zero", "one" };
    CHECK(io::algebra_from_json(named, ".") == a);

    auto badly_named = n2_json();
    badly_named["element_names"] = { "zero" };
    CHECK(code_of([&] { io::algebra_from_json(badly_named, "."); }) == ErrorCode::FileFormat);

    auto extra = n2_json();
    extra["colour"] = "red";
    CHECK(code_of([&] { io::algebra_from_json(extra, "."); }) == ErrorCode::FileFormat);

    auto flat = n2_json();
    flat["tables"]["+"] = { 0, 1, 1, 1 };
    CHECK(code_of([&] { io::algebra_from_json(flat, "."); }) == ErrorCode::ArityMismatch);

    auto missing = n2_json();
    missing["tables"].erase("0");
    CHECK(code_of([&] { io::algebra_from_json(missing, "."); }) == ErrorCode::MissingTable);

    auto range = n2_json();
    range["tables"]["+"][1][1] = 2;
    CHECK(code_of([&] { io::algebra_from_json(range, "."); }) == ErrorCode::EntryOutOfRange);

    auto negative = n2_json();
    negative["tables"]["+"][1][1] = -1;
    CHECK(code_of([&] { io::algebra_from_json(negative, "."); }) == ErrorCode::EntryOutOfRange);

    auto unknown = n2_json();
    unknown["tables"]["*"] = 0;
    CHECK(code_of([&] { io::algebra_from_json(unknown, "."); }) == ErrorCode::UnknownSymbol);

    CHECK(code_of([&] { io::parse_json("{\"size\": "); }) == ErrorCode::FileFormat);
    CHECK(code_of([&] { io::read_file(fixture("no/such/file.json")); }) == ErrorCode::FileFormat);
}

TEST_CASE("algebra serialization round trips")
{
    for (auto & name : algebra_names()) {
        auto a = load_algebra(name);
        auto json = io::algebra_to_json(a);
        CHECK(io::algebra_from_json(json, ".") == a);
        auto text = io::dump(json);
        CHECK(io::dump(io::parse_json(text)) == text);
    }
}

TEST_CASE("dump layout")
{
    auto text = io::dump(io::parse_json(R"({"b": [1, 2], "a": {"c": [[0], []]}, "e": {}})"));
    CHECK(text == "{\n  \"b\": [1, 2],\n  \"a\": {\n    \"c\": [\n      [0],\n      []\n    ]\n  },\n  \"e\": {}\n}\n");
}

TEST_CASE("extension files")
{
    for (auto & cs : cases()) {
        auto doc = load_document(cs.extension);
        auto json = io::extension_to_json(doc.extension, doc.witness ? &*doc.witness : nullptr, doc.axioms);
        auto again = io::extension_from_json(json, ".");
        CHECK(again.extension.kernel == doc.extension.kernel);
        CHECK(again.extension.middle == doc.extension.middle);
        CHECK(again.extension.base == doc.extension.base);
        CHECK(again.extension.inclusion == doc.extension.inclusion);
        CHECK(again.extension.projection == doc.extension.projection);
        CHECK(again.extension.section == doc.extension.section);
        CHECK(again.witness == doc.witness);
        CHECK(again.axioms.size() == doc.axioms.size());
        CHECK(io::dump(io::extension_to_json(again.extension, again.witness ? &*again.witness : nullptr, again.axioms))
                == io::dump(json));
    }

    auto json = io::parse_json(io::read_file(fixture("extensions/example_a5.json")));
    json["witness"]["n"] = 3;
    CHECK(code_of([&] { io::extension_from_json(json, fixture("extensions")); }) == ErrorCode::FileFormat);
}

TEST_CASE("theta, hom and morphism files")
{
    CHECK(code_of([] { io::theta_from_json(io::parse_json(R"({"vars": ["x"]})")); }) == ErrorCode::FileFormat);
    CHECK(code_of([] { io::theta_from_json(io::parse_json(R"({"vars": ["x", 1], "term": "x"})")); })
            == ErrorCode::FileFormat);
    auto t = io::theta_from_json(io::parse_json(R"j({"vars": ["x", "y"], "term": "(+ x y)"})j"));
    CHECK(to_sexpr(t.bind(load_algebra("n2").signature()).term()) == "(+ x y)");

    auto hom = io::hom_from_json(io::parse_json(io::read_file(fixture("homs/n2_x_n2_onto_n2.json"))), fixture("homs"), 2);
    CHECK(hom.domain == load_algebra("n2_x_n2"));
    CHECK(hom.map.values() == vector<Element>{ 0, 1, 0, 1 });

    auto m = io::morphism_from_json(io::parse_json(io::read_file(fixture("morphisms/product_onto_trivial.json"))),
            fixture("morphisms"));
    CHECK(validate_morphism(m).passed());
}

TEST_CASE("canonical files carry the gamma data")
{
    for (auto & cs : cases()) {
        auto doc = load_document(cs.extension);
        auto theta = load_theta(cs.theta, doc.extension.middle.signature());
        auto c = build_canonical(doc.extension, theta, *doc.witness);
        auto verification = verify_isomorphism(doc.extension, c, *doc.witness);
        auto text = io::dump(io::canonical_to_json(c, doc.axioms, verification));
        CHECK(text == io::dump(io::canonical_to_json(c, doc.axioms, verification)));

        auto read = io::gamma_from_json(io::parse_json(text), ".");
        auto expected = extract_gamma(c, doc.axioms);
        CHECK(read.kernel == expected.kernel);
        CHECK(read.base == expected.base);
        CHECK(read.theta.term() == expected.theta.term());
        CHECK(read.gamma == expected.gamma);
        CHECK(read.section == expected.section);
        CHECK(read.gamma_id == expected.gamma_id);
        CHECK(read.axioms.size() == expected.axioms.size());
    }
}

TEST_CASE("shipped canonical files match a fresh build byte for byte")
{
    vector<std::pair<Case, string>> shipped{ { { "example_a5", "monoid_xzy" }, "gamma/example_a5_canonical.json" },
        { { "n2_direct_product", "monoid_sum" }, "gamma/n2_product_canonical.json" } };
    for (auto & [cs, file] : shipped) {
        auto doc = load_document(cs.extension);
        auto theta = load_theta(cs.theta, doc.extension.middle.signature());
        auto c = build_canonical(doc.extension, theta, *doc.witness);
        auto text = io::dump(io::canonical_to_json(c, doc.axioms, verify_isomorphism(doc.extension, c, *doc.witness)));
        CHECK(text == io::read_file(fixture(file)));
    }
}

TEST_CASE("gamma file errors")
{
    auto json = io::parse_json(io::read_file(fixture("gamma/example_a5_canonical.json")));
    auto bad_leaf = json;
    bad_leaf["gamma"]["+"][0][0] = { 0 };
    CHECK(code_of([&] { io::gamma_from_json(bad_leaf, "."); }) == ErrorCode::FileFormat);

    auto no_table = json;
    no_table["gamma"].erase("0");
    CHECK(code_of([&] { io::gamma_from_json(no_table, "."); }) == ErrorCode::MissingTable);

    auto wrong_n = json;
    wrong_n["n"] = 1;
    CHECK(code_of([&] { io::gamma_from_json(wrong_n, "."); }) == ErrorCode::FileFormat);

    auto out_of_range = json;
    out_of_range["section"][1] = { 0, 2 };
    CHECK(code_of([&] { io::gamma_from_json(out_of_range, "."); }) == ErrorCode::EntryOutOfRange);
}
