// Only the public C header here.
#include <wsx.h>

#include <doctest.h>

#include <cstring>
#include <set>
#include <string>
#include <vector>

namespace
{
    auto fixture(const std::string & relative) -> std::string
    {
        return std::string(WSX_FIXTURE_DIR) + "/" + relative;
    }

    auto load_theta(const char * name) -> wsx_theta *
    {
        wsx_theta * t = nullptr;
        REQUIRE(wsx_theta_load(fixture(std::string("theta/") + name + ".json").c_str(), &t) == WSX_OK);
        return t;
    }

    auto plus(const wsx_algebra * a, uint32_t x, uint32_t y) -> uint32_t
    {
        uint32_t args[] = { x, y };
        uint32_t r = 0;
        REQUIRE(wsx_algebra_apply(a, "+", args, 2, &r) == WSX_OK);
        return r;
    }
}

TEST_CASE("algebra handles")
{
    wsx_algebra * a = nullptr;
    REQUIRE(wsx_algebra_load(fixture("algebras/a5.json").c_str(), &a) == WSX_OK);
    CHECK(wsx_algebra_size(a) == 5);
    for (uint32_t x = 0 ; x < 5 ; ++x)
        CHECK(plus(a, wsx_algebra_zero(a), x) == x);

    uint32_t r = 0;
    uint32_t bad[] = { 0, 7 };
    CHECK(wsx_algebra_apply(a, "+", bad, 2, &r) == WSX_E_ENTRY_OUT_OF_RANGE);
    CHECK(wsx_algebra_apply(a, "+", bad, 1, &r) == WSX_E_ARITY_MISMATCH);
    CHECK(wsx_algebra_apply(a, "*", bad, 2, &r) == WSX_E_UNKNOWN_SYMBOL);
    wsx_algebra_free(a);

    wsx_algebra * inline_alg = nullptr;
    CHECK(wsx_algebra_parse(R"({"signature": {"ops": [{"name": "0", "arity": 0}], "constant": "0"},
        "size": 1, "tables": {"0": 0}})", &inline_alg) == WSX_OK);
    CHECK(wsx_algebra_size(inline_alg) == 1);
    wsx_algebra_free(inline_alg);

    CHECK(wsx_algebra_load(fixture("algebras/nope.json").c_str(), &a) == WSX_E_FILE_FORMAT);
    CHECK(std::strlen(wsx_last_error()) > 0);
    CHECK(wsx_algebra_parse("{", &a) == WSX_E_FILE_FORMAT);
    CHECK(wsx_algebra_load(nullptr, &a) == WSX_E_NULL_ARGUMENT);
}

TEST_CASE("witnesses through the C interface")
{
    wsx_extension * e = nullptr;
    REQUIRE(wsx_extension_load(fixture("extensions/example_a5.json").c_str(), &e) == WSX_OK);
    CHECK(std::strlen(wsx_last_error()) == 0);
    size_t x = 0, a = 0, b = 0;
    wsx_extension_sizes(e, &x, &a, &b);
    CHECK(x == 2);
    CHECK(a == 5);
    CHECK(b == 2);
    int valid = 0;
    CHECK(wsx_extension_is_valid(e, &valid) == WSX_OK);
    CHECK(valid == 1);

    auto theta = load_theta("monoid_xzy");
    wsx_options opts;
    wsx_options_default(&opts);
    uint64_t count = 0;
    int saturated = 1;
    REQUIRE(wsx_extension_count_witnesses(e, theta, &opts, &count, &saturated) == WSX_OK);
    CHECK(count == 6);
    CHECK(saturated == 0);

    // theta = x + (z + y) in A, with the kernel, projection and section of the fixture
    wsx_algebra * middle = nullptr;
    REQUIRE(wsx_algebra_load(fixture("algebras/a5.json").c_str(), &middle) == WSX_OK);
    const uint32_t k[] = { 0, 1 };
    const uint32_t p[] = { 0, 0, 1, 1, 1 };
    const uint32_t s[] = { 0, 2 };
    std::set<std::vector<uint32_t>> seen;
    for (uint64_t i = 0 ; i < count ; ++i) {
        std::vector<uint32_t> q(10);
        size_t n = 0;
        REQUIRE(wsx_extension_witness(e, theta, &opts, i, q.data(), q.size(), &n) == WSX_OK);
        CHECK(n == 2);
        for (uint32_t el = 0 ; el < 5 ; ++el)
            CHECK(plus(middle, k[q[el]], plus(middle, s[p[el]], k[q[5 + el]])) == el);
        CHECK(q[0] == 0);
        CHECK(q[5] == 0);
        seen.insert(q);
    }
    CHECK(seen.size() == 6);
    CHECK(seen.count({ 0, 0, 0, 0, 1, 0, 1, 0, 1, 0 }) == 1);

    std::vector<uint32_t> q(10);
    size_t n = 0;
    CHECK(wsx_extension_witness(e, theta, &opts, 6, q.data(), q.size(), &n) == WSX_E_ENTRY_OUT_OF_RANGE);
    CHECK(wsx_extension_witness(e, theta, &opts, 0, q.data(), 3, &n) == WSX_E_SIZE_MISMATCH);

    opts.normalize = 0;
    CHECK(wsx_extension_count_witnesses(e, theta, &opts, &count, &saturated) == WSX_OK);
    CHECK(count >= 6);

    int schreier = 1;
    CHECK(wsx_extension_is_schreier(e, theta, &opts, &schreier) == WSX_OK);
    CHECK(schreier == 0);

    const char * vars[] = { "x", "y", "z" };
    wsx_theta * broken = nullptr;
    REQUIRE(wsx_theta_create(vars, 3, "(+ x", &broken) == WSX_OK);
    CHECK(wsx_extension_count_witnesses(e, broken, &opts, &count, &saturated) == WSX_E_SYNTAX_ERROR);
    wsx_theta_free(broken);

    opts.budget = 1;
    CHECK(wsx_extension_count_witnesses(e, theta, &opts, &count, &saturated) == WSX_E_SEARCH_BUDGET_EXCEEDED);

    wsx_algebra_free(middle);
    wsx_theta_free(theta);
    wsx_extension_free(e);
}

TEST_CASE("commands and reports")
{
    auto theta = load_theta("monoid_xzy");
    wsx_options opts;
    wsx_options_default(&opts);
    auto ext = fixture("extensions/example_a5.json");

    wsx_report * r = nullptr;
    REQUIRE(wsx_cmd_check(ext.c_str(), theta, &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 0);
    CHECK(std::string(wsx_report_json(r)).find("\"schema_version\": 1") != std::string::npos);
    CHECK(std::string(wsx_report_text(r)).find("|A| = 5") != std::string::npos);
    CHECK(wsx_report_artifact(r) == nullptr);
    wsx_report_free(r);

    REQUIRE(wsx_cmd_canonicalize(ext.c_str(), theta, &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 0);
    REQUIRE(wsx_report_artifact(r) != nullptr);
    CHECK(std::string(wsx_report_artifact(r)).find("\"format\": \"wsx-canonical\"") != std::string::npos);
    wsx_report_free(r);

    REQUIRE(wsx_cmd_gamma_check(fixture("gamma/example_a5_mutated.json").c_str(), &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 1);
    wsx_report_free(r);

    REQUIRE(wsx_cmd_check(fixture("extensions/missing.json").c_str(), theta, &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 64);
    wsx_report_free(r);

    auto sum = load_theta("monoid_sum");
    REQUIRE(wsx_cmd_pullback(fixture("extensions/n2_direct_product.json").c_str(),
                fixture("homs/n2_x_n2_onto_n2.json").c_str(), sum, &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 0);
    wsx_extension * pulled = nullptr;
    REQUIRE(wsx_extension_parse(wsx_report_artifact(r), fixture("extensions").c_str(), &pulled) == WSX_OK);
    size_t x = 0, a = 0, b = 0;
    wsx_extension_sizes(pulled, &x, &a, &b);
    CHECK(b == 4);
    int valid = 0;
    CHECK(wsx_extension_is_valid(pulled, &valid) == WSX_OK);
    CHECK(valid == 1);
    wsx_extension_free(pulled);
    wsx_report_free(r);

    auto mul = load_theta("group_mul");
    REQUIRE(wsx_cmd_product_check(fixture("algebras/z3.json").c_str(), mul, &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 0);
    wsx_report_free(r);

    REQUIRE(wsx_cmd_morphism_check(fixture("morphisms/product_onto_trivial.json").c_str(), sum, &opts, &r) == WSX_OK);
    CHECK(wsx_report_exit_code(r) == 0);
    wsx_report_free(r);

    CHECK(wsx_cmd_check(nullptr, theta, &opts, &r) == WSX_E_NULL_ARGUMENT);
    CHECK(wsx_cmd_check(ext.c_str(), nullptr, &opts, &r) == WSX_E_NULL_ARGUMENT);
    wsx_theta_free(mul);
    wsx_theta_free(sum);
    wsx_theta_free(theta);
}

TEST_CASE("status names")
{
    CHECK(std::string(wsx_status_name(WSX_OK)) == "Ok");
    CHECK(std::string(wsx_status_name(WSX_E_IOTA_NOT_IN_Y)) == "IotaNotInY");
    CHECK(std::string(wsx_status_name(WSX_E_NULL_ARGUMENT)) == "NullArgument");
    CHECK(std::string(wsx_status_name(static_cast<wsx_status>(999))) == "Unknown");
}
