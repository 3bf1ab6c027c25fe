#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drq/model.hpp"
#include "fixtures.hpp"

using namespace drq;

static const char* FIX_B_JSON = R"({
  "name": "heisenberg-fix-b",
  "dim": 3,
  "cartan_dim": 1,
  "basis": ["h", "e1", "e2"],
  "brackets": [{"i": 2, "j": 3, "k": 1, "c": "1"}],
  "r": [{"i": 2, "j": 3, "coeff": "1/l1"}],
  "gauge": {"log": [{"a": 2, "coeff": "l1"}], "nilpotency": 2},
  "base_point": ["1"]
})";

TEST_CASE("model load and validation") {
    Model m = parse_model(FIX_B_JSON);
    CHECK(m.algebra->dim() == 3);
    CHECK(m.algebra->validate().ok());
    REQUIRE(m.r.has_value());
    CHECK(cdybe_residual(*m.r).is_zero());
    REQUIRE(m.gauge.has_value());
    CHECK(m.gauge->nilpotency == 2);
    REQUIRE(m.base_point.has_value());
    CHECK((*m.base_point)[0] == GaussianRational(1));
}

TEST_CASE("model schema errors carry field paths") {
    /* [h,h] = e is rejected by the antisymmetry guard */
    const char* bad = R"({"dim": 2, "cartan_dim": 1,
        "brackets": [{"i": 1, "j": 1, "k": 2, "c": "1"}]})";
    CHECK_THROWS_WITH_AS(parse_model(bad),
                         doctest::Contains("brackets[0]"), DomainError);

    /* r entry out of range names the entry */
    const char* badr = R"({"dim": 2, "cartan_dim": 1, "r": [{"i": 1, "j": 5, "coeff": "1"}]})";
    CHECK_THROWS_WITH_AS(parse_model(badr), doctest::Contains("r[0]"), DomainError);

    /* Jacobi violation is embedded in the diagnostics */
    const char* nj = R"({"dim": 3, "cartan_dim": 0, "brackets": [
        {"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 1, "j": 3, "k": 1, "c": "1"}]})";
    CHECK_THROWS_WITH_AS(parse_model(nj), doctest::Contains("jacobi"), DomainError);

    /* expression errors carry positions through the field message */
    const char* badc = R"({"dim": 2, "cartan_dim": 1, "r": [{"i": 1, "j": 2, "coeff": "1/(l1-l1)"}]})";
    CHECK_THROWS_AS(parse_model(badc), DomainError);
}

TEST_CASE("serialize-load round trip is canonical") {
    Model m = parse_model(FIX_B_JSON);
    std::string s1 = serialize_model(m);
    Model m2 = parse_model(s1);
    std::string s2 = serialize_model(m2);
    CHECK(s1 == s2);
    CHECK(m2.r->r == m.r->r);
}
