#include "qforms/json_io.hpp"

#include "qforms/eisenstein_omega.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qforms;

TEST_CASE("series documents round-trip losslessly and byte-identically") {
    auto rng = testutil::make_rng(101);
    const QSeries s = testutil::random_series(rng, 24);
    const Json j = to_json(s);
    const QSeries back = qseries_from_json(j);
    CHECK(back.truncation() == s.truncation());
    CHECK(back.coefficients() == s.coefficients());
    CHECK(to_json(back).dump(2) == j.dump(2));
    // parsing the dumped text finds the same document
    CHECK(qseries_from_json(Json::parse(j.dump(2))).coefficients() == s.coefficients());
}

TEST_CASE("series documents carry reduced fraction strings") {
    QSeries s(2);
    s.set_coefficient(0, Rational(-1, 24));
    s.set_coefficient(2, Rational(4));
    const Json j = to_json(s);
    CHECK(j["truncation"] == 2);
    CHECK(j["coeffs"][0] == "-1/24");
    CHECK(j["coeffs"][1] == "0");
    CHECK(j["coeffs"][2] == "4");
}

TEST_CASE("polynomial documents list terms in basis order") {
    QMPoly p;
    p.add_term(Monomial{0, 0, 1}, Rational(2));     // weight 6
    p.add_term(Monomial{3, 0, 0}, Rational(1, 3));  // weight 6, g2-dominant: first
    p.add_term(Monomial{0, 1, 0}, Rational(-1));    // weight 4: before both
    const Json j = to_json(p);
    REQUIRE(j["terms"].size() == 3);
    CHECK(j["terms"][0]["monomial"] == Json::array({0, 1, 0}));
    CHECK(j["terms"][1]["monomial"] == Json::array({3, 0, 0}));
    CHECK(j["terms"][1]["coeff"] == "1/3");
    CHECK(j["terms"][2]["monomial"] == Json::array({0, 0, 1}));
    CHECK(qmpoly_from_json(j) == p);
}

TEST_CASE("polynomial round trip on random polynomials") {
    auto rng = testutil::make_rng(103);
    for (int round = 0; round < 10; ++round) {
        const QMPoly p = testutil::random_poly(rng, 18, 7);
        const Json j = to_json(p);
        CHECK(qmpoly_from_json(j) == p);
        CHECK(to_json(qmpoly_from_json(j)).dump() == j.dump());
    }
}

TEST_CASE("malformed documents are rejected with invalid_argument") {
    CHECK_THROWS_AS(qseries_from_json(Json::parse(R"({"coeffs": []})")), std::invalid_argument);
    CHECK_THROWS_AS(qseries_from_json(Json::parse(R"({"truncation": 1, "coeffs": ["1"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(qseries_from_json(Json::parse(R"({"truncation": -1, "coeffs": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(qseries_from_json(Json::parse(R"({"truncation": 0, "coeffs": ["x"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(qseries_from_json(Json::parse(R"({"truncation": 0, "coeffs": [1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(qseries_from_json(Json::parse("[]")), std::invalid_argument);
    CHECK_THROWS_AS(qmpoly_from_json(Json::parse(R"({"terms": [{"monomial": [1], "coeff": "1"}]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        qmpoly_from_json(Json::parse(R"({"terms": [{"monomial": [-1, 0, 0], "coeff": "1"}]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(qmpoly_from_json(Json::parse(R"({"terms": [{"monomial": [1, 0, 0]}]})")),
                    std::invalid_argument);
}

TEST_CASE("payload kind detection") {
    CHECK(is_qseries_json(Json::parse(R"({"truncation": 0, "coeffs": ["1"]})")));
    CHECK_FALSE(is_qmpoly_json(Json::parse(R"({"truncation": 0, "coeffs": ["1"]})")));
    CHECK(is_qmpoly_json(Json::parse(R"({"terms": []})")));
    CHECK_FALSE(is_qseries_json(Json::parse(R"({"terms": []})")));
    CHECK_FALSE(is_qseries_json(Json::parse("[]")));
}

TEST_CASE("decomposition document shape") {
    const Json j = to_json(decompose(QMPoly::g2() * QMPoly::g2()));
    REQUIRE(j["eisenstein_part"].size() == 2);
    CHECK(j["eisenstein_part"][0]["r"] == 0);
    CHECK(j["eisenstein_part"][0]["weight"] == 4);
    CHECK(j["eisenstein_part"][0]["coeff"] == "5/12");
    CHECK(j["eisenstein_part"][1]["coeff"] == "-1/2");
    CHECK(j["cusp_part"].empty());

    const Json d = to_json(decompose(delta_poly()));
    REQUIRE(d["cusp_part"].size() == 1);
    CHECK(d["cusp_part"][0]["weight"] == 12);
    CHECK(d["cusp_part"][0]["coords"] == Json::array({"1"}));
    CHECK(is_qseries_json(d["cusp_part"][0]["series"]));
}

TEST_CASE("verdict documents carry status-specific certificates") {
    const Json accept = to_json(omega_check(h_poly(6), 120));
    CHECK(accept["status"] == "ACCEPT_UP_TO");
    CHECK(accept["weight_bound"] == 6);
    CHECK(accept["verified_bound"] == 120);
    CHECK(accept["certificate"]["span_cutoff"] == 10);
    REQUIRE(accept["certificate"]["combination"].size() == 1);
    CHECK(accept["certificate"]["combination"][0]["k"] == 6);
    CHECK(accept["certificate"]["combination"][0]["n"] == 0);
    CHECK(accept["certificate"]["combination"][0]["coeff"] == "1");

    const Json coeff = to_json(omega_check(QMPoly::g4(), 50));
    CHECK(coeff["status"] == "REJECT_COEFFICIENT");
    CHECK(coeff["certificate"]["index"] == 2);
    CHECK(coeff["certificate"]["value"] == "9");
    CHECK(coeff["certificate"]["reason"] == "nonzero_at_prime");

    const Json cusp = to_json(omega_check(delta_poly(), 50));
    CHECK(cusp["status"] == "REJECT_CUSPIDAL");
    CHECK(cusp["certificate"]["weight"] == 12);
    CHECK(cusp["certificate"]["coord"] == "1");

    const Json span = to_json(omega_check(h_poly(6) + QMPoly::constant(Rational(1)), 50));
    CHECK(span["status"] == "REJECT_NOT_IN_SPAN");
    CHECK(span["certificate"].contains("residual_index"));
    CHECK(span["certificate"].contains("residual_value"));
}

TEST_CASE("recognition documents") {
    const Json hit = to_json(recognize(expand(QMPoly::g4(), 40), 4));
    CHECK(hit["matched"] == true);
    CHECK(qmpoly_from_json(hit["poly"]) == QMPoly::g4());

    QSeries off = expand(QMPoly::g4(), 40);
    off.set_coefficient(40, off.coefficient(40) + Rational(1));
    const Json miss = to_json(recognize(off, 4));
    CHECK(miss["matched"] == false);
    CHECK(miss["mismatch_index"] == 40);
    CHECK(miss["mismatch_value"] == "1");
}

TEST_CASE("search documents record the norm and integer coefficients") {
    const Json j = to_json(search_prime_detecting(4, 120, 60));
    CHECK(j["weight_bound"] == 4);
    CHECK(j["norm"] == "sum(v_i + 1)");
    CHECK(j["vectors"].size() == 15);
    CHECK(j["nullspace_dimension"].is_number_integer());
    for (const Json& c : j["candidates"]) {
        CHECK(c["coeffs"].size() == 15);
        CHECK(c["report"]["certified"] == false);
    }
}
