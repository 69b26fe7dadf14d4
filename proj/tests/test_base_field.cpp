#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace relclass;

// log of the fundamental unit by direct search of x^2 - m y^2 = +-1 (+-4 when m = 1 mod 4)
static double pell_log(i64 m) {
    i64 k = m % 4 == 1 ? 4 : 1;
    for (i64 y = 1;; ++y)
        for (i64 s : {-k, k}) {
            i64 x2 = m * y * y + s;
            i64 x = isqrt(x2);
            if (x2 > 0 && x * x == x2) return std::log((x + y * std::sqrt((double)m)) / (k == 4 ? 2.0 : 1.0));
        }
}

TEST_CASE("rational field conventions") {
    Field Q = make_field(1);
    CHECK(Q.dF == 1);
    CHECK(Q.hF == 1);
    CHECK(Q.d0 == 0.0);
    CHECK(Q.elem(5).trace() == Rat(5));
    CHECK(Q.elem(-3).norm() == Rat(-3));
}

TEST_CASE("Q(sqrt5) data") {
    Field F = make_field(2, 5);
    CHECK(F.dF == 5);
    CHECK(F.omega().embed(0) == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    CHECK(F.hF == 1);
    CHECK(std::fabs(F.eps.norm().to_double()) == 1.0);
    CHECK(std::fabs(std::log(std::fabs(F.eps.embed(0)))) == doctest::Approx(pell_log(5)));
    CHECK(F.regulator == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)));
}

TEST_CASE("field construction rejects non-squarefree input") {
    CHECK_THROWS_AS(make_field(2, 12), NonSquarefree);
    CHECK_THROWS_AS(make_field(3, 5), DegreeUnsupported);
}

TEST_CASE("element arithmetic in Q(sqrt2)") {
    Field F = make_field(2, 2);
    FElem r2 = F.omega();
    CHECK(r2.trace() == Rat(0));
    CHECK((F.elem(3) + r2).norm() == Rat(7));
    CHECK_FALSE((F.elem(1) + r2).is_totally_positive());
    CHECK((F.elem(3) + r2).is_totally_positive());
}

TEST_CASE("regulators against the Pell equation") {
    for (i64 m : {2, 3, 6, 7, 13, 14, 19, 21}) {
        Field F = make_field(2, m);
        CAPTURE(m);
        CHECK(F.regulator == doctest::Approx(pell_log(m)));
        CHECK(F.d0 == doctest::Approx(std::sqrt(2.0) * F.regulator));
    }
}

TEST_CASE("prime factorization in Q(sqrt5)") {
    Field F = make_field(2, 5);
    auto r = F.factor_prime(5);
    REQUIRE(r.primes.size() == 1);
    CHECK(r.primes[0].e == 2);
    CHECK(r.primes[0].f == 1);
    CHECK(F.factor_prime(11).split());
    CHECK(F.factor_prime(2).inert());
    Field Q = make_field(1);
    auto s = Q.factor_prime(7);
    REQUIRE(s.primes.size() == 1);
    CHECK(s.primes[0].e == 1);
    CHECK(s.primes[0].f == 1);
}

TEST_CASE("splitting type follows the Kronecker symbol") {
    for (i64 m : {2, 3, 5, 13, 17}) {
        Field F = make_field(2, m);
        for (i64 p : primes_upto(200)) {
            auto st = F.factor_prime(p);
            int k = oracle::kronecker(F.dF, p);
            CAPTURE(m);
            CAPTURE(p);
            CHECK(st.split() == (k == 1));
            CHECK(st.inert() == (k == -1));
            CHECK(st.ramified() == (k == 0));
        }
    }
}

TEST_CASE("class numbers of base fields") {
    CHECK(make_field(1).hF == 1);
    CHECK(make_field(2, 5).hF == 1);
    CHECK(make_field(2, 10).hF == 2);
    CHECK(make_field(2, 15).hF == 2);
    CHECK(make_field(2, 79).hF == 3);
}

TEST_CASE("ideal products and norms are multiplicative") {
    oracle::Rng rng(11);
    for (i64 m : {2, 5, 10}) {
        Field F = make_field(2, m);
        auto ideals = F.ideals_upto(60);
        for (int k = 0; k < 40; ++k) {
            auto& a = ideals[rng.range(0, (i64)ideals.size() - 1)];
            auto& b = ideals[rng.range(0, (i64)ideals.size() - 1)];
            CHECK(F.mul(a, b).norm() == a.norm() * b.norm());
            CHECK(F.mul(a, F.inverse(a)) == F.unit_ideal());
        }
    }
}

TEST_CASE("ideal factorization reconstructs the ideal") {
    Field F = make_field(2, 10);
    for (auto& a : F.ideals_upto(80)) {
        FIdeal r = F.unit_ideal();
        for (auto& [P, e] : F.factor_ideal(a)) r = F.mul(r, F.pow(P.P, e));
        CHECK(r == a);
    }
}

TEST_CASE("ideal counts against the Dedekind zeta coefficients") {
    // number of ideals of norm k is sum over d | k of (dF / d)
    for (i64 m : {2, 5, 3}) {
        Field F = make_field(2, m);
        auto ideals = F.ideals_upto(100);
        std::vector<int> cnt(101, 0);
        for (auto& a : ideals) cnt[a.norm().p]++;
        for (i64 k = 1; k <= 100; ++k) {
            int expect = 0;
            for (i64 d = 1; d <= k; ++d)
                if (k % d == 0) expect += oracle::kronecker(F.dF, d);
            CAPTURE(k);
            CHECK(cnt[k] == expect);
        }
    }
}

TEST_CASE("local squares and generators") {
    Field F = make_field(2, 5);
    FElem x = F.elem(3, 1);
    FElem root;
    CHECK(F.is_square(x * x, &root));
    CHECK((root == x || root == -x));
    CHECK_FALSE(F.is_square(F.elem(2)));
    auto g = F.generator(F.principal(x));
    REQUIRE(g.has_value());
    CHECK(rabs(g->norm()) == rabs(x.norm()));
}

TEST_CASE("unit square index") {
    CHECK(make_field(1).unit_sq_index == 2);
    CHECK(make_field(2, 5).unit_sq_index == 4);
}

TEST_CASE("field json is stable") {
    Field F = make_field(2, 5);
    CHECK(field_json(F) == field_json(make_field(2, 5)));
    CHECK(field_json(F).find("\"dF\": 5") != std::string::npos);
}
