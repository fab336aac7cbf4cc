#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "padlog/padic.hpp"

using namespace padlog;

TEST_CASE("additive inverse cancels exactly to an inexact zero") {
    auto a = Padic::from_rational(5, mpq_class(37, 4), 12);
    auto s = a + (-a);
    REQUIRE(s.is_zero());
    REQUIRE(s.abs_precision() >= 12);
}

TEST_CASE("valuation is additive on multiplication by p") {
    auto u = Padic::from_integer(5, 7, 10);  // unit
    auto x = Padic::from_integer(5, 5, 10) * u;
    REQUIRE(x.valuation() == 1);
    REQUIRE(x.precision() == 10);
}

TEST_CASE("rational arithmetic matches the exact oracle") {
    // (3/7 + 4/7) * 7 = 7 exactly; p = 7 sees valuation 1
    mpq_class oracle = (mpq_class(3, 7) + mpq_class(4, 7)) * 7;
    REQUIRE(oracle == 7);
    auto a = Padic::from_rational(7, mpq_class(3, 7), 10);
    auto b = Padic::from_rational(7, mpq_class(4, 7), 10);
    auto s = (a + b) * Padic::from_integer(7, 7, 10);
    REQUIRE(s.valuation() == 1);
    REQUIRE(agree_to(s, Padic::from_integer(7, 7, 10), 10));
}

TEST_CASE("division") {
    auto a = Padic::from_integer(5, 12, 10);
    auto b = Padic::from_integer(5, 4, 10);
    REQUIRE(agree_to(a / b, Padic::from_integer(5, 3, 10), 10));
    REQUIRE_THROWS_AS(a / Padic::zero(5), division_by_zero);
    REQUIRE_THROWS_AS(a / Padic::zero_to(5, 8), precision_error);
}

TEST_CASE("prime mismatch is refused") {
    auto a = Padic::from_integer(5, 1, 10);
    auto b = Padic::from_integer(7, 1, 10);
    REQUIRE_THROWS_AS(a + b, prime_mismatch);
}

TEST_CASE("cancellation degrades precision honestly") {
    // a and a + p^8 agree to 8 digits; their difference must not pretend more
    auto a = Padic::from_integer(5, 3, 10);
    auto b = Padic::from_integer(5, 3 + 390625 * 625, 10);  // 3 + 5^8*...
    auto d = a - b;
    REQUIRE(d.valuation() >= 8);
    REQUIRE(d.abs_precision() <= 10);
}

TEST_CASE("iwasawa_log basics") {
    auto one = Padic::from_integer(7, 1, 12);
    REQUIRE(iwasawa_log(one).is_zero());

    auto u = Padic::from_integer(7, 3, 14);
    auto l = iwasawa_log(u);
    REQUIRE(l.valuation() >= 1);

    // homomorphism on a square
    auto l2 = iwasawa_log(u * u);
    REQUIRE((l2 - (l + l)).bounded_by(12));
}

TEST_CASE("iwasawa_log of 3 at p=7 is stable across precisions") {
    auto lo = iwasawa_log(Padic::from_integer(7, 3, 10));
    auto hi = iwasawa_log(Padic::from_integer(7, 3, 18));
    REQUIRE(agree_to(lo, hi, 9));
    REQUIRE(lo.valuation() >= 1);
}

TEST_CASE("log(uv) = log u + log v for random units") {
    std::mt19937_64 rng(20240517);
    const long delta = 2;  // documented precision-loss budget
    for (long p : {3L, 5L, 7L, 11L}) {
        for (int i = 0; i < 12; ++i) {
            long r = 14;
            mpz_class a = mpz_class(static_cast<unsigned long>(rng() % 100000 + 2));
            mpz_class b = mpz_class(static_cast<unsigned long>(rng() % 100000 + 2));
            if (a % p == 0) ++a;
            if (b % p == 0) ++b;
            auto u = Padic::from_integer(p, a, r);
            auto v = Padic::from_integer(p, b, r);
            auto lhs = iwasawa_log(u * v);
            auto rhs = iwasawa_log(u) + iwasawa_log(v);
            REQUIRE((lhs - rhs).bounded_by(r - delta));
        }
    }
}

TEST_CASE("log kills Teichmueller representatives") {
    // x with x^(p-1) = 1 mod high power: log(x) indistinguishable from 0
    long p = 5;
    // teichmueller lift of 2 mod 5^10 by iterating x -> x^5
    mpz_class m = pow_p(5, 12);
    mpz_class x = 2;
    for (int i = 0; i < 30; ++i) mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 5, m.get_mpz_t());
    auto t = Padic::from_integer(p, x, 12);
    REQUIRE(iwasawa_log(t).bounded_by(10));
}

TEST_CASE("balanced lift round-trips small rationals") {
    auto x = Padic::from_rational(7, mpq_class(-3, 5), 12);
    auto q = x.lift_balanced();
    auto y = Padic::from_rational(7, q, 12);
    REQUIRE(agree_to(x, y, 12));
}
