#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "padlog/series.hpp"

using namespace padlog;

namespace {
Padic num(long p, long n, long prec = 16) { return Padic::from_integer(p, n, prec); }
}  // namespace

TEST_CASE("recenter (t-1) dt/t gives the alternating geometric expansion") {
    FormLaurentData d;
    d.t_coeffs[1] = 1;
    d.t_coeffs[0] = -1;
    auto w = recenter(d, 5, 16, 12);
    // w/(w+1) = sum_{k>=1} (-1)^(k-1) w^k
    REQUIRE(w.f.coeff(0).is_zero());
    for (long k = 1; k <= 16; ++k)
        REQUIRE(agree_to(w.f.coeff(k), num(5, k % 2 ? 1 : -1), 12));
    for (long k = 1; k <= 16; ++k) REQUIRE(w.f.coeff(-k).is_zero());
}

TEST_CASE("recenter dt/(t-1) gives dw/w exactly") {
    FormLaurentData d;
    d.t_coeffs[0] = 1;
    d.u_coeffs[1] = 1;
    auto w = recenter(d, 5, 16, 12);
    REQUIRE(agree_to(w.f.coeff(-1), num(5, 1), 12));
    for (long k = -16; k <= 16; ++k) {
        if (k == -1) continue;
        REQUIRE(w.f.coeff(k).is_zero());
    }
}

TEST_CASE("recenter of f = 1 is (w+1)^{-1} dw") {
    auto w = omega0(5, 10, 12);
    for (long k = 0; k <= 10; ++k)
        REQUIRE(agree_to(w.f.coeff(k), num(5, k % 2 ? -1 : 1), 12));
}

TEST_CASE("recenter refuses degrees beyond the window") {
    FormLaurentData d;
    d.t_coeffs[20] = 1;
    REQUIRE_THROWS_AS(recenter(d, 5, 10, 12), error);
}

TEST_CASE("residues") {
    REQUIRE(agree_to(res_disk1(omega1(5, 12, 12)), num(5, 1), 12));
    REQUIRE(res_disk1(omega0(5, 12, 12)).is_zero());

    // the Frobenius pullback of dt/(t-1) has residue p over the whole disk
    // D(1): all p roots of t^p - 1 lie inside it
    for (long p : {3L, 5L, 7L}) {
        auto w1p = omega1prime(p, 24, 12);
        REQUIRE(agree_to(res_disk1(w1p), num(p, p), 10));
    }
}

TEST_CASE("omega1prime coefficients decay") {
    auto w = omega1prime(5, 32, 14);
    REQUIRE(w.f.band_estimate() >= 5);
    for (long k = 1; k <= 32; ++k) REQUIRE(w.f.coeff(k).is_zero());  // pure u-side
}

TEST_CASE("primitive on monomials") {
    long p = 5, n = 10;
    AnnulusElement f(p, n);
    f.set_coeff(0, num(p, 1));  // dw
    REQUIRE(agree_to(primitive(AnnulusForm{f}).coeff(1), num(p, 1), 12));

    AnnulusElement g(p, n);
    g.set_coeff(-2, num(p, 1));  // w^{-2} dw
    REQUIRE(agree_to(primitive(AnnulusForm{g}).coeff(-1), num(p, -1), 12));

    AnnulusElement h(p, n);
    h.set_coeff(2, num(p, 3));  // 3 w^2 dw
    REQUIRE(agree_to(primitive(AnnulusForm{h}).coeff(3), num(p, 1), 12));
}

TEST_CASE("primitive refuses a nonzero residue") {
    AnnulusElement f(5, 8);
    f.set_coeff(-1, num(5, 2));
    REQUIRE_THROWS_AS(primitive(AnnulusForm{f}), residue_error);
}

TEST_CASE("primitive then differentiation is the identity inside the window") {
    std::mt19937_64 rng(7);
    long p = 5, n = 12;
    AnnulusElement f(p, n);
    for (long k = -n; k <= n; ++k) {
        if (k == -1) continue;
        f.set_coeff(k, num(p, static_cast<long>(rng() % 200) - 100));
    }
    auto g = primitive(AnnulusForm{f}).derivative();
    for (long k = -n + 1; k <= n - 1; ++k) REQUIRE(agree_to(g.coeff(k), f.coeff(k), 10));
}

TEST_CASE("res of an exact differential vanishes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        AnnulusElement f(7, 9);
        for (long k = -9; k <= 9; ++k) f.set_coeff(k, num(7, static_cast<long>(rng() % 500) - 250));
        REQUIRE(res_disk1(AnnulusForm{f.derivative()}).is_zero());
    }
}

TEST_CASE("evaluate_annulus basics") {
    long p = 5, n = 10;
    auto one = AnnulusElement::one(p, n, 12);
    REQUIRE(agree_to(evaluate_annulus(one, num(p, 3)), num(p, 1), 12));

    AnnulusElement w(p, n);
    w.set_coeff(1, num(p, 1));
    // f = w at t = 0, i.e. w = -1
    REQUIRE(agree_to(evaluate_annulus(w, Padic::zero(p)), num(p, -1), 12));

    REQUIRE_THROWS_AS(evaluate_annulus(one, num(p, 6)), bad_reduction);  // |x-1| < 1
}

TEST_CASE("evaluating the disk-side geometric series of 1/t reports no false digits") {
    // 1/t = sum (-1)^k w^k does not converge on |w| = 1; the tail policy must
    // cap the precision at 0, making the comparison with 1/2 vacuously true
    long p = 5, n = 20;
    AnnulusElement f(p, n);
    for (long k = 0; k <= n; ++k) f.set_coeff(k, num(p, k % 2 ? -1 : 1));
    auto v = evaluate_annulus(f, num(p, 2));
    REQUIRE(v.abs_precision() <= 0);
    REQUIRE((v - Padic::from_rational(p, mpq_class(1, 2), 12)).bounded_by(v.abs_precision()));
}

TEST_CASE("evaluation is a ring homomorphism within the tail estimate") {
    // honest decaying series: coefficients with valuation ~ |k|/2
    std::mt19937_64 rng(23);
    long p = 5, n = 16;
    auto mk = [&]() {
        AnnulusElement f(p, n);
        for (long k = -n; k <= n; ++k) {
            long v = std::abs(k) / 2;
            long u = static_cast<long>(rng() % 20) + 1;
            if (u % p == 0) ++u;
            f.set_coeff(k, num(p, u, 14) * num(p, 1, 14).pow(0) *
                                Padic::from_rational(p, mpq_class(pow_p(p, v)), 14));
        }
        return f;
    };
    auto f = mk(), g = mk();
    auto x = num(p, 3);
    auto lhs = evaluate_annulus(f * g, x);
    auto rhs = evaluate_annulus(f, x) * evaluate_annulus(g, x);
    long bound = std::min((f * g).band_estimate(), lhs.abs_precision());
    REQUIRE((lhs - rhs).bounded_by(std::min(bound, rhs.abs_precision())));
}
