#include "ltv/torus_action.hpp"

#include "ltv/checks.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ltv;

TEST_CASE("oracle solves the first coefficients") {
    for (long q : {2L, 3L, 5L}) {
        FieldParams fp = FieldParams::from_q(q);
        OracleResult orc = oracle_a(2 * q + 4, fp);
        CHECK(orc.a[0].is_zero());
        CHECK(orc.a[1] == XPoly::x_pow(1));  // a_1 = E
        for (long n = 2; n <= q; ++n) CHECK(orc.a[n].is_zero());
    }
}

TEST_CASE("first action coefficient matches its closed form off the degenerate range") {
    for (long q : {3L, 5L}) {
        FieldParams fp = FieldParams::from_q(q);
        OracleResult orc = oracle_a(q + 2, fp);
        // a_{q+2} = pi^{-1} E (E^{q+1} - 1)
        XPoly want = (XPoly::x_pow(q + 2) - XPoly::x_pow(1)).scaled(PiScalar::pi_pow(-1));
        CHECK(orc.a[q + 2] == want);
    }
}

TEST_CASE("oracle vanishing off the residue class (property)") {
    for (long q : {2L, 3L}) {
        FieldParams fp = FieldParams::from_q(q);
        OracleResult orc = oracle_a(30, fp);
        for (long n = 2; n <= 30; ++n)
            if ((n - 1) % (q + 1) != 0) REQUIRE(orc.a[n].is_zero());
    }
}

TEST_CASE("recursion base cases") {
    FieldParams fp(5, 1, 1);
    TorusContext ctx(fp);
    CHECK(ctx.Q(0) == XPoly(1));
    CHECK(ctx.Q(1) == XPoly::x_pow(1) - XPoly(1));
    CHECK(ctx.Q(2) == display_Q(2, 5));
    CHECK(ctx.Q(3) == display_Q(3, 5));
    CHECK(ctx.b(0) == XPoly::x_pow(1));  // b_0 = E
}

TEST_CASE("closed forms hold exactly in the clean support regime") {
    for (long q : {7L, 8L, 9L}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext ctx(fp);
        for (long n = 1; n <= 4; ++n) REQUIRE(ctx.Q(n) == display_Q(n, q));
    }
}

TEST_CASE("small q picks up extra support pairs beyond the closed forms") {
    // the first extra pair is (m,l) = (0, q^2), entering at q <= n+1
    FieldParams fp2 = FieldParams::from_q(2);
    TorusContext c2(fp2);
    XPoly y = XPoly::x_pow(1) - XPoly(1);
    XPoly want = y - y.scaled(PiScalar::pi_pow(1));  // (1 - pi)(x - 1)
    CHECK(c2.Q(1) == want);
    FieldParams fp3 = FieldParams::from_q(3);
    TorusContext c3(fp3);
    CHECK(c3.Q(1) == display_Q(1, 3));
    CHECK(c3.Q(2) != display_Q(2, 3));
    // the deviation is pi-divisible, so all structure claims survive
    XPoly dev = c3.Q(2) - display_Q(2, 3);
    for (const auto& [j, c] : dev.coeffs()) REQUIRE(scalar_val(c, fp3) >= RationalVal(1));
}

TEST_CASE("oracle and recursion agree (property)") {
    // q = 4 exercises the prime-power path with p != q
    for (long q : {2L, 3L, 4L}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext ctx(fp);
        long kmax = q == 2 ? 8 : 6;
        OracleResult orc = oracle_a(1 + kmax * (q + 1), fp);
        for (long k = 0; k <= kmax; ++k)
            REQUIRE(b_in_E(ctx.Q(k), k, q) == orc.a[1 + k * (q + 1)]);
    }
}

TEST_CASE("structure claims are insensitive to the ramification index") {
    FieldParams fp(3, 1, 2);
    TorusContext ctx(fp);
    for (long n = 0; n <= 6; ++n) {
        REQUIRE(check_Q_structure(ctx, n).all_pass());
        if (n >= 1) REQUIRE(check_main1(ctx, n, RationalVal(1)).all_pass());
    }
}

TEST_CASE("structure checks pass for computed depth") {
    for (long q : {2L, 3L, 5L}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext ctx(fp);
        for (long n = 0; n <= 8; ++n) {
            Report r = check_Q_structure(ctx, n);
            INFO("q=" << q << " n=" << n << " " << r.first_failure());
            REQUIRE(r.all_pass());
        }
    }
}

TEST_CASE("convergence bounds") {
    FieldParams fp(3, 1, 1);
    TorusContext ctx(fp);
    long q = fp.q;
    // n=1, c=1: val(x-1 on |x-1|<=|pi|) - 1 = 0 >= -2/q
    CHECK(check_main1(ctx, 1, RationalVal(1)).all_pass());
    CHECK(check_main1(ctx, 2, RationalVal(1)).all_pass());
    for (long n = 1; n <= 10; ++n) {
        CHECK(check_main1(ctx, n, RationalVal(1)).all_pass());
        CHECK(check_main1(ctx, n, RationalVal(1, 2)).all_pass());
        CHECK(check_main1(ctx, n, RationalVal(q, q + 1)).all_pass());
    }
    CHECK_THROWS_AS(check_main1(ctx, 1, RationalVal(9, 10)), std::invalid_argument);
}

TEST_CASE("termwise disc stability holds at level zero only") {
    FieldParams fp(2, 1, 1);
    TorusContext ctx(fp);
    for (long s = 0; s <= 3; ++s) CHECK(check_disc_stability(ctx, 0, s).all_pass());
    for (long n = 1; n <= 10; ++n) CHECK(check_disc_stability(ctx, n, 0).all_pass());
    // with only |E| <= 1 as input the bound cannot certify deeper discs
    CHECK(!check_disc_stability(ctx, 1, 1).all_pass());
}
