#include "ltv/decomposition.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ltv;

TEST_CASE("shifted multinomials") {
    MultiIndex2 r;
    r.set(0, 0, 1);
    CHECK(shifted_multinomial(1, 1, r, 2) == 1);  // (1+2)!/(1+2)! = 1

    MultiIndex2 r2;
    r2.set(0, 0, 1);
    r2.set(1, 1, 1);
    CHECK(shifted_multinomial(2, 1, r2, 2) == 4);  // 4!/(3! 1!)

    MultiIndex2 deg;
    deg.set(0, 0, 5);
    CHECK(shifted_multinomial(5, 2, deg, 3) == 1);  // everything in the shifted slot

    CHECK_THROWS_AS(shifted_multinomial(3, 1, r2, 2), std::invalid_argument);  // |r| != n
}

TEST_CASE("multinomial congruence (exhaustive small ranges)") {
    for (auto [p, nmax] : std::vector<std::pair<long, long>>{{2, 8}, {3, 6}}) {
        long q = p;
        for (long n = 1; n <= nmax; ++n) {
            long t = detail::floor_log(n, q) + 1;
            std::vector<long> parts;
            auto rec = [&](auto&& self, long rem, long maxpart) -> void {
                if (rem == 0) {
                    for (size_t idx = 0; idx <= parts.size(); ++idx) {
                        MultiIndex2 mi;
                        long slot = 1;
                        for (size_t i = 0; i < parts.size(); ++i) {
                            if (i == idx)
                                mi.set(0, 0, parts[i]);
                            else {
                                mi.set(slot, slot, parts[i]);
                                ++slot;
                            }
                        }
                        REQUIRE(binom_congruence_check(n, t, mi, p, q));
                        if (idx == parts.size()) break;
                    }
                    return;
                }
                for (long v = std::min(rem, maxpart); v >= 1; --v) {
                    parts.push_back(v);
                    self(self, rem - v, v);
                    parts.pop_back();
                }
            };
            rec(rec, n, n);
        }
    }
}

TEST_CASE("first layers") {
    FieldParams fp(3, 1, 1);
    TorusContext tor(fp);
    DecompContext dec(tor);
    CHECK(dec.Qns(0, 0) == XPoly(1));
    CHECK(dec.Qns(1, 1) == XPoly::x_pow(1) - XPoly(1));
    CHECK(dec.Qns(1, 0).is_zero());
}

TEST_CASE("remainder layer vanishes for 2 <= n <= q-2") {
    FieldParams fp(5, 1, 1);
    TorusContext tor(fp);
    DecompContext dec(tor);
    CHECK(dec.Qns(2, 0).is_zero());
    CHECK(dec.Qns(3, 0).is_zero());
}

TEST_CASE("layer sum and integrality (property)") {
    for (long q : {2L, 3L}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext tor(fp);
        DecompContext dec(tor);
        for (long n = 0; n <= 6; ++n) {
            REQUIRE(check_sum_consistency(dec, n).all_pass());
            REQUIRE(check_integrality(dec, n).all_pass());
        }
    }
}

TEST_CASE("vanishing order bounds and equalities") {
    FieldParams fp(3, 1, 1);
    TorusContext tor(fp);
    DecompContext dec(tor);
    long q = fp.q;

    // (1,1): ord = 1 = R(1), the first T-number equality
    CHECK(ord_at_one(dec.Qns(1, 1), OrdMode::exact, fp) == 1);

    // (2,1): bound R(1) = 1
    CHECK(ord_bound_arg(2, 1, q) == 1);
    CHECK(ord_at_one(dec.Qns(2, 1), OrdMode::mod_pi, fp) >= 1);

    // (T_1, T_1) = (4, 4): ord = R(4) = 3
    long T1 = t_sum(1, q);
    CHECK(ord_at_one(dec.Qns(T1, T1), OrdMode::mod_pi, fp) == r_func(T1, q));
    CHECK(ord_at_one(dec.Qns(T1, T1), OrdMode::exact, fp) == r_func(T1, q));

    for (long n = 0; n <= 6; ++n)
        for (long s = 0; s <= n; ++s) {
            Report r = check_prop_ord(dec, n, s);
            INFO("(n,s)=(" << n << "," << s << "): " << r.first_failure());
            REQUIRE(r.all_pass());
        }
}

TEST_CASE("deep equality for q = 2 at T_2 = 7") {
    FieldParams fp(2, 1, 1);
    TorusContext tor(fp);
    DecompContext dec(tor);
    CHECK(ord_at_one(dec.Qns(7, 7), OrdMode::mod_pi, fp) == 4);
    CHECK(ord_at_one(dec.Qns(7, 7), OrdMode::exact, fp) == 4);
}

TEST_CASE("support symmetry under the top-digit exchange") {
    for (long q : {2L, 3L}) {
        Report r = check_support_symmetry(2 * detail::ipow(q, 3), q);
        INFO(r.first_failure());
        REQUIRE(r.all_pass());
    }
}

TEST_CASE("layer table rejects bad indices") {
    FieldParams fp(3, 1, 1);
    TorusContext tor(fp);
    DecompContext dec(tor);
    CHECK_THROWS_AS(dec.Qns(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(dec.Qns(-1, 0), std::invalid_argument);
}
