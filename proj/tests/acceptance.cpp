// Acceptance suite: ten integration criteria, each printed as one PASS/FAIL
// line. Every tolerance is exact (integer or rational equality/inequality);
// nothing is floating point. Run with --criterion N for a single criterion,
// or with no arguments for the full suite. Exit code 0 iff everything that
// ran passed.

#include "ltv/checks.hpp"

#include <chrono>
#include <cstring>
#include <iostream>
#include <vector>

using namespace ltv;

namespace {

struct Line {
    bool pass;
    std::string detail;
};

// 1. Explicit coefficients: Q_1..Q_4 equal the displayed closed forms, as
// exact polynomial identities, for q in {2,3,4,5}.
Line criterion1() {
    std::string detail;
    bool all = true;
    for (long q : {2L, 3L, 4L, 5L}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext ctx(fp);
        std::string bad;
        for (long n = 1; n <= 4; ++n)
            if (ctx.Q(n) != display_Q(n, q)) bad += " Q" + std::to_string(n);
        if (!bad.empty()) {
            all = false;
            detail += " [q=" + std::to_string(q) + " differs at" + bad + "]";
        }
    }
    if (!all)
        detail +=
            " (closed forms hold exactly iff q >= n+2: below that, the "
            "coefficient-support window n(q+1)+1 reaches the extra pair (0, q^2) "
            "whose contribution the closed forms omit; the recursion itself is "
            "certified against the independent functional-equation oracle by "
            "criterion 3)";
    return {all, detail};
}

// 2. Oracle-solved a_n = 0 for every n <= 40 with (q+1) not dividing n-1,
// q in {2,3}, with no vanishing assumption in the solver.
Line criterion2() {
    for (long q : {2L, 3L}) {
        FieldParams fp = FieldParams::from_q(q);
        OracleResult orc = oracle_a(40, fp);
        if (orc.a[1] != XPoly::x_pow(1)) return {false, " a_1 != E at q=" + std::to_string(q)};
        for (long n = 2; n <= 40; ++n)
            if ((n - 1) % (q + 1) != 0 && !orc.a[n].is_zero())
                return {false, " a_" + std::to_string(n) + " != 0 at q=" + std::to_string(q)};
    }
    return {true, ""};
}

// 3. Oracle/recursion agreement: a_{1+k(q+1)} = pi^{-k} E Q_k(E^{q+1}) for
// k <= 12 (q=2), k <= 8 (q=3).
Line criterion3() {
    for (auto [q, kmax] : std::vector<std::pair<long, long>>{{2, 12}, {3, 8}}) {
        FieldParams fp = FieldParams::from_q(q);
        OracleResult orc = oracle_a(1 + kmax * (q + 1), fp);
        TorusContext ctx(fp);
        for (long k = 0; k <= kmax; ++k)
            if (b_in_E(ctx.Q(k), k, q) != orc.a[1 + k * (q + 1)])
                return {false, " mismatch at q=" + std::to_string(q) + ", k=" + std::to_string(k)};
    }
    return {true, ""};
}

// 4. Structure suite: deg Q_k <= k, Q_k(0) = (-1)^k mod pi, and unit sup
// norm on |E| <= 1 for all computed k.
Line criterion4() {
    for (auto [q, kmax] : std::vector<std::pair<long, long>>{{2, 12}, {3, 8}, {5, 8}}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext ctx(fp);
        for (long k = 0; k <= kmax; ++k) {
            Report r = check_Q_structure(ctx, k);
            if (!r.all_pass())
                return {false, " q=" + std::to_string(q) + ", k=" + std::to_string(k) + ": " +
                                   r.first_failure()};
        }
    }
    return {true, ""};
}

// 5. Digit-function suite: the four lemma parts on 0 <= n <= 10^5 and
// minimality against the coin-problem oracle on n <= 5000, for
// q in {2,3,4,5,8,9}.
Line criterion5() {
    for (long q : {2L, 3L, 4L, 5L, 8L, 9L}) {
        std::string where = " at q=" + std::to_string(q);
        long prev = 0;
        for (long n = 0; n <= 100000; ++n) {
            DigitSeq d = sigma(n, q);
            if (p_sum(d, q) != n) return {false, " P(sigma) != id" + where};
            if (!sigma_is_canonical(d, q)) return {false, " sigma shape" + where};
            long R = r_prime(d, q);
            if (n > 0 && (R < prev || R - prev > 1)) return {false, " monotone step" + where};
            if (q * R < (q - 1) * n || (n > 0 && q * R == (q - 1) * n))
                return {false, " linear lower bound" + where};
            prev = R;
        }
        for (long n = 1; n <= 10000; ++n)
            if (q * r_func(n, q) < r_func(q * n + 1, q)) return {false, " scaling" + where};
        for (long i = -50; i <= 2000; ++i) {
            for (long j = -50; j <= 200; ++j)
                if (r_func(i + j, q) > r_func(i, q) + r_func(j, q))
                    return {false, " subadditivity" + where};
            for (long j = 201; j <= 2000; j += 13)
                if (r_func(i + j, q) > r_func(i, q) + r_func(j, q))
                    return {false, " subadditivity" + where};
        }
        for (long n = 0; n <= 5000; ++n)
            if (r_func(n, q) != r_oracle(n, q)) return {false, " minimality" + where};
    }
    return {true, ""};
}

// 6. Decomposition consistency: sum_s pi^{n-s} Q_{n,s} = Q_n and
// pi-integrality of every layer, n <= 10 (q=2), n <= 8 (q=3).
Line criterion6() {
    for (auto [q, nmax] : std::vector<std::pair<long, long>>{{2, 10}, {3, 8}}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext tor(fp);
        DecompContext dec(tor);
        for (long n = 0; n <= nmax; ++n) {
            if (!check_sum_consistency(dec, n).all_pass())
                return {false, " layer sum at q=" + std::to_string(q) + ", n=" + std::to_string(n)};
            Report ri = check_integrality(dec, n);
            if (!ri.all_pass())
                return {false, " integrality at q=" + std::to_string(q) + ", n=" +
                                   std::to_string(n) + ": " + ri.first_failure()};
        }
    }
    return {true, ""};
}

// 7. Vanishing orders: the mod-pi bound R(s - 2 floor((n-s)/(q-1))) for all
// computed (n,s); equality at n = T_0, T_1 (q in {2,3}) and T_2 = 7 (q=2);
// the part-(2) boundary cases have order >= 1. Exact-mode status is checked
// alongside.
Line criterion7(int tier) {
    std::string exact_note;
    for (auto [q, nmax] : std::vector<std::pair<long, long>>{{2, 10}, {3, 8}}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext tor(fp);
        DecompContext dec(tor);
        for (long n = 0; n <= nmax; ++n)
            for (long s = 0; s <= n; ++s) {
                Report r = check_prop_ord(dec, n, s);
                if (!r.all_pass())
                    return {false, " (q,n,s)=(" + std::to_string(q) + "," + std::to_string(n) +
                                       "," + std::to_string(s) + "): " + r.first_failure()};
            }
        for (long l = 0; t_sum(l, q) <= nmax; ++l) {
            long T = t_sum(l, q);
            auto om = ord_at_one_opt(dec.Qns(T, T), OrdMode::mod_pi, fp);
            auto oe = ord_at_one_opt(dec.Qns(T, T), OrdMode::exact, fp);
            if (!om || *om != r_func(T, q))
                return {false, " equality fails at q=" + std::to_string(q) + ", T_" +
                                   std::to_string(l)};
            if (!oe || *oe != r_func(T, q))
                exact_note += " [exact ord differs at q=" + std::to_string(q) + ", T_" +
                              std::to_string(l) + "]";
        }
    }
    if (tier >= 2) {
        // deep equality at T_2 = 13 for q = 3
        FieldParams fp = FieldParams::from_q(3);
        TorusContext tor(fp);
        DecompContext dec(tor);
        auto om = ord_at_one_opt(dec.Qns(13, 13), OrdMode::mod_pi, fp);
        if (!om || *om != r_func(13, 3)) return {false, " tier-2 equality fails at q=3, T_2=13"};
    }
    return {true, exact_note.empty() ? "" : exact_note + " (mod-pi statements all hold)"};
}

// 8. Convergence bounds: gauss_val(pi^{-n} Q_n) >= -2n/q on |x-1| <= |pi|
// and gauss_val(Q_n) >= c n(q-1)/q for c in {1/2, q/(q+1)}, n <= 20,
// q in {2,3,5}, e = 1. Exact rational inequalities.
Line criterion8() {
    for (long q : {2L, 3L, 5L}) {
        FieldParams fp = FieldParams::from_q(q);
        TorusContext ctx(fp);
        for (long n = 1; n <= 20; ++n) {
            if (!check_main1(ctx, n, RationalVal(1)).all_pass())
                return {false, " pi-disc bound at q=" + std::to_string(q) + ", n=" +
                                   std::to_string(n)};
            for (const RationalVal& c : {RationalVal(1, 2), RationalVal(q, q + 1)})
                if (!check_main1(ctx, n, c).all_pass())
                    return {false, " r-disc bound at q=" + std::to_string(q) + ", n=" +
                                       std::to_string(n) + ", c=" + c.str()};
        }
    }
    return {true, ""};
}

// 9. Sup norms and operator estimates on critical discs equal their closed
// forms as exact rationals, s = 0..5 resp. 0..4, q in {2,3,5}, including the
// s=0 specializations q/(q+1) and 1/(q+1) and the equality of the displayed
// exponent shapes.
Line criterion9() {
    for (long q : {2L, 3L, 5L}) {
        FieldParams fp = FieldParams::from_q(q);
        std::string where = " at q=" + std::to_string(q);
        for (long s = 0; s <= 5; ++s)
            for (auto kind : {SeriesKind::phi0, SeriesKind::phi1, SeriesKind::phi0_phi1})
                if (series_disc_norm(kind, s, fp).val != closed_form_sup(kind, s, q))
                    return {false, " sup norm s=" + std::to_string(s) + where};
        for (long s = 0; s <= 4; ++s) {
            for (auto w : {OpQuantity::phi0_sq, OpQuantity::phi1_sq, OpQuantity::phi0_phi1})
                if (operator_estimate(w, s, fp) != closed_form_operator(w, s, q))
                    return {false, " operator norm s=" + std::to_string(s) + where};
            mpz_class qs = detail::zpow(q, static_cast<unsigned long>(s));
            mpq_class d2(mpz_class((mpz_class(q) * q - 1) * qs));
            mpq_class d1(mpz_class((q + 1) * qs));
            mpq_class dm(mpz_class((q - 1) * qs));
            mpq_class f1 = 1 + mpq_class(2 * qs - 2) / d2 - 1 / d1;
            mpq_class f2 = 1 + mpq_class(2) / (q * q - 1) - 1 / dm;
            mpq_class f3 = mpq_class(q * q + 1) / (q * q - 1) - 1 / dm;
            mpq_class g1 = mpq_class(2 * qs * q - 2) / d2 - 1 / d1;
            mpq_class g2 = mpq_class(2 * q) / (q * q - 1) - 1 / dm;
            mpq_class h1 = mpq_class(1, q - 1) - mpq_class(2) / d2 - 1 / d1;
            mpq_class h2 = mpq_class(1, q - 1) - 1 / dm;
            if (f1 != f2 || f2 != f3 || g1 != g2 || h1 != h2)
                return {false, " exponent shape identity s=" + std::to_string(s) + where};
        }
        if (operator_estimate(OpQuantity::phi0_sq, 0, fp) != RationalVal(q, q + 1))
            return {false, " s=0 specialization (phi0^2)" + where};
        if (operator_estimate(OpQuantity::phi1_sq, 0, fp) != RationalVal(1, q + 1))
            return {false, " s=0 specialization (phi1^2)" + where};
    }
    return {true, ""};
}

// 10. Algebraic identities: co-multiplication = matrix multiplication,
// norm form = determinant, the three bracket relations, the torus = b-zero
// slice of level zero, and the strict lattice inclusion h_s inside g_s for
// s <= 6, p in {2,3,5,7}. Exact symbolic.
Line criterion10() {
    if (!comult_check_symbolic().all_pass()) return {false, " co-multiplication identity"};
    if (!delta_det_check().all_pass()) return {false, " determinant identity"};
    Report br = verify_brackets();
    if (!br.all_pass()) return {false, " bracket relations: " + br.first_failure()};
    for (long q : {2L, 3L}) {
        std::vector<RationalVal> grid = {RationalVal(-1), RationalVal(0), RationalVal(2, 3),
                                         RationalVal(1), RationalVal::infinity()};
        for (const auto& va : grid)
            for (const auto& vb : grid)
                for (const auto& w1 : grid)
                    for (const auto& w2 : grid) {
                        ValQuad v{va, vb, w1, w2};
                        if (tso_member(v) !=
                            (gso_member(v, 0, q) && v.b1.is_infinite() && v.b2.is_infinite()))
                            return {false, " torus slice identity at q=" + std::to_string(q)};
                    }
    }
    for (long p : {2L, 3L, 5L, 7L})
        for (long s = 0; s <= 6; ++s) {
            if (!lattice_subset(LatticeKind::h_s, LatticeKind::g_s, s, p))
                return {false, " inclusion fails at p=" + std::to_string(p)};
            if (lattice_subset(LatticeKind::g_s, LatticeKind::h_s, s, p))
                return {false, " inclusion is not strict at p=" + std::to_string(p)};
        }
    return {true, ""};
}

const char* kNames[10] = {
    "explicit coefficients Q_1..Q_4 vs closed forms, q in {2,3,4,5}",
    "oracle vanishing a_n = 0 off the residue class, n <= 40, q in {2,3}",
    "oracle/recursion agreement, k <= 12 (q=2), k <= 8 (q=3)",
    "structure suite: degree, constant term mod pi, unit sup norm",
    "digit-function lemma suite and minimality, q in {2,3,4,5,8,9}",
    "layer decomposition: sum consistency and integrality",
    "vanishing-order bounds, equalities at T-numbers, boundary cases",
    "convergence bounds on |x-1| <= |pi| and |x-1| <= |pi|^c",
    "critical-disc sup norms and operator estimates vs closed forms",
    "algebraic identities: comultiplication, determinant, brackets, lattices",
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    int tier = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--tier") == 0 && i + 1 < argc) tier = std::atoi(argv[++i]);
    }
    bool all_pass = true;
    for (int k = 1; k <= 10; ++k) {
        if (only != 0 && k != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Line line;
        switch (k) {
            case 1: line = criterion1(); break;
            case 2: line = criterion2(); break;
            case 3: line = criterion3(); break;
            case 4: line = criterion4(); break;
            case 5: line = criterion5(); break;
            case 6: line = criterion6(); break;
            case 7: line = criterion7(tier); break;
            case 8: line = criterion8(); break;
            case 9: line = criterion9(); break;
            case 10: line = criterion10(); break;
        }
        auto t1 = std::chrono::steady_clock::now();
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        std::cout << "CRITERION " << k << ": " << (line.pass ? "PASS" : "FAIL") << ": "
                  << kNames[k - 1] << " (" << ms << " ms)" << line.detail << "\n";
        if (!line.pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
