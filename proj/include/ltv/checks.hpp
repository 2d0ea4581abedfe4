#pragma once

// Certificate check suites. Each builder returns self-describing check rows
// for one block of the verification; verify_tasks bundles the blocks for a
// given configuration into independently runnable tasks.

#include "ltv/certificate.hpp"
#include "ltv/decomposition.hpp"
#include "ltv/period.hpp"
#include "ltv/quaternion.hpp"
#include "ltv/rfunc.hpp"
#include "ltv/torus_action.hpp"

#include <algorithm>
#include <sstream>

namespace ltv {

struct SuiteConfig {
    FieldParams fp;
    long max_n = 12;           // depth of the Q_n table
    long disc_s = 4;           // largest disc index for norm checks
    int tier = 1;              // 1 = desk scale, 2 = adds the deep equality rows
    long rfunc_max_n = 100000;
    long oracle_minimality_bound = 5000;

    long decomp_max_n() const {
        long base = std::min(fp.q == 2 ? 10L : 8L, max_n);
        if (tier >= 2 && fp.q == 3) base = std::max(base, 13L);  // deep equality row at T_2
        return base;
    }
};

// The leading closed forms for Q_1..Q_4 in powers of y = x - 1. They
// reproduce the recursion exactly whenever the coefficient-support window
// n(q+1)+1 stays below the first extra support pair (0, q^2), i.e. q >= n+2.
inline XPoly display_Q(long n, long q) {
    XPoly y = XPoly::x_pow(1) - XPoly(1);
    mpz_class Q(q);
    auto term = [&](const XPoly& ypow, const mpz_class& c) { return ypow.scaled(PiScalar(c)); };
    switch (n) {
        case 1: return y;
        case 2: return term(y * y, Q + 1) + term(y, Q);
        case 3:
            return term(y.pow(3), (Q + 1) * (3 * Q + 2) / 2) +
                   term(y.pow(2), 5 * Q * (Q + 1) / 2) + term(y, Q * Q);
        case 4:
            return term(y.pow(4), (Q + 1) * (2 * Q + 1) * (4 * Q + 3) / 3) +
                   term(y.pow(3), Q * (Q + 1) * (37 * Q + 26) / 6) +
                   term(y.pow(2), 9 * Q * Q * (Q + 1) / 2) + term(y, Q * Q * Q);
    }
    throw std::invalid_argument("display_Q: only n = 1..4 have displayed forms");
}

namespace suites {

inline std::string q_range(const SuiteConfig& cfg, const std::string& extra) {
    return "q=" + std::to_string(cfg.fp.q) + (extra.empty() ? "" : ", " + extra);
}

// ---- coefficient support -------------------------------------------------

inline std::vector<CheckResult> coefficients(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    std::vector<CheckResult> out;
    const long bound = std::min<long>(5 * detail::ipow(q, 4), 40000);
    out.push_back(timed_check(
        "support-decision-vs-enumeration", "coefficient-rule",
        q_range(cfg, "n <= " + std::to_string(bound)), [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= bound; ++n) {
                auto dec = rep_decompose(n, q);
                auto all = rep_enumerate(n, q);
                if (all.size() > 1)
                    return {false, "n=" + std::to_string(n) + " has " +
                                       std::to_string(all.size()) + " representations"};
                if (dec.has_value() != (all.size() == 1))
                    return {false, "n=" + std::to_string(n) + " presence mismatch"};
                if (dec && (dec->k != all[0].k || dec->exps != all[0].exps))
                    return {false, "n=" + std::to_string(n) + " shape mismatch"};
            }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "support-divisibility", "coefficient-rule",
        q_range(cfg, "n <= " + std::to_string(bound)), [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= bound; ++n) {
                if (coeff_val(CoeffKind::c, n, q) && n % (q + 1) != 0)
                    return {false, "c_" + std::to_string(n) + " nonzero off-residue"};
                if (coeff_val(CoeffKind::d, n, q) && (n - 1) % (q + 1) != 0)
                    return {false, "d_" + std::to_string(n) + " nonzero off-residue"};
            }
            return {true, ""};
        }));
    out.push_back(timed_check("support-symmetry", "coefficient-rule",
                              q_range(cfg, "m+l <= 2q^3"),
                              [&]() -> std::pair<bool, std::string> {
                                  Report r = check_support_symmetry(2 * detail::ipow(q, 3), q);
                                  return {r.all_pass(), r.first_failure()};
                              }));
    return out;
}

// ---- digit combinatorics ---------------------------------------------------

inline std::vector<CheckResult> rfunc_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    const long N = cfg.rfunc_max_n;
    std::vector<CheckResult> out;
    out.push_back(timed_check(
        "sigma-left-inverse-and-shape", "digit-weight-lemma",
        q_range(cfg, "n <= " + std::to_string(N)), [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= N; ++n) {
                DigitSeq d = sigma(n, q);
                if (p_sum(d, q) != n) return {false, "P(sigma(n)) != n at n=" + std::to_string(n)};
                if (!sigma_is_canonical(d, q))
                    return {false, "sigma(n) not canonical at n=" + std::to_string(n)};
            }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "r-monotone-unit-steps", "digit-weight-lemma",
        q_range(cfg, "n <= " + std::to_string(N)), [&]() -> std::pair<bool, std::string> {
            long prev = 0;
            for (long n = 1; n <= N; ++n) {
                long cur = r_func(n, q);
                if (cur < prev || cur - prev > 1)
                    return {false, "step violated at n=" + std::to_string(n)};
                prev = cur;
            }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "r-subadditive", "digit-weight-lemma", q_range(cfg, "-50 <= i,j <= 2000"),
        [&]() -> std::pair<bool, std::string> {
            for (long i = -50; i <= 200; ++i)
                for (long j = -50; j <= 200; ++j)
                    if (r_func(i + j, q) > r_func(i, q) + r_func(j, q))
                        return {false, "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")"};
            for (long i = -50; i <= 2000; i += 7)
                for (long j = -49; j <= 2000; j += 11)
                    if (r_func(i + j, q) > r_func(i, q) + r_func(j, q))
                        return {false, "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")"};
            return {true, ""};
        }));
    out.push_back(timed_check("r-scaling", "digit-weight-lemma", q_range(cfg, "1 <= n <= 10^4"),
                              [&]() -> std::pair<bool, std::string> {
                                  for (long n = 1; n <= 10000; ++n)
                                      if (q * r_func(n, q) < r_func(q * n + 1, q))
                                          return {false, "n=" + std::to_string(n)};
                                  return {true, ""};
                              }));
    out.push_back(timed_check(
        "r-linear-lower-bound", "digit-weight-lemma",
        q_range(cfg, "n <= " + std::to_string(N)), [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= N; ++n) {
                long R = r_func(n, q);
                if (q * R < (q - 1) * n) return {false, "bound fails at n=" + std::to_string(n)};
                if (n > 0 && q * R == (q - 1) * n)
                    return {false, "equality away from 0 at n=" + std::to_string(n)};
            }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "r-minimality-vs-oracle", "minimality-claim",
        q_range(cfg, "n <= " + std::to_string(cfg.oracle_minimality_bound)),
        [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= cfg.oracle_minimality_bound; ++n)
                if (r_func(n, q) != r_oracle(n, q, cfg.oracle_minimality_bound))
                    return {false, "n=" + std::to_string(n)};
            return {true, ""};
        }));
    out.push_back(timed_check("r-at-t-numbers", "digit-weight-lemma", q_range(cfg, "l <= 6"),
                              [&]() -> std::pair<bool, std::string> {
                                  for (long l = 0; l <= 6; ++l) {
                                      long T;
                                      try {
                                          T = t_sum(l, q);
                                      } catch (const std::overflow_error&) {
                                          break;
                                      }
                                      if (T > cfg.rfunc_max_n) break;
                                      if (r_func(T, q) != detail::ipow(q, l))
                                          return {false, "l=" + std::to_string(l)};
                                  }
                                  return {true, ""};
                              }));
    return out;
}

// ---- functional-equation oracle -------------------------------------------

inline std::vector<CheckResult> oracle_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    const long N = std::min<long>(40, 1 + cfg.max_n * (q + 1));
    std::vector<CheckResult> out;
    OracleResult orc = oracle_a(N, cfg.fp);
    out.push_back(timed_check("oracle-first-coefficient", "functional-equation", q_range(cfg, ""),
                              [&]() -> std::pair<bool, std::string> {
                                  bool ok = orc.a[1] == XPoly::x_pow(1);
                                  return {ok, ok ? "" : "a_1 != E"};
                              }));
    out.push_back(timed_check(
        "oracle-vanishing", "vanishing-lemma", q_range(cfg, "n <= " + std::to_string(N)),
        [&]() -> std::pair<bool, std::string> {
            for (long n = 2; n <= N; ++n)
                if ((n - 1) % (q + 1) != 0 && !orc.a[n].is_zero())
                    return {false, "a_" + std::to_string(n) + " nonzero"};
            return {true, ""};
        }));
    long kmax = std::min<long>(cfg.max_n, (N - 1) / (q + 1));
    out.push_back(timed_check(
        "oracle-recursion-agreement", "coefficient-recursion",
        q_range(cfg, "k <= " + std::to_string(kmax)), [&]() -> std::pair<bool, std::string> {
            TorusContext ctx(cfg.fp);
            for (long k = 0; k <= kmax; ++k)
                if (b_in_E(ctx.Q(k), k, q) != orc.a[1 + k * (q + 1)])
                    return {false, "k=" + std::to_string(k)};
            return {true, ""};
        }));
    return out;
}

// ---- Q_n structure + displays ----------------------------------------------

inline std::vector<CheckResult> structure_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    std::vector<CheckResult> out;
    TorusContext ctx(cfg.fp);
    out.push_back(timed_check(
        "q-poly-structure", "q-structure-lemma", q_range(cfg, "k <= " + std::to_string(cfg.max_n)),
        [&]() -> std::pair<bool, std::string> {
            for (long k = 0; k <= cfg.max_n; ++k) {
                Report r = check_Q_structure(ctx, k);
                if (!r.all_pass()) return {false, "k=" + std::to_string(k) + ": " + r.first_failure()};
            }
            return {true, ""};
        }));
    for (long n = 1; n <= std::min<long>(4, cfg.max_n); ++n) {
        bool in_regime = q >= n + 2;
        CheckResult row = timed_check(
            "explicit-coefficient-Q" + std::to_string(n), "explicit-coefficients", q_range(cfg, ""),
            [&]() -> std::pair<bool, std::string> {
                bool equal = ctx.Q(n) == display_Q(n, q);
                if (in_regime) return {equal, equal ? "" : "recursion differs from closed form"};
                return {equal, ""};
            });
        if (!in_regime) {
            // Below q = n+2 the closed form misses support pairs (the first
            // is (m,l) = (0, q^2)); record the measured difference without
            // counting it against the certificate.
            std::string measured = (row.status == "pass") ? "equal" : "different";
            row.status = "skipped";
            row.witness = "closed form valid for q >= n+2 only; measured: recursion " + measured +
                          " from closed form (extra support pairs start at (0, q^2))";
        }
        out.push_back(std::move(row));
    }
    return out;
}

// ---- convergence bounds -----------------------------------------------------

inline std::vector<CheckResult> main1_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    std::vector<CheckResult> out;
    TorusContext ctx(cfg.fp);
    out.push_back(timed_check(
        "pi-disc-bound", "convergence-theorem", q_range(cfg, "n <= " + std::to_string(cfg.max_n)),
        [&]() -> std::pair<bool, std::string> {
            for (long n = 1; n <= cfg.max_n; ++n) {
                Report r = check_main1(ctx, n, RationalVal(1));
                if (!r.all_pass()) return {false, "n=" + std::to_string(n) + ": " + r.first_failure()};
            }
            return {true, ""};
        }));
    for (const RationalVal& c : {RationalVal(1, 2), RationalVal(q, q + 1)}) {
        out.push_back(timed_check(
            "r-disc-bound-c=" + c.str(), "convergence-theorem",
            q_range(cfg, "n <= " + std::to_string(cfg.max_n)),
            [&]() -> std::pair<bool, std::string> {
                for (long n = 1; n <= cfg.max_n; ++n) {
                    Report r = check_main1(ctx, n, c);
                    if (!r.all_pass())
                        return {false, "n=" + std::to_string(n) + ": " + r.first_failure()};
                }
                return {true, ""};
            }));
    }
    // termwise disc stability: the coarse |E| <= 1 bound certifies s = 0 only
    out.push_back(timed_check(
        "disc-stability-term", "disc-stability",
        q_range(cfg, "n <= " + std::to_string(cfg.max_n) + ", s = 0"),
        [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= cfg.max_n; ++n) {
                Report r = check_disc_stability(ctx, n, 0);
                if (!r.all_pass()) return {false, "n=" + std::to_string(n) + ": " + r.first_failure()};
            }
            return {true, ""};
        }));
    for (long s = 1; s <= cfg.disc_s; ++s) {
        CheckResult row = timed_check(
            "disc-stability-term-s=" + std::to_string(s), "disc-stability", q_range(cfg, ""),
            [&]() -> std::pair<bool, std::string> {
                long first_fail = -1;
                for (long n = 0; n <= cfg.max_n; ++n)
                    if (!check_disc_stability(ctx, n, s).all_pass()) {
                        first_fail = n;
                        break;
                    }
                return {first_fail < 0, first_fail < 0 ? "" : "n=" + std::to_string(first_fail)};
            });
        std::string measured =
            row.status == "pass" ? "holds" : ("fails first at " + row.witness);
        row.status = "skipped";
        row.witness =
            "the termwise bound with only |E| <= 1 certifies s = 0; measured at s = " +
            std::to_string(s) + ": " + measured;
        out.push_back(std::move(row));
    }
    return out;
}

// ---- layer decomposition -----------------------------------------------------

inline std::vector<CheckResult> decomposition_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    const long p = cfg.fp.p;
    const long nmax = cfg.decomp_max_n();
    std::vector<CheckResult> out;
    TorusContext tor(cfg.fp);
    DecompContext dec(tor);
    out.push_back(timed_check(
        "layer-sum-consistency", "layer-decomposition",
        q_range(cfg, "n <= " + std::to_string(nmax)), [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= nmax; ++n) {
                Report r = check_sum_consistency(dec, n);
                if (!r.all_pass()) return {false, "n=" + std::to_string(n)};
            }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "layer-integrality", "layer-decomposition",
        q_range(cfg, "n <= " + std::to_string(nmax)), [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= nmax; ++n) {
                Report r = check_integrality(dec, n);
                if (!r.all_pass()) return {false, "n=" + std::to_string(n) + ": " + r.first_failure()};
            }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "vanishing-order-bounds", "vanishing-order-bound",
        q_range(cfg, "0 <= s <= n <= " + std::to_string(nmax)),
        [&]() -> std::pair<bool, std::string> {
            for (long n = 0; n <= nmax; ++n)
                for (long s = 0; s <= n; ++s) {
                    Report r = check_prop_ord(dec, n, s);
                    if (!r.all_pass())
                        return {false, "(n,s)=(" + std::to_string(n) + "," + std::to_string(s) +
                                           "): " + r.first_failure()};
                }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "vanishing-order-equality-at-T", "vanishing-order-equality",
        q_range(cfg, "T_l <= " + std::to_string(nmax)), [&]() -> std::pair<bool, std::string> {
            for (long l = 0; t_sum(l, q) <= nmax; ++l) {
                long T = t_sum(l, q);
                auto ord = ord_at_one_opt(dec.Qns(T, T), OrdMode::mod_pi, cfg.fp);
                auto orde = ord_at_one_opt(dec.Qns(T, T), OrdMode::exact, cfg.fp);
                long R = r_func(T, q);
                if (!ord || *ord != R)
                    return {false, "T_" + std::to_string(l) + ": ord mod pi != R"};
                if (!orde || *orde != R)
                    return {false, "T_" + std::to_string(l) + ": exact ord != R"};
            }
            return {true, ""};
        }));
    {
        // vanishing of the remainder layer in the clean regime
        CheckResult row = timed_check(
            "remainder-layer-vanishing", "layer-decomposition", q_range(cfg, "n = 1"),
            [&]() -> std::pair<bool, std::string> {
                bool z1 = dec.Qns(1, 0).is_zero();
                if (q >= 3) return {z1, z1 ? "" : "Q_{1,0} != 0"};
                return {z1, ""};
            });
        if (q < 3) {
            std::string measured = row.status == "pass" ? "zero" : "nonzero";
            row.status = "skipped";
            row.witness = "claim holds for q >= 3; measured Q_{1,0} " + measured +
                          " (extra support pair (0, q^2) feeds the remainder)";
        }
        out.push_back(std::move(row));
    }
    if (q >= 4 && nmax >= 2) {
        out.push_back(timed_check(
            "remainder-layer-vanishing-small-n", "layer-decomposition",
            q_range(cfg, "2 <= n <= min(q-2," + std::to_string(nmax) + ")"),
            [&]() -> std::pair<bool, std::string> {
                for (long n = 2; n <= std::min(q - 2, nmax); ++n)
                    if (!dec.Qns(n, 0).is_zero()) return {false, "n=" + std::to_string(n)};
                return {true, ""};
            }));
    }
    out.push_back(timed_check(
        "shifted-multinomial-congruence", "multinomial-congruence",
        "p=" + std::to_string(p) + ", |r| <= " + std::to_string(p == 2 ? 8 : 6),
        [&]() -> std::pair<bool, std::string> {
            long nmax_c = p == 2 ? 8 : 6;
            for (long n = 1; n <= nmax_c; ++n) {
                long t = detail::floor_log(n, q) + 1;  // smallest t with q^t > n
                for (long extra = 0; extra <= 1; ++extra) {
                    // all multiplicity splits (r00, parts on distinct slots)
                    std::vector<long> parts;
                    auto rec = [&](auto&& self, long rem, long maxpart) -> bool {
                        if (rem == 0) {
                            for (size_t r00_idx = 0; r00_idx <= parts.size(); ++r00_idx) {
                                MultiIndex2 mi;
                                long slot = 1;
                                for (size_t i = 0; i < parts.size(); ++i) {
                                    if (i == r00_idx)
                                        mi.set(0, 0, parts[i]);
                                    else {
                                        mi.set(slot, slot, parts[i]);
                                        ++slot;
                                    }
                                }
                                if (!binom_congruence_check(n, t + extra, mi, p, q)) return false;
                                if (r00_idx == parts.size()) break;  // no r00 variant left
                            }
                            return true;
                        }
                        for (long v = std::min(rem, maxpart); v >= 1; --v) {
                            parts.push_back(v);
                            bool ok = self(self, rem - v, v);
                            parts.pop_back();
                            if (!ok) return false;
                        }
                        return true;
                    };
                    if (!rec(rec, n, n))
                        return {false, "n=" + std::to_string(n) + ", t=" + std::to_string(t + extra)};
                }
            }
            return {true, ""};
        }));
    return out;
}

// ---- critical-disc norms ------------------------------------------------------

inline std::vector<CheckResult> norms_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    const long smax_sup = std::min<long>(cfg.disc_s, 5);
    const long smax_op = std::min<long>(cfg.disc_s, 4);
    std::vector<CheckResult> out;
    out.push_back(timed_check("epsilon-constant-term", "operator-estimates", q_range(cfg, ""),
                              [&]() -> std::pair<bool, std::string> {
                                  USeries eps = build_epsilon(8, cfg.fp);
                                  bool ok = eps.coeff(0) == PiScalar(1);
                                  return {ok, ok ? "" : "eps(0) != 1"};
                              }));
    out.push_back(timed_check(
        "phi-truncation-supports", "coefficient-rule", q_range(cfg, ""),
        [&]() -> std::pair<bool, std::string> {
            USeries p1 = build_phi1(q, cfg.fp);
            if (p1.coeffs.size() != 1 || p1.coeff(1) != PiScalar(1))
                return {false, "phi1 truncated at q must be exactly u"};
            USeries p0 = build_phi0(q + 1, cfg.fp);
            bool ok = p0.coeffs.size() == 2 && p0.coeff(0) == PiScalar(1) &&
                      p0.coeff(q + 1) == PiScalar::pi_pow(-1);
            return {ok, ok ? "" : "phi0 truncated at q+1 must be 1 + pi^-1 u^{q+1}"};
        }));
    for (auto [kind, label] :
         {std::pair<SeriesKind, const char*>{SeriesKind::phi0, "phi0"},
          {SeriesKind::phi1, "phi1"},
          {SeriesKind::phi0_phi1, "phi0*phi1"}}) {
        out.push_back(timed_check(
            std::string("sup-norm-") + label, "critical-disc-norms",
            q_range(cfg, "s <= " + std::to_string(smax_sup)),
            [&, kind]() -> std::pair<bool, std::string> {
                for (long s = 0; s <= smax_sup; ++s) {
                    SupNorm got = series_disc_norm(kind, s, cfg.fp);
                    RationalVal want = closed_form_sup(kind, s, q);
                    if (got.val != want)
                        return {false, "s=" + std::to_string(s) + ": got " + got.val.str() +
                                           " (deg " + std::to_string(got.witness_deg) +
                                           "), want " + want.str()};
                }
                return {true, ""};
            }));
    }
    for (auto [which, label] : {std::pair<OpQuantity, const char*>{OpQuantity::phi0_sq, "phi0^2"},
                                {OpQuantity::phi1_sq, "phi1^2"},
                                {OpQuantity::phi0_phi1, "phi0*phi1"}}) {
        out.push_back(timed_check(
            std::string("operator-norm-") + label, "operator-estimates",
            q_range(cfg, "s <= " + std::to_string(smax_op)),
            [&, which]() -> std::pair<bool, std::string> {
                for (long s = 0; s <= smax_op; ++s) {
                    RationalVal got = operator_estimate(which, s, cfg.fp);
                    RationalVal want = closed_form_operator(which, s, q);
                    if (got != want)
                        return {false, "s=" + std::to_string(s) + ": got " + got.str() +
                                           ", want " + want.str()};
                }
                return {true, ""};
            }));
    }
    out.push_back(timed_check(
        "operator-exponent-identities", "operator-estimates",
        q_range(cfg, "s <= " + std::to_string(smax_op)), [&]() -> std::pair<bool, std::string> {
            for (long s = 0; s <= smax_op; ++s) {
                mpz_class qs = detail::zpow(q, static_cast<unsigned long>(s));
                mpq_class d2(mpz_class((mpz_class(q) * q - 1) * qs));
                mpq_class d1(mpz_class((q + 1) * qs));
                mpq_class dm(mpz_class((q - 1) * qs));
                // the three displayed shapes of the even-branch exponent
                mpq_class f1 = 1 + mpq_class(2 * qs - 2) / d2 - 1 / d1;
                mpq_class f2 = 1 + mpq_class(2) / (q * q - 1) - 1 / dm;
                mpq_class f3 = mpq_class(q * q + 1) / (q * q - 1) - 1 / dm;
                if (f1 != f2 || f2 != f3) return {false, "phi0^2 shapes differ at s=" + std::to_string(s)};
                mpq_class g1 = mpq_class(2 * qs * q - 2) / d2 - 1 / d1;
                mpq_class g2 = mpq_class(2 * q) / (q * q - 1) - 1 / dm;
                if (g1 != g2) return {false, "phi1^2 shapes differ at s=" + std::to_string(s)};
                mpq_class h1 = mpq_class(1, q - 1) - mpq_class(2) / d2 - 1 / d1;
                mpq_class h2 = mpq_class(1, q - 1) - 1 / dm;
                if (h1 != h2) return {false, "cross shapes differ at s=" + std::to_string(s)};
            }
            return {true, ""};
        }));
    out.push_back(timed_check("operator-norms-at-s0", "operator-estimates", q_range(cfg, "s = 0"),
                              [&]() -> std::pair<bool, std::string> {
                                  bool ok =
                                      operator_estimate(OpQuantity::phi0_sq, 0, cfg.fp) ==
                                          RationalVal(q, q + 1) &&
                                      operator_estimate(OpQuantity::phi1_sq, 0, cfg.fp) ==
                                          RationalVal(1, q + 1);
                                  return {ok, ok ? "" : "s=0 specializations differ"};
                              }));
    return out;
}

// ---- algebraic layer -----------------------------------------------------------

inline std::vector<CheckResult> quaternion_suite(const SuiteConfig& cfg) {
    const long q = cfg.fp.q;
    const long p = cfg.fp.p;
    std::vector<CheckResult> out;
    out.push_back(timed_check("comultiplication-vs-matrix", "comultiplication", "symbolic",
                              [&]() -> std::pair<bool, std::string> {
                                  Report r = comult_check_symbolic();
                                  return {r.all_pass(), r.first_failure()};
                              }));
    out.push_back(timed_check("comultiplication-associative", "comultiplication", "symbolic",
                              [&]() -> std::pair<bool, std::string> {
                                  return {comult_assoc_check(), ""};
                              }));
    out.push_back(timed_check("comultiplication-identity-element", "comultiplication", "concrete",
                              [&]() -> std::pair<bool, std::string> {
                                  QuatCoords<PiScalar> e{PiScalar(1), PiScalar(), PiScalar(),
                                                         PiScalar()};
                                  QuatCoords<PiScalar> g{PiScalar(3), PiScalar(2),
                                                         PiScalar::pi_pow(1), PiScalar(5)};
                                  bool ok = comult(g, e) == g && comult(e, g) == g &&
                                            comult_check(g, e);
                                  return {ok, ""};
                              }));
    out.push_back(timed_check("norm-form-vs-determinant", "norm-form", "symbolic",
                              [&]() -> std::pair<bool, std::string> {
                                  Report r = delta_det_check();
                                  return {r.all_pass(), r.first_failure()};
                              }));
    out.push_back(timed_check(
        "norm-form-samples", "norm-form", "concrete", [&]() -> std::pair<bool, std::string> {
            QuatCoords<PiScalar> e{PiScalar(1), PiScalar(), PiScalar(), PiScalar()};
            if (quat_delta(e) != PiScalar(1)) return {false, "Delta(1,0,0,0) != 1"};
            QuatCoords<PiScalar> b{PiScalar(), PiScalar(), PiScalar(1), PiScalar()};
            if (quat_delta(b) != -PiScalar::pi_pow(1)) return {false, "Delta(0,0,1,0) != -pi"};
            return {true, ""};
        }));
    out.push_back(timed_check("lie-bracket-relations", "lie-brackets", "basis",
                              [&]() -> std::pair<bool, std::string> {
                                  Report r = verify_brackets();
                                  return {r.all_pass(), r.first_failure()};
                              }));
    out.push_back(timed_check(
        "torus-membership-identity", "torus-membership", q_range(cfg, "valuation grid"),
        [&]() -> std::pair<bool, std::string> {
            std::vector<RationalVal> grid = {RationalVal(-1), RationalVal(0), RationalVal(1, 2),
                                             RationalVal(1),  RationalVal(3), RationalVal::infinity()};
            for (const auto& va : grid)
                for (const auto& vb : grid)
                    for (const auto& vb1 : grid)
                        for (const auto& vb2 : grid) {
                            ValQuad v{va, vb, vb1, vb2};
                            bool lhs = tso_member(v);
                            bool rhs = gso_member(v, 0, q) && v.b1.is_infinite() &&
                                       v.b2.is_infinite();
                            if (lhs != rhs) return {false, "grid point disagrees"};
                        }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "membership-samples", "torus-membership", q_range(cfg, ""),
        [&]() -> std::pair<bool, std::string> {
            ValQuad id;  // all infinite
            for (long s = 0; s <= 6; ++s)
                if (!gso_member(id, s, q)) return {false, "identity rejected at s=" + std::to_string(s)};
            ValQuad ones{RationalVal(1), RationalVal(1), RationalVal(1), RationalVal(1)};
            if (!gso_member(ones, 0, q)) return {false, "(1,1,1,1) rejected at s=0"};
            ValQuad boundary{RationalVal(0), RationalVal::infinity(), RationalVal::infinity(),
                             RationalVal::infinity()};
            if (gso_member(boundary, 0, q)) return {false, "boundary point accepted"};
            return {true, ""};
        }));
    out.push_back(timed_check(
        "lattice-ladder", "lattice-ladder", "s <= 6, p in {2,3,5,7}",
        [&]() -> std::pair<bool, std::string> {
            for (long pp : {2L, 3L, 5L, 7L})
                for (long s = 0; s <= 6; ++s) {
                    if (!lattice_subset(LatticeKind::h_s, LatticeKind::g_s, s, pp))
                        return {false, "h_s not inside g_s at (p,s)=(" + std::to_string(pp) + "," +
                                           std::to_string(s) + ")"};
                    if (lattice_subset(LatticeKind::g_s, LatticeKind::h_s, s, pp))
                        return {false, "g_s inside h_s at (p,s)=(" + std::to_string(pp) + "," +
                                           std::to_string(s) + ")"};
                }
            return {true, ""};
        }));
    out.push_back(timed_check(
        "relaxed-lattice-at-0", "lattice-ladder", "p in {2,3,5,7}",
        [&]() -> std::pair<bool, std::string> {
            for (long pp : {2L, 3L, 5L, 7L}) {
                auto h0p = lattice_vals(LatticeKind::h0_prime, 0, pp);
                auto h0 = lattice_vals(LatticeKind::h_s, 0, pp);
                if (h0p[1] != RationalVal(0)) return {false, "x2 generator of h0' is not integral"};
                if (!(h0[1] > h0p[1])) return {false, "h0' does not relax the x2 generator"};
                if (h0p[2] != h0[2] || h0p[3] != h0[3])
                    return {false, "h0' changes the y generators"};
            }
            return {true, ""};
        }));
    {
        CheckResult row = timed_check(
            "injectivity-vs-membership-diagonal", "injectivity-disc", q_range(cfg, "grid, s <= 4"),
            [&]() -> std::pair<bool, std::string> {
                std::vector<RationalVal> grid = {RationalVal(0),    RationalVal(1, 2),
                                                 RationalVal(1),    RationalVal(5, 2),
                                                 RationalVal(4),    RationalVal::infinity()};
                for (long s = 0; s <= 4; ++s)
                    for (const auto& va2 : grid) {
                        // diagonal element: v(alpha - conj(alpha)) = v(a2) for odd p
                        bool lhs = injectivity_predicate(va2, RationalVal::infinity(), s, q);
                        ValQuad v{RationalVal::infinity(), va2, RationalVal::infinity(),
                                  RationalVal::infinity()};
                        if (lhs != gso_member(v, s, q)) return {false, "s=" + std::to_string(s)};
                    }
                return {true, ""};
            });
        if (p == 2) {
            row.status = "skipped";
            row.witness = "p = 2: the factor 2 in alpha - conj(alpha) = 2 zeta a2 is not a unit";
        }
        out.push_back(std::move(row));
    }
    out.push_back(timed_check("injectivity-samples", "injectivity-disc", q_range(cfg, ""),
                              [&]() -> std::pair<bool, std::string> {
                                  for (long s = 0; s <= 4; ++s) {
                                      if (!injectivity_predicate(RationalVal::infinity(),
                                                                 RationalVal::infinity(), s, q))
                                          return {false, "identity rejected"};
                                      if (injectivity_predicate(RationalVal(s),
                                                                RationalVal::infinity(), s, q))
                                          return {false, "boundary accepted (strictness)"};
                                  }
                                  return {true, ""};
                              }));
    return out;
}

}  // namespace suites

inline std::vector<CheckTask> verify_tasks(const SuiteConfig& cfg) {
    std::vector<CheckTask> tasks;
    tasks.push_back({"coefficients", [cfg] { return suites::coefficients(cfg); }});
    tasks.push_back({"rfunc", [cfg] { return suites::rfunc_suite(cfg); }});
    tasks.push_back({"oracle", [cfg] { return suites::oracle_suite(cfg); }});
    tasks.push_back({"structure", [cfg] { return suites::structure_suite(cfg); }});
    tasks.push_back({"main1", [cfg] { return suites::main1_suite(cfg); }});
    tasks.push_back({"decomposition", [cfg] { return suites::decomposition_suite(cfg); }});
    tasks.push_back({"norms", [cfg] { return suites::norms_suite(cfg); }});
    tasks.push_back({"quaternion", [cfg] { return suites::quaternion_suite(cfg); }});
    return tasks;
}

}  // namespace ltv
