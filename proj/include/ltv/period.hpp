#pragma once

// The period-map data: support rule and valuations of the coefficient
// families c_n, d_n, certified truncations of the two coordinate series
// phi0, phi1 (and their derivatives, products and the Wronskian-type
// combination eps = phi1' phi0 - phi1 phi0'), and exact sup norms on the
// critical discs |u| <= |pi|^{1/((q+1) q^s)}.

#include "ltv/scalars.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ltv {

// A representation n = q^{e_0} + ... + q^{e_k} with strictly increasing
// exponents of alternating parity, e_i = i (mod 2).
struct Rep {
    long k = -1;
    std::vector<long> exps;
};

// Decide the representation via base-q digits: it exists iff every digit is
// 0 or 1 and the sorted exponents alternate parity starting even.
inline std::optional<Rep> rep_decompose(long n, long q) {
    if (n < 0) throw std::invalid_argument("rep_decompose: n must be >= 0");
    if (n == 0) return std::nullopt;
    Rep rep;
    long e = 0;
    for (long m = n; m > 0; m /= q, ++e) {
        long digit = m % q;
        if (digit > 1) return std::nullopt;
        if (digit == 1) rep.exps.push_back(e);
    }
    for (size_t i = 0; i < rep.exps.size(); ++i)
        if (rep.exps[i] % 2 != static_cast<long>(i % 2)) return std::nullopt;
    rep.k = static_cast<long>(rep.exps.size()) - 1;
    return rep;
}

// Exhaustive search over strictly increasing exponent tuples with the parity
// constraint; the oracle that backs rep_decompose and its uniqueness.
inline std::vector<Rep> rep_enumerate(long n, long q, long bound = 10000000) {
    if (n < 0) throw std::invalid_argument("rep_enumerate: n must be >= 0");
    if (n > bound) throw std::invalid_argument("rep_enumerate: n exceeds the configured bound");
    std::vector<Rep> found;
    if (n == 0) return found;  // the empty sum is not an admissible form
    std::vector<long> exps;
    auto dfs = [&](auto&& self, long remaining, long idx, long min_exp) -> void {
        if (remaining == 0) {
            Rep r;
            r.exps = exps;
            r.k = static_cast<long>(exps.size()) - 1;
            found.push_back(std::move(r));
            return;
        }
        long e = min_exp;
        if (e % 2 != idx % 2) ++e;
        for (;; e += 2) {
            long pw = 1;
            bool over = false;
            for (long i = 0; i < e; ++i) {
                if (pw > remaining / q) {
                    over = true;
                    break;
                }
                pw *= q;
            }
            if (over || pw > remaining) break;
            exps.push_back(e);
            self(self, remaining - pw, idx + 1, e + 1);
            exps.pop_back();
        }
    };
    dfs(dfs, n, 0, 0);
    return found;
}

enum class CoeffKind { c, d };

// Valuation of c_n or d_n, nullopt when the coefficient vanishes.
// c_0 = 1; c_n = pi^{-(k+1)/2} for odd k; d_n = pi^{-k/2} for even k.
inline std::optional<long> coeff_val(CoeffKind kind, long n, long q) {
    if (kind == CoeffKind::c && n == 0) return 0;
    if (n < 1) return std::nullopt;
    auto rep = rep_decompose(n, q);
    if (!rep) return std::nullopt;
    if (kind == CoeffKind::c) {
        if (rep->k % 2 != 1) return std::nullopt;
        return -(rep->k + 1) / 2;
    }
    if (rep->k % 2 != 0) return std::nullopt;
    return -rep->k / 2;
}

// Certified lower bound on the valuation of every coefficient of a series:
// val(coeff_n) >= -a*(floor(log_q(max(n,1))) + 1)/2 + b for all n >= 0.
struct TailBound {
    mpq_class a = 0;
    mpq_class b = 0;

    mpq_class at(long n, long q) const {
        long t = detail::floor_log(std::max(n, 1L), q);
        return -a * (t + 1) / 2 + b;
    }
};

// Truncated power series in the deformation coordinate u over PiScalar,
// carrying its truncation bound and a certified tail bound.
struct USeries {
    long q = 0;
    long trunc = -1;  // coefficients are exact for all degrees <= trunc
    std::map<long, PiScalar> coeffs;
    TailBound tail;

    PiScalar coeff(long n) const {
        auto it = coeffs.find(n);
        return it == coeffs.end() ? PiScalar() : it->second;
    }
    void add_term(long n, const PiScalar& c) {
        if (c.is_zero()) return;
        auto it = coeffs.find(n);
        if (it == coeffs.end()) {
            coeffs.emplace(n, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
};

// All support points n <= bound of one coefficient family, generated by the
// exponent search rather than a scan (the support is logarithmically sparse).
inline std::vector<std::pair<long, long>> support_points(CoeffKind kind, long bound, long q) {
    std::vector<std::pair<long, long>> out;  // (n, valuation)
    if (kind == CoeffKind::c && bound >= 0) out.emplace_back(0, 0);
    auto dfs = [&](auto&& self, long sum, long idx, long min_exp) -> void {
        if (sum > 0) {
            long k = idx - 1;
            bool c_kind = (kind == CoeffKind::c);
            if (c_kind == (k % 2 == 1)) out.emplace_back(sum, c_kind ? -(k + 1) / 2 : -k / 2);
        }
        long e = min_exp;
        if (e % 2 != idx % 2) ++e;
        for (;; e += 2) {
            long pw = 1;
            bool over = false;
            for (long i = 0; i < e; ++i) {
                if (pw > (bound - sum) / q) {
                    over = true;
                    break;
                }
                pw *= q;
            }
            if (over || sum + pw > bound) break;
            self(self, sum + pw, idx + 1, e + 1);
        }
    };
    dfs(dfs, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline USeries build_phi0(long N, const FieldParams& fp) {
    if (N < 1) throw std::invalid_argument("build_phi0: N must be >= 1");
    USeries s;
    s.q = fp.q;
    s.trunc = N;
    s.tail = {1, 0};
    for (const auto& [n, v] : support_points(CoeffKind::c, N, fp.q))
        s.coeffs[n] = PiScalar::pi_pow(v);
    return s;
}

inline USeries build_phi1(long N, const FieldParams& fp) {
    if (N < 1) throw std::invalid_argument("build_phi1: N must be >= 1");
    USeries s;
    s.q = fp.q;
    s.trunc = N;
    s.tail = {1, 0};
    for (const auto& [n, v] : support_points(CoeffKind::d, N, fp.q))
        s.coeffs[n] = PiScalar::pi_pow(v);
    return s;
}

// d/du. The integer factor n enters the coefficient exactly (it changes the
// p-part of the valuation).
inline USeries derivative(const USeries& f) {
    USeries s;
    s.q = f.q;
    s.trunc = f.trunc - 1;
    s.tail = {f.tail.a, f.tail.b - f.tail.a / 2};
    for (const auto& [n, c] : f.coeffs) {
        if (n == 0) continue;
        PiScalar t = c;
        t *= mpz_class(n);
        if (n - 1 <= s.trunc) s.add_term(n - 1, t);
    }
    return s;
}

inline USeries product(const USeries& f, const USeries& g) {
    if (f.q != g.q) throw std::invalid_argument("product: mismatched q");
    USeries s;
    s.q = f.q;
    s.trunc = std::min(f.trunc, g.trunc);
    s.tail = {f.tail.a + g.tail.a, f.tail.b + g.tail.b};
    for (const auto& [i, ci] : f.coeffs)
        for (const auto& [j, cj] : g.coeffs)
            if (i + j <= s.trunc) s.add_term(i + j, ci * cj);
    return s;
}

inline USeries difference(const USeries& f, const USeries& g) {
    if (f.q != g.q) throw std::invalid_argument("difference: mismatched q");
    USeries s;
    s.q = f.q;
    s.trunc = std::min(f.trunc, g.trunc);
    s.tail.a = std::max(f.tail.a, g.tail.a);
    s.tail.b = std::min(f.tail.b, g.tail.b);
    s.coeffs = f.coeffs;
    for (auto it = s.coeffs.begin(); it != s.coeffs.end();) {
        if (it->first > s.trunc)
            it = s.coeffs.erase(it);
        else
            ++it;
    }
    for (const auto& [j, c] : g.coeffs)
        if (j <= s.trunc) s.add_term(j, -c);
    return s;
}

// eps = phi1' phi0 - phi1 phi0', truncated at N.
inline USeries build_epsilon(long N, const FieldParams& fp) {
    USeries phi0 = build_phi0(N + 1, fp);
    USeries phi1 = build_phi1(N + 1, fp);
    return difference(product(derivative(phi1), phi0), product(phi1, derivative(phi0)));
}

enum class SeriesKind { phi0, phi1, dphi0, dphi1, eps, phi0_sq, phi1_sq, phi0_phi1 };

inline USeries build_series(SeriesKind kind, long N, const FieldParams& fp) {
    switch (kind) {
        case SeriesKind::phi0: return build_phi0(N, fp);
        case SeriesKind::phi1: return build_phi1(N, fp);
        case SeriesKind::dphi0: return derivative(build_phi0(N + 1, fp));
        case SeriesKind::dphi1: return derivative(build_phi1(N + 1, fp));
        case SeriesKind::eps: return build_epsilon(N, fp);
        case SeriesKind::phi0_sq: {
            USeries f = build_phi0(N, fp);
            return product(f, f);
        }
        case SeriesKind::phi1_sq: {
            USeries f = build_phi1(N, fp);
            return product(f, f);
        }
        case SeriesKind::phi0_phi1: return product(build_phi0(N, fp), build_phi1(N, fp));
    }
    throw std::logic_error("build_series: unknown kind");
}

// Closed disc |u| <= |pi|^{1/((q+1) q^s)}.
struct CriticalDisc {
    long s = 0;
    RationalVal radius_val;  // the exponent 1/((q+1) q^s)

    CriticalDisc(long s_, long q) : s(s_) {
        if (s_ < 0) throw std::invalid_argument("CriticalDisc: s must be >= 0");
        mpz_class den = detail::zpow(q, static_cast<unsigned long>(s_)) * (q + 1);
        radius_val = RationalVal(mpz_class(1), den);
    }
};

struct InsufficientTruncation : std::runtime_error {
    long suggested_N;
    explicit InsufficientTruncation(long n)
        : std::runtime_error("disc_sup_val: truncation insufficient, need N >= " +
                             std::to_string(n)),
          suggested_N(n) {}
};

struct SupNorm {
    RationalVal val;       // valuation of the sup norm
    long witness_deg = -1; // a stored degree attaining it
};

// Exact sup-norm valuation on a critical disc: min over stored degrees of
// (scalar_val(coeff_n) + n * radius_val), with the tail certified to stay
// strictly above the interim minimum. Silent truncation is forbidden: if the
// tail bound cannot rule the omitted terms out, this throws with a
// sufficient truncation bound.
inline SupNorm disc_sup_val(const USeries& f, const CriticalDisc& disc, const FieldParams& fp) {
    if (f.q != fp.q) throw std::invalid_argument("disc_sup_val: series built for different q");
    const mpq_class c = disc.radius_val.value();
    SupNorm best;
    best.val = RationalVal::infinity();
    for (const auto& [n, coef] : f.coeffs) {
        RationalVal v = scalar_val(coef, fp) + RationalVal(mpq_class(c * n));
        if (v < best.val) {
            best.val = v;
            best.witness_deg = n;
        }
    }
    if (best.val.is_infinite()) return best;  // zero series: sup norm 0

    // Certify: for every n > trunc, c*n + tail(n) > best. Blocks of constant
    // floor(log_q n) are checked at their left edge; once the per-block
    // increment c*q^t (q-1) - a/2 is positive and the bound clears the
    // minimum, all later blocks follow.
    const mpq_class m = best.val.value();
    const mpq_class& a = f.tail.a;
    long worst_needed = f.trunc;
    bool certified = false;
    mpz_class qt = 1;  // q^t
    long t = 0;
    while (detail::floor_log(std::max(f.trunc + 1, 1L), f.q) > t) {
        qt *= f.q;
        ++t;
    }
    for (long guard = 0; guard < 4096; ++guard) {
        mpz_class n_min_z = std::max(mpz_class(f.trunc + 1), qt);
        mpq_class tail = -a * (t + 1) / 2 + f.tail.b;
        mpq_class g = c * n_min_z + tail;
        if (g <= m) {
            // every n in this block with c*n + tail <= m is under-truncated
            mpq_class nbad = (m - tail) / c;
            mpz_class nb(nbad);
            if (nb.fits_slong_p()) worst_needed = std::max(worst_needed, nb.get_si() + 1);
        }
        mpq_class increment = c * qt * (f.q - 1) - a / 2;
        // the block-to-block step argument needs the block to start past the
        // truncation (n_min == q^t), so the mixed first block never breaks
        if (g > m && increment > 0 && qt > f.trunc) {
            certified = true;
            break;
        }
        qt *= f.q;
        ++t;
    }
    if (!certified) throw InsufficientTruncation(std::max(worst_needed, 2 * f.trunc));
    if (worst_needed > f.trunc) throw InsufficientTruncation(worst_needed);
    return best;
}

// The three scaled numerator quantities whose sup norms control the
// differential-operator action on a critical disc.
enum class OpQuantity { phi0_sq, phi1_sq, phi0_phi1 };

// Sup-norm valuation on the disc of index s of
//   pi^{s+1} phi0^2  * pi^{-1/((q+1)q^s)}   (phi0_sq)
//   pi^{s}   phi1^2  * pi^{-1/((q+1)q^s)}   (phi1_sq)
//   pi^{s}   phi0 phi1 * pi^{-1/((q+1)q^s)} (phi0_phi1)
// computed from certified truncations, retrying with a larger N when the
// tail certificate demands it.
inline RationalVal operator_estimate(OpQuantity which, long s, const FieldParams& fp) {
    CriticalDisc disc(s, fp.q);
    long N = (fp.q + 1) * detail::ipow(fp.q, s + 2);
    N = std::max(N, 8L);
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            SeriesKind kind = which == OpQuantity::phi0_sq   ? SeriesKind::phi0_sq
                              : which == OpQuantity::phi1_sq ? SeriesKind::phi1_sq
                                                             : SeriesKind::phi0_phi1;
            USeries f = build_series(kind, N, fp);
            RationalVal shift(which == OpQuantity::phi0_sq ? s + 1 : s);
            return shift + disc_sup_val(f, disc, fp).val - disc.radius_val;
        } catch (const InsufficientTruncation& e) {
            N = std::max(e.suggested_N, 2 * N);
        }
    }
    throw std::runtime_error("operator_estimate: truncation did not stabilize");
}

// Sup norm of a named series on a critical disc with automatic retry.
inline SupNorm series_disc_norm(SeriesKind kind, long s, const FieldParams& fp) {
    CriticalDisc disc(s, fp.q);
    long N = std::max((fp.q + 1) * detail::ipow(fp.q, s + 2), 8L);
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            USeries f = build_series(kind, N, fp);
            return disc_sup_val(f, disc, fp);
        } catch (const InsufficientTruncation& e) {
            N = std::max(e.suggested_N, 2 * N);
        }
    }
    throw std::runtime_error("series_disc_norm: truncation did not stabilize");
}

// Closed forms for the sup norms of phi0, phi1 and phi0*phi1 on the disc of
// index s, split by the parity of s.
inline RationalVal closed_form_sup(SeriesKind kind, long s, long q) {
    mpz_class qs = detail::zpow(q, static_cast<unsigned long>(s));
    mpz_class q2m1 = mpz_class(q) * q - 1;
    mpq_class denom = mpq_class(q2m1 * qs);
    if (kind == SeriesKind::phi0_phi1) {
        mpq_class v = mpq_class(1, q - 1) - mpq_class(2) / denom - s;
        return RationalVal(v);
    }
    mpz_class qs1 = qs * q;
    bool even = (s % 2 == 0);
    mpq_class v;
    if (kind == SeriesKind::phi0)
        v = even ? mpq_class(qs - 1) / denom - mpq_class(s) / 2
                 : mpq_class(qs1 - 1) / denom - mpq_class(s + 1) / 2;
    else if (kind == SeriesKind::phi1)
        v = even ? mpq_class(qs1 - 1) / denom - mpq_class(s) / 2
                 : mpq_class(qs - 1) / denom - mpq_class(s - 1) / 2;
    else
        throw std::invalid_argument("closed_form_sup: no closed form for this series");
    return RationalVal(v);
}

// Closed forms for the three operator quantities, in the first displayed
// shape; the algebraically equal variants are checked against these in the
// test suites.
inline RationalVal closed_form_operator(OpQuantity which, long s, long q) {
    mpz_class qs = detail::zpow(q, static_cast<unsigned long>(s));
    mpq_class denom_q2(mpz_class(mpz_class(q) * q - 1) * qs);
    mpq_class denom_q1(mpz_class(q + 1) * qs);
    bool even = (s % 2 == 0);
    mpq_class v;
    mpq_class ramified = mpq_class(1 + mpq_class(2 * qs - 2) / denom_q2 - 1 / denom_q1);
    mpq_class unramified = mpq_class(mpq_class(2 * qs * q - 2) / denom_q2 - 1 / denom_q1);
    switch (which) {
        case OpQuantity::phi0_sq: v = even ? ramified : unramified; break;
        case OpQuantity::phi1_sq: v = even ? unramified : ramified; break;
        case OpQuantity::phi0_phi1:
            v = mpq_class(1, q - 1) - mpq_class(2) / denom_q2 - 1 / denom_q1;
            break;
    }
    v.canonicalize();
    return RationalVal(v);
}

}  // namespace ltv
