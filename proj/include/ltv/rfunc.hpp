#pragma once

// Base-q digit combinatorics for vanishing-order bounds: the T-numbers
// T_r = 1 + q + ... + q^r, the greedy T-digit expansion sigma, the linear
// functionals P and R', the weight function R = R' o sigma, and an
// independent coin-problem oracle for the minimality of R.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace ltv {

// Finitely supported sequence l -> n_l of non-negative integers.
struct DigitSeq {
    std::map<long, long> digits;  // no stored zeros

    void set(long l, long v) {
        if (l < 0 || v < 0) throw std::invalid_argument("DigitSeq: negative index or digit");
        if (v == 0)
            digits.erase(l);
        else
            digits[l] = v;
    }
    long at(long l) const {
        auto it = digits.find(l);
        return it == digits.end() ? 0 : it->second;
    }
    bool operator==(const DigitSeq& o) const { return digits == o.digits; }
};

// T_r = 1 + q + ... + q^r = (q^{r+1} - 1)/(q - 1).
inline long t_sum(long r, long q) {
    if (r < 0) throw std::invalid_argument("t_sum: r must be >= 0");
    long acc = 0, pw = 1;
    for (long i = 0; i <= r; ++i) {
        acc += pw;
        if (i < r) {
            if (pw > (1L << 61) / q) throw std::overflow_error("t_sum: overflow");
            pw *= q;
        }
    }
    return acc;
}

// Greedy T-digit expansion; the zero sequence for n < 0.
inline DigitSeq sigma(long n, long q) {
    DigitSeq d;
    if (n <= 0) return d;
    long r = 0;
    while (t_sum(r + 1, q) <= n) ++r;
    long rem = n;
    for (long l = r; l >= 0; --l) {
        long tl = t_sum(l, q);
        long nl = rem / tl;
        rem -= nl * tl;
        d.set(l, nl);
    }
    return d;
}

// P({n_l}) = sum n_l T_l.
inline long p_sum(const DigitSeq& d, long q) {
    long acc = 0;
    for (const auto& [l, nl] : d.digits) acc += nl * t_sum(l, q);
    return acc;
}

// R'({n_l}) = sum n_l q^l.
inline long r_prime(const DigitSeq& d, long q) {
    long acc = 0;
    for (const auto& [l, nl] : d.digits) {
        long pw = 1;
        for (long i = 0; i < l; ++i) pw *= q;
        acc += nl * pw;
    }
    return acc;
}

inline long r_func(long n, long q) { return r_prime(sigma(n, q), q); }

// The canonical-sequence characterization: digits <= q, at most one digit
// equal to q, and everything below such a digit is zero.
inline bool sigma_is_canonical(const DigitSeq& d, long q) {
    long q_index = -1;
    for (const auto& [l, nl] : d.digits) {
        if (nl > q) return false;
        if (nl == q) {
            if (q_index >= 0) return false;
            q_index = l;
        }
    }
    if (q_index >= 0)
        for (const auto& [l, nl] : d.digits)
            if (l < q_index && nl != 0) return false;
    return true;
}

// min of R' over all digit sequences with P = n, by unbounded-coin dynamic
// programming over the coins (T_l, weight q^l). Independent of sigma.
inline long r_oracle(long n, long q, long bound = 100000) {
    if (n < 0) throw std::invalid_argument("r_oracle: n must be >= 0");
    if (n > bound) throw std::invalid_argument("r_oracle: n exceeds the configured search bound");
    if (n == 0) return 0;
    std::vector<std::pair<long, long>> coins;  // (T_l, q^l)
    long pw = 1;
    for (long l = 0; t_sum(l, q) <= n; ++l) {
        coins.emplace_back(t_sum(l, q), pw);
        pw *= q;
    }
    constexpr long kUnset = -1;
    std::vector<long> best(static_cast<size_t>(n) + 1, kUnset);
    best[0] = 0;
    for (long x = 1; x <= n; ++x)
        for (const auto& [t, w] : coins) {
            if (t > x || best[x - t] == kUnset) continue;
            long cand = best[x - t] + w;
            if (best[x] == kUnset || cand < best[x]) best[x] = cand;
        }
    if (best[n] == kUnset) throw std::logic_error("r_oracle: unreachable target");  // T_0 = 1 always
    return best[n];
}

}  // namespace ltv
