#pragma once

// Exact coefficient arithmetic: Laurent polynomials in the uniformizer pi
// (with an optional formal unit eta), pi-adic valuations, mod-pi reductions,
// and Gauss norms of sparse polynomials on closed discs.
//
// Everything here is exact. There is no floating point anywhere in this
// library; valuations are arbitrary-precision rationals and coefficients are
// arbitrary-precision integers.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ltv {

namespace detail {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// q^e as long, guarded against overflow.
inline long ipow(long q, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (1L << 62) / q) throw std::overflow_error("ipow: exponent too large");
        r *= q;
    }
    return r;
}

inline mpz_class zpow(long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

inline mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// total! / prod(parts!) for parts summing to total.
inline mpz_class multinomial(long total, const std::vector<long>& parts) {
    long sum = 0;
    mpz_class r = 1;
    for (long part : parts) {
        if (part < 0) throw std::invalid_argument("multinomial: negative part");
        sum += part;
        r *= binom(static_cast<unsigned long>(sum), static_cast<unsigned long>(part));
    }
    if (sum != total) throw std::invalid_argument("multinomial: parts do not sum to total");
    return r;
}

// v_p of a nonzero integer.
inline long vp(mpz_class m, long p) {
    if (m == 0) throw std::invalid_argument("vp of zero");
    long v = 0;
    mpz_class q, r;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

// floor(log_q(n)) for n >= 1.
inline long floor_log(long n, long q) {
    if (n < 1) throw std::invalid_argument("floor_log needs n >= 1");
    long t = 0, power = 1;
    while (power <= n / q) {
        power *= q;
        ++t;
    }
    return t;
}

}  // namespace detail

// Local field data: residue cardinality q = p^f and ramification index e,
// normalized so v(pi) = 1 and v(p) = e.
struct FieldParams {
    long p = 3;
    long f = 1;
    long e = 1;
    long q = 3;

    FieldParams() = default;
    FieldParams(long p_, long f_, long e_) : p(p_), f(f_), e(e_), q(detail::ipow(p_, f_)) {
        if (!detail::is_prime(p)) throw std::invalid_argument("FieldParams: p must be prime");
        if (f < 1 || e < 1) throw std::invalid_argument("FieldParams: need f >= 1 and e >= 1");
    }

    // Derive (p, f) from a prime power q.
    static FieldParams from_q(long q_, long e_ = 1) {
        if (q_ < 2) throw std::invalid_argument("FieldParams: q must be >= 2");
        long p_ = 0;
        for (long d = 2; d * d <= q_; ++d)
            if (q_ % d == 0) {
                p_ = d;
                break;
            }
        if (p_ == 0) p_ = q_;
        long f_ = 0, m = q_;
        while (m > 1) {
            if (m % p_ != 0) throw std::invalid_argument("FieldParams: q is not a prime power");
            m /= p_;
            ++f_;
        }
        return FieldParams(p_, f_, e_);
    }
};

// Exact rational with a +infinity marker; the value type of every valuation
// in this library.
class RationalVal {
public:
    RationalVal() : v_(0), inf_(false) {}
    RationalVal(long n) : v_(n), inf_(false) {}  // NOLINT: implicit by design
    RationalVal(long num, long den) : v_(num, den), inf_(false) {
        if (den == 0) throw std::invalid_argument("RationalVal: zero denominator");
        v_.canonicalize();
    }
    explicit RationalVal(mpq_class v) : v_(std::move(v)), inf_(false) { v_.canonicalize(); }
    explicit RationalVal(const mpz_class& num, const mpz_class& den) : v_(num, den), inf_(false) {
        if (den == 0) throw std::invalid_argument("RationalVal: zero denominator");
        v_.canonicalize();
    }

    static RationalVal infinity() {
        RationalVal r;
        r.inf_ = true;
        return r;
    }

    bool is_infinite() const { return inf_; }
    const mpq_class& value() const {
        if (inf_) throw std::logic_error("RationalVal: value() of infinity");
        return v_;
    }

    friend RationalVal operator+(const RationalVal& a, const RationalVal& b) {
        if (a.inf_ || b.inf_) return infinity();
        return RationalVal(mpq_class(a.v_ + b.v_));
    }
    friend RationalVal operator-(const RationalVal& a, const RationalVal& b) {
        if (b.inf_) throw std::logic_error("RationalVal: cannot subtract infinity");
        if (a.inf_) return infinity();
        return RationalVal(mpq_class(a.v_ - b.v_));
    }
    friend RationalVal operator*(const RationalVal& a, const RationalVal& b) {
        if (a.inf_ || b.inf_) {
            const RationalVal& fin = a.inf_ ? b : a;
            if (fin.inf_ || fin.v_ > 0) return infinity();
            throw std::logic_error("RationalVal: infinity times non-positive");
        }
        return RationalVal(mpq_class(a.v_ * b.v_));
    }
    RationalVal& operator+=(const RationalVal& o) { return *this = *this + o; }

    friend bool operator==(const RationalVal& a, const RationalVal& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.v_ == b.v_;
    }
    friend bool operator!=(const RationalVal& a, const RationalVal& b) { return !(a == b); }
    friend bool operator<(const RationalVal& a, const RationalVal& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const RationalVal& a, const RationalVal& b) { return b < a; }
    friend bool operator<=(const RationalVal& a, const RationalVal& b) { return !(b < a); }
    friend bool operator>=(const RationalVal& a, const RationalVal& b) { return !(a < b); }

    static RationalVal min(const RationalVal& a, const RationalVal& b) { return a < b ? a : b; }

    std::string str() const {
        if (inf_) return "inf";
        return v_.get_str();
    }

private:
    mpq_class v_;
    bool inf_;
};

// Element of Z[pi, pi^-1, eta]: finitely many terms  m * pi^j * eta^h with
// arbitrary-precision integer m. The unit eta (= zeta^2) never acquires a
// valuation; it only appears in the quaternion layer.
class PiScalar {
public:
    using Key = std::pair<long, long>;  // (pi exponent, eta exponent)

    PiScalar() = default;
    PiScalar(long n) {  // NOLINT: implicit by design
        if (n != 0) terms_[{0, 0}] = n;
    }
    explicit PiScalar(const mpz_class& n) {
        if (n != 0) terms_[{0, 0}] = n;
    }

    static PiScalar pi_pow(long j) { return monomial(1, j, 0); }
    static PiScalar eta_pow(long h) { return monomial(1, 0, h); }
    static PiScalar monomial(mpz_class c, long pi_exp, long eta_exp = 0) {
        PiScalar s;
        if (c != 0) {
            if (eta_exp < 0) throw std::invalid_argument("PiScalar: negative eta exponent");
            s.terms_[{pi_exp, eta_exp}] = std::move(c);
        }
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    bool has_eta() const {
        for (const auto& [k, c] : terms_)
            if (k.second != 0) return true;
        return false;
    }
    const std::map<Key, mpz_class>& terms() const { return terms_; }

    PiScalar& operator+=(const PiScalar& o) {
        for (const auto& [k, c] : o.terms_) {
            auto it = terms_.find(k);
            if (it == terms_.end()) {
                terms_.emplace(k, c);
            } else {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }
    PiScalar& operator-=(const PiScalar& o) { return *this += -o; }
    PiScalar operator-() const {
        PiScalar r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
    friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
        PiScalar r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                auto it = r.terms_.find(k);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(k, ca * cb);
                } else {
                    it->second += ca * cb;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        return r;
    }
    PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }
    PiScalar& operator*=(const mpz_class& m) {
        if (m == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= m;
        return *this;
    }
    friend PiScalar operator*(PiScalar a, const mpz_class& m) { return a *= m; }

    PiScalar pow(unsigned long n) const {
        PiScalar r(1);
        for (unsigned long i = 0; i < n; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << (c >= 0 ? " + " : " - ");
            mpz_class a = (first || c >= 0) ? c : mpz_class(-c);
            first = false;
            bool need_coeff = (a != 1 && a != -1) || (k.first == 0 && k.second == 0);
            if (a == -1 && !(k.first == 0 && k.second == 0)) os << "-";
            if (need_coeff) os << a.get_str();
            bool printed = need_coeff;
            if (k.first != 0) {
                if (printed) os << "*";
                os << "pi";
                if (k.first != 1) os << "^" << k.first;
                printed = true;
            }
            if (k.second != 0) {
                if (printed) os << "*";
                os << "eta";
                if (k.second != 1) os << "^" << k.second;
            }
        }
        return os.str();
    }

private:
    std::map<Key, mpz_class> terms_;
};

// nu(s) = min over stored terms of (pi-exponent + e * v_p(coefficient)),
// +infinity for the zero scalar. eta is a unit and contributes nothing.
inline RationalVal scalar_val(const PiScalar& s, const FieldParams& fp) {
    if (s.is_zero()) return RationalVal::infinity();
    bool have = false;
    long best = 0;
    for (const auto& [k, c] : s.terms()) {
        long v = k.first + fp.e * detail::vp(c, fp.p);
        if (!have || v < best) {
            best = v;
            have = true;
        }
    }
    return RationalVal(best);
}

// Image in F_p of a pi-integral scalar. Terms of positive valuation die;
// a term m * pi^-k on the valuation-zero boundary is reduced through the
// uniformizer normalization pi^e = p. Scalars that still carry eta at
// valuation zero have no canonical F_p image and are rejected.
inline long reduce_mod_pi(const PiScalar& s, const FieldParams& fp) {
    if (scalar_val(s, fp) < RationalVal(0))
        throw std::domain_error("reduce_mod_pi: scalar is not pi-integral");
    mpz_class acc = 0;
    for (const auto& [k, c] : s.terms()) {
        long j = k.first;
        long v = j + fp.e * detail::vp(c, fp.p);
        if (v > 0) continue;
        if (k.second != 0)
            throw std::domain_error("reduce_mod_pi: eta term survives at valuation zero");
        mpz_class unit = c;
        if (j < 0) {
            // v == 0 forces e | (-j); divide out p^{-j/e} (pi^e = p).
            mpz_class pw = detail::zpow(fp.p, static_cast<unsigned long>((-j) / fp.e));
            mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), pw.get_mpz_t());
        } else if (j > 0) {
            continue;  // positive pi power, val > 0 already handled
        }
        acc += unit;
    }
    mpz_class r = acc % fp.p;
    if (r < 0) r += fp.p;
    return r.get_si();
}

// Sparse polynomial in one variable over PiScalar.
class XPoly {
public:
    XPoly() = default;
    XPoly(long c) {  // NOLINT: implicit by design
        if (c != 0) coeffs_[0] = PiScalar(c);
    }
    explicit XPoly(const PiScalar& c) {
        if (!c.is_zero()) coeffs_[0] = c;
    }

    static XPoly x_pow(long j, PiScalar c = PiScalar(1)) {
        XPoly r;
        if (j < 0) throw std::invalid_argument("XPoly: negative degree");
        if (!c.is_zero()) r.coeffs_[j] = std::move(c);
        return r;
    }

    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
    const std::map<long, PiScalar>& coeffs() const { return coeffs_; }
    PiScalar coeff(long j) const {
        auto it = coeffs_.find(j);
        return it == coeffs_.end() ? PiScalar() : it->second;
    }

    void add_term(long j, const PiScalar& c) {
        if (c.is_zero()) return;
        if (j < 0) throw std::invalid_argument("XPoly: negative degree");
        auto it = coeffs_.find(j);
        if (it == coeffs_.end()) {
            coeffs_.emplace(j, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    XPoly& operator+=(const XPoly& o) {
        for (const auto& [j, c] : o.coeffs_) add_term(j, c);
        return *this;
    }
    XPoly& operator-=(const XPoly& o) {
        for (const auto& [j, c] : o.coeffs_) add_term(j, -c);
        return *this;
    }
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
    XPoly operator-() const {
        XPoly r;
        for (const auto& [j, c] : coeffs_) r.coeffs_[j] = -c;
        return r;
    }
    friend XPoly operator*(const XPoly& a, const XPoly& b) {
        XPoly r;
        for (const auto& [ja, ca] : a.coeffs_)
            for (const auto& [jb, cb] : b.coeffs_) r.add_term(ja + jb, ca * cb);
        return r;
    }
    XPoly& operator*=(const XPoly& o) { return *this = *this * o; }

    XPoly scaled(const PiScalar& s) const {
        XPoly r;
        if (s.is_zero()) return r;
        for (const auto& [j, c] : coeffs_) r.add_term(j, c * s);
        return r;
    }
    // x -> x^k substitution (exponent dilation).
    XPoly dilated(long k) const {
        if (k < 1) throw std::invalid_argument("XPoly: dilation power must be >= 1");
        XPoly r;
        for (const auto& [j, c] : coeffs_) r.coeffs_[j * k] = c;
        return r;
    }
    XPoly shifted_up(long k) const {
        XPoly r;
        for (const auto& [j, c] : coeffs_) r.coeffs_[j + k] = c;
        return r;
    }

    XPoly pow(unsigned long n) const {
        XPoly r(1);
        for (unsigned long i = 0; i < n; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const XPoly& a, const XPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }

    // Coefficients of Q(1 + y) as a polynomial in y.
    XPoly expanded_at_one() const {
        XPoly r;
        for (const auto& [i, c] : coeffs_)
            for (long j = 0; j <= i; ++j) {
                PiScalar t = c;
                t *= detail::binom(static_cast<unsigned long>(i), static_cast<unsigned long>(j));
                r.add_term(j, t);
            }
        return r;
    }
    // Inverse of expanded_at_one: given D(y), return D(x - 1).
    XPoly recollected_from_one() const {
        XPoly r;
        for (const auto& [j, c] : coeffs_)
            for (long i = 0; i <= j; ++i) {
                PiScalar t = c;
                t *= detail::binom(static_cast<unsigned long>(j), static_cast<unsigned long>(i));
                if ((j - i) % 2 != 0) t = -t;
                r.add_term(i, t);
            }
        return r;
    }

    std::string str(const std::string& var = "x") const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [j, c] : coeffs_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            if (j > 0) {
                os << "*" << var;
                if (j > 1) os << "^" << j;
            }
        }
        return os.str();
    }

private:
    std::map<long, PiScalar> coeffs_;
};

enum class Center { origin, one };
enum class OrdMode { exact, mod_pi };

struct GaussTerm {
    long degree = -1;           // minimizing degree in the (x - center) expansion
    RationalVal val;            // its contribution
};

// Exact valuation of the sup norm of Q on |x - center| <= |pi|^c:
// min over j of (scalar_val(coeff_j) + c*j) in the shifted expansion.
// The zero polynomial yields +infinity.
inline GaussTerm gauss_min_term(const XPoly& Q, Center center, const RationalVal& c,
                                const FieldParams& fp) {
    if (c.is_infinite() || c < RationalVal(0))
        throw std::invalid_argument("gauss_val: need finite radius exponent c >= 0");
    const XPoly& base = Q;
    XPoly shifted;
    const XPoly* use = &base;
    if (center == Center::one) {
        shifted = Q.expanded_at_one();
        use = &shifted;
    }
    GaussTerm best;
    best.val = RationalVal::infinity();
    for (const auto& [j, coef] : use->coeffs()) {
        RationalVal v = scalar_val(coef, fp) + c * RationalVal(j);
        if (v < best.val) {
            best.val = v;
            best.degree = j;
        }
    }
    return best;
}

inline RationalVal gauss_val(const XPoly& Q, Center center, const RationalVal& c,
                             const FieldParams& fp) {
    return gauss_min_term(Q, center, c, fp).val;
}

// Largest m with (x-1)^m dividing Q, either exactly in Z[pi,eta][x] or after
// coefficient-wise mod-pi reduction. nullopt means Q vanishes in the chosen
// mode (order +infinity).
inline std::optional<long> ord_at_one_opt(const XPoly& Q, OrdMode mode, const FieldParams& fp) {
    XPoly shifted = Q.expanded_at_one();
    std::optional<long> best;
    for (const auto& [j, coef] : shifted.coeffs()) {
        if (mode == OrdMode::mod_pi && reduce_mod_pi(coef, fp) == 0) continue;
        if (!best || j < *best) best = j;
    }
    return best;
}

inline long ord_at_one(const XPoly& Q, OrdMode mode, const FieldParams& fp) {
    auto o = ord_at_one_opt(Q, mode, fp);
    if (!o) throw std::domain_error("ord_at_one: polynomial vanishes in the requested mode");
    return *o;
}

}  // namespace ltv
