#pragma once

// The algebraic layer: the 2x2 matrix model of the quaternion algebra over
// the unramified quadratic extension, the group-scheme co-multiplication and
// its determinant form, the Lie-algebra basis with its bracket relations,
// valuation-based membership predicates for the wide open congruence
// subgroups and the non-split torus, the three lattice families, and the
// injectivity-disc predicate.
//
// Elements of the quadratic extension are pairs a + zeta*b with zeta^2 = eta
// kept as a formal unit; all identity checks are exact polynomial identities
// over Z[pi, pi^-1, eta].

#include "ltv/scalars.hpp"
#include "ltv/torus_action.hpp"

#include <array>
#include <vector>

namespace ltv {

// Multivariate polynomial over PiScalar. Keys are exponent vectors with
// trailing zeros stripped, so arity is implicit.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(const PiScalar& c) {
        if (!c.is_zero()) terms_[{}] = c;
    }
    MPoly(long c) : MPoly(PiScalar(c)) {}  // NOLINT: implicit by design

    static MPoly var(size_t i) {
        MPoly m;
        std::vector<long> key(i + 1, 0);
        key[i] = 1;
        m.terms_[key] = PiScalar(1);
        return m;
    }

    bool is_zero() const { return terms_.empty(); }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    MPoly operator-() const {
        MPoly r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                std::vector<long> k(std::max(ka.size(), kb.size()), 0);
                for (size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
                for (size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
                while (!k.empty() && k.back() == 0) k.pop_back();
                r.add_term(k, ca * cb);
            }
        return r;
    }
    MPoly scaled(const PiScalar& s) const {
        MPoly r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    PiScalar eval(const std::vector<PiScalar>& point) const {
        PiScalar acc;
        for (const auto& [k, c] : terms_) {
            PiScalar t = c;
            for (size_t i = 0; i < k.size(); ++i) {
                if (k[i] == 0) continue;
                if (i >= point.size()) throw std::invalid_argument("MPoly::eval: point too short");
                t *= point[i].pow(static_cast<unsigned long>(k[i]));
            }
            acc += t;
        }
        return acc;
    }

private:
    void add_term(const std::vector<long>& k, const PiScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    std::map<std::vector<long>, PiScalar> terms_;
};

inline PiScalar scale_unit(const PiScalar& x, const PiScalar& u) { return x * u; }
inline MPoly scale_unit(const MPoly& x, const PiScalar& u) { return x.scaled(u); }

// a + zeta*b over a commutative coefficient ring R, with zeta^2 = eta and
// conjugation a - zeta*b.
template <class R>
struct K2 {
    R a{};
    R b{};

    K2 conj() const { return {a, -b}; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    friend K2 operator+(const K2& x, const K2& y) { return {x.a + y.a, x.b + y.b}; }
    friend K2 operator-(const K2& x, const K2& y) { return {x.a - y.a, x.b - y.b}; }
    friend K2 operator*(const K2& x, const K2& y) {
        return {x.a * y.a + scale_unit(x.b * y.b, PiScalar::eta_pow(1)), x.a * y.b + x.b * y.a};
    }
    K2 scaled(const PiScalar& s) const { return {scale_unit(a, s), scale_unit(b, s)}; }
    friend bool operator==(const K2& x, const K2& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const K2& x, const K2& y) { return !(x == y); }
};

template <class R>
struct Mat2 {
    std::array<std::array<K2<R>, 2>, 2> e{};

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = x.e[i][0] * y.e[0][j] + x.e[i][1] * y.e[1][j];
        return r;
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = x.e[i][j] + y.e[i][j];
        return r;
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = x.e[i][j] - y.e[i][j];
        return r;
    }
    Mat2 scaled(const PiScalar& s) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j].scaled(s);
        return r;
    }
    friend bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
    bool is_zero() const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!e[i][j].is_zero()) return false;
        return true;
    }
};

// Coordinates (a1, a2, b1, b2) with alpha = a1 + zeta a2, beta = b1 + zeta b2.
template <class R>
using QuatCoords = std::array<R, 4>;

// The matrix model: [[alpha, pi*conj(beta)], [beta, conj(alpha)]].
template <class R>
Mat2<R> quat_matrix(const QuatCoords<R>& g) {
    K2<R> alpha{g[0], g[1]}, beta{g[2], g[3]};
    Mat2<R> m;
    m.e[0][0] = alpha;
    m.e[0][1] = beta.conj().scaled(PiScalar::pi_pow(1));
    m.e[1][0] = beta;
    m.e[1][1] = alpha.conj();
    return m;
}

// The co-multiplication of the group scheme, as displayed (with the
// second uniformizer symbol read as pi).
template <class R>
QuatCoords<R> comult(const QuatCoords<R>& g, const QuatCoords<R>& h) {
    const PiScalar eta = PiScalar::eta_pow(1);
    const PiScalar pi = PiScalar::pi_pow(1);
    const PiScalar eta_pi = eta * pi;
    const auto& [a1, a2, b1, b2] = g;
    const auto& [c1, c2, d1, d2] = h;
    QuatCoords<R> out;
    out[0] = a1 * c1 + scale_unit(a2 * c2, eta) + scale_unit(b1 * d1, pi) -
             scale_unit(b2 * d2, eta_pi);
    out[1] = a2 * c1 + a1 * c2 + scale_unit(b1 * d2, pi) - scale_unit(b2 * d1, pi);
    out[2] = a1 * d1 - scale_unit(a2 * d2, eta) + b1 * c1 + scale_unit(b2 * c2, eta);
    out[3] = a1 * d2 - a2 * d1 + b1 * c2 + b2 * c1;
    return out;
}

// Delta = a1^2 - eta a2^2 - pi (b1^2 - eta b2^2), the (corrected) norm form.
template <class R>
R quat_delta(const QuatCoords<R>& g) {
    const auto& [a1, a2, b1, b2] = g;
    return a1 * a1 - scale_unit(a2 * a2, PiScalar::eta_pow(1)) -
           scale_unit(b1 * b1 - scale_unit(b2 * b2, PiScalar::eta_pow(1)), PiScalar::pi_pow(1));
}

namespace detail {
inline QuatCoords<MPoly> symbolic_coords(size_t base) {
    return {MPoly::var(base), MPoly::var(base + 1), MPoly::var(base + 2), MPoly::var(base + 3)};
}
}  // namespace detail

// Matrix multiplication realizes the co-multiplication: checked as an exact
// polynomial identity in eight indeterminates, together with the shape
// constraints of the matrix model on the product.
inline Report comult_check_symbolic() {
    Report rep;
    auto g = detail::symbolic_coords(0);
    auto h = detail::symbolic_coords(4);
    Mat2<MPoly> prod = quat_matrix(g) * quat_matrix(h);
    auto via_comult = comult(g, h);
    Mat2<MPoly> expect = quat_matrix(via_comult);
    rep.items.push_back({"matrix-vs-comult", prod == expect, ""});
    // the product stays inside the model: top-right = pi * conj(bottom-left),
    // bottom-right = conj(top-left)
    bool shape = prod.e[0][1] == prod.e[1][0].conj().scaled(PiScalar::pi_pow(1)) &&
                 prod.e[1][1] == prod.e[0][0].conj();
    rep.items.push_back({"product-shape", shape, ""});
    return rep;
}

// Concrete-point variant of the same identity.
inline bool comult_check(const QuatCoords<PiScalar>& g, const QuatCoords<PiScalar>& h) {
    return quat_matrix(g) * quat_matrix(h) == quat_matrix(comult(g, h));
}

// Co-multiplication associativity as a polynomial identity in twelve
// indeterminates.
inline bool comult_assoc_check() {
    auto g = detail::symbolic_coords(0);
    auto h = detail::symbolic_coords(4);
    auto k = detail::symbolic_coords(8);
    return comult(comult(g, h), k) == comult(g, comult(h, k));
}

// Delta equals the determinant of the matrix model, symbolically. This also
// pins down the two typo readings (second uniformizer = pi, first b-term
// squared).
inline Report delta_det_check() {
    Report rep;
    auto g = detail::symbolic_coords(0);
    Mat2<MPoly> m = quat_matrix(g);
    K2<MPoly> det = m.e[0][0] * m.e[1][1] - m.e[0][1] * m.e[1][0];
    rep.items.push_back({"det-zeta-component", det.b.is_zero(), ""});
    rep.items.push_back({"delta-equals-det", det.a == quat_delta(g), ""});
    return rep;
}

using LieElement = Mat2<PiScalar>;

inline K2<PiScalar> k2_of(long a, long b) { return {PiScalar(a), PiScalar(b)}; }

inline LieElement lie_x1() {
    LieElement m;
    m.e[0][0] = k2_of(1, 0);
    m.e[1][1] = k2_of(1, 0);
    return m;
}
inline LieElement lie_x2() {
    LieElement m;
    m.e[0][0] = k2_of(0, 1);
    m.e[1][1] = k2_of(0, -1);
    return m;
}
inline LieElement lie_y1() {
    LieElement m;
    m.e[0][1] = {PiScalar::pi_pow(1), PiScalar()};
    m.e[1][0] = k2_of(1, 0);
    return m;
}
inline LieElement lie_y2() {
    LieElement m;
    m.e[0][1] = {PiScalar(), -PiScalar::pi_pow(1)};
    m.e[1][0] = k2_of(0, 1);
    return m;
}

inline LieElement lie_bracket(const LieElement& z1, const LieElement& z2) {
    return z1 * z2 - z2 * z1;
}

// The displayed bracket table plus centrality of x1.
inline Report verify_brackets() {
    Report rep;
    LieElement x1 = lie_x1(), x2 = lie_x2(), y1 = lie_y1(), y2 = lie_y2();
    rep.items.push_back(
        {"bracket-x2-y1", lie_bracket(x2, y1) == y2.scaled(PiScalar(-2)), ""});
    rep.items.push_back(
        {"bracket-x2-y2", lie_bracket(x2, y2) == y1.scaled(PiScalar::monomial(-2, 0, 1)), ""});
    rep.items.push_back(
        {"bracket-y1-y2", lie_bracket(y1, y2) == x2.scaled(PiScalar::monomial(2, 1, 0)), ""});
    bool central = lie_bracket(x1, x2).is_zero() && lie_bracket(x1, y1).is_zero() &&
                   lie_bracket(x1, y2).is_zero();
    rep.items.push_back({"x1-central", central, ""});
    return rep;
}

// Valuation quadruple (v(a1 - 1), v(a2), v(b1), v(b2)); +infinity encodes an
// exact zero.
struct ValQuad {
    RationalVal a1_minus_1 = RationalVal::infinity();
    RationalVal a2 = RationalVal::infinity();
    RationalVal b1 = RationalVal::infinity();
    RationalVal b2 = RationalVal::infinity();
};

// Wide open congruence subgroup of level s: strict inequalities
// v(a1 - 1) > s, v(a2) > s, v(b1) > s - 1/(q+1), v(b2) > s - 1/(q+1).
inline bool gso_member(const ValQuad& v, long s, long q) {
    RationalVal b_threshold = RationalVal(s) - RationalVal(1, q + 1);
    return v.a1_minus_1 > RationalVal(s) && v.a2 > RationalVal(s) && v.b1 > b_threshold &&
           v.b2 > b_threshold;
}

// Rigid-analytic non-split torus at level zero: |a1 - 1| < 1, |a2| < 1 and
// exactly vanishing b-coordinates.
inline bool tso_member(const ValQuad& v) {
    return v.a1_minus_1 > RationalVal(0) && v.a2 > RationalVal(0) && v.b1.is_infinite() &&
           v.b2.is_infinite();
}

enum class LatticeKind { h_s, h0_prime, g_s };

// Generator valuations on (x1, x2, y1, y2) of the three lattice families
// (base field Q_p, so the uniformizer is p).
inline std::array<RationalVal, 4> lattice_vals(LatticeKind kind, long s, long p) {
    if (s < 0) throw std::invalid_argument("lattice_vals: s must be >= 0");
    mpz_class ps = detail::zpow(p, static_cast<unsigned long>(s));
    RationalVal depth(mpz_class(1), mpz_class((p - 1) * ps));  // 1/((p-1) p^s)
    RationalVal edge(1, p + 1);                                // 1/(p+1)
    switch (kind) {
        case LatticeKind::h_s:
            return {RationalVal(s), RationalVal(s) + depth, RationalVal(s) - edge + depth,
                    RationalVal(s) - edge + depth};
        case LatticeKind::h0_prime: {
            if (s != 0) throw std::invalid_argument("lattice_vals: h0' exists only at s = 0");
            RationalVal y = RationalVal(0) - edge + RationalVal(1, p - 1);
            return {RationalVal(0), RationalVal(0), y, y};
        }
        case LatticeKind::g_s:
            return {RationalVal(s), RationalVal(s), RationalVal(s) - edge,
                    RationalVal(s) - edge};
    }
    throw std::logic_error("lattice_vals: unknown kind");
}

// Componentwise comparison: larger-or-equal generator valuations mean the
// first lattice is contained in the second.
inline bool lattice_subset(LatticeKind k1, LatticeKind k2, long s, long p) {
    auto v1 = lattice_vals(k1, s, p);
    auto v2 = lattice_vals(k2, s, p);
    for (int i = 0; i < 4; ++i)
        if (!(v1[i] >= v2[i])) return false;
    return true;
}

// A group element moves every period image within its injectivity disc on
// the level-s critical disc iff v(alpha - conj(alpha)) > s and
// v(beta) > s - 1/(q+1).
inline bool injectivity_predicate(const RationalVal& v_alpha_diff, const RationalVal& v_beta,
                                  long s, long q) {
    return v_alpha_diff > RationalVal(s) && v_beta > RationalVal(s) - RationalVal(1, q + 1);
}

}  // namespace ltv
