#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace qhnf {

// Exponent triple (x, y, z). Planar monomials keep the z slot at 0.
// std::array's operator< is plain lexicographic, which is the canonical
// tie-break order inside a graded slice.
using Mono = std::array<int, 3>;

inline Mono mono_xyz(int e1, int e2, int e3 = 0) { return Mono{e1, e2, e3}; }

// Quasi-homogeneous type: positive integer weights, 2 or 3 variables.
struct QHType {
    std::array<int, 3> t{1, 1, 1};
    int n = 3;

    QHType() = default;
    QHType(int t1, int t2, int t3) : t{t1, t2, t3}, n(3) { validate(); }
    QHType(int t1, int t2) : t{t1, t2, 0}, n(2) { validate(); }

    void validate() const {
        for (int i = 0; i < n; ++i)
            if (t[i] < 1) throw std::invalid_argument("QHType weights must be >= 1");
        if (n != 2 && n != 3) throw std::invalid_argument("QHType arity must be 2 or 3");
    }

    int weight(const Mono& m) const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += t[i] * m[i];
        return s;
    }
    // |t|: sum of all active weights.
    int modulus() const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += t[i];
        return s;
    }
    // |t-hat| = t1 + t2, the planar modulus.
    int planar_modulus() const { return t[0] + t[1]; }
    QHType planar() const { return QHType(t[0], t[1]); }

    bool operator==(const QHType& o) const { return n == o.n && t == o.t; }
    bool operator!=(const QHType& o) const { return !(*this == o); }
};

// Sparse multivariate polynomial over scalar S with explicit arity (2 or 3).
// No zero coefficients are stored; term order is ascending plain-lex on the
// exponent tuples (within one QH slice this is the canonical basis order).
template <class S>
class Poly {
public:
    using Terms = std::map<Mono, S>;

    explicit Poly(int arity = 3) : arity_(arity) { check_arity(arity_); }

    static Poly monomial(const Mono& m, const S& c, int arity = 3) {
        Poly p(arity);
        p.add_term(m, c);
        return p;
    }
    static Poly constant(const S& c, int arity = 3) {
        return monomial(Mono{0, 0, 0}, c, arity);
    }

    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    S coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? S(0) : it->second;
    }

    void add_term(const Mono& m, const S& c) {
        if (c == S(0)) return;
        if (arity_ == 2 && m[2] != 0)
            throw std::logic_error("z exponent in a planar polynomial");
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == S(0)) terms_.erase(it);
        }
    }

    void set_term(const Mono& m, const S& c) {
        if (arity_ == 2 && m[2] != 0)
            throw std::logic_error("z exponent in a planar polynomial");
        if (c == S(0)) terms_.erase(m);
        else terms_[m] = c;
    }

    Poly& operator+=(const Poly& o) {
        require_same_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        require_same_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, S(0) - c);
        return *this;
    }
    Poly operator-() const {
        Poly r(arity_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, S(0) - c);
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_arity(b);
        Poly r(a.arity_);
        for (const auto& [m1, c1] : a.terms_)
            for (const auto& [m2, c2] : b.terms_)
                r.add_term(Mono{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
        return r;
    }

    friend Poly operator*(const Poly& a, const S& s) {
        Poly r(a.arity_);
        if (s == S(0)) return r;
        for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
        return r;
    }
    friend Poly operator*(const S& s, const Poly& a) { return a * s; }

    friend Poly operator/(const Poly& a, const S& s) {
        Poly r(a.arity_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, c / s);
        return r;
    }

    bool operator==(const Poly& o) const {
        return arity_ == o.arity_ && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Exact partial derivative with respect to variable i.
    Poly diff(int var) const {
        Poly r(arity_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Mono mm = m;
            mm[var] -= 1;
            r.add_term(mm, c * S(m[var]));
        }
        return r;
    }

    // Embeds a planar polynomial into three variables (z never appears).
    Poly lift3() const {
        if (arity_ == 3) return *this;
        Poly r(3);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c);
        return r;
    }

    // Restricts a 3-variable polynomial that does not mention z back to the
    // planar arity; throws if z occurs.
    Poly restrict2() const {
        if (arity_ == 2) return *this;
        Poly r(2);
        for (const auto& [m, c] : terms_) {
            if (m[2] != 0) throw std::logic_error("restrict2 on a z-dependent polynomial");
            r.terms_.emplace(m, c);
        }
        return r;
    }

    // Numeric evaluation (meaningful for floating instantiations).
    S eval(const std::array<S, 3>& v) const {
        S acc(0);
        for (const auto& [m, c] : terms_) {
            S term = c;
            for (int i = 0; i < arity_; ++i)
                for (int e = 0; e < m[i]; ++e) term *= v[i];
            acc += term;
        }
        return acc;
    }

    // Drops terms with |coefficient| <= tol; floating instantiations only.
    Poly chop(double tol) const {
        static_assert(is_floating_scalar<S>, "chop is for floating scalars");
        Poly r(arity_);
        for (const auto& [m, c] : terms_)
            if (!(c < tol && c > -tol)) r.terms_.emplace(m, c);
        return r;
    }

private:
    static void check_arity(int a) {
        if (a != 2 && a != 3) throw std::invalid_argument("polynomial arity must be 2 or 3");
    }
    void require_same_arity(const Poly& o) const {
        if (arity_ != o.arity_) throw std::logic_error("polynomial arity mismatch");
    }

    int arity_;
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Quasi-homogeneous grading

// Degree of a single monomial under the type.
inline int qh_degree(const Mono& m, const QHType& T) { return T.weight(m); }

// Degree of a nonzero homogeneous polynomial; nullopt when degrees are mixed.
// Throws on the zero polynomial (degree undefined).
template <class S>
std::optional<int> qh_degree(const Poly<S>& p, const QHType& T) {
    if (p.is_zero()) throw std::invalid_argument("qh_degree of the zero polynomial is undefined");
    std::optional<int> k;
    for (const auto& [m, c] : p.terms()) {
        int d = T.weight(m);
        if (!k) k = d;
        else if (*k != d) return std::nullopt;
    }
    return k;
}

template <class S>
bool is_qh(const Poly<S>& p, const QHType& T, int k) {
    for (const auto& [m, c] : p.terms())
        if (T.weight(m) != k) return false;
    return true;
}

// The degree-k homogeneous component.
template <class S>
Poly<S> qh_slice(const Poly<S>& p, const QHType& T, int k) {
    Poly<S> r(p.arity());
    for (const auto& [m, c] : p.terms())
        if (T.weight(m) == k) r.set_term(m, c);
    return r;
}

// All homogeneous components in increasing degree; empty for the zero
// polynomial. Components re-sum to the input.
template <class S>
std::vector<std::pair<int, Poly<S>>> qh_decompose(const Poly<S>& p, const QHType& T) {
    std::map<int, Poly<S>> by_deg;
    for (const auto& [m, c] : p.terms()) {
        auto [it, fresh] = by_deg.try_emplace(T.weight(m), Poly<S>(p.arity()));
        it->second.set_term(m, c);
    }
    std::vector<std::pair<int, Poly<S>>> out;
    out.reserve(by_deg.size());
    for (auto& [k, q] : by_deg) out.emplace_back(k, std::move(q));
    return out;
}

// Complete ordered slice of the graded monomial space.
struct GradedSlice {
    QHType type;
    int degree = 0;
    std::vector<Mono> monos;

    std::size_t dimension() const { return monos.size(); }
};

// All monomials of qh-degree k under T, ascending plain-lex; empty for k < 0.
inline GradedSlice graded_basis(const QHType& T, int k) {
    GradedSlice s;
    s.type = T;
    s.degree = k;
    if (k < 0) return s;
    int e1max = k / T.t[0];
    for (int e1 = 0; e1 <= e1max; ++e1) {
        int rem1 = k - e1 * T.t[0];
        int e2max = rem1 / T.t[1];
        for (int e2 = 0; e2 <= e2max; ++e2) {
            int rem2 = rem1 - e2 * T.t[1];
            if (T.n == 2) {
                if (rem2 == 0) s.monos.push_back(Mono{e1, e2, 0});
            } else {
                if (rem2 % T.t[2] == 0) s.monos.push_back(Mono{e1, e2, rem2 / T.t[2]});
            }
        }
    }
    std::sort(s.monos.begin(), s.monos.end());
    return s;
}

// ---------------------------------------------------------------------------
// Substitution

template <class S>
Poly<S> poly_pow(const Poly<S>& p, int n) {
    Poly<S> out = Poly<S>::constant(S(1), p.arity());
    for (int i = 0; i < n; ++i) out = out * p;
    return out;
}

// p(sx, sy, sz): substitutes a polynomial for each variable. The replacement
// polynomials fix the output arity (all must agree with each other).
template <class S>
Poly<S> compose(const Poly<S>& p, const Poly<S>& sx, const Poly<S>& sy, const Poly<S>& sz) {
    int oar = sx.arity();
    Poly<S> out(oar);
    std::map<std::pair<int, int>, Poly<S>> cache; // (var, power) -> poly
    auto power = [&](int var, int n, const Poly<S>& base) -> const Poly<S>& {
        auto key = std::make_pair(var, n);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, poly_pow(base, n)).first;
        return it->second;
    };
    for (const auto& [m, c] : p.terms()) {
        Poly<S> term = Poly<S>::constant(c, oar);
        if (m[0]) term = term * power(0, m[0], sx);
        if (m[1]) term = term * power(1, m[1], sy);
        if (m[2]) term = term * power(2, m[2], sz);
        out += term;
    }
    return out;
}

// Convenience: substitute only z -> repl (x and y unchanged).
template <class S>
Poly<S> substitute_z(const Poly<S>& p, const Poly<S>& repl) {
    Poly<S> x = Poly<S>::monomial(Mono{1, 0, 0}, S(1), 3);
    Poly<S> y = Poly<S>::monomial(Mono{0, 1, 0}, S(1), 3);
    return compose(p.lift3(), x, y, repl.lift3());
}

} // namespace qhnf
