#pragma once

#include <vector>

#include "poly.hpp"

namespace qhnf {

// Polynomial vector field with 2 or 3 components. Component entries share one
// arity; a planar-shaped field (2 components) may still have 3-variable
// entries, with z acting as a parameter.
template <class S>
struct VField {
    std::vector<Poly<S>> c;

    VField() = default;
    explicit VField(int ncomp, int arity = 3) : c(ncomp, Poly<S>(arity)) {}
    VField(Poly<S> a, Poly<S> b) { c = {std::move(a), std::move(b)}; }
    VField(Poly<S> a, Poly<S> b, Poly<S> d) { c = {std::move(a), std::move(b), std::move(d)}; }

    int ncomp() const { return static_cast<int>(c.size()); }
    int arity() const { return c.empty() ? 3 : c[0].arity(); }
    bool is_zero() const {
        for (const auto& p : c)
            if (!p.is_zero()) return false;
        return true;
    }

    VField& operator+=(const VField& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    VField& operator-=(const VField& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend VField operator+(VField a, const VField& b) { a += b; return a; }
    friend VField operator-(VField a, const VField& b) { a -= b; return a; }
    VField operator-() const {
        VField r = *this;
        for (auto& p : r.c) p = -p;
        return r;
    }
    friend VField operator*(const VField& a, const S& s) {
        VField r = a;
        for (auto& p : r.c) p = p * s;
        return r;
    }
    friend VField operator*(const S& s, const VField& a) { return a * s; }

    bool operator==(const VField& o) const { return c == o.c; }
    bool operator!=(const VField& o) const { return !(*this == o); }
};

// Gradient over the first n variables.
template <class S>
std::vector<Poly<S>> gradient(const Poly<S>& p, int n) {
    std::vector<Poly<S>> g;
    g.reserve(n);
    for (int i = 0; i < n; ++i) g.push_back(p.diff(i));
    return g;
}

// Dot product of a gradient-style list with field components.
template <class S>
Poly<S> dot(const std::vector<Poly<S>>& g, const VField<S>& F) {
    Poly<S> r(F.arity());
    for (std::size_t i = 0; i < g.size(); ++i) r += g[i] * F.c[i];
    return r;
}

// Directional derivative of p along F over the first F.ncomp() variables.
template <class S>
Poly<S> lie_derivative(const Poly<S>& p, const VField<S>& F) {
    return dot(gradient(p, F.ncomp()), F);
}

// Lie bracket [P, F] = DP.F - DF.P, componentwise over ncomp variables.
// For 2-component fields the entries may still carry z as a parameter; only
// x and y derivatives participate.
template <class S>
VField<S> lie_bracket(const VField<S>& P, const VField<S>& F) {
    int n = P.ncomp();
    VField<S> out(n, P.arity());
    for (int i = 0; i < n; ++i)
        out.c[i] = lie_derivative(P.c[i], F) - lie_derivative(F.c[i], P);
    return out;
}

// Divergence over the first ncomp variables.
template <class S>
Poly<S> divergence(const VField<S>& F) {
    Poly<S> r(F.arity());
    for (int i = 0; i < F.ncomp(); ++i) r += F.c[i].diff(i);
    return r;
}

// Planar wedge F ^ G = F1 G2 - F2 G1.
template <class S>
Poly<S> wedge(const VField<S>& F, const VField<S>& G) {
    return F.c[0] * G.c[1] - F.c[1] * G.c[0];
}

// Planar Hamiltonian field (-dh/dy, dh/dx); h may carry z as a parameter.
template <class S>
VField<S> hamiltonian_field(const Poly<S>& h) {
    return VField<S>(-h.diff(1), h.diff(0));
}

// Weighted planar Euler field (t1 x, t2 y).
template <class S>
VField<S> euler_field(const QHType& T, int arity = 3) {
    return VField<S>(Poly<S>::monomial(Mono{1, 0, 0}, S(T.t[0]), arity),
                     Poly<S>::monomial(Mono{0, 1, 0}, S(T.t[1]), arity));
}

// Membership of the graded field space: component j must be homogeneous of
// degree k + t_j (0 components allowed).
template <class S>
bool is_qh_field(const VField<S>& F, const QHType& T, int k) {
    for (int j = 0; j < F.ncomp(); ++j)
        if (!is_qh(F.c[j], T, k + T.t[j])) return false;
    return true;
}

// Degree-k slice of a field (component j sliced at k + t_j).
template <class S>
VField<S> qh_slice_field(const VField<S>& F, const QHType& T, int k) {
    VField<S> out(F.ncomp(), F.arity());
    for (int j = 0; j < F.ncomp(); ++j)
        out.c[j] = qh_slice(F.c[j], T, k + T.t[j]);
    return out;
}

// Keeps field slices of degree <= topdeg.
template <class S>
VField<S> truncate_field(const VField<S>& F, const QHType& T, int topdeg) {
    VField<S> out(F.ncomp(), F.arity());
    for (int j = 0; j < F.ncomp(); ++j) {
        Poly<S> kept(F.c[j].arity());
        for (const auto& [m, coef] : F.c[j].terms())
            if (T.weight(m) - T.t[j] <= topdeg) kept.set_term(m, coef);
        out.c[j] = kept;
    }
    return out;
}

// Principal part (X_h, f): a planar Hamiltonian h of degree r + |t-hat| and a
// planar drift f of degree r + t3, assembled as the 3D field (-h_y, h_x, f).
template <class S>
struct PrincipalPart {
    QHType T;
    int r = 0;
    Poly<S> h{2};
    Poly<S> f{2};

    PrincipalPart() = default;
    PrincipalPart(QHType type, int deg, Poly<S> ham, Poly<S> drift)
        : T(type), r(deg), h(std::move(ham)), f(std::move(drift)) {
        if (T.n != 3) throw std::invalid_argument("principal part needs a 3-variable type");
        if (h.arity() != 2 || f.arity() != 2)
            throw std::invalid_argument("principal h and f must be planar");
        if (!h.is_zero() && !is_qh(h, T.planar(), r + T.planar_modulus()))
            throw std::invalid_argument("h is not homogeneous of degree r + |t-hat|");
        if (!f.is_zero() && !is_qh(f, T.planar(), r + T.t[2]))
            throw std::invalid_argument("f is not homogeneous of degree r + t3");
    }

    VField<S> planar_hamiltonian() const { return hamiltonian_field(h); }

    VField<S> field() const {
        auto xh = hamiltonian_field(h);
        return VField<S>(xh.c[0].lift3(), xh.c[1].lift3(), f.lift3());
    }
};

// Ordered basis of the graded field space Q^t_k: (component, monomial) pairs,
// component-major, each component's monomials in canonical slice order.
struct FieldBasis {
    QHType type;
    int degree = 0;
    std::vector<std::pair<int, Mono>> entries;

    std::size_t dimension() const { return entries.size(); }
};

inline FieldBasis field_basis(const QHType& T, int k) {
    FieldBasis b;
    b.type = T;
    b.degree = k;
    for (int j = 0; j < 3; ++j)
        for (const Mono& m : graded_basis(T, k + T.t[j]).monos)
            b.entries.emplace_back(j, m);
    return b;
}

template <class S>
std::vector<S> field_to_vec(const VField<S>& F, const FieldBasis& b) {
    std::vector<S> v;
    v.reserve(b.entries.size());
    for (const auto& [j, m] : b.entries) v.push_back(F.c[j].coeff(m));
    return v;
}

template <class S>
VField<S> vec_to_field(const std::vector<S>& v, const FieldBasis& b) {
    VField<S> F(3, 3);
    for (std::size_t i = 0; i < b.entries.size(); ++i)
        if (v[i] != S(0)) F.c[b.entries[i].first].add_term(b.entries[i].second, v[i]);
    return F;
}

} // namespace qhnf
