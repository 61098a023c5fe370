#pragma once

#include <map>
#include <utility>

#include "linalg.hpp"
#include "poly.hpp"
#include "vfield.hpp"

namespace qhnf {

// Data of the direct sum P_m = h * P_{m-r-|t-hat|} (+) Delta_m inside one
// graded slice: ambient basis, multiplier basis, the coordinate columns of
// the h-multiples, and the complement monomials (non-pivot coordinates).
template <class S>
struct DeltaData {
    GradedSlice ambient;
    GradedSlice multipliers;
    std::vector<Vec<S>> h_cols;
    std::vector<Mono> complement;
};

// h is the planar Hamiltonian (arity 2); arity selects whether the slice is
// taken in the full ring or its planar restriction.
template <class S>
DeltaData<S> delta_data(const QHType& T, const Poly<S>& h, int r, int m, int arity = 3) {
    const QHType Tn = arity == 2 ? T.planar() : T;
    DeltaData<S> d;
    d.ambient = graded_basis(Tn, m);
    d.multipliers = graded_basis(Tn, m - r - T.planar_modulus());
    const Poly<S> hl = arity == 2 ? h : h.lift3();
    for (const Mono& mm : d.multipliers.monos) {
        const Poly<S> prod = hl * Poly<S>::monomial(mm, S(1), arity);
        Vec<S> col;
        col.reserve(d.ambient.monos.size());
        for (const Mono& a : d.ambient.monos) col.push_back(prod.coeff(a));
        d.h_cols.push_back(std::move(col));
    }
    const auto piv = range_pivot_coords(d.h_cols);
    std::vector<char> hit(d.ambient.monos.size(), 0);
    for (int i : piv) hit[static_cast<std::size_t>(i)] = 1;
    for (std::size_t i = 0; i < d.ambient.monos.size(); ++i)
        if (!hit[i]) d.complement.push_back(d.ambient.monos[i]);
    return d;
}

// Projection w = proj + lam * h with proj supported on the complement
// monomials and lam in the multiplier slice.
template <class S>
std::pair<Poly<S>, Poly<S>> project_delta(const QHType& T, const Poly<S>& h, int r, int m,
                                          const Poly<S>& w, int arity = 3) {
    const auto d = delta_data(T, h, r, m, arity);
    Poly<S> proj(arity), lam(arity);
    if (d.ambient.monos.empty()) {
        if (!w.is_zero()) throw std::logic_error("delta projection of a misplaced polynomial");
        return {proj, lam};
    }
    Vec<S> wv;
    wv.reserve(d.ambient.monos.size());
    for (const Mono& a : d.ambient.monos) wv.push_back(w.coeff(a));
    auto cols = d.h_cols;
    for (const Mono& c : d.complement) {
        Vec<S> unit(d.ambient.monos.size(), S(0));
        for (std::size_t i = 0; i < d.ambient.monos.size(); ++i)
            if (d.ambient.monos[i] == c) unit[i] = S(1);
        cols.push_back(std::move(unit));
    }
    auto x = solve_min_support(cols, wv);
    if (!x) throw std::logic_error("delta projection failed");
    const std::size_t nm = d.multipliers.monos.size();
    for (std::size_t j = 0; j < nm; ++j)
        if ((*x)[j] != S(0)) lam.add_term(d.multipliers.monos[j], (*x)[j]);
    for (std::size_t j = 0; j < d.complement.size(); ++j)
        if ((*x)[nm + j] != S(0)) proj.add_term(d.complement[j], (*x)[nm + j]);
    return {proj, lam};
}

// Planar conservative/dissipative split P = X_h + mu * D0 within one slice of
// degree kappa (P has two components, no z dependence).
template <class S>
std::pair<Poly<S>, Poly<S>> con_dis(const QHType& T, const VField<S>& P, int kappa) {
    const int th = T.planar_modulus();
    Poly<S> h(P.arity()), mu(P.arity());
    if (kappa + th == 0) return {h, mu};
    const S N = S(kappa + th);
    h = wedge(euler_field<S>(T, P.arity()), P) / N;
    mu = divergence(P) / N;
    return {h, mu};
}

// Refined planar split P = X_g + mu * D0 + lam * X_h with g in the complement
// of the h-multiples, for one planar slice of degree kappa.
template <class S>
struct PlanarSplit {
    Poly<S> g{2};
    Poly<S> mu{2};
    Poly<S> lam{2};
};

template <class S>
PlanarSplit<S> split_planar3(const QHType& T, const Poly<S>& h, int r, const VField<S>& P,
                             int kappa) {
    const int th = T.planar_modulus();
    PlanarSplit<S> out;
    if (kappa + th == 0) return out;
    const S N = S(kappa + th);
    const Poly<S> W = wedge(euler_field<S>(T, 2), P);
    auto [proj, lamc] = project_delta(T, h, r, kappa + th, W, 2);
    out.g = proj / N;
    out.lam = lamc / S(r + th);
    const Poly<S> corr = dot(gradient(out.lam, 2), hamiltonian_field(h));
    out.mu = (divergence(P) - corr) / N;
    return out;
}

// Splits a polynomial into planar slices keyed by z power.
template <class S>
std::map<int, Poly<S>> z_slices(const Poly<S>& p) {
    std::map<int, Poly<S>> out;
    for (const auto& [m, c] : p.terms()) {
        auto it = out.find(m[2]);
        if (it == out.end()) it = out.emplace(m[2], Poly<S>(2)).first;
        it->second.add_term(Mono{m[0], m[1], 0}, c);
    }
    return out;
}

// Canonical four-way split of a degree-k field slice:
// F = (X_g, 0) + (mu D0, 0) + (lam X_h, 0) + (0, f).
template <class S>
struct FieldSplit {
    Poly<S> g{3};
    Poly<S> mu{3};
    Poly<S> lam{3};
    Poly<S> f{3};
};

template <class S>
FieldSplit<S> split_3d4(const QHType& T, const Poly<S>& h, int r, const VField<S>& F, int k) {
    FieldSplit<S> out;
    out.f = F.c[2];
    auto s0 = z_slices(F.c[0]);
    auto s1 = z_slices(F.c[1]);
    std::map<int, char> levels;
    for (const auto& [l, p] : s0) levels[l] = 1;
    for (const auto& [l, p] : s1) levels[l] = 1;
    for (const auto& [l, unused] : levels) {
        VField<S> Pl(2, 2);
        if (auto it = s0.find(l); it != s0.end()) Pl.c[0] = it->second;
        if (auto it = s1.find(l); it != s1.end()) Pl.c[1] = it->second;
        const int kap = k - l * T.t[2];
        auto ps = split_planar3(T, h, r, Pl, kap);
        const auto zl = Poly<S>::monomial(Mono{0, 0, l}, S(1), 3);
        out.g += zl * ps.g.lift3();
        out.mu += zl * ps.mu.lift3();
        out.lam += zl * ps.lam.lift3();
    }
    return out;
}

// Rebuilds the field from its four-way split.
template <class S>
VField<S> assemble_4(const QHType& T, const Poly<S>& h, const Poly<S>& g, const Poly<S>& mu,
                     const Poly<S>& lam, const Poly<S>& f) {
    const auto Xg = hamiltonian_field(g);
    const auto d0 = euler_field<S>(T, 3);
    const auto Xhh = hamiltonian_field(h.lift3());
    return VField<S>(Xg.c[0] + mu * d0.c[0] + lam * Xhh.c[0],
                     Xg.c[1] + mu * d0.c[1] + lam * Xhh.c[1], f);
}

// Rebuilds a planar slice from the coarse split.
template <class S>
VField<S> assemble_2(const QHType& T, const Poly<S>& h, const Poly<S>& mu) {
    const auto Xhp = hamiltonian_field(h);
    const auto d0 = euler_field<S>(T, h.arity());
    return VField<S>(Xhp.c[0] + mu * d0.c[0], Xhp.c[1] + mu * d0.c[1]);
}

} // namespace qhnf
