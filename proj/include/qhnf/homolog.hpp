#pragma once

#include <optional>

#include "split.hpp"

namespace qhnf {

// Scalar homological operator l_A(mu) = grad_hat(mu).X_h + A * f * dmu/dz.
// h and f are planar; mu may carry z.
template <class S>
Poly<S> ell_A(const Poly<S>& h, const Poly<S>& f, const Poly<S>& mu, const S& A) {
    const Poly<S> hl = h.arity() == mu.arity() ? h : h.lift3();
    const Poly<S> fl = f.arity() == mu.arity() ? f : f.lift3();
    Poly<S> res = dot(gradient(mu, 2), hamiltonian_field(hl));
    res += A * (fl * mu.diff(2));
    return res;
}

template <class S>
struct ScalarOp {
    GradedSlice domain;
    GradedSlice codomain;
    std::vector<Vec<S>> cols;
};

// Matrix of l_A on the degree-k slice, raising degree by r. arity 2 restricts
// both slices to the planar ring.
template <class S>
ScalarOp<S> op_lie(const PrincipalPart<S>& pp, int k, const S& A = S(1), int arity = 3) {
    const QHType Tn = arity == 2 ? pp.T.planar() : pp.T;
    ScalarOp<S> op;
    op.domain = graded_basis(Tn, k);
    op.codomain = graded_basis(Tn, k + pp.r);
    std::map<Mono, std::size_t> idx;
    for (std::size_t i = 0; i < op.codomain.monos.size(); ++i) idx[op.codomain.monos[i]] = i;
    for (const Mono& m : op.domain.monos) {
        const Poly<S> img = ell_A(pp.h, pp.f, Poly<S>::monomial(m, S(1), arity), A);
        Vec<S> v(op.codomain.monos.size(), S(0));
        for (const auto& [mm, c] : img.terms()) v[idx.at(mm)] = c;
        op.cols.push_back(std::move(v));
    }
    return op;
}

// Weight A0 entering the complement operator at field degree k.
template <class S>
S complement_weight(const QHType& T, int r, int k) {
    const int th = T.planar_modulus();
    return S(k + th) / S(r + k + th + T.t[2]);
}

// Complement operator lc_{k,A}: Delta'_{k+|th|} -> Delta'_{r+k+|th|}, the
// composition of l_A with the projection along the h-multiples; z-pure
// monomials are excluded on both sides.
template <class S>
struct ComplementOp {
    std::vector<Mono> domain;
    std::vector<Mono> codomain;
    std::vector<Vec<S>> cols;
    S A{0};
};

template <class S>
ComplementOp<S> op_complement(const PrincipalPart<S>& pp, int k, std::optional<S> A_override = {}) {
    const int th = pp.T.planar_modulus();
    ComplementOp<S> op;
    op.A = A_override ? *A_override : complement_weight<S>(pp.T, pp.r, k);
    auto no_zpure = [](const std::vector<Mono>& in) {
        std::vector<Mono> out;
        for (const Mono& m : in)
            if (m[0] != 0 || m[1] != 0) out.push_back(m);
        return out;
    };
    op.domain = no_zpure(delta_data(pp.T, pp.h, pp.r, k + th).complement);
    op.codomain = no_zpure(delta_data(pp.T, pp.h, pp.r, pp.r + k + th).complement);
    std::map<Mono, std::size_t> idx;
    for (std::size_t i = 0; i < op.codomain.size(); ++i) idx[op.codomain[i]] = i;
    for (const Mono& m : op.domain) {
        const Poly<S> img = ell_A(pp.h, pp.f, Poly<S>::monomial(m, S(1), 3), op.A);
        auto [proj, lam] = project_delta(pp.T, pp.h, pp.r, pp.r + k + th, img, 3);
        Vec<S> v(op.codomain.size(), S(0));
        for (const auto& [mm, c] : proj.terms()) {
            auto it = idx.find(mm);
            if (it != idx.end()) v[it->second] = c;
        }
        op.cols.push_back(std::move(v));
    }
    return op;
}

template <class S>
struct FieldOp {
    FieldBasis domain;
    FieldBasis codomain;
    std::vector<Vec<S>> cols;
};

// Conjugation operator L(P) = [P, F_r] on the degree-k field slice.
template <class S>
FieldOp<S> op_conj(const PrincipalPart<S>& pp, int k) {
    FieldOp<S> op;
    op.domain = field_basis(pp.T, k);
    op.codomain = field_basis(pp.T, pp.r + k);
    const VField<S> F = pp.field();
    for (const auto& [j, m] : op.domain.entries) {
        VField<S> P(3, 3);
        P.c[j] = Poly<S>::monomial(m, S(1), 3);
        op.cols.push_back(field_to_vec(lie_bracket(P, F), op.codomain));
    }
    return op;
}

// Orbital operator columns: bracket columns for the generator, then -m * F_r
// for each representative m of Cor(l) in degree k, so a solution (U, mu, G)
// of the degree-k step satisfies P = [U, F_r] - mu F_r + G.
template <class S>
struct OrbitalOp {
    FieldBasis domain;
    std::vector<Mono> mu_monos;
    FieldBasis codomain;
    std::vector<Vec<S>> cols;
};

template <class S>
OrbitalOp<S> op_orbital(const PrincipalPart<S>& pp, int k) {
    auto conj = op_conj(pp, k);
    OrbitalOp<S> op;
    op.domain = std::move(conj.domain);
    op.codomain = std::move(conj.codomain);
    op.cols = std::move(conj.cols);
    const auto ell = op_lie(pp, k - pp.r);
    const auto reps = cokernel_indices(ell.cols, static_cast<int>(ell.codomain.monos.size()));
    const VField<S> F = pp.field();
    for (int i : reps) {
        const Mono m = ell.codomain.monos[static_cast<std::size_t>(i)];
        op.mu_monos.push_back(m);
        VField<S> img(3, 3);
        const auto mono = Poly<S>::monomial(m, S(1), 3);
        for (int j = 0; j < 3; ++j) img.c[j] = -(mono * F.c[j]);
        op.cols.push_back(field_to_vec(img, op.codomain));
    }
    return op;
}

// Structured forms of [P, F_r] for the four pure input shapes. Each equals
// the direct Jacobian bracket; the split forms avoid recomputing it inside
// the normal form loop and document the triangular structure.

// Input (X_g, 0) with g of degree k + |th|: the planar pair splits again and
// the drift picks up -grad_hat(f).X_g.
template <class S>
struct HamiltonianBracket {
    Poly<S> g{3};
    Poly<S> mu{3};
    Poly<S> lam{3};
    Poly<S> third{3};
};

template <class S>
HamiltonianBracket<S> bracket_xg(const PrincipalPart<S>& pp, const Poly<S>& g, int k) {
    const Poly<S> hl = pp.h.lift3();
    const Poly<S> fl = pp.f.lift3();
    const Poly<S> u = dot(gradient(g, 2), hamiltonian_field(hl));
    const Poly<S> w = g.diff(2);
    const auto Xu = hamiltonian_field(u);
    const auto Xw = hamiltonian_field(w);
    VField<S> P1(Xu.c[0] + fl * Xw.c[0], Xu.c[1] + fl * Xw.c[1], Poly<S>(3));
    auto s = split_3d4(pp.T, pp.h, pp.r, P1, pp.r + k);
    HamiltonianBracket<S> out;
    out.g = std::move(s.g);
    out.mu = std::move(s.mu);
    out.lam = std::move(s.lam);
    out.third = -dot(gradient(fl, 2), hamiltonian_field(g));
    return out;
}

template <class S>
VField<S> assemble_bracket_xg(const PrincipalPart<S>& pp, const HamiltonianBracket<S>& b) {
    return assemble_4(pp.T, pp.h, b.g, b.mu, b.lam, b.third);
}

// Input (mu D0, 0): image ((grad mu . F_r) D0 - r mu X_h, -(r + t3) mu f).
template <class S>
VField<S> bracket_mud0(const PrincipalPart<S>& pp, const Poly<S>& mu) {
    const VField<S> F = pp.field();
    const Poly<S> s = dot(gradient(mu, 3), F);
    const auto d0 = euler_field<S>(pp.T, 3);
    const auto Xhh = hamiltonian_field(pp.h.lift3());
    const S rr = S(pp.r);
    return VField<S>(s * d0.c[0] - rr * (mu * Xhh.c[0]), s * d0.c[1] - rr * (mu * Xhh.c[1]),
                     S(-(pp.r + pp.T.t[2])) * (mu * pp.f.lift3()));
}

// Input (lam X_h, 0): image ((grad lam . F_r) X_h, -lam grad_hat(f).X_h).
template <class S>
VField<S> bracket_lamxh(const PrincipalPart<S>& pp, const Poly<S>& lam) {
    const VField<S> F = pp.field();
    const Poly<S> s = dot(gradient(lam, 3), F);
    const auto Xhh = hamiltonian_field(pp.h.lift3());
    const Poly<S> fl = pp.f.lift3();
    return VField<S>(s * Xhh.c[0], s * Xhh.c[1], -(lam * dot(gradient(fl, 2), Xhh)));
}

// Input (0, f4): image (0, grad f4 . F_r).
template <class S>
VField<S> bracket_drift(const PrincipalPart<S>& pp, const Poly<S>& f4) {
    const VField<S> F = pp.field();
    return VField<S>(Poly<S>(3), Poly<S>(3), dot(gradient(f4, 3), F));
}

} // namespace qhnf
