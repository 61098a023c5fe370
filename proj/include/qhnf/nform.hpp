#pragma once

#include <numeric>
#include <tuple>

#include "errors.hpp"
#include "homolog.hpp"

namespace qhnf {

enum class NFMode { conjugation, orbital };

namespace detail {

template <class S>
std::vector<S>& uni_trim(std::vector<S>& v) {
    while (!v.empty() && v.back() == S(0)) v.pop_back();
    return v;
}

template <class S>
std::vector<S> uni_mod(std::vector<S> a, const std::vector<S>& b) {
    uni_trim(a);
    while (a.size() >= b.size()) {
        const S q = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
        uni_trim(a);
    }
    return a;
}

template <class S>
std::vector<S> uni_gcd(std::vector<S> a, std::vector<S> b) {
    uni_trim(a);
    uni_trim(b);
    while (!b.empty()) {
        auto r = uni_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace detail

// Squarefree test for a weighted-homogeneous planar polynomial. Monomial
// factors x^a y^b are split off first; the rest sits on one exponent line and
// reduces to a univariate squarefree test via gcd with the derivative.
template <class S>
bool is_squarefree_qh(const Poly<S>& h, const QHType& Tp) {
    static_assert(!is_floating_scalar<S>, "squarefree test needs exact arithmetic");
    if (h.is_zero()) return false;
    int a = std::numeric_limits<int>::max(), b = a;
    for (const auto& [m, c] : h.terms()) {
        a = std::min(a, m[0]);
        b = std::min(b, m[1]);
    }
    if (a >= 2 || b >= 2) return false;
    const int g = std::gcd(Tp.t[0], Tp.t[1]);
    const int d = Tp.t[1] / g;
    std::vector<S> P;
    for (const auto& [m, c] : h.terms()) {
        const int i = (m[0] - a) / d;
        if (static_cast<std::size_t>(i) >= P.size()) P.resize(static_cast<std::size_t>(i) + 1, S(0));
        P[static_cast<std::size_t>(i)] = c;
    }
    std::vector<S> dP;
    for (std::size_t i = 1; i < P.size(); ++i) dP.push_back(S(static_cast<int>(i)) * P[i]);
    return detail::uni_gcd(P, dP).size() <= 1;
}

// Reduction of the drift f modulo the planar range: f = grad_hat(mu).X_h +
// f_red. The complement is the ladder family h^q * C_s, where r + t3 =
// q*(r + t1 + t2) + s with 0 <= s < r + t1 + t2 and C_s is the cokernel basis
// of the planar operator at codomain degree s. Multiplication by h carries a
// base complement up one rung of degree r + t1 + t2, so for squarefree h the
// family is a complement at the drift degree and the split is unique.
template <class S>
struct DriftReduction {
    bool decomposed = false;
    bool reduced = false;
    Poly<S> mu{2};
    Poly<S> f_red{2};
};

template <class S>
DriftReduction<S> reduce_drift(const QHType& T, int r, const Poly<S>& h, const Poly<S>& f) {
    PrincipalPart<S> probe(T, r, h, Poly<S>(2));
    const int rung = r + T.t[0] + T.t[1];
    const int q = (r + T.t[2]) / rung;
    const int s = (r + T.t[2]) % rung;
    const auto seed = op_lie(probe, s - r, S(1), 2);
    const Poly<S> hq = poly_pow(h, q);
    std::vector<Poly<S>> family;
    for (int i : cokernel_indices(seed.cols, static_cast<int>(seed.codomain.monos.size())))
        family.push_back(hq *
                         Poly<S>::monomial(seed.codomain.monos[static_cast<std::size_t>(i)], S(1), 2));
    const auto op = op_lie(probe, T.t[2], S(1), 2);
    const std::size_t nc = op.codomain.monos.size();
    std::map<Mono, std::size_t> idx;
    for (std::size_t i = 0; i < nc; ++i) idx[op.codomain.monos[i]] = i;
    auto cols = op.cols;
    for (const Poly<S>& p : family) {
        Vec<S> v(nc, S(0));
        for (const auto& [m, c] : p.terms()) v[idx.at(m)] = c;
        cols.push_back(std::move(v));
    }
    Vec<S> fv;
    fv.reserve(nc);
    for (const Mono& m : op.codomain.monos) fv.push_back(f.coeff(m));
    DriftReduction<S> out;
    auto x = solve_min_support(cols, fv);
    if (!x) return out;
    out.decomposed = true;
    const std::size_t nd = op.domain.monos.size();
    for (std::size_t j = 0; j < nd; ++j)
        if ((*x)[j] != S(0)) out.mu.add_term(op.domain.monos[j], (*x)[j]);
    for (std::size_t j = 0; j < family.size(); ++j)
        if ((*x)[nd + j] != S(0)) out.f_red += (*x)[nd + j] * family[j];
    out.reduced = out.f_red == f;
    return out;
}

// Degree-preserving substitution z -> z + mu(x, y) that removes the range
// part of the drift; mu is planar of degree t3.
template <class S>
VField<S> pre_normalize(const VField<S>& F, const Poly<S>& mu) {
    const Poly<S> mul = mu.lift3();
    VField<S> out = F;
    out.c[2] = F.c[2] - dot(gradient(mul, 2), VField<S>(F.c[0], F.c[1]));
    const Poly<S> repl = Poly<S>::monomial(Mono{0, 0, 1}, S(1), 3) + mul;
    for (auto& comp : out.c) comp = substitute_z(comp, repl);
    return out;
}

template <class S>
struct PreNormalization {
    PrincipalPart<S> principal;
    VField<S> field{3, 3};
    Poly<S> mu{2};
    bool changed = false;
};

// Applies the drift-reducing shift to a full field, records the mu used, and
// returns the reduced principal part. Identity when the drift is already
// reduced.
template <class S>
PreNormalization<S> pre_normalize(const PrincipalPart<S>& pp, const VField<S>& F) {
    const auto red = reduce_drift(pp.T, pp.r, pp.h, pp.f);
    if (!red.decomposed)
        throw assumption_error("squarefree Hamiltonian",
                               "the drift does not split along the range and the complement family");
    PreNormalization<S> out;
    out.principal = PrincipalPart<S>(pp.T, pp.r, pp.h, red.f_red);
    out.mu = red.mu;
    out.changed = !red.mu.is_zero();
    out.field = out.changed ? pre_normalize(F, red.mu) : F;
    return out;
}

// Splits a field into graded slices keyed by field degree.
template <class S>
std::map<int, VField<S>> field_decompose(const VField<S>& F, const QHType& T) {
    std::map<int, VField<S>> out;
    for (int j = 0; j < 3; ++j) {
        for (const auto& [m, c] : F.c[j].terms()) {
            const int k = T.weight(m) - T.t[j];
            auto it = out.find(k);
            if (it == out.end()) it = out.emplace(k, VField<S>(3, 3)).first;
            it->second.c[j].add_term(m, c);
        }
    }
    return out;
}

// Reads the principal pair (h, f) off the lowest graded slice. Fails when the
// planar part is not Hamiltonian or the drift depends on z.
template <class S>
PrincipalPart<S> extract_principal(const VField<S>& F, const QHType& T) {
    if (F.is_zero()) throw assumption_error("nonzero field", "all components vanish");
    const auto slices = field_decompose(F, T);
    const int r = slices.begin()->first;
    if (r < 0)
        throw assumption_error("nonnegative principal degree",
                               "lowest slice has degree " + std::to_string(r));
    const VField<S>& Fr = slices.begin()->second;
    Poly<S> f(2), P1(2), P2(2);
    try {
        f = Fr.c[2].restrict2();
        P1 = Fr.c[0].restrict2();
        P2 = Fr.c[1].restrict2();
    } catch (const std::logic_error&) {
        throw assumption_error("planar principal data",
                               "the lowest slice depends on z");
    }
    auto [h, mu] = con_dis(T, VField<S>(P1, P2), r);
    if (!mu.is_zero())
        throw assumption_error("Hamiltonian principal planar part",
                               "the planar pair has a dissipative component");
    return PrincipalPart<S>(T, r, h, f);
}

// Report on the standing hypotheses. Report-only; normal_form turns a failed
// entry into an assumption_error.
template <class S>
struct AssumptionReport {
    bool nonzero_h = false;
    bool squarefree = false;
    bool reduced = false;
    DriftReduction<S> drift;

    bool ok() const { return nonzero_h && squarefree && reduced; }
};

template <class S>
AssumptionReport<S> check_assumptions(const PrincipalPart<S>& pp) {
    AssumptionReport<S> rep;
    rep.nonzero_h = !pp.h.is_zero();
    rep.squarefree = rep.nonzero_h && is_squarefree_qh(pp.h, pp.T.planar());
    rep.drift = reduce_drift(pp.T, pp.r, pp.h, pp.f);
    rep.reduced = rep.drift.decomposed && rep.drift.reduced;
    return rep;
}

template <class S>
void require_assumptions(const PrincipalPart<S>& pp) {
    const auto rep = check_assumptions(pp);
    if (!rep.nonzero_h) throw assumption_error("nonzero Hamiltonian", "h = 0");
    if (!rep.squarefree)
        throw assumption_error("squarefree Hamiltonian", "h has a repeated factor");
    if (!rep.reduced)
        throw assumption_error("reduced drift",
                               "f has a component along grad(mu).X_h; apply pre_normalize");
}

// Complement of the homological operator image in the degree r+k slice,
// one generator per cokernel representative, tagged by block:
//   C  planar Hamiltonian block X_m
//   D  dissipative block m * D0
//   F  principal-Hamiltonian multiples m * X_h (conjugation mode only)
//   G  drift block (0, 0, m)
template <class S>
struct DegreeComplement {
    FieldBasis codomain;
    std::vector<Vec<S>> vecs;
    std::vector<std::pair<char, Mono>> labels;
};

template <class S>
DegreeComplement<S> struct_complement(const PrincipalPart<S>& pp, int k, NFMode mode,
                                      std::optional<S> A_override = {}) {
    DegreeComplement<S> out;
    out.codomain = field_basis(pp.T, pp.r + k);
    const auto cop = op_complement(pp, k, A_override);
    if (!kernel_basis(cop.cols, static_cast<int>(cop.codomain.size())).empty())
        throw kernel_obstruction(pp.r + k);
    for (int i : cokernel_indices(cop.cols, static_cast<int>(cop.codomain.size()))) {
        const Mono m = cop.codomain[static_cast<std::size_t>(i)];
        const auto Xm = hamiltonian_field(Poly<S>::monomial(m, S(1), 3));
        out.vecs.push_back(field_to_vec(VField<S>(Xm.c[0], Xm.c[1], Poly<S>(3)), out.codomain));
        out.labels.emplace_back('C', m);
    }
    const auto d0 = euler_field<S>(pp.T, 3);
    const auto ell_d = op_lie(pp, k);
    for (int i : cokernel_indices(ell_d.cols, static_cast<int>(ell_d.codomain.monos.size()))) {
        const Mono m = ell_d.codomain.monos[static_cast<std::size_t>(i)];
        const auto mono = Poly<S>::monomial(m, S(1), 3);
        out.vecs.push_back(
            field_to_vec(VField<S>(mono * d0.c[0], mono * d0.c[1], Poly<S>(3)), out.codomain));
        out.labels.emplace_back('D', m);
    }
    if (mode == NFMode::conjugation) {
        const auto Xhh = hamiltonian_field(pp.h.lift3());
        const auto ell_f = op_lie(pp, k - pp.r);
        for (int i : cokernel_indices(ell_f.cols, static_cast<int>(ell_f.codomain.monos.size()))) {
            const Mono m = ell_f.codomain.monos[static_cast<std::size_t>(i)];
            const auto mono = Poly<S>::monomial(m, S(1), 3);
            out.vecs.push_back(
                field_to_vec(VField<S>(mono * Xhh.c[0], mono * Xhh.c[1], Poly<S>(3)), out.codomain));
            out.labels.emplace_back('F', m);
        }
    }
    const auto ell_g = op_lie(pp, k + pp.T.t[2]);
    for (int i : cokernel_indices(ell_g.cols, static_cast<int>(ell_g.codomain.monos.size()))) {
        const Mono m = ell_g.codomain.monos[static_cast<std::size_t>(i)];
        out.vecs.push_back(field_to_vec(
            VField<S>(Poly<S>(3), Poly<S>(3), Poly<S>::monomial(m, S(1), 3)), out.codomain));
        out.labels.emplace_back('G', m);
    }
    return out;
}

// Closed-form description of the scalar cokernel at degree r+k, assembled
// z-block by z-block:
//   tail    monomials of degree r+k with z-exponent above k1
//   base    z^k1 times a cokernel basis of the planar operator at degree r+k2
//   blocks  blocks[l], l < k1: z^l times a complement of the planar range at
//           degree r+k-l*t3 joined with f times the planar kernel one block up
// where k = k1*t3 + k2 with 0 <= k2 < t3. The generator count must match the
// cokernel dimension of the full scalar operator at degree r+k.
template <class S>
struct CorStructure {
    int k = 0;
    int k1 = 0;
    int k2 = 0;
    std::vector<Mono> tail;
    std::vector<Poly<S>> base;                // planar, carries a z^k1 factor
    std::vector<std::vector<Poly<S>>> blocks; // blocks[l] planar, carries z^l

    std::size_t dimension() const {
        std::size_t n = tail.size() + base.size();
        for (const auto& blk : blocks) n += blk.size();
        return n;
    }

    std::vector<Poly<S>> generators() const {
        std::vector<Poly<S>> out;
        for (const Mono& m : tail) out.push_back(Poly<S>::monomial(m, S(1), 3));
        auto zpow = [](int p) { return Poly<S>::monomial(Mono{0, 0, p}, S(1), 3); };
        for (const Poly<S>& p : base) out.push_back(p.lift3() * zpow(k1));
        for (std::size_t l = 0; l < blocks.size(); ++l)
            for (const Poly<S>& p : blocks[l])
                out.push_back(p.lift3() * zpow(static_cast<int>(l)));
        return out;
    }
};

template <class S>
CorStructure<S> cor_structure(const PrincipalPart<S>& pp, int k) {
    const int t3 = pp.T.t[2];
    CorStructure<S> out;
    out.k = k;
    out.k1 = k / t3;
    out.k2 = k % t3;
    for (const Mono& m : graded_basis(pp.T, pp.r + k).monos)
        if (m[2] > out.k1) out.tail.push_back(m);
    const auto seed = op_lie(pp, out.k2, S(1), 2);
    for (int i : cokernel_indices(seed.cols, static_cast<int>(seed.codomain.monos.size())))
        out.base.push_back(
            Poly<S>::monomial(seed.codomain.monos[static_cast<std::size_t>(i)], S(1), 2));
    for (int l = 0; l < out.k1; ++l) {
        const auto rng = op_lie(pp, k - l * t3, S(1), 2);
        const std::size_t nc = rng.codomain.monos.size();
        std::map<Mono, std::size_t> idx;
        for (std::size_t i = 0; i < nc; ++i) idx[rng.codomain.monos[i]] = i;
        auto cols = rng.cols;
        const auto up = op_lie(pp, k - (l + 1) * t3, S(1), 2);
        for (const Vec<S>& kv : kernel_basis(up.cols, static_cast<int>(up.codomain.monos.size()))) {
            Poly<S> mu(2);
            for (std::size_t j = 0; j < up.domain.monos.size(); ++j)
                if (kv[j] != S(0)) mu.add_term(up.domain.monos[j], kv[j]);
            const Poly<S> img = pp.f * mu;
            Vec<S> v(nc, S(0));
            for (const auto& [m, c] : img.terms()) v[idx.at(m)] = c;
            cols.push_back(std::move(v));
        }
        std::vector<Poly<S>> blk;
        for (int i : cokernel_indices(cols, static_cast<int>(nc)))
            blk.push_back(
                Poly<S>::monomial(rng.codomain.monos[static_cast<std::size_t>(i)], S(1), 2));
        out.blocks.push_back(std::move(blk));
    }
    return out;
}

namespace detail {

// Degree r+k slice of the transformed field (1 + mu)F pushed through the
// truncated Lie series of the generators found so far.
template <class S>
VField<S> assemble_degree(const QHType& T, int r, const std::map<int, VField<S>>& field_terms,
                          const std::map<int, VField<S>>& U, const std::map<int, Poly<S>>& MU,
                          int k) {
    const int topdeg = r + k;
    Poly<S> mu_total(3);
    for (const auto& [j, m] : MU) mu_total += m;
    VField<S> Utot(3, 3);
    for (const auto& [j, u] : U) Utot += u;
    VField<S> H(3, 3);
    for (const auto& [d, Fd] : field_terms) H += Fd;
    for (auto& comp : H.c) comp += mu_total * comp;
    H = truncate_field(H, T, topdeg);
    VField<S> G = H, B = H;
    int minstep = k;
    for (const auto& [j, u] : U)
        if (!u.is_zero()) { minstep = std::min(minstep, j); break; }
    const int depth = std::max(1, (k + minstep - 1) / minstep);
    S invfact(1);
    for (int m = 1; m <= depth; ++m) {
        B = truncate_field(lie_bracket(B, Utot), T, topdeg);
        invfact /= S(m);
        VField<S> scaled = B;
        for (auto& comp : scaled.c) comp = comp * invfact;
        G += scaled;
    }
    return qh_slice_field(G, T, r + k);
}

} // namespace detail

template <class S>
struct NormalFormDegree {
    VField<S> U{3, 3};
    Poly<S> mu{3};
    VField<S> G{3, 3};
    // complement coordinates of G, including zero entries
    std::vector<std::tuple<char, Mono, S>> certificate;
};

template <class S>
struct NormalFormResult {
    PrincipalPart<S> principal;
    NFMode mode = NFMode::orbital;
    int N = 0;
    std::map<int, NormalFormDegree<S>> degrees;
    bool replay_ok = false;
};

// One-shot verification: pushes the input through the total generator series
// and the total reparametrization and returns the graded slices 1..N.
template <class S>
std::map<int, VField<S>> replay(const PrincipalPart<S>& pp,
                                const std::map<int, VField<S>>& field_terms,
                                const std::map<int, VField<S>>& U,
                                const std::map<int, Poly<S>>& MU, int N) {
    const int topdeg = pp.r + N;
    Poly<S> mu_total(3);
    for (const auto& [j, m] : MU) mu_total += m;
    VField<S> Utot(3, 3);
    for (const auto& [j, u] : U) Utot += u;
    VField<S> H(3, 3);
    for (const auto& [d, Fd] : field_terms) H += Fd;
    for (auto& comp : H.c) comp += mu_total * comp;
    H = truncate_field(H, pp.T, topdeg);
    VField<S> G = H, B = H;
    int minstep = 0;
    for (const auto& [j, u] : U)
        if (!u.is_zero()) { minstep = j; break; }
    if (minstep == 0) minstep = 1;
    const int depth = std::max(1, (N + minstep - 1) / minstep);
    S invfact(1);
    for (int m = 1; m <= depth; ++m) {
        B = truncate_field(lie_bracket(B, Utot), pp.T, topdeg);
        invfact /= S(m);
        VField<S> scaled = B;
        for (auto& comp : scaled.c) comp = comp * invfact;
        G += scaled;
    }
    std::map<int, VField<S>> out;
    for (int k = 1; k <= N; ++k) out[k] = qh_slice_field(G, pp.T, pp.r + k);
    return out;
}

// Degree-by-degree normal form through order N. F must contain the principal
// slice; every slice below degree r must vanish. Throws kernel_obstruction
// when the complement hypothesis fails at some degree.
template <class S>
NormalFormResult<S> normal_form(const PrincipalPart<S>& pp, const VField<S>& F, int N,
                                NFMode mode = NFMode::orbital,
                                std::optional<S> A_override = {}) {
    require_assumptions(pp);
    auto field_terms = field_decompose(F, pp.T);
    for (const auto& [d, Fd] : field_terms)
        if (d < pp.r)
            throw assumption_error("perturbation of the principal part",
                                   "slice of degree " + std::to_string(d) +
                                       " below the principal degree");
    if (field_terms.count(pp.r) == 0 || field_terms.at(pp.r) != pp.field())
        throw assumption_error("principal part matches the lowest slice",
                               "degree " + std::to_string(pp.r) + " slice differs");

    NormalFormResult<S> out{pp, mode, N, {}, false};
    std::map<int, VField<S>> U;
    std::map<int, Poly<S>> MU;
    std::map<int, VField<S>> G;
    for (int k = 1; k <= N; ++k) {
        const VField<S> P = detail::assemble_degree(pp.T, pp.r, field_terms, U, MU, k);
        FieldBasis dom;
        std::vector<Mono> mu_monos;
        FieldBasis cod;
        std::vector<Vec<S>> cols;
        if (mode == NFMode::orbital) {
            auto op = op_orbital(pp, k);
            dom = std::move(op.domain);
            mu_monos = std::move(op.mu_monos);
            cod = std::move(op.codomain);
            cols = std::move(op.cols);
        } else {
            auto op = op_conj(pp, k);
            dom = std::move(op.domain);
            cod = std::move(op.codomain);
            cols = std::move(op.cols);
        }
        const auto compl_k = struct_complement(pp, k, mode, A_override);
        for (const auto& v : compl_k.vecs) cols.push_back(v);
        const Vec<S> b = field_to_vec(P, cod);
        auto x = solve_min_support(cols, b);
        if (!x) throw std::logic_error("normal form solve failed at degree " + std::to_string(k));
        NormalFormDegree<S> rec;
        const std::size_t nd = dom.dimension();
        rec.U = vec_to_field(Vec<S>((*x).begin(), (*x).begin() + static_cast<long>(nd)), dom);
        for (std::size_t j = 0; j < mu_monos.size(); ++j)
            if ((*x)[nd + j] != S(0)) rec.mu.add_term(mu_monos[j], (*x)[nd + j]);
        const std::size_t base = nd + mu_monos.size();
        for (std::size_t j = 0; j < compl_k.vecs.size(); ++j) {
            const S a = (*x)[base + j];
            rec.certificate.emplace_back(compl_k.labels[j].first, compl_k.labels[j].second, a);
            if (a != S(0)) {
                Vec<S> scaled = compl_k.vecs[j];
                for (auto& vi : scaled) vi = vi * a;
                rec.G += vec_to_field(scaled, cod);
            }
        }
        U[k] = rec.U;
        MU[k] = rec.mu;
        G[k] = rec.G;
        out.degrees[k] = std::move(rec);
    }
    const auto R = replay(pp, field_terms, U, MU, N);
    out.replay_ok = true;
    for (int k = 1; k <= N; ++k)
        if (R.at(k) != G.at(k)) out.replay_ok = false;
    return out;
}

} // namespace qhnf
