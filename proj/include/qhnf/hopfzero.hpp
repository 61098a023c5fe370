#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nform.hpp"

namespace qhnf {

// ---------------------------------------------------------------------------
// First-order jet in the two unfolding parameters: c0 + c_eps*eps +
// c_delta*delta, every second-order parameter product dropped.

template <class S>
struct ParamScalar {
    S c0{0};
    S c_eps{0};
    S c_delta{0};

    ParamScalar() = default;
    ParamScalar(const S& v) : c0(v) {}
    ParamScalar(S v0, S ve, S vd) : c0(std::move(v0)), c_eps(std::move(ve)), c_delta(std::move(vd)) {}

    friend ParamScalar operator+(const ParamScalar& a, const ParamScalar& b) {
        return {a.c0 + b.c0, a.c_eps + b.c_eps, a.c_delta + b.c_delta};
    }
    friend ParamScalar operator-(const ParamScalar& a, const ParamScalar& b) {
        return {a.c0 - b.c0, a.c_eps - b.c_eps, a.c_delta - b.c_delta};
    }
    friend ParamScalar operator-(const ParamScalar& a) { return {-a.c0, -a.c_eps, -a.c_delta}; }
    friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
        return {a.c0 * b.c0, a.c0 * b.c_eps + a.c_eps * b.c0, a.c0 * b.c_delta + a.c_delta * b.c0};
    }
    ParamScalar inverse() const {
        const S iv = S(1) / c0;
        const S m = iv * iv;
        return {iv, -(c_eps * m), -(c_delta * m)};
    }
    friend ParamScalar operator/(const ParamScalar& a, const ParamScalar& b) {
        return a * b.inverse();
    }
    ParamScalar& operator+=(const ParamScalar& b) { return *this = *this + b; }
    ParamScalar& operator-=(const ParamScalar& b) { return *this = *this - b; }
    ParamScalar& operator*=(const ParamScalar& b) { return *this = *this * b; }
    ParamScalar& operator/=(const ParamScalar& b) { return *this = *this / b; }
    friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
        return a.c0 == b.c0 && a.c_eps == b.c_eps && a.c_delta == b.c_delta;
    }
    friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }
};

// Jet square root, defined for floating base scalars only.
template <class S>
ParamScalar<S> param_sqrt(const ParamScalar<S>& x) {
    static_assert(is_floating_scalar<S>, "jet sqrt needs a floating base scalar");
    if (!(x.c0 > S(0))) throw numeric_error("jet sqrt of a nonpositive leading value");
    const S s = std::sqrt(x.c0);
    const S h = S(1) / (S(2) * s);
    return {s, x.c_eps * h, x.c_delta * h};
}

inline double param_sqrt(double x) {
    if (!(x > 0.0)) throw numeric_error("sqrt of a nonpositive value");
    return std::sqrt(x);
}

namespace detail {
inline double jet_lead(double x) { return x; }
template <class S>
double jet_lead(const ParamScalar<S>& x) {
    return static_cast<double>(x.c0);
}
} // namespace detail

// ---------------------------------------------------------------------------
// Named coefficients of the unfolded cubic-jet family over the circular
// principal part. The degree-1 slice carries the quadratic planar terms and
// the parameter couplings (prime = eps, double prime = delta); the degree-2
// slice carries the cubic terms.

inline const std::vector<std::string>& hz_coeff_names() {
    static const std::vector<std::string> names{
        "A200", "A110", "A020", "Ap001", "App001",
        "B200", "B110", "B020", "Bp001", "Bpp001",
        "C300", "C210", "C120", "C030", "C101", "C011",
        "A300", "A210", "A120", "A030", "A101", "A011",
        "B300", "B210", "B120", "B030", "B101", "B011",
        "C400", "C310", "C220", "C130", "C040", "C201", "C111", "C021", "C002"};
    return names;
}

// The source statement indexes a few monomials by total degree in (x, y, z)
// with z double-counted, so the same coefficient appears under two names.
// The formula names are authoritative; the variants map onto them.
inline std::string hz_canonical_name(const std::string& raw) {
    static const std::map<std::string, std::string> alias{
        {"A102", "A101"}, {"B102", "B101"}, {"A012", "A011"}, {"B012", "B011"},
        {"C102", "C101"}, {"C012", "C011"}, {"C202", "C201"}, {"C112", "C111"},
        {"C022", "C021"}, {"C003", "C002"}};
    const auto it = alias.find(raw);
    const std::string name = it == alias.end() ? raw : it->second;
    const auto& names = hz_coeff_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) return {};
    return name;
}

template <class S>
struct HZInput {
    std::map<std::string, S> coeff;

    S get(const std::string& name) const {
        const auto canon = hz_canonical_name(name);
        if (canon.empty()) throw parse_error("unknown coefficient name '" + name + "'");
        const auto it = coeff.find(canon);
        return it == coeff.end() ? S(0) : it->second;
    }
    void set(const std::string& name, const S& v) {
        const auto canon = hz_canonical_name(name);
        if (canon.empty()) throw parse_error("unknown coefficient name '" + name + "'");
        coeff[canon] = v;
    }
};

template <class S>
PrincipalPart<S> hz_principal() {
    Poly<S> h(2);
    h.add_term(Mono{2, 0, 0}, S(1) / S(2));
    h.add_term(Mono{0, 2, 0}, S(1) / S(2));
    return PrincipalPart<S>(QHType(1, 1, 2), 0, h, h);
}

// ---------------------------------------------------------------------------
// Jet-valued fields: (base, eps slope, delta slope).

template <class S>
struct JetField {
    VField<S> base{3, 3};
    VField<S> eps{3, 3};
    VField<S> delta{3, 3};

    bool operator==(const JetField& o) const {
        return base == o.base && eps == o.eps && delta == o.delta;
    }
};

template <class S>
struct JetPoly {
    Poly<S> base{3};
    Poly<S> eps{3};
    Poly<S> delta{3};

    bool operator==(const JetPoly& o) const {
        return base == o.base && eps == o.eps && delta == o.delta;
    }
};

template <class S>
JetField<S> jet_add(const JetField<S>& A, const JetField<S>& B) {
    JetField<S> out = A;
    out.base += B.base;
    out.eps += B.eps;
    out.delta += B.delta;
    return out;
}

template <class S>
JetField<S> jet_bracket(const JetField<S>& A, const JetField<S>& B) {
    JetField<S> out;
    out.base = lie_bracket(A.base, B.base);
    out.eps = lie_bracket(A.base, B.eps);
    out.eps += lie_bracket(A.eps, B.base);
    out.delta = lie_bracket(A.base, B.delta);
    out.delta += lie_bracket(A.delta, B.base);
    return out;
}

template <class S>
JetField<S> jet_mul(const JetPoly<S>& p, const JetField<S>& F) {
    JetField<S> out;
    for (int j = 0; j < 3; ++j) {
        out.base.c[j] = p.base * F.base.c[j];
        out.eps.c[j] = p.base * F.eps.c[j] + p.eps * F.base.c[j];
        out.delta.c[j] = p.base * F.delta.c[j] + p.delta * F.base.c[j];
    }
    return out;
}

template <class S>
JetField<S> jet_scale(const JetField<S>& A, const S& s) {
    JetField<S> out = A;
    for (int j = 0; j < 3; ++j) {
        out.base.c[j] = out.base.c[j] * s;
        out.eps.c[j] = out.eps.c[j] * s;
        out.delta.c[j] = out.delta.c[j] * s;
    }
    return out;
}

template <class S>
JetField<S> jet_truncate(const JetField<S>& A, const QHType& T, int topdeg) {
    JetField<S> out;
    out.base = truncate_field(A.base, T, topdeg);
    out.eps = truncate_field(A.eps, T, topdeg);
    out.delta = truncate_field(A.delta, T, topdeg);
    return out;
}

template <class S>
JetField<S> jet_slice(const JetField<S>& A, const QHType& T, int k) {
    JetField<S> out;
    out.base = qh_slice_field(A.base, T, k);
    out.eps = qh_slice_field(A.eps, T, k);
    out.delta = qh_slice_field(A.delta, T, k);
    return out;
}

// Parameter slopes of the unfolded linear part: eps couples the planar
// radial direction, delta the axis direction.
template <class S>
VField<S> hz_eps_field() {
    VField<S> F(3, 3);
    F.c[0] = Poly<S>::monomial(Mono{1, 0, 0}, S(1), 3);
    F.c[1] = Poly<S>::monomial(Mono{0, 1, 0}, S(1), 3);
    return F;
}

template <class S>
VField<S> hz_delta_field() {
    VField<S> F(3, 3);
    F.c[2] = Poly<S>::monomial(Mono{0, 0, 1}, S(1), 3);
    return F;
}

// Graded jet slices of the input family: degree 0 is the unfolded principal
// part, degrees 1 and 2 carry the named coefficients.
template <class S>
std::map<int, JetField<S>> hz_fields(const HZInput<S>& in) {
    auto c = [&](const char* n) { return in.get(n); };
    std::map<int, JetField<S>> terms;

    JetField<S> F0;
    F0.base = hz_principal<S>().field();
    F0.eps = hz_eps_field<S>();
    F0.delta = hz_delta_field<S>();
    terms.emplace(0, std::move(F0));

    JetField<S> F1;
    F1.base.c[0].add_term(Mono{2, 0, 0}, c("A200"));
    F1.base.c[0].add_term(Mono{1, 1, 0}, c("A110"));
    F1.base.c[0].add_term(Mono{0, 2, 0}, c("A020"));
    F1.base.c[1].add_term(Mono{2, 0, 0}, c("B200"));
    F1.base.c[1].add_term(Mono{1, 1, 0}, c("B110"));
    F1.base.c[1].add_term(Mono{0, 2, 0}, c("B020"));
    F1.base.c[2].add_term(Mono{3, 0, 0}, c("C300"));
    F1.base.c[2].add_term(Mono{2, 1, 0}, c("C210"));
    F1.base.c[2].add_term(Mono{1, 2, 0}, c("C120"));
    F1.base.c[2].add_term(Mono{0, 3, 0}, c("C030"));
    F1.base.c[2].add_term(Mono{1, 0, 1}, c("C101"));
    F1.base.c[2].add_term(Mono{0, 1, 1}, c("C011"));
    F1.eps.c[0].add_term(Mono{0, 0, 1}, c("Ap001"));
    F1.eps.c[1].add_term(Mono{0, 0, 1}, c("Bp001"));
    F1.delta.c[0].add_term(Mono{0, 0, 1}, c("App001"));
    F1.delta.c[1].add_term(Mono{0, 0, 1}, c("Bpp001"));
    terms.emplace(1, std::move(F1));

    JetField<S> F2;
    F2.base.c[0].add_term(Mono{3, 0, 0}, c("A300"));
    F2.base.c[0].add_term(Mono{2, 1, 0}, c("A210"));
    F2.base.c[0].add_term(Mono{1, 2, 0}, c("A120"));
    F2.base.c[0].add_term(Mono{0, 3, 0}, c("A030"));
    F2.base.c[0].add_term(Mono{1, 0, 1}, c("A101"));
    F2.base.c[0].add_term(Mono{0, 1, 1}, c("A011"));
    F2.base.c[1].add_term(Mono{3, 0, 0}, c("B300"));
    F2.base.c[1].add_term(Mono{2, 1, 0}, c("B210"));
    F2.base.c[1].add_term(Mono{1, 2, 0}, c("B120"));
    F2.base.c[1].add_term(Mono{0, 3, 0}, c("B030"));
    F2.base.c[1].add_term(Mono{1, 0, 1}, c("B101"));
    F2.base.c[1].add_term(Mono{0, 1, 1}, c("B011"));
    F2.base.c[2].add_term(Mono{4, 0, 0}, c("C400"));
    F2.base.c[2].add_term(Mono{3, 1, 0}, c("C310"));
    F2.base.c[2].add_term(Mono{2, 2, 0}, c("C220"));
    F2.base.c[2].add_term(Mono{1, 3, 0}, c("C130"));
    F2.base.c[2].add_term(Mono{0, 4, 0}, c("C040"));
    F2.base.c[2].add_term(Mono{2, 0, 1}, c("C201"));
    F2.base.c[2].add_term(Mono{1, 1, 1}, c("C111"));
    F2.base.c[2].add_term(Mono{0, 2, 1}, c("C021"));
    F2.base.c[2].add_term(Mono{0, 0, 2}, c("C002"));
    terms.emplace(2, std::move(F2));
    return terms;
}

// ---------------------------------------------------------------------------
// Parametric normal form pipeline: the critical solve plus two derivative
// solves against the same operator matrix, one per parameter slope.

template <class S>
struct HZParamRun {
    NFMode mode = NFMode::conjugation;
    int N = 0;
    int reparam_sign = 1;
    std::map<int, std::map<std::pair<char, Mono>, ParamScalar<S>>> slots;
    std::map<int, JetField<S>> U;
    std::map<int, JetPoly<S>> mu;
};

// reparam_sign selects the time-rescale bookkeeping: +1 records H=(1+mu)F,
// -1 records H=(1-mu)F. The generators and normal form slots are identical;
// mu flips sign.
template <class S>
HZParamRun<S> hz_param_pipeline(const HZInput<S>& input, NFMode mode, int N = 3,
                                int reparam_sign = 1) {
    if (reparam_sign != 1 && reparam_sign != -1)
        throw std::invalid_argument("reparam_sign must be +1 or -1");
    const auto pp = hz_principal<S>();
    const QHType& T = pp.T;
    const auto terms = hz_fields(input);
    const VField<S> F0e = hz_eps_field<S>();
    const VField<S> F0d = hz_delta_field<S>();
    const S sgn(reparam_sign);
    const S msgn(-reparam_sign);

    HZParamRun<S> run;
    run.mode = mode;
    run.N = N;
    run.reparam_sign = reparam_sign;
    for (int k = 1; k <= N; ++k) {
        JetPoly<S> mu_t;
        for (const auto& [j, mj] : run.mu) {
            mu_t.base += mj.base;
            mu_t.eps += mj.eps;
            mu_t.delta += mj.delta;
        }
        JetField<S> Ut;
        for (const auto& [j, u] : run.U) Ut = jet_add(Ut, u);
        JetField<S> H;
        for (const auto& [d, Fd] : terms) H = jet_add(H, Fd);
        H = jet_add(H, jet_scale(jet_mul(mu_t, H), sgn));
        H = jet_truncate(H, T, k);
        JetField<S> G = H, B = H;
        int minstep = k;
        if (!run.U.empty()) minstep = run.U.begin()->first;
        const int depth = std::max(1, (k + minstep - 1) / minstep);
        S invfact(1);
        for (int m = 1; m <= depth; ++m) {
            B = jet_truncate(jet_bracket(B, Ut), T, k);
            invfact /= S(m);
            G = jet_add(G, jet_scale(B, invfact));
        }
        const JetField<S> Pk = jet_slice(G, T, k);

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
            if (reparam_sign == -1)
                for (std::size_t j = dom.dimension(); j < cols.size(); ++j)
                    for (auto& v : cols[j]) v = -v;
        } else {
            auto op = op_conj(pp, k);
            dom = std::move(op.domain);
            cod = std::move(op.codomain);
            cols = std::move(op.cols);
        }
        const std::size_t nd = dom.dimension();
        const std::size_t nm = mu_monos.size();
        if (k == 1 && !kernel_basis(cols, static_cast<int>(cod.dimension())).empty())
            throw numeric_error("degree-1 generator is not unique");
        const auto compl_k = struct_complement(pp, k, mode);
        for (const auto& v : compl_k.vecs) cols.push_back(v);

        std::vector<Vec<S>> colsE, colsD;
        for (const auto& [j, m] : dom.entries) {
            VField<S> P(3, 3);
            P.c[j] = Poly<S>::monomial(m, S(1), 3);
            colsE.push_back(field_to_vec(lie_bracket(P, F0e), cod));
            colsD.push_back(field_to_vec(lie_bracket(P, F0d), cod));
        }
        for (const Mono& m : mu_monos) {
            const auto mono = Poly<S>::monomial(m, S(1), 3);
            VField<S> ie(3, 3), id(3, 3);
            for (int j = 0; j < 3; ++j) {
                ie.c[j] = msgn * (mono * F0e.c[j]);
                id.c[j] = msgn * (mono * F0d.c[j]);
            }
            colsE.push_back(field_to_vec(ie, cod));
            colsD.push_back(field_to_vec(id, cod));
        }

        const Vec<S> b0 = field_to_vec(Pk.base, cod);
        Vec<S> be = field_to_vec(Pk.eps, cod);
        Vec<S> bd = field_to_vec(Pk.delta, cod);
        const auto x0 = solve_min_support(cols, b0);
        if (!x0) throw numeric_error("parametric solve failed at degree " + std::to_string(k));
        for (std::size_t j = 0; j < nd + nm; ++j) {
            const S& xj = (*x0)[j];
            if (xj == S(0)) continue;
            for (std::size_t i = 0; i < be.size(); ++i) {
                be[i] -= xj * colsE[j][i];
                bd[i] -= xj * colsD[j][i];
            }
        }
        const auto xe = solve_min_support(cols, be);
        const auto xd = solve_min_support(cols, bd);
        if (!xe || !xd)
            throw numeric_error("parametric jet solve failed at degree " + std::to_string(k));

        JetField<S> Uk;
        Uk.base = vec_to_field(Vec<S>(x0->begin(), x0->begin() + static_cast<long>(nd)), dom);
        Uk.eps = vec_to_field(Vec<S>(xe->begin(), xe->begin() + static_cast<long>(nd)), dom);
        Uk.delta = vec_to_field(Vec<S>(xd->begin(), xd->begin() + static_cast<long>(nd)), dom);
        run.U.emplace(k, std::move(Uk));
        JetPoly<S> muk;
        for (std::size_t j = 0; j < nm; ++j) {
            if ((*x0)[nd + j] != S(0)) muk.base.add_term(mu_monos[j], (*x0)[nd + j]);
            if ((*xe)[nd + j] != S(0)) muk.eps.add_term(mu_monos[j], (*xe)[nd + j]);
            if ((*xd)[nd + j] != S(0)) muk.delta.add_term(mu_monos[j], (*xd)[nd + j]);
        }
        run.mu.emplace(k, std::move(muk));
        auto& sk = run.slots[k];
        const std::size_t base = nd + nm;
        for (std::size_t j = 0; j < compl_k.vecs.size(); ++j)
            sk[{compl_k.labels[j].first, compl_k.labels[j].second}] =
                ParamScalar<S>((*x0)[base + j], (*xe)[base + j], (*xd)[base + j]);
    }
    return run;
}

// ---------------------------------------------------------------------------
// Coefficient extraction and the transcribed closed forms.

template <class S>
struct HZCoeffs {
    ParamScalar<S> a1;
    ParamScalar<S> b1;
    ParamScalar<S> c1; // zero in orbital mode (absorbed by the time rescale)
};

template <class S>
struct HZParametric {
    NFMode mode = NFMode::conjugation;
    HZCoeffs<S> coeffs;
    HZParamRun<S> run;
};

template <class S>
HZParametric<S> parametric_normal_form(const HZInput<S>& input, NFMode mode, int N = 3) {
    if (N < 2) throw std::invalid_argument("parametric normal form needs N >= 2");
    HZParametric<S> out;
    out.mode = mode;
    out.run = hz_param_pipeline(input, mode, N);
    const auto& s2 = out.run.slots.at(2);
    auto slot = [&](char lab, const Mono& m) {
        const auto it = s2.find({lab, m});
        return it == s2.end() ? ParamScalar<S>() : it->second;
    };
    out.coeffs.a1 = slot('D', Mono{0, 0, 1});
    out.coeffs.b1 = slot('G', Mono{0, 0, 2});
    if (mode == NFMode::conjugation) out.coeffs.c1 = slot('F', Mono{0, 0, 1});
    return out;
}

// Transcribed coefficient forms, including both parameter slopes.
template <class S>
HZCoeffs<S> hz_coefficient_formulas(const HZInput<S>& in) {
    auto c = [&](const char* n) { return in.get(n); };
    const S half = S(1) / S(2);
    const S quarter = S(1) / S(4);

    HZCoeffs<S> out;
    out.a1.c0 = c("A101") * half + c("B011") * half;
    out.a1.c_eps = c("Ap001") * c("A110") * half + c("Ap001") * c("B020")
                 - c("Ap001") * c("C011") * half - c("A200") * c("Bp001")
                 + c("Bp001") * c("C101") * half - c("Bp001") * c("B110") * half;
    out.a1.c_delta = -c("A120") * quarter - S(3) * c("A300") * quarter
                   - S(3) * c("B030") * quarter - c("B210") * quarter
                   - c("A020") * c("A110") * quarter - c("A020") * c("B020") * half
                   - c("A110") * c("A200") * quarter + c("A200") * c("B200") * half
                   + c("B020") * c("B110") * quarter + c("B110") * c("B200") * quarter
                   + c("App001") * c("A110") * half + c("App001") * c("B020")
                   - c("App001") * c("C011") * half - c("A200") * c("Bpp001")
                   + c("Bpp001") * c("C101") * half - c("Bpp001") * c("B110") * half;

    out.b1.c0 = c("C002");
    out.b1.c_eps = c("Ap001") * c("C011") - c("Bp001") * c("C101");
    out.b1.c_delta = -c("A120") * quarter - S(3) * c("A300") * quarter
                   - S(3) * c("B030") * quarter - c("B210") * quarter
                   - c("C021") * half - c("C201") * half
                   - c("A020") * c("A110") * quarter - c("A110") * c("A200") * quarter
                   + c("B020") * c("B110") * quarter + c("B110") * c("B200") * quarter
                   - c("A020") * c("B020") * half + c("A200") * c("B200") * half
                   - c("A020") * c("C011") * half - c("A200") * c("C011") * half
                   + c("B020") * c("C101") * half + c("B200") * c("C101") * half
                   + c("App001") * c("C011") - c("Bpp001") * c("C101");

    out.c1.c0 = -c("A011") * half + c("B101") * half;
    out.c1.c_eps = -c("Ap001") * c("A020") + c("Ap001") * c("B110") * half
                 - c("Ap001") * c("C101") * half + c("A110") * c("Bp001") * half
                 - c("Bp001") * c("C011") * half - c("Bp001") * c("B200");
    out.c1.c_delta = S(3) * c("A030") * quarter + c("A210") * quarter
                   - c("B120") * quarter - S(3) * c("B300") * quarter
                   + S(5) * c("A020") * c("A020") / S(6) + c("A110") * c("A110") / S(12)
                   + c("A200") * c("A200") / S(3) + c("B020") * c("B020") / S(3)
                   + c("B110") * c("B110") / S(12) + S(5) * c("B200") * c("B200") / S(6)
                   - c("A020") * c("B110") / S(12) - c("A110") * c("B200") / S(12)
                   + S(5) * c("A020") * c("A200") / S(6) - S(5) * c("A110") * c("B020") / S(12)
                   - S(5) * c("A200") * c("B110") / S(12) + S(5) * c("B020") * c("B200") / S(6)
                   - c("App001") * c("A020") + c("App001") * c("B110") * half
                   - c("App001") * c("C101") * half + c("A110") * c("Bpp001") * half
                   - c("Bpp001") * c("C011") * half - c("Bpp001") * c("B200");
    return out;
}

// Printed degree-1 generator (p1, q1, r1) at the critical parameter level.
template <class S>
VField<S> hz_formula_U1(const HZInput<S>& in) {
    auto c = [&](const char* n) { return in.get(n); };
    const S t3 = S(1) / S(3);
    VField<S> U(3, 3);
    U.c[0].add_term(Mono{2, 0, 0}, -(c("A110") * t3 + S(2) * c("B020") * t3 + c("B200") * t3));
    U.c[0].add_term(Mono{1, 1, 0}, S(2) * c("A200") * t3 + c("B110") * t3 - S(2) * c("A020") * t3);
    U.c[0].add_term(Mono{0, 2, 0}, c("A110") * t3 - c("B020") * t3 - S(2) * c("B200") * t3);
    U.c[1].add_term(Mono{2, 0, 0}, S(2) * c("A020") * t3 + c("A200") * t3 - c("B110") * t3);
    U.c[1].add_term(Mono{1, 1, 0}, S(2) * c("B200") * t3 - c("A110") * t3 - S(2) * c("B020") * t3);
    U.c[1].add_term(Mono{0, 2, 0}, S(2) * c("A200") * t3 + c("B110") * t3 + c("A020") * t3);
    U.c[2].add_term(Mono{1, 0, 1}, -c("C011"));
    U.c[2].add_term(Mono{0, 1, 1}, c("C101"));
    U.c[2].add_term(Mono{3, 0, 0}, c("C101") / S(2) - S(2) * c("B110") / S(9)
                                 - S(2) * c("C030") * t3 - S(2) * c("A020") / S(9)
                                 - S(7) * c("A200") / S(9) - c("C210") * t3);
    U.c[2].add_term(Mono{2, 1, 0}, c("C300") + c("C011") / S(2) - S(2) * c("B020") * t3
                                 - c("B200") * t3 - c("A110") * t3);
    U.c[2].add_term(Mono{1, 2, 0}, c("C101") / S(2) - S(2) * c("A200") * t3
                                 - c("B110") * t3 - c("A020") * t3 - c("C030"));
    U.c[2].add_term(Mono{0, 3, 0}, c("C011") / S(2) - S(7) * c("B020") / S(9)
                                 + c("C120") * t3 - S(2) * c("B200") / S(9)
                                 + S(2) * c("C300") * t3 - S(2) * c("A110") / S(9));
    return U;
}

// ---------------------------------------------------------------------------
// Miniversal reduction of the unfolded linear data: the proof chain mapping
// the ten template slots to the two unfolding values. The z-coupling slots
// g1, g2 shift the orbit center only; they do not enter (epsilon, delta) at
// this order.

template <class S>
struct MiniversalResult {
    S epsilon{0};
    S delta{0};
    S at1{0};
    S a{0};
    S eps_hat{0};
    S a1_hat{0};
    S c1_hat{0};
    S c2_hat{0};
    S g4_hat{0};
    S d1_hat{0};
    S d2_hat{0};
    S c_final{0};
};

template <class S>
MiniversalResult<S> miniversal_reduce(const S& al1, const S& al2, const S& be1, const S& be2,
                                      const S& g1, const S& g2, const S& g3, const S& g4,
                                      const S& g5, const S& g6) {
    (void)g1;
    (void)g2;
    if (detail::jet_lead(S(1) + al2) <= 0.0)
        throw numeric_error("miniversal reduction needs 1 + alpha2 > 0");
    if (detail::jet_lead(S(1) + be2) <= 0.0)
        throw numeric_error("miniversal reduction needs 1 + beta2 > 0");
    const S sa = param_sqrt(S(1) + al2);
    const S sb = param_sqrt(S(1) + be2);
    const S at1 = sa * sb;
    const S gt4 = g4 * at1;
    const S gt5 = (S(2) * al2 * g5 + al2 + S(2) * g5) / S(2);
    const S gt6 = (S(2) * be2 * g6 + be2 + S(2) * g6) / S(2);
    const S rad = S(4) * at1 * at1 - (be1 - al1) * (be1 - al1);
    if (detail::jet_lead(rad) < 0.0)
        throw numeric_error("miniversal reduction: complex mixing root");
    const S disc = param_sqrt(rad);
    const S a = (be1 - al1) / (S(2) * at1 + disc);
    const S a2m1 = a * a - S(1);
    if (std::fabs(detail::jet_lead(a2m1)) < 1e-12)
        throw numeric_error("miniversal reduction: mixing coefficient at +-1");
    const S eh = (be1 * a * a - S(2) * at1 * a - al1) / a2m1;
    const S ah1 = -(at1 * a * a + (al1 - be1) * a + at1) / a2m1;
    if (std::fabs(detail::jet_lead(ah1)) < 1e-300)
        throw numeric_error("miniversal reduction: vanishing rotation rate");
    const S ch1 = ((S(1) + S(2) * gt6) * a * a - S(2) * gt4 * a + S(1) + S(2) * gt5)
                / (S(2) * a2m1 * a2m1);
    const S ch2 = ((S(1) + S(2) * gt5) * a * a - S(2) * gt4 * a + S(1) + S(2) * gt6)
                / (S(2) * a2m1 * a2m1);
    const S gh4 = (gt4 * a * a - S(2) * (gt5 + gt6) * a - S(2) * a + gt4) / (a2m1 * a2m1);
    const S q = S(2) * eh - g3;
    const S den = q * q + S(4) * ah1 * ah1;
    const S dh1 = -(q * gh4 + S(2) * (ch1 - ch2) * ah1) / den;
    const S dh2 = -(q * (ch1 - ch2) - S(2) * gh4 * ah1) / den;
    const S cfin = S(2) * (q * q * ch2 + q * gh4 * ah1 + S(2) * (ch1 + ch2) * ah1 * ah1)
                 / (ah1 * den);
    MiniversalResult<S> out;
    out.epsilon = eh / ah1;
    out.delta = g3 / ah1;
    out.at1 = at1;
    out.a = a;
    out.eps_hat = eh;
    out.a1_hat = ah1;
    out.c1_hat = ch1;
    out.c2_hat = ch2;
    out.g4_hat = gh4;
    out.d1_hat = dh1;
    out.d2_hat = dh2;
    out.c_final = cfin;
    return out;
}

} // namespace qhnf
