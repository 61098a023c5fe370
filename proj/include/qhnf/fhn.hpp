#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "hopfzero.hpp"

namespace qhnf {

// FitzHugh-Nagumo traveling-wave family
//   x' = z
//   y' = b (x - d y)
//   z' = x^3 - (1 + a) x^2 + a x + y + c z
// reduced at its Hopf-zero point: a and c sit at the critical values for
// given (b, d), the linear part is brought to rotation + axis form, the time
// is rescaled to unit rotation rate, and the axis variable is shifted and
// rescaled until the quadratic axis row is the standard paraboloid. The whole
// module works in binary64.

struct FHNParams {
    double b = 0;
    double d = 0;
    double a_star = 0;
    double c_star = 0;
    double omega = 0;
};

// Critical parameter values and rotation rate; verifies that the linearized
// spectrum at the origin is {0, +-i omega} within 1e-12 via the elementary
// invariants of the Jacobian.
inline FHNParams fhn_critical(double b, double d) {
    if (d == 0.0) throw assumption_error("d != 0", "the recovery scale vanishes");
    if (b == 0.0) throw assumption_error("b != 0", "the recovery coupling vanishes");
    const double w = (1.0 - b * b * d * d * d) / d;
    if (!(w > 0.0))
        throw assumption_error("d (1 - b^2 d^3) > 0",
                               "no imaginary eigenvalue pair at the candidate point");
    FHNParams p;
    p.b = b;
    p.d = d;
    p.a_star = -1.0 / d;
    p.c_star = b * d;
    p.omega = std::sqrt(w);
    const double tr = -b * d + p.c_star;
    const double det = b + b * d * p.a_star;
    const double m2 = -p.a_star - b * d * p.c_star;
    const double scale = 1.0 + std::fabs(b * d) + std::fabs(p.a_star) + w;
    if (std::fabs(tr) > 1e-12 * scale || std::fabs(det) > 1e-12 * scale ||
        std::fabs(m2 - w) > 1e-12 * scale)
        throw numeric_error("critical spectrum is not {0, +-i omega}");
    return p;
}

// The family as a polynomial field; a and c may carry parameter jets.
template <class S>
VField<S> fhn_field(const S& a, double b, const S& c, double d) {
    VField<S> F(3, 3);
    F.c[0].add_term(Mono{0, 0, 1}, S(1));
    F.c[1].add_term(Mono{1, 0, 0}, S(b));
    F.c[1].add_term(Mono{0, 1, 0}, S(-b * d));
    F.c[2].add_term(Mono{3, 0, 0}, S(1));
    F.c[2].add_term(Mono{2, 0, 0}, -(S(1) + a));
    F.c[2].add_term(Mono{1, 0, 0}, a);
    F.c[2].add_term(Mono{0, 1, 0}, S(1));
    F.c[2].add_term(Mono{0, 0, 1}, c);
    return F;
}

namespace detail {

template <class S>
VField<S> push_linear(const VField<S>& F, const Mat3<double>& P, const Mat3<double>& Pinv) {
    std::array<Poly<S>, 3> sub{Poly<S>(3), Poly<S>(3), Poly<S>(3)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mono m{0, 0, 0};
            m[static_cast<std::size_t>(j)] = 1;
            sub[static_cast<std::size_t>(i)].add_term(m, S(P[static_cast<std::size_t>(i)]
                                                                [static_cast<std::size_t>(j)]));
        }
    std::array<Poly<S>, 3> pushed{Poly<S>(3), Poly<S>(3), Poly<S>(3)};
    for (int j = 0; j < 3; ++j)
        pushed[static_cast<std::size_t>(j)] = compose(F.c[j], sub[0], sub[1], sub[2]);
    VField<S> out(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.c[i] += pushed[static_cast<std::size_t>(j)] *
                        S(Pinv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return out;
}

// New axis coordinate z + s x y; the axis row gains s (x' y + x y') and all
// rows read the old z as z - s x y.
template <class S>
VField<S> push_shift_xy(VField<S> F, double s) {
    const auto x = Poly<S>::monomial(Mono{1, 0, 0}, S(1), 3);
    const auto y = Poly<S>::monomial(Mono{0, 1, 0}, S(1), 3);
    F.c[2] += (x * F.c[1] + y * F.c[0]) * S(s);
    Poly<S> repl(3);
    repl.add_term(Mono{0, 0, 1}, S(1));
    repl.add_term(Mono{1, 1, 0}, S(-s));
    for (int j = 0; j < 3; ++j) F.c[j] = substitute_z(F.c[j], repl);
    return F;
}

template <class S>
VField<S> push_zrescale(VField<S> F, double C) {
    F.c[2] = F.c[2] * S(1.0 / C);
    const auto repl = Poly<S>::monomial(Mono{0, 0, 1}, S(C), 3);
    for (int j = 0; j < 3; ++j) F.c[j] = substitute_z(F.c[j], repl);
    return F;
}

} // namespace detail

template <class S>
struct FHNReduction {
    FHNParams critical;
    double k1 = 0;
    double k2 = 0;
    double k3 = 0;
    double shift = 0;
    double scale = 0;
    VField<S> reduced{3, 3};
    double residual = 0;
};

// Full reduction chain at (a, c) = critical values + optional jets. The
// rescale_before_shift switch performs the last two steps in the opposite
// order (with the shift measured in rescaled coordinates); the composed
// change of variables is identical either way.
template <class S>
FHNReduction<S> fhn_reduce_param(double b, double d, const S& a, const S& c,
                                 bool rescale_before_shift = false) {
    FHNReduction<S> out;
    out.critical = fhn_critical(b, d);
    if (d == 1.0) throw assumption_error("d=1", "C=0");
    const double omega = out.critical.omega;

    Mat3<double> P;
    P[0] = {1.0, 0.0, d};
    P[1] = {b * b * d * d, b * d * omega, 1.0};
    P[2] = {0.0, -omega, 0.0};
    const Mat3<double> Pinv = inverse3(P);

    VField<S> F = fhn_field(a, b, c, d);
    F = detail::push_linear(F, P, Pinv);
    for (int j = 0; j < 3; ++j) F.c[j] = F.c[j] * S(1.0 / omega);
    // The scalar nonlinearity sits in the third equation, so the conjugated
    // system carries it along the last column of Pinv. Recorded against the
    // closed forms (-bd/w^3, -1/w^2, b/w^3).
    out.k1 = Pinv[0][2] / omega;
    out.k2 = Pinv[1][2] / omega;
    out.k3 = Pinv[2][2] / omega;
    const double w3 = omega * omega * omega;
    if (std::fabs(out.k1 + b * d / w3) > 1e-12 * (1.0 + std::fabs(out.k1)) ||
        std::fabs(out.k2 + 1.0 / (omega * omega)) > 1e-12 * (1.0 + std::fabs(out.k2)) ||
        std::fabs(out.k3 - b / w3) > 1e-12 * (1.0 + std::fabs(out.k3)))
        throw numeric_error("nonlinearity weights disagree with their closed forms");
    out.shift = out.k3 * (d - 1.0) / (2.0 * d);
    out.scale = out.k3 * (1.0 - d) / d;
    if (rescale_before_shift) {
        F = detail::push_zrescale(std::move(F), out.scale);
        F = detail::push_shift_xy(std::move(F), out.shift / out.scale);
    } else {
        F = detail::push_shift_xy(std::move(F), out.shift);
        F = detail::push_zrescale(std::move(F), out.scale);
    }
    out.reduced = std::move(F);

    // Distance of the weight-zero slice from the circular principal part. Zero
    // at the critical parameter values; of order (a - a*, c - c*) away from
    // them, where the deviation is the unfolding payload.
    const QHType T(1, 1, 2);
    const auto head = qh_slice_field(out.reduced, T, 0);
    const auto target = hz_principal<S>().field();
    for (int j = 0; j < 3; ++j) {
        const auto diff = head.c[j] - target.c[j];
        for (const auto& [m, v] : diff.terms())
            out.residual = std::max(out.residual, std::fabs(detail::jet_lead(v)));
    }
    return out;
}

inline FHNReduction<double> fhn_reduce(double b, double d) {
    const auto cr = fhn_critical(b, d);
    auto red = fhn_reduce_param<double>(b, d, cr.a_star, cr.c_star);
    if (red.residual > 1e-12)
        throw numeric_error("reduced field misses the circular principal part");
    return red;
}

// Named degree-1/2 slices of the critical reduced field. Throws if either
// slice carries a monomial outside the named family shape.
inline HZInput<double> fhn_named_input(const VField<double>& R) {
    const QHType T(1, 1, 2);
    HZInput<double> in;
    struct SlotMap {
        int slice;
        int comp;
        Mono m;
        const char* name;
    };
    static const std::vector<SlotMap> slots = {
        {1, 0, {2, 0, 0}, "A200"}, {1, 0, {1, 1, 0}, "A110"}, {1, 0, {0, 2, 0}, "A020"},
        {1, 1, {2, 0, 0}, "B200"}, {1, 1, {1, 1, 0}, "B110"}, {1, 1, {0, 2, 0}, "B020"},
        {1, 2, {3, 0, 0}, "C300"}, {1, 2, {2, 1, 0}, "C210"}, {1, 2, {1, 2, 0}, "C120"},
        {1, 2, {0, 3, 0}, "C030"}, {1, 2, {1, 0, 1}, "C101"}, {1, 2, {0, 1, 1}, "C011"},
        {2, 0, {3, 0, 0}, "A300"}, {2, 0, {2, 1, 0}, "A210"}, {2, 0, {1, 2, 0}, "A120"},
        {2, 0, {0, 3, 0}, "A030"}, {2, 0, {1, 0, 1}, "A101"}, {2, 0, {0, 1, 1}, "A011"},
        {2, 1, {3, 0, 0}, "B300"}, {2, 1, {2, 1, 0}, "B210"}, {2, 1, {1, 2, 0}, "B120"},
        {2, 1, {0, 3, 0}, "B030"}, {2, 1, {1, 0, 1}, "B101"}, {2, 1, {0, 1, 1}, "B011"},
        {2, 2, {4, 0, 0}, "C400"}, {2, 2, {3, 1, 0}, "C310"}, {2, 2, {2, 2, 0}, "C220"},
        {2, 2, {1, 3, 0}, "C130"}, {2, 2, {0, 4, 0}, "C040"}, {2, 2, {2, 0, 1}, "C201"},
        {2, 2, {1, 1, 1}, "C111"}, {2, 2, {0, 2, 1}, "C021"}, {2, 2, {0, 0, 2}, "C002"}};
    for (int k = 1; k <= 2; ++k) {
        const auto slice = qh_slice_field(R, T, k);
        for (int j = 0; j < 3; ++j) {
            for (const auto& [m, v] : slice.c[j].terms()) {
                bool mapped = false;
                for (const auto& s : slots)
                    if (s.slice == k && s.comp == j && s.m == m) {
                        in.set(s.name, v);
                        mapped = true;
                        break;
                    }
                if (!mapped && std::fabs(v) > 1e-12)
                    throw numeric_error("reduced slice carries an unexpected monomial");
            }
        }
    }
    return in;
}

struct FHNCoeffs {
    FHNParams critical;
    double residual = 0;
    // normal form engine values, conjugation mode, critical level
    double a1 = 0;
    double b1 = 0;
    double c1 = 0;
    // transcribed closed forms evaluated on the same named input
    double a1_formula = 0;
    double b1_formula = 0;
    double c1_formula = 0;
    // printed reference values and the scale factor relating the two
    // normalizations: printed = gauge * engine
    double a1_printed = 0;
    double b1_printed = 0;
    double c1_printed = 0;
    double gauge = 0;
};

inline FHNCoeffs fhn_coeffs(double b, double d) {
    const auto red = fhn_reduce(b, d);
    const auto input = fhn_named_input(red.reduced);
    const auto nf = parametric_normal_form(input, NFMode::conjugation);
    const auto f = hz_coefficient_formulas(input);
    FHNCoeffs out;
    out.critical = red.critical;
    out.residual = red.residual;
    out.a1 = nf.coeffs.a1.c0;
    out.b1 = nf.coeffs.b1.c0;
    out.c1 = nf.coeffs.c1.c0;
    out.a1_formula = f.a1.c0;
    out.b1_formula = f.b1.c0;
    out.c1_formula = f.c1.c0;
    const double omega = red.critical.omega;
    out.a1_printed = -d * d / (2.0 * omega);
    out.b1_printed = d * d / (2.0 * omega);
    out.c1_printed = -d / (2.0 * b);
    out.gauge = d * d * std::pow(omega, 5) / (2.0 * b * b * (1.0 - d) * (1.0 - d));
    return out;
}

struct FHNUnfolding {
    FHNParams critical;
    // first-order unfolding map: rows (epsilon, delta), columns (da, dc)
    double deps_da = 0;
    double deps_dc = 0;
    double ddelta_da = 0;
    double ddelta_dc = 0;
    // printed reference expressions for the same map
    double deps_da_printed = 0;
    double deps_dc_printed = 0;
    double ddelta_da_printed = 0;
    double ddelta_dc_printed = 0;
};

// First-order map from the family offsets (da, dc) = (a - a*, c - c*) to the
// unfolding values (epsilon, delta), computed by carrying parameter jets
// through the reduction chain and the miniversal template.
inline FHNUnfolding fhn_unfolding(double b, double d) {
    using J = ParamScalar<double>;
    const auto cr = fhn_critical(b, d);
    const J a(cr.a_star, 1.0, 0.0);
    const J c(cr.c_star, 0.0, 1.0);
    const auto red = fhn_reduce_param<J>(b, d, a, c);
    const auto& R = red.reduced;
    auto slot = [&](int comp, const Mono& m) { return R.c[comp].coeff(m); };
    const J al1 = slot(0, Mono{1, 0, 0});
    const J al2 = -slot(0, Mono{0, 1, 0}) - J(1.0);
    const J be2 = slot(1, Mono{1, 0, 0}) - J(1.0);
    const J be1 = slot(1, Mono{0, 1, 0});
    const J g1 = slot(2, Mono{1, 0, 0});
    const J g2 = slot(2, Mono{0, 1, 0});
    const J g3 = slot(2, Mono{0, 0, 1});
    const J g4 = slot(2, Mono{1, 1, 0});
    const J g5 = slot(2, Mono{2, 0, 0}) - J(0.5);
    const J g6 = slot(2, Mono{0, 2, 0}) - J(0.5);
    for (const J* v : {&al1, &al2, &be1, &be2, &g1, &g2, &g3, &g4, &g5, &g6})
        if (std::fabs(v->c0) > 1e-12)
            throw numeric_error("unfolding slot has a nonzero critical value");
    const auto mv = miniversal_reduce<J>(al1, al2, be1, be2, g1, g2, g3, g4, g5, g6);

    FHNUnfolding out;
    out.critical = cr;
    out.deps_da = mv.epsilon.c_eps;
    out.deps_dc = mv.epsilon.c_delta;
    out.ddelta_da = mv.delta.c_eps;
    out.ddelta_dc = mv.delta.c_delta;
    const double omega = cr.omega;
    const double w3 = omega * omega * omega;
    const double dd = d * d;
    out.deps_da_printed = dd * (1.0 - dd) * (b * d - 2.0 * w3) / (w3 * (1.0 + dd) * (1.0 + dd));
    out.deps_dc_printed = -(1.0 - dd) / (omega * (1.0 + dd) * (1.0 + dd));
    out.ddelta_da_printed = b * d * (dd - 1.0) / (w3 * (1.0 + dd));
    out.ddelta_dc_printed = 0.0;
    return out;
}

struct OrbitPrediction {
    bool exists = false;
    double radius = 0;
    double z_offset = 0;
    double angular_frequency = 0;
    double period = 0;
    std::complex<double> multiplier_plus{0, 0};
    std::complex<double> multiplier_minus{0, 0};
    double multiplier_trivial = 1.0;
};

// Small periodic orbit of the truncated degree-2 normal form
//   x' = -y + eps x + a1 x z - c1 y z
//   y' =  x + eps y + a1 y z + c1 x z
//   z' = delta z + (x^2 + y^2)/2 + b1 z^2
// exists exactly when eps (a1 delta - b1 eps) > 0: the orbit is the circle
// r = radius in the plane z = z_offset.
inline OrbitPrediction predict_orbit(double a1, double b1, double c1, double eps,
                                     double delta) {
    if (a1 == 0.0) throw assumption_error("a1 != 0", "the radial coefficient vanishes");
    OrbitPrediction out;
    const double disc = eps * (a1 * delta - b1 * eps);
    if (!(disc > 0.0)) return out;
    out.exists = true;
    out.radius = std::sqrt(2.0 * disc) / std::fabs(a1);
    out.z_offset = -eps / a1;
    out.angular_frequency = 1.0 - c1 * eps / a1;
    if (!(out.angular_frequency > 0.0))
        throw numeric_error("orbit rotation rate is not positive");
    out.period = 2.0 * std::numbers::pi / out.angular_frequency;
    const double tau = (a1 * delta - 2.0 * b1 * eps) / a1;
    const double rad = tau * tau + 8.0 * eps * (a1 * delta - b1 * eps) / a1;
    const auto root = std::sqrt(std::complex<double>(rad, 0.0));
    out.multiplier_plus = std::exp(out.period * (tau + root) / 2.0);
    out.multiplier_minus = std::exp(out.period * (tau - root) / 2.0);
    return out;
}

// The truncated field the prediction refers to.
inline VField<double> truncated_normal_form_field(double a1, double b1, double c1,
                                                  double eps, double delta) {
    VField<double> F(3, 3);
    F.c[0].add_term(Mono{0, 1, 0}, -1.0);
    F.c[0].add_term(Mono{1, 0, 0}, eps);
    F.c[0].add_term(Mono{1, 0, 1}, a1);
    F.c[0].add_term(Mono{0, 1, 1}, -c1);
    F.c[1].add_term(Mono{1, 0, 0}, 1.0);
    F.c[1].add_term(Mono{0, 1, 0}, eps);
    F.c[1].add_term(Mono{0, 1, 1}, a1);
    F.c[1].add_term(Mono{1, 0, 1}, c1);
    F.c[2].add_term(Mono{0, 0, 1}, delta);
    F.c[2].add_term(Mono{2, 0, 0}, 0.5);
    F.c[2].add_term(Mono{0, 2, 0}, 0.5);
    F.c[2].add_term(Mono{0, 0, 2}, b1);
    return F;
}

} // namespace qhnf
