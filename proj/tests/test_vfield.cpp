#include <catch2/catch_amalgamated.hpp>

#include "qhnf/vfield.hpp"
#include "testutil.hpp"

using namespace qhnf;
using qhnf::test::rand_int;
using qhnf::test::rand_poly;
using qhnf::test::rand_qh_field;
using qhnf::test::rand_qh_poly;

namespace {

VField<rational> rand_field3() {
    return VField<rational>(rand_poly(3, 2, 3), rand_poly(3, 2, 3), rand_poly(3, 2, 3));
}

} // namespace

TEST_CASE("bracket is bilinear and antisymmetric") {
    for (int trial = 0; trial < 20; ++trial) {
        auto A = rand_field3();
        auto B = rand_field3();
        auto C = rand_field3();
        REQUIRE(lie_bracket(A, B) == -lie_bracket(B, A));
        REQUIRE(lie_bracket(A + B, C) == lie_bracket(A, C) + lie_bracket(B, C));
        rational s = qhnf::test::rand_rational();
        REQUIRE(lie_bracket(s * A, B) == s * lie_bracket(A, B));
    }
}

TEST_CASE("bracket satisfies the Jacobi identity") {
    for (int trial = 0; trial < 10; ++trial) {
        auto A = rand_field3();
        auto B = rand_field3();
        auto C = rand_field3();
        auto total = lie_bracket(lie_bracket(A, B), C) + lie_bracket(lie_bracket(B, C), A) +
                     lie_bracket(lie_bracket(C, A), B);
        REQUIRE(total.is_zero());
    }
}

TEST_CASE("bracket respects the grading") {
    QHType hz(1, 1, 2);
    for (int trial = 0; trial < 15; ++trial) {
        int j = rand_int(0, 3), k = rand_int(0, 3);
        auto F = rand_qh_field(hz, j);
        auto G = rand_qh_field(hz, k);
        auto br = lie_bracket(F, G);
        REQUIRE(is_qh_field(br, hz, j + k));
    }
}

TEST_CASE("weighted Euler field measures the degree") {
    QHType T(2, 3, 5);
    VField<rational> E(Poly<rational>::monomial(Mono{1, 0, 0}, rational(T.t[0])),
                       Poly<rational>::monomial(Mono{0, 1, 0}, rational(T.t[1])),
                       Poly<rational>::monomial(Mono{0, 0, 1}, rational(T.t[2])));
    for (int trial = 0; trial < 15; ++trial) {
        int k = rand_int(0, 5);
        auto F = rand_qh_field(T, k);
        REQUIRE(lie_bracket(F, E) == rational(k) * F);
    }
}

TEST_CASE("divergence and wedge identities") {
    for (int trial = 0; trial < 15; ++trial) {
        auto h = rand_poly(2, 3, 4);
        auto Xhp = hamiltonian_field(h);
        REQUIRE(divergence(Xhp).is_zero());
        REQUIRE(wedge(Xhp, Xhp).is_zero());
        // wedge(X_g, X_h) is the negative of the pairing grad g . X_h
        auto g = rand_poly(2, 3, 4);
        REQUIRE(wedge(hamiltonian_field(g), Xhp) == -dot(gradient(g, 2), Xhp));
    }
}

TEST_CASE("principal part assembles and validates") {
    QHType hz(1, 1, 2);
    Poly<rational> h(2), f(2);
    h.add_term(Mono{2, 0, 0}, rational(1) / 2);
    h.add_term(Mono{0, 2, 0}, rational(1) / 2);
    f = h;
    PrincipalPart<rational> pp(hz, 0, h, f);
    auto F = pp.field();
    REQUIRE(F.c[0] == Poly<rational>::monomial(Mono{0, 1, 0}, rational(-1)));
    REQUIRE(F.c[1] == Poly<rational>::monomial(Mono{1, 0, 0}, rational(1)));
    REQUIRE(is_qh_field(F, hz, 0));

    Poly<rational> wrong(2);
    wrong.add_term(Mono{3, 0, 0}, rational(1));
    REQUIRE_THROWS_AS(PrincipalPart<rational>(hz, 0, wrong, f), std::invalid_argument);
}

TEST_CASE("field basis flattens and rebuilds") {
    QHType hz(1, 1, 2);
    for (int k = 0; k <= 4; ++k) {
        auto b = field_basis(hz, k);
        std::size_t expect = 0;
        for (int j = 0; j < 3; ++j) expect += graded_basis(hz, k + hz.t[j]).dimension();
        REQUIRE(b.dimension() == expect);
        auto F = rand_qh_field(hz, k);
        REQUIRE(vec_to_field(field_to_vec(F, b), b) == F);
    }
}

TEST_CASE("truncation and slicing act on field degrees") {
    QHType hz(1, 1, 2);
    auto F = rand_field3();
    auto total = VField<rational>(3, 3);
    for (int k = -2; k <= 12; ++k) total += qh_slice_field(F, hz, k);
    REQUIRE(total == F);
    auto tr = truncate_field(F, hz, 3);
    for (int k = 4; k <= 12; ++k) REQUIRE(qh_slice_field(tr, hz, k).is_zero());
}
