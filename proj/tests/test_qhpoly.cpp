#include <catch2/catch_amalgamated.hpp>

#include "qhnf/poly.hpp"
#include "qhnf/rational.hpp"
#include "testutil.hpp"

using namespace qhnf;
using qhnf::test::rand_int;
using qhnf::test::rand_poly;
using qhnf::test::rand_qh_poly;
using qhnf::test::rand_rational;

TEST_CASE("rational parsing") {
    REQUIRE(parse_rational("3/4") == rational(3) / 4);
    REQUIRE(parse_rational("-7") == rational(-7));
    REQUIRE(parse_rational("+2/6") == rational(1) / 3);
    REQUIRE(parse_rational("0/5") == rational(0));
    REQUIRE(to_string(rational(-3) / 6) == "-1/2");
    REQUIRE(to_string(rational(8) / 4) == "2");

    for (const char* bad : {"", "1/0", "a", "1//2", "3/-4", "1.5", "/3", "2/", "- 1"})
        REQUIRE_THROWS_AS(parse_rational(bad), parse_error);

    try {
        parse_rational("x", 7, 12);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        REQUIRE(e.line() == 7);
        REQUIRE(e.column() == 12);
    }
}

TEST_CASE("graded slice bases are canonical and complete") {
    QHType hz(1, 1, 2);

    auto b2 = graded_basis(hz, 2);
    REQUIRE(b2.monos == std::vector<Mono>{Mono{0, 0, 1}, Mono{0, 2, 0}, Mono{1, 1, 0}, Mono{2, 0, 0}});

    auto b3 = graded_basis(hz, 3);
    REQUIRE(b3.monos == std::vector<Mono>{Mono{0, 1, 1}, Mono{0, 3, 0}, Mono{1, 0, 1},
                                          Mono{1, 2, 0}, Mono{2, 1, 0}, Mono{3, 0, 0}});

    REQUIRE(graded_basis(hz, -1).dimension() == 0);
    REQUIRE(graded_basis(hz, 0).monos == std::vector<Mono>{Mono{0, 0, 0}});

    // dim P_k for weights (1,1,2): one block of k-2e3+1 monomials per z power
    for (int k = 0; k <= 9; ++k) {
        std::size_t expect = 0;
        for (int e3 = 0; 2 * e3 <= k; ++e3) expect += static_cast<std::size_t>(k - 2 * e3 + 1);
        REQUIRE(graded_basis(hz, k).dimension() == expect);
    }

    QHType planar(1, 1);
    REQUIRE(graded_basis(planar, 2).monos ==
            std::vector<Mono>{Mono{0, 2, 0}, Mono{1, 1, 0}, Mono{2, 0, 0}});

    QHType tb(2, 3, 5);
    REQUIRE(graded_basis(tb.planar(), 5).monos == std::vector<Mono>{Mono{1, 1, 0}});
    for (int k = 0; k <= 12; ++k)
        for (const Mono& m : graded_basis(tb, k).monos) REQUIRE(tb.weight(m) == k);
}

TEST_CASE("ring axioms hold on random triples") {
    for (int trial = 0; trial < 100; ++trial) {
        auto p = rand_poly();
        auto q = rand_poly();
        auto r = rand_poly();
        REQUIRE(p + q == q + p);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE(p * q == q * p);
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
        REQUIRE(p - q == p + (-q));
        REQUIRE(p - p == Poly<rational>(3));
        auto one = Poly<rational>::constant(rational(1));
        REQUIRE(p * one == p);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    for (int trial = 0; trial < 20; ++trial) {
        auto p = rand_poly();
        auto q = rand_poly();
        std::array<rational, 3> v{rand_rational(4, 4), rand_rational(4, 4), rand_rational(4, 4)};
        REQUIRE((p * q).eval(v) == p.eval(v) * q.eval(v));
        REQUIRE((p + q).eval(v) == p.eval(v) + q.eval(v));
    }
}

TEST_CASE("differentiation satisfies the Leibniz rule") {
    for (int trial = 0; trial < 50; ++trial) {
        auto p = rand_poly();
        auto q = rand_poly();
        int i = rand_int(0, 2);
        REQUIRE((p * q).diff(i) == p.diff(i) * q + p * q.diff(i));
    }
}

TEST_CASE("Euler identity characterizes homogeneous slices") {
    auto x = Poly<rational>::monomial(Mono{1, 0, 0}, rational(1));
    auto y = Poly<rational>::monomial(Mono{0, 1, 0}, rational(1));
    auto z = Poly<rational>::monomial(Mono{0, 0, 1}, rational(1));
    std::vector<QHType> types{QHType(1, 1, 2), QHType(2, 3, 5), QHType(1, 1, 1)};
    for (int trial = 0; trial < 30; ++trial) {
        const QHType& T = types[static_cast<std::size_t>(trial) % types.size()];
        int k = rand_int(0, 8);
        auto p = rand_qh_poly(T, k, true);
        if (p.is_zero()) continue;
        auto euler = rational(T.t[0]) * x * p.diff(0) + rational(T.t[1]) * y * p.diff(1) +
                     rational(T.t[2]) * z * p.diff(2);
        REQUIRE(euler == rational(k) * p);
        REQUIRE(is_qh(p, T, k));
        REQUIRE(qh_degree(p, T) == std::optional<int>(k));
    }
}

TEST_CASE("decomposition re-sums to the original") {
    QHType hz(1, 1, 2);
    for (int trial = 0; trial < 40; ++trial) {
        auto p = rand_poly();
        auto parts = qh_decompose(p, hz);
        Poly<rational> total(3);
        int prev = std::numeric_limits<int>::min();
        for (const auto& [k, piece] : parts) {
            REQUIRE(k > prev);
            prev = k;
            REQUIRE(is_qh(piece, hz, k));
            REQUIRE(qh_slice(p, hz, k) == piece);
            total += piece;
        }
        REQUIRE(total == p);
    }
}

TEST_CASE("degree is additive under multiplication") {
    QHType hz(1, 1, 2);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = rand_qh_poly(hz, rand_int(0, 6), true);
        auto q = rand_qh_poly(hz, rand_int(0, 6), true);
        if (p.is_zero() || q.is_zero()) continue;
        REQUIRE(qh_degree(p * q, hz) ==
                std::optional<int>(*qh_degree(p, hz) + *qh_degree(q, hz)));
    }
    REQUIRE_THROWS_AS(qh_degree(Poly<rational>(3), hz), std::invalid_argument);
}

TEST_CASE("composition agrees with evaluation") {
    for (int trial = 0; trial < 10; ++trial) {
        auto p = rand_poly(3, 2, 3);
        auto sx = rand_poly(3, 2, 2);
        auto sy = rand_poly(3, 2, 2);
        auto sz = rand_poly(3, 2, 2);
        std::array<rational, 3> v{rand_rational(3, 3), rand_rational(3, 3), rand_rational(3, 3)};
        std::array<rational, 3> w{sx.eval(v), sy.eval(v), sz.eval(v)};
        REQUIRE(compose(p, sx, sy, sz).eval(v) == p.eval(w));
    }
}

TEST_CASE("z substitution leaves x and y alone") {
    for (int trial = 0; trial < 10; ++trial) {
        auto p = rand_poly(3, 2, 3);
        auto repl = rand_poly(3, 2, 2);
        std::array<rational, 3> v{rand_rational(3, 3), rand_rational(3, 3), rand_rational(3, 3)};
        std::array<rational, 3> w{v[0], v[1], repl.eval(v)};
        REQUIRE(substitute_z(p, repl).eval(v) == p.eval(w));
    }
}

TEST_CASE("planar lift and restriction round trip") {
    auto p = rand_poly(2, 3, 4);
    REQUIRE(p.lift3().restrict2() == p);
    REQUIRE(p.lift3().arity() == 3);
    auto zdep = Poly<rational>::monomial(Mono{0, 0, 1}, rational(1));
    REQUIRE_THROWS_AS(zdep.restrict2(), std::logic_error);
    Poly<rational> planar(2);
    REQUIRE_THROWS_AS(planar.add_term(Mono{0, 0, 1}, rational(1)), std::logic_error);
}

TEST_CASE("floating chop drops noise terms only") {
    Poly<double> p(3);
    p.add_term(Mono{1, 0, 0}, 1.0);
    p.add_term(Mono{0, 1, 0}, 3e-15);
    auto q = p.chop(1e-12);
    REQUIRE(q.size() == 1);
    REQUIRE(q.coeff(Mono{1, 0, 0}) == 1.0);
}
