#include "doctest.h"
#include "parstack/random.hpp"
#include "support.hpp"

using namespace parstack;
using namespace parstack::testing;

TEST_CASE("scalar arithmetic in Q and F_p") {
    const Field q = Field::rational();
    const Field f7 = Field::prime(7);
    CHECK(Scalar::parse("3/6", q) == Scalar(q, mpq_class(1, 2)));
    CHECK((Scalar(f7, 3) * Scalar(f7, 5)).to_string() == "1");
    CHECK((Scalar(f7, 3).inverse()) == Scalar(f7, 5));
    // rational constants act in any field
    CHECK(Scalar(f7, 4) + Scalar(3) == Scalar(f7, 0));
    CHECK(Scalar(f7, 2) * Scalar(q, mpq_class(1, 2)) == Scalar(f7, 1));
    CHECK_THROWS_AS(Field::prime(9), Error);
    CHECK(Field::parse("prime:101").p == 101);
    CHECK(Field::parse("rational").is_rational());
    CHECK_THROWS_AS(Scalar::parse("x", q), Error);
}

TEST_CASE("local element normal form and series") {
    const LocalElement x(-1, {Scalar(0), Scalar(2), Scalar(0)});
    CHECK(x.t_order() == 0);
    CHECK(x.coefficients().size() == 1);
    CHECK(LocalElement(3, {}).t_order() == 0);
    const LocalElement w = el(0, {1, 1});  // 1 + t
    const LocalElement inv = w.series_inverse(5);
    CHECK(inv == el(0, {1, -1, 1, -1, 1}));
    CHECK((w * inv).truncated(5) == LocalElement(1));
    CHECK(exact_divide(el(0, {1, 0, -1}), w) == el(0, {1, -1}));
    CHECK_THROWS(exact_divide(el(0, {1, 0, 1}), w));
    auto [lo, hi] = el(-1, {1, 2, 3}).split(1);
    CHECK(lo == el(-1, {1, 2}));
    CHECK(hi == tp(1) * LocalElement(3));
    // t -> 2 s^3 sends t^-1 + t to (1/2) s^-3 + 2 s^3
    const LocalElement sub = (tp(-1) + tp(1)).substitute(3, Scalar(2));
    CHECK(sub.coeff(-3) == Scalar(mpq_class(1, 2)));
    CHECK(sub.coeff(3) == Scalar(2));
}

TEST_CASE("determinant valuation") {
    CHECK(det_valuation(cols({{tp(1), 0}, {1, 1}})) == 1);
    CHECK(det_valuation(cols({{0, 1}, {tp(2), 0}})) == 2);
    CHECK_THROWS_AS(det_valuation(cols({{1, 1}, {tp(1), tp(1)}})), Error);
}

TEST_CASE("canonicalize examples") {
    CHECK(canonicalize(Matrix::identity(2)).basis() == Matrix::identity(2));

    const Lattice a = canonicalize(cols({{tp(1), 0}, {1, 1}}));
    CHECK(same_span(a.basis(), cols({{1, 1}, {0, tp(1)}})));
    CHECK(a.basis() == cols({{tp(1), 0}, {1, 1}}));
    CHECK(a.pivots() == std::vector<int>{1, 0});

    const Lattice b = scale(canonicalize(cols({{tp(2), 0}, {0, 1}})), -1);
    CHECK(b.basis() == Matrix::diagonal({tp(1), tp(-1)}));

    // a non-triangular generating set with a non-monomial unit
    const Lattice c = canonicalize(cols({{el(0, {1, 1}), el(0, {2})}, {el(0, {3}), el(0, {1, -1})}}));
    CHECK(same_span(c.basis(), cols({{el(0, {1, 1}), el(0, {2})}, {el(0, {3}), el(0, {1, -1})}})));
    CHECK(c.basis().is_upper_triangular());

    CHECK_THROWS_AS(canonicalize(cols({{1, tp(1)}, {tp(-1), 1}})), Error);
    CHECK(Lattice::from_basis(Matrix(0, 0)).rank() == 0);
}

TEST_CASE("sum, intersection, scale, containment, quotient length examples") {
    const Lattice L = span({{1, 1}, {0, tp(1)}});
    const Lattice R2 = Lattice::standard(2);
    CHECK(lattice_sum(L, L) == L);
    CHECK(lattice_sum(R2, scale(R2, -1)) == scale(R2, -1));
    CHECK(lattice_sum(span({{1, 0}, {0, tp(1)}}), span({{0, 1}, {tp(1), 0}})) == R2);

    CHECK(lattice_intersect(L, L) == L);
    CHECK(lattice_intersect(span({{1, 0}, {0, tp(1)}}), L) == scale(R2, 1));
    CHECK(lattice_intersect(R2, scale(R2, -1)) == R2);

    CHECK(scale(L, 0) == L);
    CHECK(scale(R2, 1).basis() == Matrix::diagonal({tp(1), tp(1)}));
    CHECK(same_span(scale(L, -1).basis(), cols({{tp(-1), tp(-1)}, {0, 1}})));

    CHECK(contains(L, scale(L, 1)));
    CHECK_FALSE(contains(scale(L, 1), L));
    CHECK(contains(span({{1, 0}, {0, tp(1)}}), span({{tp(1), tp(1)}, {0, tp(1)}})));

    CHECK(quotient_dim(L, L) == 0);
    CHECK(quotient_dim(L, scale(L, 1)) == 2);
    CHECK(quotient_dim(R2, L) == 1);
    // the same length from determinants of arbitrary (non-canonical) bases
    CHECK(det_valuation(cols({{1, 1}, {0, tp(1)}})) - det_valuation(Matrix::identity(2)) == 1);
    CHECK_THROWS_AS(quotient_dim(L, R2), Error);
    CHECK_THROWS_AS(lattice_sum(R2, Lattice::standard(3)), Error);
}

TEST_CASE("dual lattice") {
    const Lattice L = span({{1, 1}, {0, tp(1)}});
    CHECK(L.dual().dual() == L);
    CHECK(Lattice::standard(3).dual() == Lattice::standard(3));
    for (const auto& x : L.basis().columns())
        for (const auto& y : L.dual().basis().columns()) {
            LocalElement ip = x[0] * y[0] + x[1] * y[1];
            CHECK(ip.valuation() >= 0);
        }
    CHECK(L.saturation() == 1);
    CHECK(scale(Lattice::standard(2), -2).saturation() == -2);
}

TEST_CASE("kernel properties on random lattices") {
    for (const Field f : {Field::rational(), Field::prime(101)}) {
        Rng rng(f.p + 7);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
            auto [g, ginv] = random_unimodular(n, f, rng);
            const Matrix basis = g * random_matrix(n, n, f, rng, -1, 1);
            Lattice L;
            try {
                L = canonicalize(basis);
            } catch (const Error&) {
                continue;  // singular draw
            }
            CAPTURE(trial);
            // canonical form spans the same module and is a fixed point
            CHECK(same_span(L.basis(), basis));
            CHECK(canonicalize(L.basis()) == L);
            CHECK(Lattice::from_triangular(L.basis()) == L);
            CHECK(g * ginv == Matrix::identity(n));

            const Lattice M = random_lattice(n, f, rng);
            const Lattice I = lattice_intersect(L, M);
            const Lattice S = lattice_sum(L, M);
            CHECK(contains(L, I));
            CHECK(contains(M, I));
            CHECK(contains(S, L));
            CHECK(contains(S, M));
            for (const auto& c : I.basis().columns()) {
                CHECK(cramer_member(basis, c));
                CHECK(cramer_member(M.basis(), c));
            }
            for (const auto& c : S.basis().columns()) CHECK(S.contains(c));
            // L / (L cap M) ~ (L + M) / M
            CHECK(quotient_dim(L, I) == quotient_dim(S, M));
            // universal property: a random lattice inside both lies inside the intersection
            Lattice small = random_lattice(n, f, rng);
            while (!(contains(L, small) && contains(M, small))) small = scale(small, 1);
            CHECK(contains(I, small));

            const int d = static_cast<int>(rng.uniform(-3, 3));
            CHECK(scale(scale(L, d), -d) == L);
            CHECK(scale(lattice_intersect(L, M), d) == lattice_intersect(scale(L, d), scale(M, d)));
            CHECK(scale(lattice_sum(L, M), d) == lattice_sum(scale(L, d), scale(M, d)));
            CHECK(L.dual().dual() == L);
            CHECK(lattice_intersect(L, M) == lattice_sum(L.dual(), M.dual()).dual());

            // additivity of lengths along L3 in L2 in L1
            const Lattice L2 = lattice_intersect(L, random_lattice(n, f, rng));
            const Lattice L3 = lattice_intersect(L2, random_lattice(n, f, rng));
            CHECK(quotient_dim(L, L3) == quotient_dim(L, L2) + quotient_dim(L2, L3));
            CHECK(quotient_dim(L, L3) == det_valuation(L3.basis()) - det_valuation(basis));
        }
    }
}
