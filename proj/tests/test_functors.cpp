#include <numeric>

#include "doctest.h"
#include "parstack/functors.hpp"
#include "support.hpp"

using namespace parstack;
using namespace parstack::testing;

namespace {

const Lattice R1 = Lattice::standard(1);

CoverProfile one_branch(int s, int e, Scalar u = Scalar(1)) { return CoverProfile(s, {{"x", e, s / e, u}}); }

WeightMultiset merged(const std::vector<WeightMultiset>& parts) {
    WeightMultiset out;
    for (const auto& p : parts)
        for (const auto& [w, m] : p) out[w] += m;
    return out;
}

/// Smallest c with t^c A a morphism E -> F, and t^c A.
Matrix minimal_morphism(const Matrix& a, const ParabolicPoint& e, const ParabolicPoint& f) {
    int c = -6;
    auto tc = [&](int k) { return Matrix::diagonal(Vec(a.rows(), tp(k))) * a; };
    while (!is_morphism(tc(c), e, f)) ++c;
    return tc(c);
}

}  // namespace

TEST_CASE("cover profiles") {
    CHECK_NOTHROW(CoverProfile(4, {{"a", 2, 2, Scalar(1)}, {"b", 4, 1, Scalar(3)}}));
    CHECK_THROWS_AS(CoverProfile(4, {{"a", 2, 3, Scalar(1)}}), Error);
    CHECK_THROWS_AS(CoverProfile(2, {{"a", 2, 1, Scalar(0)}}), Error);
    CHECK_THROWS_AS(CoverProfile(2, {{"a", 2, 1, Scalar(1)}}, false), Error);
    CHECK_THROWS_AS(CoverProfile(1, {{"a", 1, 1, Scalar(1)}, {"a", 1, 1, Scalar(1)}}), Error);
    try {
        CoverProfile(6, {{"a", 4, 1, Scalar(1)}});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InadmissibleProfile);
    }
    const CoverProfile p(2, {{"a", 1, 2, Scalar(1)}, {"b", 2, 1, Scalar(1)}});
    CHECK(p.total_degree() == 3);
    CHECK_THROWS_AS(p.branch("c"), Error);
}

TEST_CASE("refined filtration") {
    const ParabolicPoint half = ParabolicPoint::line(2, 1);
    CHECK(refine_branch_filtration(half, 1) == half.chain());
    CHECK(refine_branch_filtration(ParabolicPoint::line(1, 0), 2) ==
          std::vector<Lattice>{R1, scale(R1, 1), scale(R1, 2)});
    CHECK(refine_branch_filtration(half, 2) ==
          std::vector<Lattice>{R1, R1, scale(R1, 1), scale(R1, 1), scale(R1, 2)});
}

TEST_CASE("restriction of scalars") {
    const Lattice r2 = span({{1, tp(1)}, {0, 1}});
    CHECK(restrict_scalars(r2, 1, Scalar(1)) == r2);
    CHECK(restrict_scalars(R1, 2, Scalar(1)) == Lattice::standard(2));
    CHECK(restrict_scalars(scale(R1, 1), 2, Scalar(1)) == span({{0, 1}, {tp(1), 0}}));
    // t^3 = t * t^2 = t * w / u
    CHECK(restrict_vector({tp(3)}, 2, Scalar(2)) == Vec{0, el(1, {1}) * LocalElement(Scalar(mpq_class(1, 2)))});
    CHECK(restrict_vector({tp(-1)}, 2, Scalar(2)) == Vec{0, el(-1, {2})});
    // one step of w is e steps of t
    const Lattice l = span({{el(0, {1, 2}), el(-1, {1})}, {0, tp(2)}});
    for (int e = 1; e <= 3; ++e)
        CHECK(restrict_scalars(scale(l, e), e, Scalar(3)) == scale(restrict_scalars(l, e, Scalar(3)), 1));
    const Matrix a = cols({{el(-1, {1, 2}), el(0, {3})}, {tp(2), el(1, {1, 0, -1})}});
    CHECK(restrict_matrix(a, 3, Scalar(5)) == restrict_matrix_blockwise(a, 3, Scalar(5)));
    CHECK(restrict_matrix(Matrix::diagonal({tp(1)}), 2, Scalar(1)) == cols({{0, 1}, {tp(1), 0}}));
}

TEST_CASE("parabolic direct image examples") {
    Rng rng(5);
    const ParabolicPoint p = random_point(2, 3, Field::rational(), rng);
    CHECK(pushforward_parabolic(one_branch(3, 1), {p}) == p);

    const ParabolicPoint two = pushforward_parabolic(one_branch(2, 2), {ParabolicPoint::line(1, 0)});
    CHECK(two.rank() == 2);
    CHECK(weights_of(two) == WeightMultiset{{Weight(0, 1), 1}, {Weight(1, 2), 1}});

    const CoverProfile prof(4, {{"a", 2, 2, Scalar(1)}, {"b", 4, 1, Scalar(1)}});
    const ParabolicPoint six = pushforward_parabolic(prof, {ParabolicPoint::line(2, 1), ParabolicPoint::line(1, 0)});
    CHECK(six.rank() == 6);
    CHECK(weights_of(six) ==
          WeightMultiset{{Weight(0, 1), 1}, {Weight(1, 4), 2}, {Weight(1, 2), 1}, {Weight(3, 4), 2}});
    CHECK_THROWS_AS(pushforward_parabolic(prof, {ParabolicPoint::line(2, 1)}), Error);
    CHECK_THROWS_AS(pushforward_parabolic(prof, {ParabolicPoint::line(1, 0), ParabolicPoint::line(1, 0)}), Error);
}

TEST_CASE("graded direct image examples") {
    const GradedModule m = from_parabolic(ParabolicPoint::line(3, 2));
    CHECK(pushforward_graded(one_branch(3, 1), {m}) == m);
    const GradedModule two = pushforward_graded(one_branch(2, 2), {GradedModule({R1})});
    CHECK(weights_of(to_parabolic(two)) == WeightMultiset{{Weight(0, 1), 1}, {Weight(1, 2), 1}});
    CHECK_THROWS_AS(pushforward_graded(one_branch(2, 2), {GradedModule({R1, R1})}), Error);
}

TEST_CASE("pullback line formula") {
    auto check = [](Weight a, int e, int r, long twist, Weight w) {
        const LinePullback lp = pullback_parabolic_line(a, e, r);
        CHECK(lp.twist == twist);
        CHECK(lp.weight == w);
    };
    check(Weight(0, 1), 2, 3, 0, Weight(0, 1));
    check(Weight(1, 3), 2, 3, 0, Weight(2, 3));
    check(Weight(2, 3), 2, 3, 1, Weight(1, 3));
    check(Weight(5, 6), 3, 2, 2, Weight(1, 2));
    CHECK_THROWS_AS(pullback_parabolic_line(Weight(1, 4), 2, 3), Error);
}

TEST_CASE("parabolic pullback examples") {
    Rng rng(9);
    const ParabolicPoint p = random_point(3, 4, Field::rational(), rng);
    CHECK(pullback_parabolic(one_branch(4, 1), p, "x") == p);
    const ParabolicPoint triv = ParabolicPoint::trivial(Lattice::standard(3));
    CHECK(pullback_parabolic(one_branch(1, 1), triv, "x") == triv);

    // weights 1/3 and 2/3 at an order-6 point, e = 2
    const ParabolicPoint f = direct_sum({ParabolicPoint::line(6, 2), ParabolicPoint::line(6, 4)});
    const PulledPoint pp = pullback_parabolic(one_branch(6, 2), f, "x", split_into_lines(f));
    CHECK(pp.point.order() == 3);
    CHECK(weights_of(pp.point) == WeightMultiset{{Weight(1, 3), 1}, {Weight(2, 3), 1}});
    CHECK(pp.twists == std::vector<long>{0, 1});
    CHECK(pp.lines[0] == ParabolicPoint::line(3, 2));
    CHECK(pp.lines[1] == ParabolicPoint::line(3, 1, -1));
    CHECK(pp.point[0] == Lattice::from_basis(Matrix::diagonal({1, tp(-1)})));
    CHECK_THROWS_AS(pullback_parabolic(one_branch(6, 2), f, "y"), Error);
    CHECK_THROWS_AS(pullback_parabolic(one_branch(4, 2), f, "x"), Error);
}

TEST_CASE("graded pullback examples") {
    const GradedModule m = from_parabolic(ParabolicPoint::line(4, 3));
    CHECK(pullback_graded(one_branch(4, 1), m, "x") == m);
    const GradedModule j2 = pullback_graded(one_branch(6, 2), GradedModule::line(6, 2), "x");
    CHECK(j2 == GradedModule::line(3, 2));
    CHECK(j2.jump_grade() == 2);
    const GradedModule j4 = pullback_graded(one_branch(6, 2), GradedModule::line(6, 4), "x");
    CHECK(j4 == GradedModule::line(3, 1, -1));
    CHECK(j4.jump_grade() == 1);
}

TEST_CASE("direct image agrees on both sides") {
    for (const Field f : {Field::rational(), Field::prime(101)}) {
        Rng rng(f.p + 31);
        for (int trial = 0; trial < 25; ++trial) {
            CAPTURE(trial);
            const CoverProfile prof = random_profile(f, rng, 6, 2);
            std::vector<ParabolicPoint> ps, qs;
            std::vector<GradedModule> ms, ns;
            std::vector<Matrix> maps;
            std::vector<WeightMultiset> expected;
            std::size_t rank = 0;
            for (const auto& b : prof.branches()) {
                const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
                ps.push_back(random_point(n, b.r, f, rng, 1));
                qs.push_back(random_point(n, b.r, f, rng, 1));
                ms.push_back(from_parabolic(ps.back()));
                ns.push_back(from_parabolic(qs.back()));
                maps.push_back(minimal_morphism(random_matrix(n, n, f, rng, 0, 1), ps.back(), qs.back()));
                rank += n * static_cast<std::size_t>(b.e);
                WeightMultiset w;
                for (const auto& [a, m] : weights_of(ps.back()))
                    for (long l = 0; l < b.e; ++l) w[Weight(a.over(b.r) + b.r * l, prof.target_order())] += m;
                expected.push_back(w);
            }
            const ParabolicPoint par = pushforward_parabolic(prof, ps);
            const GradedModule gr = pushforward_graded(prof, ms);
            CHECK(to_parabolic(gr) == par);
            CHECK(from_parabolic(par) == gr);
            CHECK(par.rank() == rank);
            CHECK(weights_of(par) == merged(expected));

            const Matrix pm = pushforward_matrix(prof, maps);
            CHECK(pm == pushforward_matrix_graded(prof, maps));
            const ParabolicPoint parq = pushforward_parabolic(prof, qs);
            CHECK(is_morphism(pm, par, parq));
            CHECK(is_graded_morphism(pm, gr, pushforward_graded(prof, ns)));
        }
    }
}

TEST_CASE("pullback agrees on both sides") {
    for (const Field f : {Field::rational(), Field::prime(101)}) {
        Rng rng(f.p + 41);
        for (int trial = 0; trial < 25; ++trial) {
            CAPTURE(trial);
            const CoverProfile prof = random_profile(f, rng, 6, 2);
            const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
            const ParabolicPoint p = random_point(n, prof.target_order(), f, rng, 1);
            const ParabolicPoint q = random_point(n, prof.target_order(), f, rng, 1);
            const Matrix a = minimal_morphism(random_matrix(n, n, f, rng, 0, 1), p, q);
            const GradedModule m = from_parabolic(p);
            for (const auto& b : prof.branches()) {
                const PulledPoint par = pullback_parabolic(prof, p, b.label, split_into_lines(p, rng, f));
                const PulledGraded gr = pullback_graded(prof, m, b.label, graded_split_into_lines(m));
                CHECK(to_parabolic(gr.module) == par.point);
                CHECK(par.point == pullback_parabolic(prof, p, b.label));
                CHECK(par.point.rank() == n);
                CHECK(is_isomorphism(par.basis, direct_sum(par.lines), par.point));
                CHECK(is_isomorphism(gr.basis, to_parabolic(direct_sum(gr.lines)), par.point));

                WeightMultiset expected;
                for (const auto& [w, mult] : weights_of(p))
                    expected[Weight::fractional_part(w.value() * b.e)] += mult;
                CHECK(weights_of(par.point) == expected);

                const Matrix pa = pullback_matrix(prof, a, b.label);
                CHECK(is_morphism(pa, par.point, pullback_parabolic(prof, q, b.label)));
                CHECK(is_graded_morphism(pa, gr.module, pullback_graded(prof, from_parabolic(q), b.label)));
            }
        }
    }
}

TEST_CASE("degree of a pulled line bundle") {
    for (const Field f : {Field::rational(), Field::prime(101)}) {
        Rng rng(f.p + 53);
        for (int trial = 0; trial < 30; ++trial) {
            CAPTURE(trial);
            CoverScenario cover;
            cover.degree = rng.uniform(1, 4);
            ParabolicBundle line{1, rng.uniform(-3, 3), {}};
            long expected_degree = cover.degree * line.underlying_degree;
            const long points = rng.uniform(1, 3);
            for (long y = 0; y < points; ++y) {
                std::vector<int> parts;
                for (long left = cover.degree; left > 0;) {
                    const int e = static_cast<int>(rng.uniform(1, left));
                    parts.push_back(e);
                    left -= e;
                }
                int s = 1;
                for (int e : parts) s = std::lcm(s, e);
                s *= static_cast<int>(rng.uniform(1, 2));
                std::vector<Branch> bs;
                for (std::size_t j = 0; j < parts.size(); ++j)
                    bs.push_back({"x" + std::to_string(j), parts[j], s / parts[j], rng.nonzero_scalar(f)});
                const std::string label = "y" + std::to_string(y);
                cover.profiles.emplace(label, CoverProfile(s, bs));
                const int d = static_cast<int>(rng.uniform(0, s - 1));
                line.points.emplace(label, ParabolicPoint::line(s, d, static_cast<int>(rng.uniform(-1, 1))));
                for (int e : parts) expected_degree += (static_cast<long>(d) * e) / s;
            }
            const ParabolicBundle pulled = pullback_bundle(cover, line);
            CHECK(pulled.underlying_degree == expected_degree);
            CHECK(parabolic_degree(pulled) == cover.degree * parabolic_degree(line));
        }
    }
    CoverScenario bad{3, {{"y", CoverProfile(2, {{"x", 2, 1, Scalar(1)}})}}};
    CHECK_THROWS_AS(pullback_bundle(bad, {1, 0, {{"y", ParabolicPoint::line(2, 1)}}}), Error);
}
