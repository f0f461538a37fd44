#include <doctest.h>

#include "mhk/ball.hpp"
#include "support.hpp"

using namespace mhk;

namespace {

double dist(const CVector& a, const CVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("inner product") {
    const BallPoint e1 = BallPoint::axis(3, 0, 0.5), e2 = BallPoint::axis(3, 1, 0.5);
    CHECK(inner(SpherePoint::axis(3, 0), SpherePoint::axis(3, 0)) == Complex(1.0, 0.0));
    CHECK(inner(e1, e2) == Complex(0.0, 0.0));
    CHECK(inner(CVector{Complex(0, 1)}, CVector{Complex(0, 1)}) == Complex(1.0, 0.0));
    CHECK(inner(CVector{Complex(0, 1)}, CVector{Complex(1, 0)}) == Complex(0.0, 1.0));
    CHECK_THROWS_AS(inner(CVector(2), CVector(3)), DimensionMismatch);
    auto g = testing::rng(1);
    for (int i = 0; i < 100; ++i) {
        const BallPoint z = testing::ball_point(4, 0.99, g), w = testing::ball_point(4, 0.99, g);
        CHECK(std::abs(inner(z, w)) <= std::sqrt(z.norm2() * w.norm2()) + 1e-15);
    }
}

TEST_CASE("point validation") {
    CHECK_THROWS_AS(BallPoint(CVector{1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(SpherePoint(CVector{0.5, 0.0}), DomainError);
    CHECK_NOTHROW(SpherePoint(CVector{Complex(0.6, 0.0), Complex(0.0, 0.8)}));
}

TEST_CASE("moebius map") {
    auto g = testing::rng(2);
    for (int n : {1, 2, 3, 5}) {
        for (int i = 0; i < 100; ++i) {
            const BallPoint z = testing::ball_point(n, 0.95, g);
            const BallPoint w = testing::ball_point(n, 0.95, g), w2 = testing::ball_point(n, 0.95, g);
            CHECK(moebius(z, z).norm2() <= 1e-24);
            CHECK(dist(moebius(z, BallPoint::origin(n)).coords(), z.coords()) <= 1e-14);
            CHECK(dist(moebius(z, moebius(z, w)).coords(), w.coords()) <= 1e-12);
            // 1-<φ w1, φ w2> = (1-|z|²)(1-<w1,w2>)/((1-<z,w2>)(1-<w1,z>))
            const Complex lhs = 1.0 - inner(moebius(z, w), moebius(z, w2));
            const Complex rhs =
                (1.0 - z.norm2()) * (1.0 - inner(w, w2)) / ((1.0 - inner(z, w2)) * (1.0 - inner(w, z)));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
            const double direct = moebius(z, w).norm2();
            const double formula = 1.0 - (1.0 - z.norm2()) * (1.0 - w.norm2()) / std::norm(1.0 - inner(z, w));
            CHECK(std::fabs(direct - formula) <= 1e-12);
        }
        // φ_0(w) = -w
        const BallPoint w = testing::ball_point(n, 0.9, g);
        const CVector m = moebius(BallPoint::origin(n), w).coords();
        for (int k = 0; k < n; ++k)
            CHECK(m[k] == -w[k]);
    }
}

TEST_CASE("invariant coordinates") {
    auto g = testing::rng(4);
    const BallPoint z0 = testing::ball_point(3, 0.9, g);
    const InvariantCoords same = invariant_coords(z0, z0);
    CHECK(same.U == doctest::Approx(z0.norm2()));
    CHECK(same.V <= 1e-24);
    CHECK(std::abs(same.Z) <= 1e-14);
    const InvariantCoords at0 = invariant_coords(BallPoint::origin(3), z0);
    CHECK(at0.U == 0.0);
    CHECK(at0.V == doctest::Approx(z0.norm2()).epsilon(1e-14));
    CHECK(at0.Z == Complex(0.0, 0.0));

    for (int n : {1, 2, 3, 4})
        for (int i = 0; i < 100; ++i) {
            const BallPoint z = testing::ball_point(n, 0.9, g), w = testing::ball_point(n, 0.9, g);
            const InvariantCoords c = invariant_coords(z, w);
            CHECK(std::norm(c.Z) <= c.U * c.V + 1e-14);
            const InvariantCoords k = invariant_coords_closed(z, w);
            CHECK(k.U == doctest::Approx(c.U).epsilon(1e-13));
            CHECK(std::fabs(k.V - c.V) <= 1e-12);
            CHECK(std::abs(k.Z - c.Z) <= 1e-12);
            const UnitaryMatrix u = random_unitary(n, g);
            const InvariantCoords r = invariant_coords(BallPoint(apply(u, z.coords())), BallPoint(apply(u, w.coords())));
            CHECK(std::fabs(r.U - c.U) <= 1e-12);
            CHECK(std::fabs(r.V - c.V) <= 1e-12);
            CHECK(std::abs(r.Z - c.Z) <= 1e-12);
        }
}

TEST_CASE("random unitary is unitary") {
    auto g = testing::rng(6);
    for (int n : {1, 2, 3, 6}) {
        const UnitaryMatrix u = random_unitary(n, g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex s = 0.0;
                for (int k = 0; k < n; ++k)
                    s += u[i][k] * std::conj(u[j][k]);
                CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) <= 1e-13);
            }
    }
    // same seed, same matrix
    auto g1 = testing::rng(9), g2 = testing::rng(9);
    CHECK(random_unitary(3, g1) == random_unitary(3, g2));
}

TEST_CASE("random sphere points") {
    auto g = testing::rng(8);
    for (int i = 0; i < 50; ++i)
        CHECK(norm2(random_sphere_point(3, g).coords()) == doctest::Approx(1.0).epsilon(1e-14));
    const BallPoint b = random_ball_point(2, 0.3, g);
    CHECK(b.norm2() == doctest::Approx(0.09).epsilon(1e-14));
}
