#include <doctest.h>

#include <thread>

#include "mhk/kernels.hpp"
#include "support.hpp"

using namespace mhk;
using testing::rel_err;

namespace {

double szego_const(int n) { return std::tgamma(n) / (2.0 * std::pow(kPi, n)); }

double c00(int n, double s) { return std::tgamma(n) * std::tgamma(s + 1) / (2.0 * std::tgamma(n + s + 1)); }

KernelParams power(int n, double s) {
    KernelParams k;
    k.n = n;
    k.weight = WeightSpec::power(s);
    return k;
}

KernelParams hardy(int n) {
    KernelParams k;
    k.n = n;
    return k;
}

// Γ(n+s+1)/(Γ(s+1)π^n) (1-<z,w>)^{-(n+s+1)}
Complex hol_closed(int n, double s, const BallPoint& z, const BallPoint& w) {
    return std::tgamma(n + s + 1) / (std::tgamma(s + 1) * std::pow(kPi, n)) * std::pow(1.0 - inner(z, w), -(n + s + 1));
}

}  // namespace

TEST_CASE("Poisson-Szego closed form") {
    for (int n : {1, 2, 3})
        CHECK(poisson_szego(n, BallPoint::origin(n), SpherePoint::axis(n, 1 % n)) == doctest::Approx(szego_const(n)));
    CHECK(poisson_szego(1, BallPoint::axis(1, 0, 0.5), SpherePoint::axis(1, 0)) ==
          doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-15));
}

TEST_CASE("Szego kernel, disc and origin") {
    for (int n : {1, 2, 3, 4}) {
        CHECK(szego_fd(n, BallPoint::origin(n), BallPoint::origin(n)).real() ==
              doctest::Approx(szego_const(n)).epsilon(1e-15));
        CHECK(szego_2f1(n, BallPoint::origin(n), BallPoint::origin(n)).real() ==
              doctest::Approx(szego_const(n)).epsilon(1e-15));
        CHECK(szego_diagonal(n, BallPoint::origin(n)) == doctest::Approx(szego_const(n)).epsilon(1e-15));
        CHECK(szego_orthogonal(n, 0.0, 0.0) == doctest::Approx(szego_const(n)).epsilon(1e-15));
    }
    const BallPoint z(CVector{0.3}), w(CVector{Complex(0.0, 0.2)});
    const double exact = testing::disc_szego(0.3, Complex(0.0, 0.2));
    CHECK(rel_err(szego_fd(1, z, w).value, exact) <= 1e-10);
    CHECK(rel_err(szego_2f1(1, z, w).value, exact) <= 1e-10);
    auto g = testing::rng(40);
    for (int i = 0; i < 50; ++i) {
        const BallPoint a = testing::ball_point(1, 0.9, g), b = testing::ball_point(1, 0.9, g);
        const double ref = testing::disc_szego(a[0], b[0]);
        CHECK(rel_err(szego_fd(1, a, b).value, ref) <= 1e-10);
        CHECK(rel_err(szego_2f1(1, a, b).value, ref) <= 1e-10);
        CHECK(harm_szego(1, a, b) == doctest::Approx(ref).epsilon(1e-12));
        const double r2 = a.norm2();
        CHECK(szego_diagonal(1, a) == doctest::Approx((1 - r2 * r2) / ((1 - r2) * (1 - r2)) / (2 * kPi)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(szego_fd(2, BallPoint::axis(2, 0, 0.98), BallPoint::origin(2)), DomainError);
    CHECK_THROWS_AS(szego_fd(2, BallPoint::origin(3), BallPoint::origin(2)), DimensionMismatch);
}

TEST_CASE("Szego forms agree on a grid") {
    for (int n : {2, 3})
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 4; ++k) {
                    const double r1 = 0.15 * i, r2 = 0.15 * j, th = kPi / 4 * k;
                    const BallPoint z = BallPoint::axis(n, 0, r1);
                    CVector wc(n, 0.0);
                    wc[0] = r2 * std::cos(th);
                    wc[1] = Complex(0.0, r2 * std::sin(th));
                    const BallPoint w(wc);
                    const SeriesValue a = szego_fd(n, z, w), b = szego_2f1(n, z, w);
                    CHECK(rel_err(a.value, b.value) <= 1e-10);
                    CHECK(std::fabs(a.value.imag()) <= 1e-14);
                }
}

TEST_CASE("diagonal and orthogonal forms") {
    auto g = testing::rng(41);
    for (int n : {2, 3, 5})
        for (int i = 0; i < 20; ++i) {
            const BallPoint z = testing::ball_point(n, 0.8, g);
            const double d = szego_diagonal(n, z);
            CHECK(d > 0.0);
            CHECK(rel_err(szego_2f1(n, z, z).value, d) <= 1e-9);
            const double r1 = testing::uniform(g, 0.0, 0.8), r2 = testing::uniform(g, 0.0, 0.8);
            const BallPoint a = BallPoint::axis(n, 0, r1), b = BallPoint::axis(n, 1, r2);
            CHECK(rel_err(szego_fd(n, a, b).value, szego_orthogonal(n, r1, r2)) <= 1e-9);
        }
    CHECK(rel_err(szego_fd(2, BallPoint::axis(2, 0, 0.5), BallPoint::axis(2, 1, 0.4)).value,
                  szego_orthogonal(2, 0.5, 0.4)) <= 1e-9);
    CHECK(rel_err(szego_fd(2, BallPoint::origin(2), BallPoint::axis(2, 1, 0.4)).value,
                  szego_orthogonal(2, 0.0, 0.4)) <= 1e-12);
}

TEST_CASE("Szego symmetry") {
    auto g = testing::rng(42);
    for (int i = 0; i < 30; ++i) {
        const BallPoint z = testing::ball_point(3, 0.9, g), w = testing::ball_point(3, 0.9, g);
        const Complex a = szego_fd(3, z, w).value, b = szego_fd(3, w, z).value;
        CHECK(std::abs(a - b) <= 1e-11 * std::abs(a));
        CHECK(std::fabs(a.imag()) <= 1e-12 * std::abs(a));
        // unitary invariance
        const UnitaryMatrix u = random_unitary(3, g);
        const Complex c = szego_fd(3, BallPoint(apply(u, z.coords())), BallPoint(apply(u, w.coords()))).value;
        CHECK(std::abs(a - c) <= 1e-11 * std::abs(a));
    }
}

TEST_CASE("c_pq closed forms") {
    for (int n : {1, 2, 3})
        for (double s : {0.0, 1.0, 2.5})
            CHECK(coeff_cpq(power(n, s), 0, 0) == doctest::Approx(c00(n, s)).epsilon(1e-12));
    const double c11 = (96.0 * zeta3() - 115.0) / 4.0;
    CHECK(std::fabs(coeff_cpq(power(2, 0.0), 1, 1) - c11) <= 1e-9 * c11);
    CHECK(coeff_cpq(power(2, 1.0), 0, 3) == doctest::Approx(1.0 / 60.0).epsilon(1e-12));
    // 2c_10 = Γ(n+1)Γ(s+1)/Γ(n+s+2)
    for (double s : {0.0, 0.5, 3.0})
        CHECK(2 * coeff_cpq(power(2, s), 1, 0) ==
              doctest::Approx(std::tgamma(3.0) * std::tgamma(s + 1) / std::tgamma(s + 4)).epsilon(1e-11));
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
            CHECK(coeff_cpq(hardy(2), p, q) == 1.0);
            CHECK(coeff_cpq(power(2, 0.5), p, q) == coeff_cpq(power(2, 0.5), q, p));
        }
    const CpqCrossCheck x = coeff_cpq_checked(power(2, 2.0), 2, 1);
    CHECK(x.series_converged);
    CHECK(x.rel_difference <= 1e-8);
    CHECK_THROWS_AS(coeff_cpq(power(2, -1.0), 0, 0), DomainError);
}

TEST_CASE("c_pq cache under concurrent first access") {
    const KernelParams k = power(3, 0.37);
    std::vector<double> got(4);
    std::vector<std::thread> pool;
    for (int i = 0; i < 4; ++i)
        pool.emplace_back([&, i] { got[i] = coeff_cpq(k, 3, 2); });
    for (auto& t : pool)
        t.join();
    for (double v : got)
        CHECK(v == got[0]);
}

TEST_CASE("A_pqjm") {
    for (int n : {1, 2, 3})
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q)
                for (int j = 0; j <= 2; ++j)
                    for (int m = 0; m <= 2; ++m) {
                        const double exact = pochhammer(n, j + p) * pochhammer(n, j + q) * pochhammer(n, m + p) *
                                             pochhammer(n, m + q) / pochhammer(n, m + j + p + q);
                        CHECK(apqjm_hardy_closed(n, p, q, j, m) == doctest::Approx(exact).epsilon(1e-14));
                        CHECK(coeff_apqjm(hardy(n), p, q, j, m) == doctest::Approx(exact).epsilon(1e-10));
                    }
    CHECK(coeff_apqjm(power(2, 0.0), 0, 0, 0, 0) == doctest::Approx(4.0).epsilon(1e-14));
    // n³/((n+1)c_11): a factor 3 below the value 32/(96ζ(3)-115)
    const double d = 96.0 * zeta3() - 115.0;
    CHECK(coeff_apqjm(power(2, 0.0), 1, 1, 0, 0) == doctest::Approx(32.0 / (3.0 * d)).epsilon(1e-9));
}

TEST_CASE("weighted Bergman kernel") {
    for (double s : {0.0, 1.0, 2.5})
        for (int n : {1, 2, 3})
            CHECK(bergman_kernel(power(n, s), BallPoint::origin(n), BallPoint::origin(n)).real() ==
                  doctest::Approx(szego_const(n) / c00(n, s)).epsilon(1e-12));
    CHECK(bergman_kernel(power(2, 0.0), BallPoint::origin(2), BallPoint::origin(2)).real() ==
          doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-13));

    auto g = testing::rng(43);
    // n = 1: K_s = 2 Re K_s^hol - Γ(s+2)/(Γ(s+1)π)
    for (double s : {0.0, 1.5})
        for (int i = 0; i < 5; ++i) {
            const BallPoint z = testing::ball_point(1, 0.6, g), w = testing::ball_point(1, 0.6, g);
            const double ref = 2 * hol_closed(1, s, z, w).real() - (s + 1) / kPi;
            CHECK(rel_err(bergman_kernel(power(1, s), z, w).value, ref) <= 1e-8);
        }
    // point mass recovers the Szegő kernel
    for (int n : {2, 3})
        for (int i = 0; i < 5; ++i) {
            const BallPoint z = testing::ball_point(n, 0.5, g), w = testing::ball_point(n, 0.5, g);
            const SeriesValue b = bergman_kernel(hardy(n), z, w);
            CHECK(rel_err(b.value, szego_fd(n, z, w).value) <= 1e-9);
        }
    // symmetry, positivity, and the bigraded form
    for (int i = 0; i < 4; ++i) {
        const BallPoint z = testing::ball_point(2, 0.5, g), w = testing::ball_point(2, 0.5, g);
        const KernelParams k = power(2, 0.0);
        const Complex a = bergman_kernel(k, z, w).value;
        CHECK(std::abs(a - bergman_kernel(k, w, z).value) <= 1e-10 * std::abs(a));
        CHECK(rel_err(bergman_kernel_bigraded(k, z, w).value, a) <= 1e-8);
        CHECK(bergman_kernel(k, z, z).real() > 0.0);
    }
    CHECK_THROWS_AS(bergman_kernel(power(2, 0.0), BallPoint::axis(2, 0, 0.95), BallPoint::origin(2)), DomainError);
}

TEST_CASE("holomorphic and harmonic kernels") {
    CHECK(hol_kernel(2, 0.0, BallPoint::origin(2), BallPoint::origin(2)).real() ==
          doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
    auto g = testing::rng(44);
    for (int i = 0; i < 20; ++i) {
        const BallPoint z = testing::ball_point(3, 0.9, g), w = testing::ball_point(3, 0.9, g);
        CHECK(rel_err(hol_kernel(3, 1.5, z, w), hol_closed(3, 1.5, z, w)) <= 1e-13);
    }
    for (int n : {1, 2, 3})
        CHECK(harm_szego(n, BallPoint::origin(n), testing::ball_point(n, 0.7, g)) ==
              doctest::Approx(szego_const(n)).epsilon(1e-14));
}

TEST_CASE("F_s kernel") {
    auto g = testing::rng(45);
    for (int n : {2, 3})
        for (int i = 0; i < 5; ++i) {
            const BallPoint z = testing::ball_point(n, 0.5, g), w = testing::ball_point(n, 0.5, g);
            CHECK(rel_err(f_s_kernel(n, -1, z, w, 120).value, szego_2f1(n, z, w).value) <= 1e-10);
        }
    for (int s : {0, 1, 2})
        CHECK(f_s_kernel(2, s, BallPoint::origin(2), testing::ball_point(2, 0.5, g), 60).real() ==
              doctest::Approx(szego_const(2) * std::pow(0.5, 2 * s + 2)).epsilon(1e-14));
    const BallPoint z = BallPoint::axis(2, 0, 0.5), w = BallPoint::axis(2, 0, 0.4);
    const SeriesValue a = f_s_kernel(2, 0, z, w, 30, 0.0), b = f_s_kernel(2, 0, z, w, 60, 0.0);
    CHECK(std::abs(a.value - b.value) <= a.tail_estimate);
    CHECK(a.truncation_order == 30);
}

TEST_CASE("Wallach continuation") {
    for (double s : {-2.5, -1.5, 0.0, 1.0})
        CHECK(wallach_f(power(2, 0.0), 1, 0, s) == doctest::Approx((3.0 + s) / 2.0).epsilon(1e-8));
    for (int k = 1; k <= 10; ++k) {
        const double s = -3.0 + 0.5 * k;
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q)
                if (p + q > 0)
                    CHECK(wallach_f(power(2, 0.0), p, q, s) > 0.0);
    }
    for (double s : {-0.5, 0.0, 1.5})
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q)
                if (p + q > 0) {
                    const double direct = coeff_cpq(power(2, s), 0, 0) / coeff_cpq(power(2, s), p, q);
                    CHECK(wallach_f(power(2, s), p, q, s) == doctest::Approx(direct).epsilon(1e-6));
                }
    // endpoint
    CHECK(wallach_f(power(2, 0.0), 1, 0, -2.999) == doctest::Approx(0.0005).epsilon(1e-6));
    CHECK_THROWS_AS(wallach_f(power(2, 0.0), 1, 0, -3.0), DomainError);
    CHECK_THROWS_AS(wallach_f(power(2, 0.0), 0, 0, 0.0), DomainError);
}

TEST_CASE("asymptotic leading term") {
    CHECK(cpq_asymptotic_leading(2, 0.5, 3.0, 3.0) > 0.0);
    CHECK(cpq_asymptotic_leading(2, 0.5, 3.0, 5.0) == cpq_asymptotic_leading(2, 0.5, 5.0, 3.0));
    for (double s : {0.0, 1.0}) {
        double last = 1e9;
        for (int lam : {8, 16, 32, 64}) {
            const double ratio = 2.0 * coeff_cpq(power(2, s), lam, lam) / cpq_asymptotic_leading(2, s, lam, lam);
            const double dev = std::fabs(ratio - 1.0);
            CHECK(dev < last);
            last = dev;
        }
        CHECK(last <= 0.05);
    }
}

TEST_CASE("semiclassical limit") {
    for (double s : {1.0, 10.0, 100.0}) {
        const double exact = std::pow(szego_const(2) / c00(2, s), 1.0 / s);
        CHECK(semiclassical_ratio(2, s, BallPoint::origin(2)) == doctest::Approx(exact).epsilon(1e-10));
    }
    double last = 1e9;
    for (double s : {25.0, 50.0, 100.0}) {
        const double dev = std::fabs(semiclassical_ratio(2, s, BallPoint::axis(2, 0, 0.4)) - 1.0);
        CHECK(dev < last);
        last = dev;
    }
    CHECK_THROWS_AS(semiclassical_ratio(2, 0.0, BallPoint::origin(2)), DomainError);
}
