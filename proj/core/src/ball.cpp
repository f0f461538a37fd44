#include "mhk/ball.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>
#include <utility>

namespace mhk {

Complex inner(const CVector& z, const CVector& w) {
    if (z.size() != w.size())
        throw DimensionMismatch("inner product of vectors of dimension " +
                                std::to_string(z.size()) + " and " + std::to_string(w.size()));
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < z.size(); ++j)
        s += z[j] * std::conj(w[j]);
    return s;
}

double norm2(const CVector& z) {
    double s = 0.0;
    for (Complex v : z)
        s += std::norm(v);
    return s;
}

BallPoint::BallPoint(CVector coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw DomainError("ball point needs at least one coordinate");
    if (!(mhk::norm2(coords_) <= 1.0 - kBallMargin))
        throw DomainError("point outside the open unit ball (|z|^2 = " +
                          std::to_string(mhk::norm2(coords_)) + ")");
}

BallPoint BallPoint::axis(int n, int k, Complex r) {
    CVector v(n, Complex(0.0, 0.0));
    v.at(k) = r;
    return BallPoint(std::move(v));
}

double BallPoint::norm2() const { return mhk::norm2(coords_); }

SpherePoint::SpherePoint(CVector coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw DomainError("sphere point needs at least one coordinate");
    if (std::fabs(mhk::norm2(coords_) - 1.0) > kSphereTolerance)
        throw DomainError("point not on the unit sphere");
}

SpherePoint SpherePoint::axis(int n, int k) {
    CVector v(n, Complex(0.0, 0.0));
    v.at(k) = 1.0;
    return SpherePoint(std::move(v));
}

BallPoint moebius(const BallPoint& z, const BallPoint& w) {
    if (z.dim() != w.dim())
        throw DimensionMismatch("moebius: dimension mismatch");
    const int n = z.dim();
    const double z2 = z.norm2();
    CVector out(n);
    if (z2 == 0.0) {
        for (int j = 0; j < n; ++j)
            out[j] = -w[j];
        return BallPoint(std::move(out));
    }
    const Complex wz = inner(w, z);
    const Complex den = 1.0 - wz;
    const double root = std::sqrt(1.0 - z2);
    for (int j = 0; j < n; ++j) {
        const Complex proj = wz / z2 * z[j];
        out[j] = (z[j] - proj - root * (w[j] - proj)) / den;
    }
    // Rounding can push |φ_z w| marginally past the acceptance margin.
    double r2 = mhk::norm2(out);
    if (r2 > 1.0 - kBallMargin) {
        double f = std::sqrt((1.0 - kBallMargin) / r2);
        for (auto& v : out)
            v *= f;
    }
    return BallPoint(std::move(out));
}

InvariantCoords invariant_coords(const BallPoint& z, const BallPoint& w) {
    BallPoint v = moebius(z, w);
    return {z.norm2(), v.norm2(), inner(z, v)};
}

InvariantCoords invariant_coords_closed(const BallPoint& z, const BallPoint& w) {
    const double x1 = z.norm2(), y2 = w.norm2();
    const Complex x2 = inner(z, w), y1 = inner(w, z);
    InvariantCoords c;
    c.U = x1;
    c.Z = (x1 - x2) / (1.0 - x2);
    c.V = 1.0 - ((1.0 - x1) * (1.0 - y2) / ((1.0 - x2) * (1.0 - y1))).real();
    return c;
}

UnitaryMatrix random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = R(j, j);
        double ad = std::abs(d);
        if (ad > 0.0)
            Q.col(j) *= d / ad;
    }
    UnitaryMatrix U(n, CVector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            U[i][j] = Q(i, j);
    return U;
}

CVector apply(const UnitaryMatrix& U, const CVector& z) {
    if (U.size() != z.size())
        throw DimensionMismatch("apply: dimension mismatch");
    CVector out(z.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            out[i] += U[i][j] * z[j];
    return out;
}

SpherePoint random_sphere_point(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(n);
    double s = 0.0;
    do {
        for (auto& c : v)
            c = Complex(g(rng), g(rng));
        s = norm2(v);
    } while (s == 0.0);
    const double f = 1.0 / std::sqrt(s);
    for (auto& c : v)
        c *= f;
    return SpherePoint(std::move(v));
}

BallPoint random_ball_point(int n, double r, std::mt19937_64& rng) {
    SpherePoint e = random_sphere_point(n, rng);
    CVector v = e.coords();
    for (auto& c : v)
        c *= r;
    return BallPoint(std::move(v));
}

}  // namespace mhk
