#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mhk/error.hpp"
#include "mhk/series.hpp"

namespace mhk {

using CVector = std::vector<Complex>;

// Points are accepted when |z|² <= 1 - kBallMargin.
constexpr double kBallMargin = 1e-10;
constexpr double kSphereTolerance = 1e-12;

class BallPoint {
public:
    BallPoint() = default;
    explicit BallPoint(CVector coords);

    static BallPoint origin(int n) { return BallPoint(CVector(n, Complex(0.0, 0.0))); }
    // r * e_k, k counted from 0
    static BallPoint axis(int n, int k, Complex r);

    const CVector& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    double norm2() const;
    Complex operator[](int k) const { return coords_[k]; }

private:
    CVector coords_;
};

class SpherePoint {
public:
    SpherePoint() = default;
    explicit SpherePoint(CVector coords);

    static SpherePoint axis(int n, int k);

    const CVector& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    Complex operator[](int k) const { return coords_[k]; }

private:
    CVector coords_;
};

struct InvariantCoords {
    double U = 0.0;
    double V = 0.0;
    Complex Z{0.0, 0.0};
};

// Σ z_j conj(w_j)
Complex inner(const CVector& z, const CVector& w);
inline Complex inner(const BallPoint& z, const BallPoint& w) { return inner(z.coords(), w.coords()); }
inline Complex inner(const BallPoint& z, const SpherePoint& w) { return inner(z.coords(), w.coords()); }
inline Complex inner(const SpherePoint& z, const BallPoint& w) { return inner(z.coords(), w.coords()); }
inline Complex inner(const SpherePoint& z, const SpherePoint& w) { return inner(z.coords(), w.coords()); }

double norm2(const CVector& z);

// The involutive automorphism interchanging z and 0; φ_0(w) = -w.
BallPoint moebius(const BallPoint& z, const BallPoint& w);

// (|z|², |φ_z w|², <z, φ_z w>) computed through φ_z.
InvariantCoords invariant_coords(const BallPoint& z, const BallPoint& w);

// The same triple from x1=|z|², x2=<z,w>, y1=<w,z>, y2=|w|²:
//   Z = (x1-x2)/(1-x2), V = 1 - (1-x1)(1-y2)/((1-x2)(1-y1)).
InvariantCoords invariant_coords_closed(const BallPoint& z, const BallPoint& w);

using UnitaryMatrix = std::vector<CVector>;  // row-major

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
// of R's diagonal absorbed into Q.
UnitaryMatrix random_unitary(int n, std::mt19937_64& rng);
CVector apply(const UnitaryMatrix& U, const CVector& z);

// Uniform point on the sphere (normalized complex Gaussian).
SpherePoint random_sphere_point(int n, std::mt19937_64& rng);
// Uniform direction, radius r.
BallPoint random_ball_point(int n, double r, std::mt19937_64& rng);

}  // namespace mhk
