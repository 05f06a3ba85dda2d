/// @file types.hpp
/// @brief Core value types: 3-vectors, symmetric 6-tensors, and the 14-variable
///        state records used throughout the solver.
///
/// Symmetric second-order tensors are stored as 6-vectors in the order
/// (s11, s12, s13, s22, s23, s33).  Double contractions use the weights
/// (1, 2, 2, 1, 2, 1) so that sym_dot(a, b) equals the full tensor
/// contraction A : B entry by entry.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace hyperturb {

using Vec3 = std::array<double, 3>;
using Sym6 = std::array<double, 6>;

inline constexpr int kNumVars = 14;

/// Component layout of the 14-variable state vector
/// (phi, u1..u3, s11, s12, s13, s22, s23, s33, k, y1..y3).
namespace var {
inline constexpr int phi = 0;
inline constexpr int u = 1;    // u block: 1..3
inline constexpr int sig = 4;  // sigma block: 4..9
inline constexpr int k = 10;
inline constexpr int y = 11;   // y block: 11..13
}  // namespace var

/// Contraction weights for the 6-vector tensor storage.
inline constexpr std::array<double, 6> kSymWeights = {1.0, 2.0, 2.0, 1.0, 2.0, 1.0};

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm2(const Vec3& a) { return dot(a, a); }

inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

/// Weighted double contraction of two symmetric tensors stored as 6-vectors.
/// Summation order is fixed (s11, s12, s13, s22, s23, s33) so results are
/// reproducible bit for bit.
inline double sym_dot(const Sym6& a, const Sym6& b) {
    double acc = a[0] * b[0];
    acc += 2.0 * (a[1] * b[1]);
    acc += 2.0 * (a[2] * b[2]);
    acc += a[3] * b[3];
    acc += 2.0 * (a[4] * b[4]);
    acc += a[5] * b[5];
    return acc;
}

inline double sym_norm2(const Sym6& a) { return sym_dot(a, a); }

/// One grid point of the rescaled system: scaled pressure fluctuation phi
/// (p = p0 + eps*phi), velocity, absorbed stress 6-vector, turbulent kinetic
/// energy and the auxiliary diffusion flux.
struct RescaledState {
    double phi = 0.0;
    Vec3 u = {0.0, 0.0, 0.0};
    Sym6 sigma = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    double k = 0.0;
    Vec3 y = {0.0, 0.0, 0.0};

    std::array<double, kNumVars> to_array() const {
        return {phi,      u[0],     u[1],     u[2],    sigma[0],
                sigma[1], sigma[2], sigma[3], sigma[4], sigma[5],
                k,        y[0],     y[1],     y[2]};
    }

    static RescaledState from_array(const std::array<double, kNumVars>& a) {
        RescaledState s;
        s.phi = a[0];
        s.u = {a[1], a[2], a[3]};
        s.sigma = {a[4], a[5], a[6], a[7], a[8], a[9]};
        s.k = a[10];
        s.y = {a[11], a[12], a[13]};
        return s;
    }
};

/// One grid point of the unscaled physical system.
struct PhysState {
    double rho = 1.0;
    Vec3 u = {0.0, 0.0, 0.0};
    Sym6 sigma = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    double k = 0.0;
    Vec3 y = {0.0, 0.0, 0.0};
};

}  // namespace hyperturb
