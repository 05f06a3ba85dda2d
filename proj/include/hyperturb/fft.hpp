/// @file fft.hpp
/// @brief Radix-2 FFT and spectral operators (derivatives, inverse Laplacian,
///        Leray projection) on periodic 2D scalar grids.
///
/// Grid sizes must be powers of two.  Real fields are carried through complex
/// buffers; imaginary parts after an inverse transform are round-off and are
/// dropped.

#pragma once

#include <complex>
#include <vector>

#include "hyperturb/grid.hpp"

namespace hyperturb {

using Complex = std::complex<double>;

bool is_power_of_two(int n);

/// In-place complex FFT of length n (power of two); inverse applies the 1/n
/// normalization.
void fft_inplace(std::vector<Complex>& a, bool inverse);

/// Scalar field sampled at nodes (i*dx, j*dy), row-major.
using ScalarGrid = std::vector<double>;

struct Spectral2D {
    int nx;
    int ny;
    double lx;
    double ly;

    Spectral2D(const Grid& g);

    long n() const { return static_cast<long>(nx) * ny; }

    /// Signed wavenumber of mode index m on n points over length len.
    static double wavenumber(int m, int n, double len);

    std::vector<Complex> forward(const ScalarGrid& f) const;
    ScalarGrid backward(std::vector<Complex> fh) const;

    /// Spectral partial derivative along axis (0 = x, 1 = y); the Nyquist
    /// derivative symbol is zero.
    ScalarGrid derivative(const ScalarGrid& f, int axis) const;

    /// Solve laplace(p) = rhs with zero-mean p.
    ScalarGrid poisson(const ScalarGrid& rhs) const;

    /// Leray projection of (u1, u2) onto divergence-free fields.
    void project_div_free(ScalarGrid& u1, ScalarGrid& u2) const;

    /// Max-norm of the spectral divergence of (u1, u2).
    double divergence_max(const ScalarGrid& u1, const ScalarGrid& u2) const;
};

}  // namespace hyperturb
