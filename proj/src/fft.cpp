/// @file fft.cpp
/// @brief Iterative radix-2 FFT and the 2D spectral operator toolbox.

#include "hyperturb/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hyperturb {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::domain_error("fft: length must be a power of two");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

Spectral2D::Spectral2D(const Grid& g) : nx(g.nx), ny(g.ny), lx(g.lx), ly(g.ly) {
    if (g.dim != 2) throw std::domain_error("spectral operators require a 2D grid");
    if (!is_power_of_two(nx) || !is_power_of_two(ny))
        throw std::domain_error("spectral operators require power-of-two grid sizes");
}

double Spectral2D::wavenumber(int m, int n, double len) {
    const int signed_m = m <= n / 2 ? m : m - n;
    return 2.0 * M_PI * signed_m / len;
}

std::vector<Complex> Spectral2D::forward(const ScalarGrid& f) const {
    if (static_cast<long>(f.size()) != n()) throw std::domain_error("spectral: field size mismatch");
    std::vector<Complex> fh(f.begin(), f.end());
    std::vector<Complex> row(nx);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = fh[static_cast<std::size_t>(j) * nx + i];
        fft_inplace(row, false);
        for (int i = 0; i < nx; ++i) fh[static_cast<std::size_t>(j) * nx + i] = row[i];
    }
    std::vector<Complex> col(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = fh[static_cast<std::size_t>(j) * nx + i];
        fft_inplace(col, false);
        for (int j = 0; j < ny; ++j) fh[static_cast<std::size_t>(j) * nx + i] = col[j];
    }
    return fh;
}

ScalarGrid Spectral2D::backward(std::vector<Complex> fh) const {
    std::vector<Complex> col(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = fh[static_cast<std::size_t>(j) * nx + i];
        fft_inplace(col, true);
        for (int j = 0; j < ny; ++j) fh[static_cast<std::size_t>(j) * nx + i] = col[j];
    }
    std::vector<Complex> row(nx);
    ScalarGrid f(static_cast<std::size_t>(n()));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = fh[static_cast<std::size_t>(j) * nx + i];
        fft_inplace(row, true);
        for (int i = 0; i < nx; ++i) f[static_cast<std::size_t>(j) * nx + i] = row[i].real();
    }
    return f;
}

ScalarGrid Spectral2D::derivative(const ScalarGrid& f, int axis) const {
    std::vector<Complex> fh = forward(f);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double kk;
            if (axis == 0) {
                kk = (i == nx / 2) ? 0.0 : wavenumber(i, nx, lx);
            } else {
                kk = (j == ny / 2) ? 0.0 : wavenumber(j, ny, ly);
            }
            fh[static_cast<std::size_t>(j) * nx + i] *= Complex(0.0, kk);
        }
    }
    return backward(std::move(fh));
}

ScalarGrid Spectral2D::poisson(const ScalarGrid& rhs) const {
    std::vector<Complex> fh = forward(rhs);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            // Derivative-consistent symbols: Nyquist modes are dead.
            const double kx = (i == nx / 2) ? 0.0 : wavenumber(i, nx, lx);
            const double ky = (j == ny / 2) ? 0.0 : wavenumber(j, ny, ly);
            const double k2 = kx * kx + ky * ky;
            Complex& c = fh[static_cast<std::size_t>(j) * nx + i];
            c = (k2 == 0.0) ? Complex(0.0, 0.0) : c / (-k2);
        }
    }
    return backward(std::move(fh));
}

void Spectral2D::project_div_free(ScalarGrid& u1, ScalarGrid& u2) const {
    std::vector<Complex> u1h = forward(u1);
    std::vector<Complex> u2h = forward(u2);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            // Same dead-Nyquist convention as derivative(), so the projected
            // field has zero spectral divergence and projecting is idempotent.
            const double kx = (i == nx / 2) ? 0.0 : wavenumber(i, nx, lx);
            const double ky = (j == ny / 2) ? 0.0 : wavenumber(j, ny, ly);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            const std::size_t idx = static_cast<std::size_t>(j) * nx + i;
            const Complex kdotu = kx * u1h[idx] + ky * u2h[idx];
            u1h[idx] -= kx * kdotu / k2;
            u2h[idx] -= ky * kdotu / k2;
        }
    }
    u1 = backward(std::move(u1h));
    u2 = backward(std::move(u2h));
}

double Spectral2D::divergence_max(const ScalarGrid& u1, const ScalarGrid& u2) const {
    const ScalarGrid d1 = derivative(u1, 0);
    const ScalarGrid d2 = derivative(u2, 1);
    double m = 0.0;
    for (long c = 0; c < n(); ++c) m = std::max(m, std::abs(d1[c] + d2[c]));
    return m;
}

}  // namespace hyperturb
