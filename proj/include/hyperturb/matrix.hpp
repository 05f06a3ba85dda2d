/// @file matrix.hpp
/// @brief Small dense square matrices and a cyclic Jacobi eigenvalue solver.
///
/// The flux Jacobians are 14x14 and the dissipation matrix is 10x10, so a
/// fixed-size value type plus an O(n^3) Jacobi sweep is all the linear
/// algebra this project needs.  Everything here is deterministic: no pivoting
/// heuristics, fixed sweep order.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hyperturb {

template <int N>
struct SquareMatrix {
    std::array<double, static_cast<std::size_t>(N) * N> a{};

    static constexpr int size() { return N; }

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * N + j]; }

    static SquareMatrix identity() {
        SquareMatrix m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    SquareMatrix transposed() const {
        SquareMatrix t;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Max-abs entry norm.
    double max_abs() const {
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }

    /// Max-abs asymmetry |A - A^T|.
    double asymmetry() const {
        double m = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j)
                m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
        return m;
    }

    std::array<double, N> apply(const std::array<double, N>& x) const {
        std::array<double, N> r{};
        for (int i = 0; i < N; ++i) {
            double acc = 0.0;
            for (int j = 0; j < N; ++j) acc += (*this)(i, j) * x[j];
            r[i] = acc;
        }
        return r;
    }

    friend SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
        SquareMatrix r;
        for (int i = 0; i < N; ++i)
            for (int kk = 0; kk < N; ++kk) {
                const double lik = lhs(i, kk);
                if (lik == 0.0) continue;
                for (int j = 0; j < N; ++j) r(i, j) += lik * rhs(kk, j);
            }
        return r;
    }

    friend SquareMatrix operator+(const SquareMatrix& lhs, const SquareMatrix& rhs) {
        SquareMatrix r;
        for (std::size_t idx = 0; idx < lhs.a.size(); ++idx) r.a[idx] = lhs.a[idx] + rhs.a[idx];
        return r;
    }

    friend SquareMatrix operator*(double s, const SquareMatrix& m) {
        SquareMatrix r;
        for (std::size_t idx = 0; idx < m.a.size(); ++idx) r.a[idx] = s * m.a[idx];
        return r;
    }
};

using SquareMatrix14 = SquareMatrix<14>;
using SquareMatrix10 = SquareMatrix<10>;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// The input is symmetrized explicitly, so tiny asymmetries (assembly
/// round-off) are tolerated.  Throws if the sweep fails to converge, which
/// for symmetric input does not happen in practice.
template <int N>
std::array<double, N> symmetric_eigenvalues(const SquareMatrix<N>& m_in) {
    SquareMatrix<N> m;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = 0.5 * (m_in(i, j) + m_in(j, i));

    double scale = m.max_abs();
    if (!(std::isfinite(scale))) throw std::runtime_error("symmetric_eigenvalues: non-finite input");
    if (scale == 0.0) return {};

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(m(p, q)));
        if (off <= 1e-15 * scale) break;
        if (sweep == max_sweeps - 1)
            throw std::runtime_error("symmetric_eigenvalues: Jacobi sweep did not converge");

        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = m(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double app = m(p, p);
                const double aqq = m(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int i = 0; i < N; ++i) {
                    const double mip = m(i, p);
                    const double miq = m(i, q);
                    m(i, p) = c * mip - s * miq;
                    m(i, q) = s * mip + c * miq;
                }
                for (int j = 0; j < N; ++j) {
                    const double mpj = m(p, j);
                    const double mqj = m(q, j);
                    m(p, j) = c * mpj - s * mqj;
                    m(q, j) = s * mpj + c * mqj;
                }
            }
        }
    }

    std::array<double, N> ev;
    for (int i = 0; i < N; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

template <int N>
double min_eigenvalue(const SquareMatrix<N>& m) {
    return symmetric_eigenvalues(m)[0];
}

template <int N>
double spectral_radius_symmetric(const SquareMatrix<N>& m) {
    auto ev = symmetric_eigenvalues(m);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace hyperturb
