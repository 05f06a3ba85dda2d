/// @file eos.hpp
/// @brief Isothermal equation of state p = c^2 * rho, its inverse, the
///        compressibility coefficient q(p) and the equilibrium entropy s_eq.
///
/// The model only requires p(rho) strictly increasing and s_eq strictly
/// concave; the isothermal ideal-gas pair (p = c^2 rho, s_eq = c^2 ln v)
/// satisfies both with d/dv s_eq(1/rho) = p(rho) exactly and gives the
/// closed form q(p) = 1/p.

#pragma once

#include <cmath>
#include <stdexcept>

namespace hyperturb {

struct EosParams {
    double c = 1.0;     // isothermal sound speed
    double rho0 = 1.0;  // reference density

    double p0() const { return c * c * rho0; }

    void validate() const {
        if (!(c > 0.0)) throw std::domain_error("eos: c must be > 0");
        if (!(rho0 > 0.0)) throw std::domain_error("eos: rho0 must be > 0");
    }
};

inline double pressure(double rho, const EosParams& eos) {
    if (!(rho > 0.0)) throw std::domain_error("eos: nonpositive density");
    return eos.c * eos.c * rho;
}

inline double density_from_pressure(double p, const EosParams& eos) {
    if (!(p > 0.0)) throw std::domain_error("eos: nonpositive pressure");
    return p / (eos.c * eos.c);
}

/// q(p) = [rho(p) p'(rho(p))]^-1, which reduces to 1/p for the linear law.
inline double q_of_p(double p, const EosParams& eos) {
    if (!(p > 0.0)) throw std::domain_error("eos: nonpositive pressure");
    (void)eos;
    return 1.0 / p;
}

/// Equilibrium specific entropy of specific volume v = 1/rho.
inline double s_eq(double v, const EosParams& eos) {
    if (!(v > 0.0)) throw std::domain_error("eos: nonpositive specific volume");
    return eos.c * eos.c * std::log(v);
}

}  // namespace hyperturb
