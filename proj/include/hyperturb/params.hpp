/// @file params.hpp
/// @brief Closure and scaling constants of the hyperbolic turbulence model.

#pragma once

#include <stdexcept>
#include <string>

#include "hyperturb/eos.hpp"

namespace hyperturb {

/// All model constants.  alpha1..alpha3 weight the non-equilibrium entropy
/// terms, xi couples k and y, beta weights production, c_d and l are the
/// dissipation closure coefficient and turbulence length scale, nu is the
/// shear viscosity and epsilon the Mach-scaling parameter of the rescaled
/// system.
struct ModelParams {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double alpha3 = 1.0;
    double xi = 1.0;
    double beta = 1.0;
    double c_d = 0.08;
    double l = 0.1;
    double nu = 0.01;
    double epsilon = 1.0;
    EosParams eos;

    double p0() const { return eos.p0(); }

    /// nu_T = l*sqrt(k); mu_T = nu_T/nu.
    double eddy_nu(double k) const {
        if (k < 0.0) throw std::domain_error("negative turbulent kinetic energy");
        return l * std::sqrt(k);
    }
    double eddy_mu(double k) const { return eddy_nu(k) / nu; }

    /// The low Mach limit system reduces to Prandtl's one-equation model only
    /// when alpha2 = beta = xi^2 and rho0 = 1.
    bool limit_compatible() const {
        return alpha2 == xi * xi && beta == xi * xi && eos.rho0 == 1.0;
    }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw std::domain_error(std::string(name) + " must be > 0");
        };
        positive(alpha1, "alpha1");
        positive(alpha2, "alpha2");
        positive(alpha3, "alpha3");
        positive(xi, "xi");
        positive(beta, "beta");
        positive(c_d, "c_d");
        positive(l, "l");
        positive(nu, "nu");
        positive(epsilon, "epsilon");
        if (!(epsilon <= 1.0)) throw std::domain_error("epsilon must be <= 1");
        eos.validate();
    }
};

}  // namespace hyperturb
