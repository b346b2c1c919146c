#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chemflow/field.hpp"

namespace chemflow {

/// Constitutive functions of the model: consumption rate k, chemotactic
/// sensitivity chi, their derivatives, and the proportionality constant mu.
/// All built-in families satisfy k(0) = 0 and chi = mu * k exactly.
struct ModelFunctions {
    std::function<double(double)> chi;
    std::function<double(double)> k;
    std::function<double(double)> chi_prime;
    std::function<double(double)> k_prime;
    double mu = 1.0;
    std::string family_tag;
};

/// Gravity-like or radial potential with its analytic gradient and
/// Laplacian precomputed on the grid, plus recorded sup bounds.
struct PotentialSpec {
    ScalarField phi;
    VectorField grad_phi;
    ScalarField laplacian_phi;
    double sup_phi = 0.0;
    double sup_grad_phi = 0.0;
    double sup_laplacian_phi = 0.0;
};

struct AssumptionReport {
    double A_deviation = 0.0;
    bool AA_holds = false;
    std::vector<double> B_violations;
    bool k_zero_at_origin = false;
};

AssumptionReport validate_assumptions(const ModelFunctions& mf, double c_max, int samples = 256);

ModelFunctions make_rational_family(double kappa1, double c_star, double mu);
/// chi = k = 0: the transport-diffusion-only degenerate family.
ModelFunctions make_zero_family();
/// Offset-corrected logistic ramp: k(0) = 0 exactly, k -> kappa1 for
/// c >> c_star, transition width delta.
ModelFunctions make_step_family(double kappa1, double c_star, double delta, double mu);

/// Scale the sensitivity (and its derivative) by a factor while leaving k
/// untouched; breaks the chi = mu*k proportionality unless factor = 1.
ModelFunctions scale_chi(ModelFunctions mf, double factor);
/// Add a Gaussian bump of the given max amplitude, centered at c_star in c,
/// to chi alone.
ModelFunctions add_chi_perturbation(ModelFunctions mf, double amplitude, double c_star,
                                    double width);

PotentialSpec make_zero_potential(const GridSpec& grid);
/// phi(x) = a*(1 - cos(2 pi x_d / L))*L/(2 pi) >= 0 along the last axis.
PotentialSpec make_gravity_potential(const GridSpec& grid, double amplitude);
/// Radial bump a*exp(-|y|^2/(2 w^2)) about the domain center, minimal image.
PotentialSpec make_radial_potential(const GridSpec& grid, double amplitude, double width);

}  // namespace chemflow
