#pragma once

#include "chemflow/model.hpp"
#include "chemflow/operators.hpp"

namespace chemflow {

/// The unknown triple at one instant. Velocity is divergence-free by
/// construction; density and oxygen nonnegativity is monitored, not enforced.
struct State {
    ScalarField n;
    ScalarField c;
    VectorField u;
    double time = 0.0;
};

/// Right-hand side evaluation. du is already Leray-projected; dn integrates
/// to zero because the density equation is assembled in divergence form.
struct Tendency {
    ScalarField dn;
    ScalarField dc;
    VectorField du;
};

Tendency rhs_full(const State& s, const ModelFunctions& mf, const PotentialSpec& pot);

/// Regularized variant: the velocity is confined to the spectral ball
/// |xi|^2 <= k, the chemotactic drift and the consumption density are
/// mollified at scale eps.
Tendency rhs_regularized(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                         CutoffParam k, MollifierParam eps);

/// Frozen-coefficient linear system: transport fields and flux coefficients
/// come from `frozen`, the evolved unknowns from `s`; the oxygen sink is
/// fully frozen.
Tendency rhs_linearized(const State& s, const State& frozen, const ModelFunctions& mf,
                        const PotentialSpec& pot);

/// 2D vorticity tendency with buoyancy torque; omega must be mean-free.
ScalarField rhs_vorticity2d(const ScalarField& omega, const ScalarField& n,
                            const PotentialSpec& pot);

/// Invert the stream-function relation: curl2d(result) = omega,
/// divergence(result) = 0.
VectorField velocity_from_vorticity(const ScalarField& omega);

/// Mean-free pressure from -lap p = div(u.grad u + n grad phi).
ScalarField pressure_recover(const State& s, const ModelFunctions& mf, const PotentialSpec& pot);

}  // namespace chemflow
