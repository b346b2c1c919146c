#pragma once

#include "chemflow/field.hpp"

namespace chemflow {

/// Frequency-squared threshold of the sharp spectral ball projection.
struct CutoffParam {
    double k;
};

/// Length scale of the Gaussian spectral mollifier.
struct MollifierParam {
    double eps;
};

/// Project onto divergence-free fields: v_hat -> (I - xi xi^T/|xi|^2) v_hat,
/// identity at xi = 0. Idempotent, L2-contractive, annihilates gradients.
VectorField leray_project(const VectorField& v);

/// Exact diffusion semigroup: f_hat -> exp(-|xi|^2 t) f_hat, t >= 0.
ScalarField heat_propagate(const ScalarField& f, double t);
VectorField heat_propagate(const VectorField& v, double t);

/// Dealiased convective transport u . grad f.
ScalarField advect(const VectorField& u, const ScalarField& f);

/// Gaussian approximate identity: f_hat -> exp(-|eps xi|^2/2) f_hat.
/// Preserves the integral exactly and contracts L2 and Linf.
ScalarField mollify(const ScalarField& f, MollifierParam eps);
VectorField mollify(const VectorField& v, MollifierParam eps);

/// Zero every mode with |xi|^2 > k; divergence-free input stays so.
ScalarField cutoff(const ScalarField& f, CutoffParam k);
VectorField cutoff(const VectorField& v, CutoffParam k);

}  // namespace chemflow
