#include "chemflow/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace chemflow {
namespace {

// Chemotaxis flux n * chi(c_coef) * grad(c_coef), divergence form keeps the
// density integral exact.
VectorField chemotaxis_flux(const ScalarField& n, const ScalarField& chi_of_c,
                            const VectorField& grad_c) {
    VectorField flux(n.grid());
    for (int a = 0; a < flux.dim(); ++a)
        flux[a] = dealiased_product(n, dealiased_product(chi_of_c, grad_c[a]));
    return flux;
}

VectorField advect_vector(const VectorField& u, const VectorField& v) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out[a] = advect(u, v[a]);
    return out;
}

VectorField buoyancy(const ScalarField& n, const PotentialSpec& pot) {
    VectorField f(n.grid());
    for (int a = 0; a < f.dim(); ++a) f[a] = dealiased_product(n, pot.grad_phi[a]);
    return f;
}

void check_tendency(const Tendency& t) {
    require_finite(t.dn, "density tendency");
    require_finite(t.dc, "oxygen tendency");
    require_finite(t.du, "velocity tendency");
}

}  // namespace

Tendency rhs_full(const State& s, const ModelFunctions& mf, const PotentialSpec& pot) {
    const ScalarField chi_c = apply_pointwise(s.c, mf.chi);
    const ScalarField k_c = apply_pointwise(s.c, mf.k);
    const VectorField grad_c = gradient(s.c);

    Tendency t{ScalarField(s.n.grid()), ScalarField(s.c.grid()), VectorField(s.u.grid())};
    t.dn = laplacian(s.n) - advect(s.u, s.n) - divergence(chemotaxis_flux(s.n, chi_c, grad_c));
    t.dc = laplacian(s.c) - advect(s.u, s.c) - dealiased_product(k_c, s.n);
    VectorField du = laplacian(s.u) - advect_vector(s.u, s.u) - buoyancy(s.n, pot);
    t.du = leray_project(du);
    check_tendency(t);
    return t;
}

Tendency rhs_regularized(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                         CutoffParam k, MollifierParam eps) {
    const VectorField u = cutoff(s.u, k);
    const ScalarField chi_c = apply_pointwise(s.c, mf.chi);
    const ScalarField k_c = apply_pointwise(s.c, mf.k);
    const VectorField grad_c = gradient(s.c);

    // Mollify the drift velocity chi(c) grad c, then form the divergence-form
    // flux with the unmollified density.
    VectorField drift(s.n.grid());
    for (int a = 0; a < drift.dim(); ++a)
        drift[a] = mollify(dealiased_product(chi_c, grad_c[a]), eps);
    VectorField flux(s.n.grid());
    for (int a = 0; a < flux.dim(); ++a) flux[a] = dealiased_product(s.n, drift[a]);

    Tendency t{ScalarField(s.n.grid()), ScalarField(s.c.grid()), VectorField(s.u.grid())};
    t.dn = laplacian(s.n) - advect(u, s.n) - divergence(flux);
    t.dc = laplacian(s.c) - advect(u, s.c) - dealiased_product(k_c, mollify(s.n, eps));
    VectorField du = laplacian(u) - advect_vector(u, u) - buoyancy(s.n, pot);
    t.du = leray_project(cutoff(du, k));
    check_tendency(t);
    return t;
}

Tendency rhs_linearized(const State& s, const State& frozen, const ModelFunctions& mf,
                        const PotentialSpec& pot) {
    if (s.n.grid() != frozen.n.grid())
        throw std::invalid_argument("rhs_linearized: states on different grids");
    const ScalarField chi_c = apply_pointwise(frozen.c, mf.chi);
    const ScalarField k_c = apply_pointwise(frozen.c, mf.k);
    const VectorField grad_c = gradient(frozen.c);

    Tendency t{ScalarField(s.n.grid()), ScalarField(s.c.grid()), VectorField(s.u.grid())};
    t.dn = laplacian(s.n) - advect(frozen.u, s.n) -
           divergence(chemotaxis_flux(s.n, chi_c, grad_c));
    t.dc = laplacian(s.c) - advect(frozen.u, s.c) - dealiased_product(k_c, frozen.n);
    VectorField du = laplacian(s.u) - advect_vector(frozen.u, s.u) - buoyancy(frozen.n, pot);
    t.du = leray_project(du);
    check_tendency(t);
    return t;
}

VectorField velocity_from_vorticity(const ScalarField& omega) {
    const GridSpec& grid = omega.grid();
    if (grid.dim != 2)
        throw std::invalid_argument("velocity_from_vorticity: requires dim=2");
    const auto& w = omega.spectral();
    std::vector<std::complex<double>> u0(w.size()), u1(w.size());
    const int nyq = grid.points_per_axis / 2;
    for_each_mode(grid, [&](std::size_t i, const std::array<double, 3>& xi,
                            const std::array<int, 3>& k) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1];
        if (xi2 == 0.0 || std::abs(k[0]) == nyq || std::abs(k[1]) == nyq) {
            u0[i] = u1[i] = {0.0, 0.0};
            return;
        }
        // stream function psi_hat = -omega_hat/|xi|^2, u = (-d2 psi, d1 psi)
        const std::complex<double> psi = -w[i] / xi2;
        u0[i] = std::complex<double>(0.0, -xi[1]) * psi;
        u1[i] = std::complex<double>(0.0, xi[0]) * psi;
    });
    return VectorField(ScalarField::from_spectral(grid, std::move(u0)),
                       ScalarField::from_spectral(grid, std::move(u1)));
}

ScalarField rhs_vorticity2d(const ScalarField& omega, const ScalarField& n,
                            const PotentialSpec& pot) {
    if (omega.grid().dim != 2)
        throw std::invalid_argument("rhs_vorticity2d: requires dim=2");
    const double mean = std::abs(integral(omega)) / omega.grid().volume();
    if (mean > 1e-12 * (1.0 + lp_norm(omega, 2.0)))
        throw std::invalid_argument("rhs_vorticity2d: omega must be mean-free");
    const VectorField u = velocity_from_vorticity(omega);
    // buoyancy torque (perp grad n) . grad phi with perp grad = (-d2, d1)
    ScalarField torque = dealiased_product(derivative(n, 1) * -1.0, pot.grad_phi[0]) +
                         dealiased_product(derivative(n, 0), pot.grad_phi[1]);
    ScalarField t = laplacian(omega) - advect(u, omega) - torque;
    require_finite(t, "vorticity tendency");
    return t;
}

ScalarField pressure_recover(const State& s, const ModelFunctions& mf, const PotentialSpec& pot) {
    (void)mf;
    VectorField g = advect_vector(s.u, s.u) + buoyancy(s.n, pot);
    const ScalarField rhs = divergence(g);
    const auto& r = rhs.spectral();
    std::vector<std::complex<double>> p(r.size());
    for_each_mode(s.n.grid(), [&](std::size_t i, const std::array<double, 3>& xi,
                                  const std::array<int, 3>&) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        p[i] = xi2 == 0.0 ? std::complex<double>{0.0, 0.0} : r[i] / xi2;
    });
    return ScalarField::from_spectral(s.n.grid(), std::move(p));
}

}  // namespace chemflow
