#include "chemflow/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemflow {

AssumptionReport validate_assumptions(const ModelFunctions& mf, double c_max, int samples) {
    if (!(c_max > 0.0)) throw std::invalid_argument("validate_assumptions: c_max must be > 0");
    if (samples < 256) throw std::invalid_argument("validate_assumptions: samples must be >= 256");
    AssumptionReport rep;
    const double tol = 1e-12;
    for (int i = 0; i <= samples; ++i) {
        const double c = c_max * static_cast<double>(i) / samples;
        const double dev = std::abs(mf.chi(c) - mf.mu * mf.k(c));
        rep.A_deviation = std::max(rep.A_deviation, dev);
        if (mf.chi(c) < -tol || mf.k(c) < -tol || mf.chi_prime(c) < -tol || mf.k_prime(c) < -tol)
            rep.B_violations.push_back(c);
    }
    rep.AA_holds = rep.A_deviation <= 1e-14 * (1.0 + std::abs(mf.mu));
    rep.k_zero_at_origin = mf.k(0.0) == 0.0;
    return rep;
}

ModelFunctions make_zero_family() {
    ModelFunctions mf;
    mf.mu = 1.0;
    mf.family_tag = "zero";
    auto zero = [](double) { return 0.0; };
    mf.chi = zero;
    mf.k = zero;
    mf.chi_prime = zero;
    mf.k_prime = zero;
    return mf;
}

ModelFunctions make_rational_family(double kappa1, double c_star, double mu) {
    if (!(kappa1 > 0.0 && c_star > 0.0 && mu > 0.0))
        throw std::invalid_argument("make_rational_family: parameters must be positive");
    ModelFunctions mf;
    mf.mu = mu;
    mf.family_tag = "rational";
    mf.k = [kappa1, c_star](double c) { return kappa1 * c / (c + c_star); };
    mf.k_prime = [kappa1, c_star](double c) {
        const double d = c + c_star;
        return kappa1 * c_star / (d * d);
    };
    mf.chi = [k = mf.k, mu](double c) { return mu * k(c); };
    mf.chi_prime = [kp = mf.k_prime, mu](double c) { return mu * kp(c); };
    return mf;
}

ModelFunctions make_step_family(double kappa1, double c_star, double delta, double mu) {
    if (!(delta > 0.0)) throw std::invalid_argument("make_step_family: delta must be > 0");
    if (!(kappa1 > 0.0 && c_star > 0.0 && mu > 0.0))
        throw std::invalid_argument("make_step_family: parameters must be positive");
    auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    const double s0 = sigmoid(-c_star / delta);
    // Subtracting the c=0 sigmoid value and renormalizing makes k(0) = 0
    // exact while keeping k -> kappa1 as c -> infinity.
    ModelFunctions mf;
    mf.mu = mu;
    mf.family_tag = "step";
    mf.k = [=](double c) { return kappa1 * (sigmoid((c - c_star) / delta) - s0) / (1.0 - s0); };
    mf.k_prime = [=](double c) {
        const double s = sigmoid((c - c_star) / delta);
        return kappa1 * s * (1.0 - s) / (delta * (1.0 - s0));
    };
    mf.chi = [k = mf.k, mu](double c) { return mu * k(c); };
    mf.chi_prime = [kp = mf.k_prime, mu](double c) { return mu * kp(c); };
    return mf;
}

ModelFunctions scale_chi(ModelFunctions mf, double factor) {
    auto chi = mf.chi;
    auto chi_prime = mf.chi_prime;
    mf.chi = [chi, factor](double c) { return factor * chi(c); };
    mf.chi_prime = [chi_prime, factor](double c) { return factor * chi_prime(c); };
    mf.family_tag += "+scaled_chi";
    return mf;
}

ModelFunctions add_chi_perturbation(ModelFunctions mf, double amplitude, double c_star,
                                    double width) {
    if (!(width > 0.0)) throw std::invalid_argument("add_chi_perturbation: width must be > 0");
    auto chi = mf.chi;
    auto chi_prime = mf.chi_prime;
    mf.chi = [=](double c) {
        const double z = (c - c_star) / width;
        return chi(c) + amplitude * std::exp(-0.5 * z * z);
    };
    mf.chi_prime = [=](double c) {
        const double z = (c - c_star) / width;
        return chi_prime(c) - amplitude * (z / width) * std::exp(-0.5 * z * z);
    };
    mf.family_tag += "+chi_bump";
    return mf;
}

namespace {

PotentialSpec finalize(ScalarField phi, VectorField grad_phi, ScalarField lap_phi) {
    PotentialSpec pot{std::move(phi), std::move(grad_phi), std::move(lap_phi)};
    pot.sup_phi = lp_norm(pot.phi, std::numeric_limits<double>::infinity());
    pot.sup_grad_phi = lp_norm(pot.grad_phi, std::numeric_limits<double>::infinity());
    pot.sup_laplacian_phi = lp_norm(pot.laplacian_phi, std::numeric_limits<double>::infinity());
    return pot;
}

}  // namespace

PotentialSpec make_zero_potential(const GridSpec& grid) {
    return finalize(ScalarField(grid), VectorField(grid), ScalarField(grid));
}

PotentialSpec make_gravity_potential(const GridSpec& grid, double amplitude) {
    const int d = grid.dim - 1;
    const double L = grid.side_length[d];
    const double w = kTwoPi / L;
    ScalarField phi = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        return amplitude * (1.0 - std::cos(w * x[d])) / w;
    });
    VectorField grad(grid);
    grad[d] = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        return amplitude * std::sin(w * x[d]);
    });
    ScalarField lap = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        return amplitude * w * std::cos(w * x[d]);
    });
    return finalize(std::move(phi), std::move(grad), std::move(lap));
}

PotentialSpec make_radial_potential(const GridSpec& grid, double amplitude, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("make_radial_potential: width must be > 0");
    std::array<double, 3> center{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) center[a] = 0.5 * grid.side_length[a];
    auto r2_of = [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            double y = x[a] - center[a];
            r2 += y * y;
        }
        return r2;
    };
    const double w2 = width * width;
    ScalarField phi = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        return amplitude * std::exp(-0.5 * r2_of(x) / w2);
    });
    VectorField grad(grid);
    for (int a = 0; a < grid.dim; ++a) {
        grad[a] = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
            return -amplitude * ((x[a] - center[a]) / w2) * std::exp(-0.5 * r2_of(x) / w2);
        });
    }
    const int d = grid.dim;
    ScalarField lap = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        const double r2 = r2_of(x);
        return amplitude * (r2 / (w2 * w2) - d / w2) * std::exp(-0.5 * r2 / w2);
    });
    return finalize(std::move(phi), std::move(grad), std::move(lap));
}

}  // namespace chemflow
