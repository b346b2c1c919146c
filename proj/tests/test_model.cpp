#include <doctest.h>

#include <cmath>
#include <limits>

#include "chemflow/model.hpp"

using namespace chemflow;

namespace {
GridSpec grid2d(int n = 64) {
    GridSpec g;
    g.dim = 2;
    g.points_per_axis = n;
    return g;
}
}  // namespace

TEST_CASE("rational consumption family") {
    ModelFunctions mf = make_rational_family(1.0, 0.3, 1.0);
    CHECK(mf.k(0.0) == 0.0);
    CHECK(mf.k(0.3) == doctest::Approx(0.5).epsilon(1e-14));
    // derivative stays positive on [0,1]
    for (int i = 0; i <= 256; ++i) CHECK(mf.k_prime(i / 256.0) > 0.0);
    const AssumptionReport rep = validate_assumptions(mf, 2.0);
    CHECK(rep.AA_holds);
    CHECK(rep.A_deviation == 0.0);
    CHECK(rep.B_violations.empty());
    CHECK(rep.k_zero_at_origin);
    CHECK_THROWS_AS(make_rational_family(-1.0, 0.3, 1.0), std::invalid_argument);
}

TEST_CASE("smoothed step family") {
    const double kappa1 = 1.0, c_star = 0.3, delta = 0.02;
    ModelFunctions mf = make_step_family(kappa1, c_star, delta, 2.0);
    CHECK(mf.k(0.0) == 0.0);
    CHECK(mf.k(c_star + 20.0 * delta) == doctest::Approx(kappa1).epsilon(1e-6));
    const AssumptionReport rep = validate_assumptions(mf, 2.0);
    CHECK(rep.AA_holds);
    CHECK(rep.B_violations.empty());

    // wide ramp stays monotone
    ModelFunctions gentle = make_step_family(1.0, 0.3, 3.0, 1.0);
    for (int i = 0; i <= 512; ++i) CHECK(gentle.k_prime(2.0 * i / 512.0) >= 0.0);
    CHECK_THROWS_AS(make_step_family(1.0, 0.3, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("assumption report flags deviations") {
    SUBCASE("exact proportionality") {
        ModelFunctions mf = make_rational_family(1.0, 0.3, 2.0);
        const AssumptionReport rep = validate_assumptions(mf, 1.0);
        CHECK(rep.AA_holds);
        CHECK(rep.A_deviation == 0.0);
    }
    SUBCASE("bump perturbation is measured") {
        ModelFunctions mf = add_chi_perturbation(make_step_family(1.0, 0.3, 0.05, 1.0), 0.01,
                                                 0.3, 0.05);
        const AssumptionReport rep = validate_assumptions(mf, 1.0, 4096);
        CHECK_FALSE(rep.AA_holds);
        CHECK(rep.A_deviation == doctest::Approx(0.01).epsilon(1e-6));
    }
    SUBCASE("nonzero consumption at origin is flagged") {
        ModelFunctions mf = make_rational_family(1.0, 0.3, 1.0);
        auto k = mf.k;
        mf.k = [k](double c) { return k(c) + 0.1; };
        const AssumptionReport rep = validate_assumptions(mf, 1.0);
        CHECK_FALSE(rep.k_zero_at_origin);
    }
}

TEST_CASE("cancellation of chi - mu k on a grid field") {
    const GridSpec g = grid2d();
    ModelFunctions mf = make_rational_family(1.0, 0.3, 2.5);
    ScalarField c = ScalarField::from_function(
        g, [](const std::array<double, 3>& x) { return 1.0 + 0.3 * std::sin(x[0]) * std::cos(x[1]); });
    ScalarField chi_c = apply_pointwise(c, mf.chi);
    ScalarField mu_k_c = apply_pointwise(c, [&](double v) { return mf.mu * mf.k(v); });
    CHECK(lp_norm(chi_c - mu_k_c, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("potentials") {
    const GridSpec g = grid2d();
    SUBCASE("gravity-like potential is nonnegative with consistent bounds") {
        PotentialSpec pot = make_gravity_potential(g, 0.1);
        CHECK(min_value(pot.phi) >= 0.0);
        CHECK(pot.sup_phi ==
              doctest::Approx(lp_norm(pot.phi, std::numeric_limits<double>::infinity()))
                  .epsilon(1e-10));
        // stored gradient agrees with spectral differentiation
        VectorField grad = gradient(pot.phi);
        for (int a = 0; a < 2; ++a)
            CHECK(lp_norm(grad[a] - pot.grad_phi[a], 2.0) <= 1e-12 * (1.0 + pot.sup_grad_phi));
        ScalarField lap = laplacian(pot.phi);
        CHECK(lp_norm(lap - pot.laplacian_phi, 2.0) <= 1e-11 * (1.0 + pot.sup_laplacian_phi));
    }
    SUBCASE("radial bump potential consistency") {
        PotentialSpec pot = make_radial_potential(g, 0.5, 0.35);
        CHECK(min_value(pot.phi) >= 0.0);
        VectorField grad = gradient(pot.phi);
        // the bump decays fast enough that the periodic seam is negligible
        for (int a = 0; a < 2; ++a)
            CHECK(lp_norm(grad[a] - pot.grad_phi[a], 2.0) <= 1e-8);
    }
    SUBCASE("zero potential") {
        PotentialSpec pot = make_zero_potential(g);
        CHECK(pot.sup_phi == 0.0);
        CHECK(pot.sup_grad_phi == 0.0);
    }
}

TEST_CASE("zero family shuts the coupling off") {
    ModelFunctions mf = make_zero_family();
    CHECK(mf.k(1.0) == 0.0);
    CHECK(mf.chi(1.0) == 0.0);
    const AssumptionReport rep = validate_assumptions(mf, 1.0);
    CHECK(rep.AA_holds);
    CHECK(rep.k_zero_at_origin);
}
