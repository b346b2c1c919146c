#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "chemflow/field.hpp"
#include "chemflow/grid.hpp"

using namespace chemflow;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

GridSpec grid2d(int n = 64) {
    GridSpec g;
    g.dim = 2;
    g.points_per_axis = n;
    return g;
}

// Independent quadrature: evaluate the integrand analytically on a grid
// refined 4x and sum with cell-volume weights.
double quadrature_oracle(const GridSpec& grid,
                         const std::function<double(const std::array<double, 3>&)>& f) {
    GridSpec fine = grid;
    fine.points_per_axis = grid.points_per_axis * 4;
    double s = 0.0;
    for_each_point(fine, [&](std::size_t, const std::array<double, 3>& x) { s += f(x); });
    return s * fine.cell_volume();
}

}  // namespace

TEST_CASE("grid validation rejects malformed specs") {
    GridSpec g = grid2d();
    CHECK_NOTHROW(g.validate());
    g.dim = 4;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = grid2d(48);  // not a power of two
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = grid2d(8);  // too small
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = grid2d();
    g.side_length[1] = -1.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = grid2d();
    g.dealias_fraction = 0.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("transform round trip") {
    const GridSpec g = grid2d();

    SUBCASE("zero field is a fixed point") {
        ScalarField z(g);
        ScalarField r = transform_roundtrip(z);
        CHECK(lp_norm(r, 2.0) == 0.0);
    }
    SUBCASE("single mode") {
        ScalarField f = ScalarField::from_function(
            g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
        ScalarField r = transform_roundtrip(f);
        CHECK(lp_norm(r - f, 2.0) <= 1e-12 * lp_norm(f, 2.0));
    }
    SUBCASE("seeded band-limited random fields") {
        for (unsigned seed = 0; seed < 5; ++seed) {
            ScalarField f = random_band_limited(g, seed, 10);
            ScalarField r = transform_roundtrip(f);
            CHECK(lp_norm(r - f, 2.0) <= 1e-12);
        }
    }
    SUBCASE("non-finite input is rejected with the offending index") {
        std::vector<double> v(g.total_points(), 0.0);
        v[7] = std::numeric_limits<double>::quiet_NaN();
        ScalarField f = ScalarField::from_values(g, std::move(v));
        CHECK_THROWS_WITH_AS(transform_roundtrip(f),
                             doctest::Contains("index 7"), std::invalid_argument);
    }
}

TEST_CASE("lp norms") {
    const GridSpec g = grid2d();
    ScalarField two = ScalarField::from_function(g, [](const auto&) { return 2.0; });
    CHECK(lp_norm(two, 2.0) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
    CHECK(lp_norm(two, kInf) == doctest::Approx(2.0));

    ScalarField s = ScalarField::from_function(
        g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
    const double expected = std::sqrt(2.0 * M_PI * M_PI);
    CHECK(lp_norm(s, 2.0) == doctest::Approx(expected).epsilon(1e-12));
    const double oracle = std::sqrt(quadrature_oracle(
        g, [](const std::array<double, 3>& x) { return std::sin(x[0]) * std::sin(x[0]); }));
    CHECK(lp_norm(s, 2.0) == doctest::Approx(oracle).epsilon(1e-10));

    CHECK_THROWS_AS(lp_norm(s, 0.5), std::invalid_argument);
}

TEST_CASE("sobolev norms") {
    const GridSpec g = grid2d();
    ScalarField one = ScalarField::from_function(g, [](const auto&) { return 1.0; });
    CHECK(sobolev_norm(one, 3) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));

    ScalarField s = ScalarField::from_function(
        g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
    const double h1 = std::sqrt(2.0) * std::sqrt(2.0 * M_PI * M_PI);
    CHECK(sobolev_norm(s, 1) == doctest::Approx(h1).epsilon(1e-12));
    // oracle: integral of f^2 + |grad f|^2 by refined quadrature
    const double oracle = std::sqrt(quadrature_oracle(g, [](const std::array<double, 3>& x) {
        const double f = std::sin(x[0]);
        const double fx = std::cos(x[0]);
        return f * f + fx * fx;
    }));
    CHECK(sobolev_norm(s, 1) == doctest::Approx(oracle).epsilon(1e-10));

    ScalarField r = random_band_limited(g, 11, 12);
    CHECK(sobolev_norm(r, 0) == doctest::Approx(lp_norm(r, 2.0)).epsilon(1e-10));
    CHECK(sobolev_norm(r, 1) <= sobolev_norm(r, 2));
    CHECK(sobolev_norm(r, 0) <= sobolev_norm(r, 1));
}

TEST_CASE("spectral calculus") {
    const GridSpec g = grid2d();
    ScalarField s = ScalarField::from_function(
        g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });

    SUBCASE("analytic derivative") {
        VectorField grad = gradient(s);
        ScalarField expected = ScalarField::from_function(
            g, [](const std::array<double, 3>& x) { return std::cos(x[0]); });
        CHECK(lp_norm(grad[0] - expected, kInf) <= 1e-12);
        CHECK(lp_norm(grad[1], kInf) <= 1e-13);
    }
    SUBCASE("divergence of gradient equals laplacian") {
        ScalarField f = random_band_limited(g, 3, 15);
        ScalarField a = divergence(gradient(f));
        ScalarField b = laplacian(f);
        CHECK(lp_norm(a - b, 2.0) <= 1e-12 * lp_norm(b, 2.0));
    }
    SUBCASE("constants are annihilated") {
        ScalarField c = ScalarField::from_function(g, [](const auto&) { return 3.7; });
        CHECK(lp_norm(gradient(c), kInf) == 0.0);
        CHECK(lp_norm(laplacian(c), kInf) == 0.0);
    }
    SUBCASE("integral of a divergence vanishes") {
        VectorField v(random_band_limited(g, 5, 20), random_band_limited(g, 6, 20));
        CHECK(std::abs(integral(divergence(v))) <= 1e-12 * lp_norm(v, 2.0));
    }
}

TEST_CASE("integral and weighted moment") {
    const GridSpec g = grid2d();
    ScalarField one = ScalarField::from_function(g, [](const auto&) { return 1.0; });
    CHECK(integral(one) == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-12));

    ScalarField z(g);
    CHECK(weighted_moment(z) == 0.0);

    // centered Gaussian against the refined quadrature oracle
    const double cx = M_PI, sigma = 0.5;
    auto gauss = [=](const std::array<double, 3>& x) {
        const double dx = x[0] - cx, dy = x[1] - cx;
        return std::exp(-0.5 * (dx * dx + dy * dy) / (sigma * sigma));
    };
    ScalarField f = ScalarField::from_function(g, gauss);
    const double oracle = quadrature_oracle(g, [&](const std::array<double, 3>& x) {
        const double dx = x[0] - cx, dy = x[1] - cx;
        return std::sqrt(1.0 + dx * dx + dy * dy) * gauss(x);
    });
    CHECK(weighted_moment(f) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("parseval on random fields") {
    const GridSpec g = grid2d();
    for (unsigned seed = 0; seed < 10; ++seed) {
        ScalarField f = random_band_limited(g, 100 + seed, 18);
        const auto& spec = f.spectral();
        double sum = 0.0;
        for (const auto& c : spec) sum += std::norm(c);
        const double parseval = std::sqrt(g.volume() * sum);
        CHECK(lp_norm(f, 2.0) == doctest::Approx(parseval).epsilon(1e-10));
    }
}

TEST_CASE("dealiased products") {
    const GridSpec g = grid2d(64);
    SUBCASE("dealias zeroes exactly the upper third") {
        ScalarField f = random_band_limited(g, 42, 31);
        ScalarField d = dealias(f);
        const int limit = g.dealias_limit();
        CHECK(limit == 21);
        const auto& spec = d.spectral();
        for_each_mode(g, [&](std::size_t i, const std::array<double, 3>&,
                             const std::array<int, 3>& k) {
            if (std::abs(k[0]) > limit || std::abs(k[1]) > limit)
                CHECK(std::abs(spec[i]) == 0.0);
        });
    }
    SUBCASE("product of resolved modes matches the analytic coefficients") {
        // sin(x) * sin(x) = 1/2 - cos(2x)/2, all within the kept ball
        ScalarField s = ScalarField::from_function(
            g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
        ScalarField p = dealiased_product(s, s);
        ScalarField expected = ScalarField::from_function(
            g, [](const std::array<double, 3>& x) { return 0.5 - 0.5 * std::cos(2.0 * x[0]); });
        CHECK(lp_norm(p - expected, kInf) <= 1e-13);
    }
}

TEST_CASE("3d field sanity") {
    GridSpec g;
    g.dim = 3;
    g.points_per_axis = 16;
    ScalarField f = ScalarField::from_function(
        g, [](const std::array<double, 3>& x) { return std::sin(x[2]) * std::cos(x[0]); });
    CHECK(lp_norm(transform_roundtrip(f) - f, 2.0) <= 1e-12 * lp_norm(f, 2.0));
    ScalarField lap = laplacian(f);
    CHECK(lp_norm(lap + 2.0 * f, kInf) <= 1e-12);  // eigenfunction of -lap, eigenvalue 2
    CHECK(integral(f) == doctest::Approx(0.0).epsilon(1e-12));
}
