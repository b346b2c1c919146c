#include "chemflow/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace chemflow {

VectorField leray_project(const VectorField& v) {
    const GridSpec& grid = v.grid();
    const int d = v.dim();
    std::vector<const std::vector<std::complex<double>>*> in(d);
    for (int a = 0; a < d; ++a) in[a] = &v[a].spectral();
    std::vector<std::vector<std::complex<double>>> out(d);
    for (int a = 0; a < d; ++a) out[a].resize(grid.total_points());
    for_each_mode(grid, [&](std::size_t i, const std::array<double, 3>& xi,
                            const std::array<int, 3>&) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (xi2 == 0.0) {
            for (int a = 0; a < d; ++a) out[a][i] = (*in[a])[i];
            return;
        }
        std::complex<double> dot{0.0, 0.0};
        for (int a = 0; a < d; ++a) dot += xi[a] * (*in[a])[i];
        dot /= xi2;
        for (int a = 0; a < d; ++a) out[a][i] = (*in[a])[i] - xi[a] * dot;
    });
    VectorField result(grid);
    for (int a = 0; a < d; ++a)
        result[a] = ScalarField::from_spectral(grid, std::move(out[a]));
    return result;
}

namespace {

ScalarField radial_multiplier(const ScalarField& f,
                              const std::function<double(double)>& m_of_xi2) {
    const auto& spec = f.spectral();
    std::vector<std::complex<double>> out(spec.size());
    for_each_mode(f.grid(), [&](std::size_t i, const std::array<double, 3>& xi,
                                const std::array<int, 3>&) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        out[i] = m_of_xi2(xi2) * spec[i];
    });
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

}  // namespace

ScalarField heat_propagate(const ScalarField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_propagate: t must be >= 0");
    if (t == 0.0) return f;
    return radial_multiplier(f, [t](double xi2) { return std::exp(-xi2 * t); });
}

VectorField heat_propagate(const VectorField& v, double t) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out[a] = heat_propagate(v[a], t);
    return out;
}

ScalarField advect(const VectorField& u, const ScalarField& f) {
    ScalarField out(f.grid());
    for (int a = 0; a < u.dim(); ++a) {
        if (u[a].is_identically_zero()) continue;
        out += dealiased_product(u[a], derivative(f, a));
    }
    return out;
}

ScalarField mollify(const ScalarField& f, MollifierParam eps) {
    if (!(eps.eps > 0.0)) throw std::invalid_argument("mollify: eps must be > 0");
    const double e2 = eps.eps * eps.eps;
    return radial_multiplier(f, [e2](double xi2) { return std::exp(-0.5 * e2 * xi2); });
}

VectorField mollify(const VectorField& v, MollifierParam eps) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out[a] = mollify(v[a], eps);
    return out;
}

ScalarField cutoff(const ScalarField& f, CutoffParam k) {
    if (!(k.k > 0.0)) throw std::invalid_argument("cutoff: k must be > 0");
    return radial_multiplier(f, [k](double xi2) { return xi2 <= k.k ? 1.0 : 0.0; });
}

VectorField cutoff(const VectorField& v, CutoffParam k) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out[a] = cutoff(v[a], k);
    return out;
}

}  // namespace chemflow
