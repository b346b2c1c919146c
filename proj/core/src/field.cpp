#include "chemflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace chemflow {

// ---- ScalarField ----

ScalarField::ScalarField(const GridSpec& grid) : grid_(grid) {
    grid.validate();
    values_.assign(grid.total_points(), 0.0);
    spectral_.assign(grid.total_points(), {0.0, 0.0});
    has_values_ = has_spectral_ = true;
}

ScalarField ScalarField::from_values(const GridSpec& grid, std::vector<double> values) {
    grid.validate();
    if (values.size() != grid.total_points())
        throw std::invalid_argument("ScalarField::from_values: size mismatch");
    ScalarField f;
    f.grid_ = grid;
    f.values_ = std::move(values);
    f.has_values_ = true;
    return f;
}

ScalarField ScalarField::from_spectral(const GridSpec& grid,
                                       std::vector<std::complex<double>> spectral) {
    grid.validate();
    if (spectral.size() != grid.total_points())
        throw std::invalid_argument("ScalarField::from_spectral: size mismatch");
    ScalarField f;
    f.grid_ = grid;
    f.spectral_ = std::move(spectral);
    f.has_spectral_ = true;
    return f;
}

ScalarField ScalarField::from_function(
    const GridSpec& grid, const std::function<double(const std::array<double, 3>&)>& fn) {
    grid.validate();
    std::vector<double> v(grid.total_points());
    for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) { v[i] = fn(x); });
    return from_values(grid, std::move(v));
}

void ScalarField::sync_values() const {
    if (!has_values_) {
        fft::inverse(grid_, spectral_, values_);
        has_values_ = true;
    }
}

void ScalarField::sync_spectral() const {
    if (!has_spectral_) {
        fft::forward(grid_, values_, spectral_);
        has_spectral_ = true;
    }
}

const std::vector<double>& ScalarField::values() const {
    sync_values();
    return values_;
}

const std::vector<std::complex<double>>& ScalarField::spectral() const {
    sync_spectral();
    return spectral_;
}

void ScalarField::set_values(std::vector<double> values) {
    if (values.size() != grid_.total_points())
        throw std::invalid_argument("ScalarField::set_values: size mismatch");
    values_ = std::move(values);
    has_values_ = true;
    has_spectral_ = false;
}

void ScalarField::set_spectral(std::vector<std::complex<double>> spectral) {
    if (spectral.size() != grid_.total_points())
        throw std::invalid_argument("ScalarField::set_spectral: size mismatch");
    spectral_ = std::move(spectral);
    has_spectral_ = true;
    has_values_ = false;
}

bool ScalarField::is_identically_zero() const {
    if (has_values_) {
        for (double x : values_)
            if (x != 0.0) return false;
        return true;
    }
    if (has_spectral_) {
        for (const auto& z : spectral_)
            if (z.real() != 0.0 || z.imag() != 0.0) return false;
        return true;
    }
    return false;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    if (grid_ != other.grid()) throw std::invalid_argument("field grids differ");
    const auto& ov = other.values();
    sync_values();
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += ov[i];
    has_spectral_ = false;
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    if (grid_ != other.grid()) throw std::invalid_argument("field grids differ");
    const auto& ov = other.values();
    sync_values();
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= ov[i];
    has_spectral_ = false;
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    if (has_values_)
        for (double& v : values_) v *= s;
    if (has_spectral_)
        for (auto& c : spectral_) c *= s;
    return *this;
}

// ---- VectorField ----

VectorField::VectorField(const GridSpec& grid) {
    for (int a = 0; a < grid.dim; ++a) components_.emplace_back(grid);
}

VectorField::VectorField(ScalarField c0, ScalarField c1) {
    if (c0.grid() != c1.grid() || c0.grid().dim != 2)
        throw std::invalid_argument("VectorField: component grids inconsistent");
    components_.push_back(std::move(c0));
    components_.push_back(std::move(c1));
}

VectorField::VectorField(ScalarField c0, ScalarField c1, ScalarField c2) {
    if (c0.grid() != c1.grid() || c0.grid() != c2.grid() || c0.grid().dim != 3)
        throw std::invalid_argument("VectorField: component grids inconsistent");
    components_.push_back(std::move(c0));
    components_.push_back(std::move(c1));
    components_.push_back(std::move(c2));
}

VectorField& VectorField::operator+=(const VectorField& other) {
    for (int a = 0; a < dim(); ++a) components_[a] += other[a];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    for (int a = 0; a < dim(); ++a) components_[a] -= other[a];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (auto& c : components_) c *= s;
    return *this;
}

// ---- pointwise utilities ----

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("pointwise_product: grids differ");
    const auto& av = a.values();
    const auto& bv = b.values();
    std::vector<double> out(av.size());
    for (std::size_t i = 0; i < av.size(); ++i) out[i] = av[i] * bv[i];
    return ScalarField::from_values(a.grid(), std::move(out));
}

ScalarField apply_pointwise(const ScalarField& f, const std::function<double(double)>& fn) {
    const auto& v = f.values();
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = fn(v[i]);
    return ScalarField::from_values(f.grid(), std::move(out));
}

double min_value(const ScalarField& f) {
    const auto& v = f.values();
    return *std::min_element(v.begin(), v.end());
}

double max_value(const ScalarField& f) {
    const auto& v = f.values();
    return *std::max_element(v.begin(), v.end());
}

void require_finite(const ScalarField& f, const std::string& what) {
    const auto& v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::invalid_argument(what + ": non-finite value at index " + std::to_string(i));
}

void require_finite(const VectorField& v, const std::string& what) {
    for (int a = 0; a < v.dim(); ++a)
        require_finite(v[a], what + "[" + std::to_string(a) + "]");
}

// ---- norms and integrals ----

double lp_norm(const ScalarField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto& v = f.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    const double cellvol = f.grid().cell_volume();
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s * cellvol, 1.0 / p);
}

double lp_norm(const VectorField& v, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const std::size_t total = v.grid().total_points();
    std::vector<double> mag(total, 0.0);
    for (int a = 0; a < v.dim(); ++a) {
        const auto& c = v[a].values();
        for (std::size_t i = 0; i < total; ++i) mag[i] += c[i] * c[i];
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : mag) m = std::max(m, x);
        return std::sqrt(m);
    }
    const double cellvol = v.grid().cell_volume();
    double s = 0.0;
    for (double x : mag) s += std::pow(x, p / 2.0);
    return std::pow(s * cellvol, 1.0 / p);
}

double sobolev_norm(const ScalarField& f, int m) {
    if (m < 0) throw std::invalid_argument("sobolev_norm: m must be >= 0");
    const auto& spec = f.spectral();
    const double vol = f.grid().volume();
    double s = 0.0;
    for_each_mode(f.grid(), [&](std::size_t i, const std::array<double, 3>& xi,
                                const std::array<int, 3>&) {
        double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        s += std::pow(1.0 + xi2, m) * std::norm(spec[i]);
    });
    return std::sqrt(vol * s);
}

double sobolev_norm(const VectorField& v, int m) {
    double s = 0.0;
    for (int a = 0; a < v.dim(); ++a) {
        double c = sobolev_norm(v[a], m);
        s += c * c;
    }
    return std::sqrt(s);
}

double integral(const ScalarField& f) {
    // Exact: the k=0 coefficient times the volume.
    return f.spectral()[0].real() * f.grid().volume();
}

ScalarField moment_weight(const GridSpec& grid) {
    std::array<double, 3> center{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) center[a] = 0.5 * grid.side_length[a];
    return ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            double y = x[a] - center[a];
            r2 += y * y;
        }
        return std::sqrt(1.0 + r2);
    });
}

VectorField moment_weight_gradient(const GridSpec& grid) {
    std::array<double, 3> center{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) center[a] = 0.5 * grid.side_length[a];
    VectorField g(grid);
    for (int a = 0; a < grid.dim; ++a) {
        g[a] = ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
            double r2 = 0.0;
            for (int b = 0; b < grid.dim; ++b) {
                double y = x[b] - center[b];
                r2 += y * y;
            }
            return (x[a] - center[a]) / std::sqrt(1.0 + r2);
        });
    }
    return g;
}

ScalarField moment_weight_laplacian(const GridSpec& grid) {
    std::array<double, 3> center{0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) center[a] = 0.5 * grid.side_length[a];
    const int d = grid.dim;
    return ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int b = 0; b < d; ++b) {
            double y = x[b] - center[b];
            r2 += y * y;
        }
        double w = std::sqrt(1.0 + r2);
        return (d + (d - 1) * r2) / (w * w * w);
    });
}

double weighted_moment(const ScalarField& f) {
    const auto& v = f.values();
    const ScalarField weight = moment_weight(f.grid());
    const auto& w = weight.values();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i];
    return s * f.grid().cell_volume();
}

// ---- spectral calculus ----

ScalarField derivative(const ScalarField& f, int axis) {
    const auto& spec = f.spectral();
    std::vector<std::complex<double>> out(spec.size());
    for_each_mode(f.grid(), [&](std::size_t i, const std::array<double, 3>& xi,
                                const std::array<int, 3>& k) {
        // The unmatched Nyquist mode has no conjugate partner; i*xi on it
        // would break realness, so it is dropped.
        if (std::abs(k[axis]) == f.grid().points_per_axis / 2)
            out[i] = {0.0, 0.0};
        else
            out[i] = std::complex<double>(0.0, xi[axis]) * spec[i];
    });
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

VectorField gradient(const ScalarField& f) {
    VectorField g(f.grid());
    for (int a = 0; a < f.grid().dim; ++a) g[a] = derivative(f, a);
    return g;
}

ScalarField divergence(const VectorField& v) {
    ScalarField d = derivative(v[0], 0);
    for (int a = 1; a < v.dim(); ++a) d += derivative(v[a], a);
    return d;
}

ScalarField laplacian(const ScalarField& f) {
    const auto& spec = f.spectral();
    std::vector<std::complex<double>> out(spec.size());
    for_each_mode(f.grid(), [&](std::size_t i, const std::array<double, 3>& xi,
                                const std::array<int, 3>&) {
        double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        out[i] = -xi2 * spec[i];
    });
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

VectorField laplacian(const VectorField& v) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out[a] = laplacian(v[a]);
    return out;
}

ScalarField curl2d(const VectorField& v) {
    if (v.dim() != 2) throw std::invalid_argument("curl2d: requires dim=2");
    return derivative(v[1], 0) - derivative(v[0], 1);
}

ScalarField dealias(const ScalarField& f) {
    const int limit = f.grid().dealias_limit();
    const auto& spec = f.spectral();
    std::vector<std::complex<double>> out(spec.size());
    for_each_mode(f.grid(), [&](std::size_t i, const std::array<double, 3>&,
                                const std::array<int, 3>& k) {
        bool keep = true;
        for (int a = 0; a < f.grid().dim; ++a)
            if (std::abs(k[a]) > limit) keep = false;
        out[i] = keep ? spec[i] : std::complex<double>{0.0, 0.0};
    });
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

VectorField dealias(const VectorField& v) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out[a] = dealias(v[a]);
    return out;
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    // A zero factor short-circuits the transforms; the result is exact.
    if (a.is_identically_zero() || b.is_identically_zero()) return ScalarField(a.grid());
    return dealias(pointwise_product(dealias(a), dealias(b)));
}

ScalarField transform_roundtrip(const ScalarField& f) {
    require_finite(f, "transform_roundtrip input");
    std::vector<std::complex<double>> spec;
    fft::forward(f.grid(), f.values(), spec);
    std::vector<double> back;
    fft::inverse(f.grid(), spec, back);
    return ScalarField::from_values(f.grid(), std::move(back));
}

ScalarField random_band_limited(const GridSpec& grid, unsigned seed, int max_mode) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> noise(grid.total_points());
    for (double& x : noise) x = dist(rng);
    ScalarField f = ScalarField::from_values(grid, std::move(noise));
    const auto& spec = f.spectral();
    std::vector<std::complex<double>> out(spec.size());
    for_each_mode(grid, [&](std::size_t i, const std::array<double, 3>&,
                            const std::array<int, 3>& k) {
        bool keep = true;
        if (k[0] == 0 && k[1] == 0 && k[2] == 0) keep = false;  // mean-free
        for (int a = 0; a < grid.dim; ++a)
            if (std::abs(k[a]) > max_mode) keep = false;
        out[i] = keep ? spec[i] : std::complex<double>{0.0, 0.0};
    });
    ScalarField g = ScalarField::from_spectral(grid, std::move(out));
    double norm = lp_norm(g, 2.0);
    if (norm > 0.0) g *= 1.0 / norm;
    return g;
}

}  // namespace chemflow
