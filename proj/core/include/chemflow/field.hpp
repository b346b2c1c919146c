#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "chemflow/fft.hpp"
#include "chemflow/grid.hpp"

namespace chemflow {

/// Real-valued grid function with a lazily synchronized spectral dual.
/// Whichever representation was written last is authoritative; the other
/// is produced on demand. Fields are value types; a published field is
/// treated as immutable by convention.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& grid);
    static ScalarField from_values(const GridSpec& grid, std::vector<double> values);
    static ScalarField from_spectral(const GridSpec& grid,
                                     std::vector<std::complex<double>> spectral);
    static ScalarField from_function(
        const GridSpec& grid, const std::function<double(const std::array<double, 3>&)>& f);

    const GridSpec& grid() const { return grid_; }
    bool empty() const { return !has_values_ && !has_spectral_; }
    /// True iff an already materialized representation is exactly zero.
    /// Never forces a transform, so it may return false for a zero field.
    bool is_identically_zero() const;

    const std::vector<double>& values() const;
    const std::vector<std::complex<double>>& spectral() const;

    void set_values(std::vector<double> values);
    void set_spectral(std::vector<std::complex<double>> spectral);

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

private:
    GridSpec grid_;
    mutable std::vector<double> values_;
    mutable std::vector<std::complex<double>> spectral_;
    mutable bool has_values_ = false;
    mutable bool has_spectral_ = false;

    void sync_values() const;
    void sync_spectral() const;
};

/// dim scalar components on one grid.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const GridSpec& grid);
    VectorField(ScalarField c0, ScalarField c1);
    VectorField(ScalarField c0, ScalarField c1, ScalarField c2);

    const GridSpec& grid() const { return components_[0].grid(); }
    int dim() const { return static_cast<int>(components_.size()); }
    const ScalarField& operator[](int i) const { return components_[i]; }
    ScalarField& operator[](int i) { return components_[i]; }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, double s) { return a *= s; }
    friend VectorField operator*(double s, VectorField a) { return a *= s; }

private:
    std::vector<ScalarField> components_;
};

// ---- pointwise utilities ----

/// Plain (aliased) pointwise product; most dynamics code wants
/// dealiased_product instead.
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);
ScalarField apply_pointwise(const ScalarField& f, const std::function<double(double)>& fn);
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
/// Throws std::invalid_argument naming the first non-finite index.
void require_finite(const ScalarField& f, const std::string& what);
void require_finite(const VectorField& v, const std::string& what);

// ---- norms and integrals ----

double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);  // pointwise magnitude norm
double sobolev_norm(const ScalarField& f, int m);
double sobolev_norm(const VectorField& v, int m);
double integral(const ScalarField& f);
/// Moment integral of <y> f with <y> = (1+|y|^2)^(1/2) and y the
/// minimal-image displacement from the domain center.
double weighted_moment(const ScalarField& f);
/// The weight <y> itself as a grid field, with its analytic gradient and
/// Laplacian (used by the moment identity residual).
ScalarField moment_weight(const GridSpec& grid);
VectorField moment_weight_gradient(const GridSpec& grid);
ScalarField moment_weight_laplacian(const GridSpec& grid);

// ---- spectral calculus ----

ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
/// 2D scalar curl d1 u2 - d2 u1.
ScalarField curl2d(const VectorField& v);

/// Zero all modes outside the dealias ball |k_a| <= dealias_limit per axis.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
/// 2/3-rule product: both factors truncated, product truncated.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

/// inverse(forward(f)); diagnostic round trip.
ScalarField transform_roundtrip(const ScalarField& f);

/// Band-limited random field with seeded generator; modes above max_mode
/// are zero, the mean is zero, and the L2 norm is normalized to 1.
ScalarField random_band_limited(const GridSpec& grid, unsigned seed, int max_mode);

}  // namespace chemflow
