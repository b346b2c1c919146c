#pragma once

#include <array>
#include <cstddef>

namespace chemflow {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Periodic torus discretization. Uniform grid, power-of-two points per
/// axis, side lengths default to 2*pi.
struct GridSpec {
    int dim = 2;
    int points_per_axis = 64;
    std::array<double, 3> side_length{kTwoPi, kTwoPi, kTwoPi};
    double dealias_fraction = 2.0 / 3.0;

    std::size_t total_points() const;
    double spacing(int axis) const { return side_length[axis] / points_per_axis; }
    double cell_volume() const;
    double volume() const;
    /// Fundamental wavenumber of an axis, 2*pi/L.
    double base_wavenumber(int axis) const { return kTwoPi / side_length[axis]; }
    /// Largest retained integer mode index under the dealias fraction
    /// (modes with |k_i| above this are zeroed by dealias()).
    int dealias_limit() const;

    bool operator==(const GridSpec& other) const;
    bool operator!=(const GridSpec& other) const { return !(*this == other); }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Signed integer mode index for storage slot i of an axis with n points:
/// 0,1,...,n/2-1,-n/2,...,-1.
int wave_index(int i, int n);

}  // namespace chemflow
