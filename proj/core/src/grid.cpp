#include "chemflow/grid.hpp"

#include <stdexcept>
#include <string>

namespace chemflow {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::size_t GridSpec::total_points() const {
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(points_per_axis);
    return total;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing(a);
    return v;
}

double GridSpec::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= side_length[a];
    return v;
}

int GridSpec::dealias_limit() const {
    // 2/3 rule: retain |k| <= floor(fraction * N/2).
    return static_cast<int>(dealias_fraction * (points_per_axis / 2));
}

bool GridSpec::operator==(const GridSpec& other) const {
    if (dim != other.dim || points_per_axis != other.points_per_axis ||
        dealias_fraction != other.dealias_fraction)
        return false;
    for (int a = 0; a < dim; ++a)
        if (side_length[a] != other.side_length[a]) return false;
    return true;
}

void GridSpec::validate() const {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("grid.dim must be 2 or 3, got " + std::to_string(dim));
    if (points_per_axis < 16 || !is_power_of_two(points_per_axis))
        throw std::invalid_argument("grid.points_per_axis must be a power of two >= 16, got " +
                                    std::to_string(points_per_axis));
    for (int a = 0; a < dim; ++a)
        if (!(side_length[a] > 0.0))
            throw std::invalid_argument("grid.side_length must be positive");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw std::invalid_argument("grid.dealias_fraction must lie in (0,1]");
}

int wave_index(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace chemflow
