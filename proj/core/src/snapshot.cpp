#include "chemflow/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace chemflow {
namespace {

constexpr char kMagic[4] = {'C', 'H', 'F', 'L'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const GridSpec& grid,
                    const std::vector<std::pair<std::string, ScalarField>>& fields) {
    grid.validate();
    for (const auto& [name, f] : fields)
        if (f.grid() != grid)
            throw std::invalid_argument("write_snapshot: field '" + name + "' grid mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(grid.dim));
    for (int a = 0; a < grid.dim; ++a)
        put_u32(os, static_cast<std::uint32_t>(grid.points_per_axis));
    for (int a = 0; a < grid.dim; ++a) put_f64(os, grid.side_length[a]);
    put_u32(os, static_cast<std::uint32_t>(fields.size()));
    for (const auto& [name, f] : fields) {
        put_u32(os, static_cast<std::uint32_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
    }
    for (const auto& [name, f] : fields)
        for (double v : f.values()) put_f64(os, v);
    if (!os) throw std::runtime_error("write_snapshot: write failed for " + path);
}

std::vector<std::pair<std::string, ScalarField>> read_snapshot(const std::string& path,
                                                               GridSpec& grid_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    const std::uint32_t version = get_u32(is);
    if (version != kVersion)
        throw std::runtime_error("read_snapshot: unsupported version " + std::to_string(version));
    GridSpec grid;
    grid.dim = static_cast<int>(get_u32(is));
    if (grid.dim != 2 && grid.dim != 3)
        throw std::runtime_error("read_snapshot: bad dimension");
    int n = 0;
    for (int a = 0; a < grid.dim; ++a) {
        int na = static_cast<int>(get_u32(is));
        if (a == 0) n = na;
        if (na != n) throw std::runtime_error("read_snapshot: anisotropic grids unsupported");
    }
    grid.points_per_axis = n;
    for (int a = 0; a < grid.dim; ++a) grid.side_length[a] = get_f64(is);
    grid.validate();
    const std::uint32_t count = get_u32(is);
    std::vector<std::string> names(count);
    for (auto& name : names) {
        const std::uint32_t len = get_u32(is);
        name.resize(len);
        is.read(name.data(), len);
    }
    std::vector<std::pair<std::string, ScalarField>> out;
    out.reserve(count);
    for (const auto& name : names) {
        std::vector<double> v(grid.total_points());
        for (double& x : v) x = get_f64(is);
        out.emplace_back(name, ScalarField::from_values(grid, std::move(v)));
    }
    if (!is) throw std::runtime_error("read_snapshot: truncated file " + path);
    grid_out = grid;
    return out;
}

}  // namespace chemflow
