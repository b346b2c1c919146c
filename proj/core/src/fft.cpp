#include "chemflow/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <stdexcept>

namespace chemflow {
namespace {

struct PlanKey {
    int dim;
    int n;
    bool operator<(const PlanKey& o) const { return dim != o.dim ? dim < o.dim : n < o.n; }
};

// One cached c2c plan pair per grid shape. Buffers are fftw-aligned and
// reused; data is copied in and out, which is cheap next to the transform.
struct PlanEntry {
    fftw_complex* buf_in = nullptr;
    fftw_complex* buf_out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::size_t total = 0;

    PlanEntry(int dim, int n) {
        total = 1;
        int dims[3] = {n, n, n};
        for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
        buf_in = fftw_alloc_complex(total);
        buf_out = fftw_alloc_complex(total);
        // FFTW_ESTIMATE keeps planning deterministic run to run.
        fwd = fftw_plan_dft(dim, dims, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft(dim, dims, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("fftw plan creation failed");
    }
    ~PlanEntry() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf_in) fftw_free(buf_in);
        if (buf_out) fftw_free(buf_out);
    }
};

PlanEntry& plan_for(const GridSpec& grid) {
    static std::map<PlanKey, PlanEntry> cache;
    PlanKey key{grid.dim, grid.points_per_axis};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.try_emplace(key, grid.dim, grid.points_per_axis).first;
    return it->second;
}

}  // namespace

namespace fft {

void forward(const GridSpec& grid, const std::vector<double>& physical,
             std::vector<std::complex<double>>& spectral) {
    PlanEntry& plan = plan_for(grid);
    const std::size_t total = plan.total;
    if (physical.size() != total) throw std::invalid_argument("fft::forward: size mismatch");
    for (std::size_t i = 0; i < total; ++i) {
        plan.buf_in[i][0] = physical[i];
        plan.buf_in[i][1] = 0.0;
    }
    fftw_execute(plan.fwd);
    spectral.resize(total);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i)
        spectral[i] = std::complex<double>(plan.buf_out[i][0] * scale, plan.buf_out[i][1] * scale);
}

void inverse(const GridSpec& grid, const std::vector<std::complex<double>>& spectral,
             std::vector<double>& physical) {
    PlanEntry& plan = plan_for(grid);
    const std::size_t total = plan.total;
    if (spectral.size() != total) throw std::invalid_argument("fft::inverse: size mismatch");
    for (std::size_t i = 0; i < total; ++i) {
        plan.buf_in[i][0] = spectral[i].real();
        plan.buf_in[i][1] = spectral[i].imag();
    }
    fftw_execute(plan.bwd);
    physical.resize(total);
    for (std::size_t i = 0; i < total; ++i) physical[i] = plan.buf_out[i][0];
}

}  // namespace fft

void for_each_mode(const GridSpec& grid,
                   const std::function<void(std::size_t, const std::array<double, 3>&,
                                            const std::array<int, 3>&)>& fn) {
    const int n = grid.points_per_axis;
    std::array<double, 3> base{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim; ++a) base[a] = grid.base_wavenumber(a);
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    std::array<int, 3> k{0, 0, 0};
    if (grid.dim == 2) {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = wave_index(i0, n);
            xi[0] = base[0] * k[0];
            for (int i1 = 0; i1 < n; ++i1, ++idx) {
                k[1] = wave_index(i1, n);
                xi[1] = base[1] * k[1];
                fn(idx, xi, k);
            }
        }
    } else {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = wave_index(i0, n);
            xi[0] = base[0] * k[0];
            for (int i1 = 0; i1 < n; ++i1) {
                k[1] = wave_index(i1, n);
                xi[1] = base[1] * k[1];
                for (int i2 = 0; i2 < n; ++i2, ++idx) {
                    k[2] = wave_index(i2, n);
                    xi[2] = base[2] * k[2];
                    fn(idx, xi, k);
                }
            }
        }
    }
}

void for_each_point(const GridSpec& grid,
                    const std::function<void(std::size_t, const std::array<double, 3>&)>& fn) {
    const int n = grid.points_per_axis;
    std::array<double, 3> h{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim; ++a) h[a] = grid.spacing(a);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    if (grid.dim == 2) {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            x[0] = h[0] * i0;
            for (int i1 = 0; i1 < n; ++i1, ++idx) {
                x[1] = h[1] * i1;
                fn(idx, x);
            }
        }
    } else {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            x[0] = h[0] * i0;
            for (int i1 = 0; i1 < n; ++i1) {
                x[1] = h[1] * i1;
                for (int i2 = 0; i2 < n; ++i2, ++idx) {
                    x[2] = h[2] * i2;
                    fn(idx, x);
                }
            }
        }
    }
}

}  // namespace chemflow
