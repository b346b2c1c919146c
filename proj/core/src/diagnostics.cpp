#include "chemflow/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace chemflow {
namespace {

// integral of n ln n with 0 ln 0 = 0 and negative undershoot clipped
double entropy_integral(const ScalarField& n) {
    const auto& v = n.values();
    double s = 0.0;
    for (double x : v)
        if (x > 0.0) s += x * std::log(x);
    return s * n.grid().cell_volume();
}

double negative_entropy_integral(const ScalarField& n) {
    const auto& v = n.values();
    double s = 0.0;
    for (double x : v)
        if (x > 0.0 && x < 1.0) s += -x * std::log(x);
    return s * n.grid().cell_volume();
}

// int |grad n|^2 / (4 max(n, floor)), the Fisher information surrogate
double grad_sqrt_sq_integral(const ScalarField& n) {
    const GridSpec& grid = n.grid();
    const double n_floor = 1e-12 * lp_norm(n, std::numeric_limits<double>::infinity());
    const VectorField g = gradient(n);
    const auto& nv = n.values();
    double s = 0.0;
    std::vector<const std::vector<double>*> gv(g.dim());
    for (int a = 0; a < g.dim(); ++a) gv[a] = &g[a].values();
    for (std::size_t i = 0; i < nv.size(); ++i) {
        double g2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) g2 += (*gv[a])[i] * (*gv[a])[i];
        s += g2 / (4.0 * std::max(nv[i], n_floor));
    }
    return s * grid.cell_volume();
}

double grad_sq_integral(const VectorField& v) {
    double s = 0.0;
    for (int a = 0; a < v.dim(); ++a)
        for (int b = 0; b < v.dim(); ++b) {
            const double g = lp_norm(derivative(v[a], b), 2.0);
            s += g * g;
        }
    return s;
}

double product_integral(const GridSpec& grid, const std::vector<double>& a,
                        const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * grid.cell_volume();
}

}  // namespace

const std::vector<std::string>& diagnostics_columns() {
    static const std::vector<std::string> cols = {
        "time",          "mass",          "c_l1",
        "c_l2",          "c_linf",        "entropy",
        "neg_entropy",   "moment",        "grad_sqrt_n_sq",
        "grad_c_sq",     "lap_c_sq",      "kinetic",
        "grad_u_sq",     "potential_coupling", "energy_F",
        "grad_c_inf",    "acc_grad_c_inf", "serrin_acc",
        "omega_l2",      "min_n",         "min_c",
        "max_c",         "x_m_norm",      "lambda1",
        "mu"};
    return cols;
}

void write_csv_header(std::ostream& os) {
    const auto& cols = diagnostics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) os << ',';
        os << cols[i];
    }
    os << '\n';
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
    const double vals[] = {r.time,        r.mass,          r.c_l1,
                           r.c_l2,        r.c_linf,        r.entropy,
                           r.neg_entropy, r.moment,        r.grad_sqrt_n_sq,
                           r.grad_c_sq,   r.lap_c_sq,      r.kinetic,
                           r.grad_u_sq,   r.potential_coupling, r.energy_F,
                           r.grad_c_inf,  r.acc_grad_c_inf, r.serrin_acc,
                           r.omega_l2,    r.min_n,         r.min_c,
                           r.max_c,       r.x_m_norm,      r.lambda1,
                           r.mu};
    char buf[64];
    for (std::size_t i = 0; i < sizeof(vals) / sizeof(vals[0]); ++i) {
        if (i) os << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", vals[i]);
        os << buf;
    }
    os << '\n';
}

double energy_functional(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                         double lambda1, bool three_d_form) {
    const GridSpec& grid = s.n.grid();
    const double ent = entropy_integral(s.n);
    const double grad_c_sq = [&] {
        const double g = lp_norm(gradient(s.c), 2.0);
        return g * g;
    }();
    const double u2 = [&] {
        const double g = lp_norm(s.u, 2.0);
        return g * g;
    }();
    const double nphi = product_integral(grid, s.n.values(), pot.phi.values());
    if (three_d_form)
        return lambda1 * (0.5 * u2 + nphi) + ent + 0.5 * grad_c_sq + weighted_moment(s.n);
    return ent + mf.mu * grad_c_sq + 0.5 * lambda1 * u2 + lambda1 * nphi;
}

DiagnosticsRecord record(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                         const DiagnosticsOptions& opt, const DiagnosticsRecord* prev) {
    const GridSpec& grid = s.n.grid();
    const double inf = std::numeric_limits<double>::infinity();
    DiagnosticsRecord r;
    r.time = s.time;
    r.mass = integral(s.n);
    r.c_l1 = lp_norm(s.c, 1.0);
    r.c_l2 = lp_norm(s.c, 2.0);
    r.c_linf = lp_norm(s.c, inf);
    r.entropy = entropy_integral(s.n);
    r.neg_entropy = negative_entropy_integral(s.n);
    r.moment = weighted_moment(s.n);
    r.grad_sqrt_n_sq = grad_sqrt_sq_integral(s.n);
    {
        const double g = lp_norm(gradient(s.c), 2.0);
        r.grad_c_sq = g * g;
        const double l = lp_norm(laplacian(s.c), 2.0);
        r.lap_c_sq = l * l;
        const double u = lp_norm(s.u, 2.0);
        r.kinetic = 0.5 * u * u;
    }
    r.grad_u_sq = grad_sq_integral(s.u);
    r.potential_coupling = product_integral(grid, s.n.values(), pot.phi.values());
    const bool three_d = opt.energy_3d.value_or(grid.dim == 3);
    r.energy_F = energy_functional(s, mf, pot, opt.lambda1, three_d);
    r.grad_c_inf = lp_norm(gradient(s.c), inf);
    r.serrin_integrand = std::pow(lp_norm(s.u, opt.serrin_p), opt.serrin_q);
    if (prev) {
        const double dt = s.time - prev->time;
        r.acc_grad_c_inf = prev->acc_grad_c_inf +
                           0.5 * dt *
                               (prev->grad_c_inf * prev->grad_c_inf + r.grad_c_inf * r.grad_c_inf);
        r.serrin_acc = prev->serrin_acc + 0.5 * dt * (prev->serrin_integrand + r.serrin_integrand);
    } else {
        r.acc_grad_c_inf = 0.0;
        r.serrin_acc = 0.0;
    }
    if (grid.dim == 2) r.omega_l2 = lp_norm(curl2d(s.u), 2.0);
    r.min_n = min_value(s.n);
    r.min_c = min_value(s.c);
    r.max_c = max_value(s.c);
    r.x_m_norm = sobolev_norm(s.n, opt.sobolev_m - 1) + sobolev_norm(s.c, opt.sobolev_m) +
                 sobolev_norm(s.u, opt.sobolev_m);
    r.lambda1 = opt.lambda1;
    r.mu = mf.mu;
    return r;
}

IdentityTag identity_tag_from_string(const std::string& name) {
    if (name == "cq") return IdentityTag::cq;
    if (name == "entropy") return IdentityTag::entropy;
    if (name == "h1c") return IdentityTag::h1c;
    if (name == "l2u") return IdentityTag::l2u;
    if (name == "nphi") return IdentityTag::nphi;
    if (name == "moment") return IdentityTag::moment;
    throw std::invalid_argument("unknown identity tag: " + name);
}

namespace {

// One sample of a balance law: the functional L whose time derivative is
// taken, the instantaneous right side R, and the magnitude of the largest
// participating term for relative reporting.
struct BalanceSample {
    double lhs;
    double rhs;
    double scale;
};

BalanceSample sample_identity(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                              IdentityTag tag) {
    const GridSpec& grid = s.n.grid();
    const auto& nv = s.n.values();
    const ScalarField chi_c = apply_pointwise(s.c, mf.chi);
    const ScalarField k_c = apply_pointwise(s.c, mf.k);
    auto max3 = [](double a, double b, double c) { return std::max(a, std::max(b, c)); };
    switch (tag) {
        case IdentityTag::cq: {
            // (1/2) d/dt |c|_2^2 + |grad c|_2^2 + int k(c) n c = 0
            const double l2 = lp_norm(s.c, 2.0);
            const double g = lp_norm(gradient(s.c), 2.0);
            const double sink =
                product_integral(grid, dealiased_product(k_c, s.n).values(), s.c.values());
            return {0.5 * l2 * l2, -g * g - sink, std::max(g * g, std::abs(sink))};
        }
        case IdentityTag::entropy: {
            // d/dt int n ln n + 4 int |grad sqrt n|^2 + int chi'(c)|grad c|^2 n
            //   = -int chi(c) (lap c) n
            const ScalarField chip_c = apply_pointwise(s.c, mf.chi_prime);
            const VectorField gc = gradient(s.c);
            const auto& g0 = gc[0].values();
            const auto& g1 = gc[1].values();
            const std::vector<double>* g2 = grid.dim == 3 ? &gc[2].values() : nullptr;
            const auto& cp = chip_c.values();
            double drift = 0.0;
            for (std::size_t i = 0; i < nv.size(); ++i) {
                double gg = g0[i] * g0[i] + g1[i] * g1[i];
                if (g2) gg += (*g2)[i] * (*g2)[i];
                drift += cp[i] * gg * nv[i];
            }
            drift *= grid.cell_volume();
            const double fisher = 4.0 * grad_sqrt_sq_integral(s.n);
            const ScalarField lap_c = laplacian(s.c);
            const auto& lc = lap_c.values();
            const auto& cc = chi_c.values();
            double source = 0.0;
            for (std::size_t i = 0; i < nv.size(); ++i) source += cc[i] * lc[i] * nv[i];
            source *= grid.cell_volume();
            return {entropy_integral(s.n), -fisher - drift - source,
                    max3(fisher, std::abs(drift), std::abs(source))};
        }
        case IdentityTag::h1c: {
            // d/dt |grad c|^2 = 2(-|lap c|^2 + int lap c (u.grad c)
            //                     + int k(c) n lap c)
            const double g = lp_norm(gradient(s.c), 2.0);
            const ScalarField lc = laplacian(s.c);
            const double l = lp_norm(lc, 2.0);
            const double transport =
                product_integral(grid, lc.values(), advect(s.u, s.c).values());
            const double sink =
                product_integral(grid, lc.values(), dealiased_product(k_c, s.n).values());
            return {g * g, 2.0 * (-l * l + transport + sink),
                    2.0 * max3(l * l, std::abs(transport), std::abs(sink))};
        }
        case IdentityTag::l2u: {
            // (1/2) d/dt |u|_2^2 + |grad u|_2^2 = -int n grad(phi) . u
            const double u = lp_norm(s.u, 2.0);
            const double g = grad_sq_integral(s.u);
            double force = 0.0;
            for (int a = 0; a < s.u.dim(); ++a)
                force += product_integral(
                    grid, dealiased_product(s.n, pot.grad_phi[a]).values(), s.u[a].values());
            return {0.5 * u * u, -g - force, std::max(g, std::abs(force))};
        }
        case IdentityTag::nphi: {
            // d/dt int n phi = int n lap(phi) - int (u.grad n) phi
            //                  + int chi(c) n grad c . grad phi
            const double diffuse = product_integral(grid, nv, pot.laplacian_phi.values());
            const double transport =
                product_integral(grid, advect(s.u, s.n).values(), pot.phi.values());
            const VectorField gc = gradient(s.c);
            double drift = 0.0;
            for (int a = 0; a < grid.dim; ++a)
                drift += product_integral(
                    grid, dealiased_product(s.n, dealiased_product(chi_c, gc[a])).values(),
                    pot.grad_phi[a].values());
            return {product_integral(grid, nv, pot.phi.values()),
                    diffuse - transport + drift,
                    max3(std::abs(diffuse), std::abs(transport), std::abs(drift))};
        }
        case IdentityTag::moment: {
            // d/dt int <x> n = int <x> lap n + int n u . grad<x>
            //                  + int chi(c) n grad c . grad<x>
            // The diffusion term keeps the weight undifferentiated: <x> is
            // only C0 across the periodic seam, so moving both derivatives
            // onto it would drop the seam's distributional contribution.
            const VectorField gw = moment_weight_gradient(grid);
            const ScalarField w = moment_weight(grid);
            double transport = 0.0;
            for (int a = 0; a < grid.dim; ++a)
                transport +=
                    product_integral(grid, pointwise_product(s.n, s.u[a]).values(),
                                     gw[a].values());
            const double diffuse = product_integral(grid, laplacian(s.n).values(), w.values());
            const VectorField gc = gradient(s.c);
            double drift = 0.0;
            for (int a = 0; a < grid.dim; ++a)
                drift += product_integral(
                    grid, dealiased_product(s.n, dealiased_product(chi_c, gc[a])).values(),
                    gw[a].values());
            return {weighted_moment(s.n), transport + diffuse + drift,
                    max3(std::abs(transport), std::abs(diffuse), std::abs(drift))};
        }
    }
    throw std::logic_error("unreachable identity tag");
}

}  // namespace

std::vector<ResidualPoint> identity_residual(const std::vector<State>& history,
                                             const ModelFunctions& mf, const PotentialSpec& pot,
                                             IdentityTag tag) {
    if (history.size() < 3)
        throw std::invalid_argument("identity_residual: need at least 3 snapshots");
    const std::size_t n = history.size();
    const double dt = history[1].time - history[0].time;
    std::vector<BalanceSample> samples;
    samples.reserve(n);
    for (const State& s : history) samples.push_back(sample_identity(s, mf, pot, tag));

    std::vector<double> dldt(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            dldt[i] = (-3.0 * samples[0].lhs + 4.0 * samples[1].lhs - samples[2].lhs) /
                      (2.0 * dt);
        else if (i == n - 1)
            dldt[i] = (3.0 * samples[i].lhs - 4.0 * samples[i - 1].lhs + samples[i - 2].lhs) /
                      (2.0 * dt);
        else
            dldt[i] = (samples[i + 1].lhs - samples[i - 1].lhs) / (2.0 * dt);
    }
    // One scale for the whole trajectory: a per-sample scale would make early
    // samples of an initially dormant balance (all terms still zero) report
    // roundoff as an O(1) relative residual.
    double scale = 1e-300;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max({scale, samples[i].scale, std::abs(dldt[i])});
    std::vector<ResidualPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double res = std::abs(dldt[i] - samples[i].rhs);
        out.push_back({history[i].time, res, res / scale});
    }
    return out;
}

BlowupReport blowup_monitor(const std::vector<DiagnosticsRecord>& series, bool aborted,
                            double growth_threshold) {
    BlowupReport rep;
    rep.aborted = aborted;
    if (series.empty()) return rep;
    rep.final_acc_grad_c_inf = series.back().acc_grad_c_inf;
    rep.final_serrin_acc = series.back().serrin_acc;
    for (const auto& r : series) rep.max_x_m_norm = std::max(rep.max_x_m_norm, r.x_m_norm);
    const bool accumulators_finite =
        std::isfinite(rep.final_acc_grad_c_inf) && std::isfinite(rep.final_serrin_acc);
    const bool norms_bounded = std::isfinite(rep.max_x_m_norm);
    rep.criterion_consistent = !aborted && accumulators_finite && norms_bounded;
    const double baseline = series.front().acc_grad_c_inf;
    rep.blowup_suspected =
        aborted && rep.final_acc_grad_c_inf >= growth_threshold * std::max(baseline, 1e-300);
    return rep;
}

InequalityAudit inequality_audit(const std::vector<DiagnosticsRecord>& series, double lambda1,
                                 double mu) {
    InequalityAudit audit;
    if (series.size() < 2) return audit;
    const std::size_t n = series.size();
    // G(t) = F(t) + int_0^t D, X(t) = t + int_0^t (|grad c|^2 + |u|^2)
    std::vector<double> G(n), X(n);
    auto dissipation = [&](const DiagnosticsRecord& r) {
        return r.grad_sqrt_n_sq + 0.5 * mu * r.lap_c_sq + 0.5 * lambda1 * r.grad_u_sq;
    };
    auto growth = [](const DiagnosticsRecord& r) { return r.grad_c_sq + 2.0 * r.kinetic; };
    // adding twice the negative entropy part turns int n ln n into
    // int n |ln n|, the form whose growth is linear in X
    auto lhs = [](const DiagnosticsRecord& r) { return r.energy_F + 2.0 * r.neg_entropy; };
    double acc_d = 0.0, acc_x = 0.0;
    G[0] = lhs(series[0]);
    X[0] = series[0].time;
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = series[i].time - series[i - 1].time;
        acc_d += 0.5 * dt * (dissipation(series[i - 1]) + dissipation(series[i]));
        acc_x += 0.5 * dt * (growth(series[i - 1]) + growth(series[i]));
        G[i] = lhs(series[i]) + acc_d;
        X[i] = series[i].time + acc_x;
    }
    // least squares G ~ a + b X
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += X[i];
        sy += G[i];
        sxx += X[i] * X[i];
        sxy += X[i] * G[i];
    }
    const double denom = n * sxx - sx * sx;
    const double b = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double a = (sy - b * sx) / n;
    audit.c1 = std::max(b, 0.0);
    double c0 = -std::numeric_limits<double>::infinity();
    double max_dev = 0.0, max_g = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c0 = std::max(c0, G[i] - audit.c1 * X[i]);
        max_dev = std::max(max_dev, std::abs(G[i] - (a + b * X[i])));
        max_g = std::max(max_g, std::abs(G[i]));
    }
    audit.c0 = c0;
    audit.fit_residual = max_g > 0.0 ? max_dev / max_g : 0.0;
    audit.passed = std::isfinite(audit.c1) && std::isfinite(audit.c0) &&
                   audit.fit_residual <= 0.05;
    return audit;
}

}  // namespace chemflow
