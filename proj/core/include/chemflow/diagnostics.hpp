#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chemflow/dynamics.hpp"

namespace chemflow {

/// One time-stamped row of every monitored functional. Accumulator fields
/// (acc_grad_c_inf, serrin_acc) carry over from the previous record by the
/// trapezoidal rule.
struct DiagnosticsRecord {
    double time = 0.0;
    double mass = 0.0;
    double c_l1 = 0.0;
    double c_l2 = 0.0;
    double c_linf = 0.0;
    double entropy = 0.0;
    double neg_entropy = 0.0;
    double moment = 0.0;
    double grad_sqrt_n_sq = 0.0;
    double grad_c_sq = 0.0;
    double lap_c_sq = 0.0;
    double kinetic = 0.0;
    double grad_u_sq = 0.0;
    double potential_coupling = 0.0;
    double energy_F = 0.0;
    double grad_c_inf = 0.0;
    double acc_grad_c_inf = 0.0;
    double serrin_acc = 0.0;
    double omega_l2 = 0.0;
    double min_n = 0.0;
    double min_c = 0.0;
    double max_c = 0.0;
    double x_m_norm = 0.0;
    double lambda1 = 0.0;
    double mu = 0.0;
    /// Instantaneous |u|_{L^p}^q, carried so the trapezoidal accumulator can
    /// use both endpoints; not part of the CSV schema.
    double serrin_integrand = 0.0;
};

struct DiagnosticsOptions {
    double lambda1 = 1.0;
    int sobolev_m = 3;
    double serrin_p = 4.0;
    double serrin_q = 8.0;
    /// Use the 3D energy form (adds the moment term, lambda1 plays the role
    /// of the leading coupling constant). Defaults to dim == 3.
    std::optional<bool> energy_3d;
};

/// CSV schema: header of field names in declaration order, 17 significant
/// digits per float.
const std::vector<std::string>& diagnostics_columns();
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagnosticsRecord& rec);

DiagnosticsRecord record(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                         const DiagnosticsOptions& opt,
                         const DiagnosticsRecord* prev = nullptr);

double energy_functional(const State& s, const ModelFunctions& mf, const PotentialSpec& pot,
                         double lambda1, bool three_d_form);

enum class IdentityTag { cq, entropy, h1c, l2u, nphi, moment };
IdentityTag identity_tag_from_string(const std::string& name);

struct ResidualPoint {
    double time;
    double absolute;
    double relative;
};

/// Residual of one time-differentiated balance law over a uniformly sampled
/// trajectory. Centered differences at interior samples, one-sided
/// second-order stencils at the ends.
std::vector<ResidualPoint> identity_residual(const std::vector<State>& history,
                                             const ModelFunctions& mf, const PotentialSpec& pot,
                                             IdentityTag tag);

struct BlowupReport {
    double final_acc_grad_c_inf = 0.0;
    double final_serrin_acc = 0.0;
    double max_x_m_norm = 0.0;
    bool aborted = false;
    bool criterion_consistent = false;
    bool blowup_suspected = false;
};

BlowupReport blowup_monitor(const std::vector<DiagnosticsRecord>& series, bool aborted,
                            double growth_threshold = 10.0);

struct InequalityAudit {
    double c0 = 0.0;
    double c1 = 0.0;
    double fit_residual = 0.0;  // relative, against the max of G
    bool passed = false;
};

/// Fits G(t) = F(t) + 2 int n (ln n)_- + int_0^t D against
/// a + b (t + int_0^t (|grad c|^2 + |u|^2)) and reports the smallest
/// constants making the bound hold at every sample. The entropy enters as
/// int n |ln n| so that G grows at most linearly in the fit variable.
InequalityAudit inequality_audit(const std::vector<DiagnosticsRecord>& series, double lambda1,
                                 double mu);

/// Thrown when step-size halving is exhausted; carries the last good record.
struct BlowupError : std::runtime_error {
    DiagnosticsRecord last;
    explicit BlowupError(DiagnosticsRecord rec)
        : std::runtime_error("blow-up suspected: step rejection limit reached at t=" +
                             std::to_string(rec.time)),
          last(rec) {}
};

}  // namespace chemflow
