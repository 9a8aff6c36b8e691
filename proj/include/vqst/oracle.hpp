#ifndef VQST_ORACLE_HPP
#define VQST_ORACLE_HPP

// Brute-force time-domain integration of the full amplitude equations
// (4 DBR, 2 trion, 4 PC amplitudes and 4 output continua on a frequency grid),
// in the frame rotating at omega_ph. Uses no closed-form result.

#include <array>
#include <optional>
#include <vector>

#include "vqst/analytic.hpp"
#include "vqst/model.hpp"
#include "vqst/parallel.hpp"

namespace vqst {

/// Amplitudes in the rotating frame; index order (s+,K), (s-,K), (s+,K'), (s-,K').
struct BranchAmplitudes {
    double t = 0.0;
    std::array<cplx, 4> dc{};
    std::array<cplx, 2> trion{}; // K, K'
    std::array<cplx, 4> pc{};
};

struct IntegratorConfig {
    double t_end = 0.0;       // hard cap; 0 = automatic
    double dt_max = 0.0;      // 0 = automatic (a fraction of the pulse length)
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    int omega_points = 0;     // odd; 0 = automatic (>= 2001)
    double omega_half_width = 0.0; // 0 = 10 delta_omega_ph
    // Stop once DBR + trion + PC population is below this. The bins keep receiving
    // amplitude from the PC modes, so the pointwise spectrum error scales with the
    // square root of this number.
    double residual_cutoff = 1e-16;
    std::vector<double> sample_times; // optional trajectory samples
    bool drive_pulse = true;          // false: no input pulse (free evolution of `initial`)
    std::optional<BranchAmplitudes> initial;
    Exec exec = Exec::Parallel;

    void validate() const;
};

struct OracleResult {
    OutputSpectrum spectrum;   // de-rotated, density-scaled amplitudes, Simpson weights
    std::vector<BranchAmplitudes> samples;
    double P = 0.0;            // sum over bins
    double P_flux = 0.0;       // 2 Gamma int |PC|^2 dt
    double F = 0.0;            // NaN when P < 1e-12
    double max_k2 = 0.0;       // largest K2 / K'2 probability seen (PC modes and output bins)
    double residual = 0.0;     // final DBR + trion + PC population
    double tracked_increase = 0.0; // largest rise of the tracked total after the pulse has passed
    double t_final = 0.0;
    long steps = 0;
};

/// Frequency grid the oracle would use for these parameters.
std::vector<double> oracle_grid(const SystemParams& p, const IntegratorConfig& cfg);

OracleResult integrate(const SystemParams& p, const IntegratorConfig& cfg = {});

double yield_numeric(const SystemParams& p, const IntegratorConfig& cfg = {});
double fidelity_numeric(const SystemParams& p, const IntegratorConfig& cfg = {});

} // namespace vqst

#endif
