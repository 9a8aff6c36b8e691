#ifndef VQST_METRICS_HPP
#define VQST_METRICS_HPP

#include <cstdint>

#include "vqst/analytic.hpp"
#include "vqst/model.hpp"
#include "vqst/parallel.hpp"

namespace vqst {

struct QuadratureInfo {
    double half_width = 0.0; // final integration half-width W
    double shrink = 0.0;     // final panel-width factor
    int refinements = 0;
    double rel_change = 0.0; // between the last two refinement levels
    std::size_t panels = 0;
};

struct SpectralIntegral {
    double value = 0.0;
    QuadratureInfo info;
};

/// I_w = int du exp(-u^2/D^2) / |(u - mu1)(u - mu2)(u - mu3)|^2, u = w - w_ph.
/// Refines (W doubled, panels halved) until the relative change is below 1e-8.
SpectralIntegral spectral_integral_info(const SystemParams& p, Exec exec = Exec::Parallel);
double spectral_integral(const SystemParams& p);

/// Fixed-grid composite Simpson on n (odd) points over +-half_width (second route).
double spectral_integral_simpson(const SystemParams& p, std::size_t n, double half_width);

struct YieldBreakdown {
    double P = 0.0;
    double I_w = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    Regime regime = Regime::Outside;
    QuadratureInfo quadrature;
};

/// P = (2/sqrt pi)(kappa Gamma / D)(|W_K|^2 + |W_K'|^2)(|A|^2 + |B|^2) I_w.
YieldBreakdown yield(const SystemParams& p, Exec exec = Exec::Parallel);

/// Case-1 and Case-2 closed forms (2/sqrt pi) eta g'_iD / max(g'_iD + g'_SE, 1) [/ D'].
/// Throw ValidationError("regime") outside their regime.
double yield_case1(const SystemParams& p);
double yield_case2(const SystemParams& p);

/// |a* A* W_K + b* A W_K'|^2 / ((|W_K|^2 + |W_K'|^2)(|A|^2 + |B|^2)).
double fidelity(const PhotonQubit& q, const CouplingSet& c);

/// Equal-amplitude input, delta = phi_D/C + phi_beta/alpha:
/// A^2 (C + |D| cos d)^2 / ((C^2 + |D|^2 + 2 C |D| cos d)(A^2 + |B|^2)).
double fidelity_equal_amplitude(double delta, const CouplingSet& c);

/// sum_k w_k |<ideal|out_k>|^2 / sum_k w_k P_k.
double fidelity_from_spectrum(const OutputSpectrum& s, const PhotonQubit& q);

/// Mean fidelity over Haar-random input qubits (Monte Carlo, fixed seed).
double haar_average_fidelity(const CouplingSet& c, int samples, std::uint64_t seed);

} // namespace vqst

#endif
