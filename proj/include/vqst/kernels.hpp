#ifndef VQST_KERNELS_HPP
#define VQST_KERNELS_HPP

// Data-parallel inner loops. Every kernel has a serial and an OpenMP path that
// write results by index and reduce in a fixed order, so both give identical bits.

#include <cstddef>
#include <vector>

#include "vqst/model.hpp"
#include "vqst/parallel.hpp"

namespace vqst {

/// Fixed-shape pairwise (cascade) summation.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

/// A spectral feature: something of half-width `width` centred at `center`.
struct Feature {
    double center;
    double width;
};

/// Panel edges over [-W, W]: the local panel width is
/// shrink * min_f (width_f / 2 + |u - center_f| / 4), so panels are fine near
/// each feature and grow geometrically away from it.
std::vector<double> panel_edges(double W, const std::vector<Feature>& features, double shrink);

/// exp(-u^2/D^2) / |((u - da)(u - db) - g^2)(u - d3)|^2, with the complex
/// offsets da, db, d3 carrying the damping rates in their imaginary parts.
struct SpectralTerms {
    cplx da, db, d3;
    double gsq;
    double delta;

    double operator()(double u) const;
};

SpectralTerms spectral_terms(const SystemParams& p);

/// Composite 20-point Gauss-Legendre over the given panels.
double integrate_panels(const SpectralTerms& f, const std::vector<double>& edges, Exec exec);

/// Composite Simpson weights for n (odd) equally spaced points with spacing h.
std::vector<double> simpson_weights(std::size_t n, double h);

/// Output-bin block of the oracle right-hand side:
///   dy[c*n + j] = -i (u[j] y[c*n + j] + k * src[c]),  c = 0..3.
void bin_rhs(const cplx* y, cplx* dy, const double* u, std::size_t n, const cplx src[4], double k,
             Exec exec);

} // namespace vqst

#endif
