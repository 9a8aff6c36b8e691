#ifndef VQST_FADDEEVA_HPP
#define VQST_FADDEEVA_HPP

#include <complex>

namespace vqst {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
/// Weideman's rational approximation with 40 terms (about 1e-14 relative).
std::complex<double> faddeeva_upper(std::complex<double> z);

/// w(z) on the whole plane; uses w(z) = 2 exp(-z^2) - w(-z) below the real axis,
/// so it overflows for large |z| there.
std::complex<double> faddeeva(std::complex<double> z);

} // namespace vqst

#endif
