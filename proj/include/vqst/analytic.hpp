#ifndef VQST_ANALYTIC_HPP
#define VQST_ANALYTIC_HPP

// Closed-form solution of the three-stage chain
//   input pulse -> DBR mode -> (trion <-> PC mode) -> output continuum.
//
// In each valley branch the trion couples only to one combination of the two
// PC polarization modes (the "1" channel), with strength g = sqrt(|A|^2+|B|^2).
//   K  branch:  PC_K1  = (A PC_{s+,K} + B PC_{s-,K}) / g
//   K' branch:  PC_K'1 = -(B* PC_{s+,K'} + A* PC_{s-,K'}) / g
// The orthogonal "2" channels are never excited.

#include <array>
#include <utility>
#include <vector>

#include "vqst/model.hpp"
#include "vqst/parallel.hpp"

namespace vqst {

enum class Branch { K, Kprime };
enum class Pol { Plus, Minus };

const char* to_string(Branch b);

/// Eigen-decomposition of H0 = [[a, g], [g, b]].
struct EigenSystem {
    cplx a, b;
    double g = 0.0;
    cplx lambda1, lambda2;
    cplx lambda3; // DBR pole,  omega_DC - i kappa_DC (when built from SystemParams)
    std::array<std::array<cplx, 2>, 2> phi{}; // phi[n][j]: component j of eigenvector n+1
    bool exceptional = false;                 // eigenvectors coalesce

    /// max_n |H0 v_n - lambda_n v_n| / ||H0||_F (vectors have unit norm).
    double residual() const;
};

/// lambda_{1,2} = (a + b +- s)/2, s = sqrt((a-b)^2 + 4g^2) on the branch with
/// Re(s conj(a-b)) >= 0, so that g -> 0 gives lambda1 = a, lambda2 = b.
EigenSystem eigensystem(cplx a, cplx b, cplx A, cplx B);

/// a = omega_trion - i gamma_total, b = omega_PC - i Gamma_PC.
EigenSystem eigensystem(const SystemParams& p);

/// Coefficients of (f, 0) in the eigenvector basis. Throws NumericalError at
/// an exceptional point.
std::pair<cplx, cplx> source_coefficients(const EigenSystem& eig, cplx f);

/// Gaussian input amplitude G(t) (lab frame).
cplx gaussian_input(double t, const PulseParams& pulse);
/// Fourier transform  int G(t) e^{i w t} dt.
cplx gaussian_spectrum(double omega, const PulseParams& pulse);

/// W_K = alpha C + beta D,  W_K' = alpha D* + beta C*.
cplx source_weight(const SystemParams& p, Branch b);

/// Time-domain closed-form amplitudes. Values are in the frame rotating at
/// omega_ph (multiply by exp(-i omega_ph t) for the lab frame) unless noted.
class TimeSolution {
public:
    explicit TimeSolution(const SystemParams& p);

    cplx dbr(Pol s, Branch v, double t) const;
    cplx trion(Branch v, double t) const;
    /// Transformed channel-1 PC amplitude.
    cplx pc1(Branch v, double t) const;
    /// PC amplitude in the circular-polarization basis.
    cplx pc(Pol s, Branch v, double t) const;

    const EigenSystem& eigen() const { return eig_; }

private:
    // int_0^t exp(-i mu (t-s)) exp(-D^2 (s-t0)^2 / 2) ds
    cplx kernel(cplx mu, double t) const;
    // int_0^t exp(-i mu_n (t-s)) kernel(mu_3, s) ds
    cplx nested(cplx mu_n, double t) const;
    cplx chain(int component, Branch v, double t) const;

    SystemParams p_;
    EigenSystem eig_;
    cplx mu_[3]; // lambda - omega_ph
    std::pair<cplx, cplx> d_;
    double a2_;    // Delta / sqrt 2
    double t0_;
    cplx drive_;   // i sqrt(c kappa / L) G0
};

/// Lab-frame amplitudes.
cplx dbr_amplitude(Pol s, Branch v, double t, const SystemParams& p);
cplx pc_amplitude(double t, const SystemParams& p, Branch v);

double tk_squared(const SystemParams& p);   // 2 c^2 Gamma_PC / (L^2 omega_PC)
double mode_density(const SystemParams& p); // Gamma_PC / (pi |T|^2), modes per unit omega

/// (w - lambda1)(w - lambda2)(w - lambda3), evaluated from the characteristic polynomial.
cplx pole_product(double omega, const SystemParams& p);
/// Same product at omega = omega_ph + u, with detunings subtracted exactly.
cplx pole_product_detuned(double u, const SystemParams& p);

/// Asymptotic channel-1 output amplitude of one mode of frequency omega,
/// with the free exp(-i omega t) stripped.
cplx output_amplitude(double omega, const SystemParams& p, Branch v);

/// |output_amplitude|^2 per mode.
double output_probability(double omega, const SystemParams& p, Branch v);

/// Output probability per unit omega: mode_density * output_probability.
double output_density(double omega, const SystemParams& p, Branch v);

/// Per-bin exit amplitudes (scaled by sqrt(mode density), so |amp|^2 is a
/// density in omega) in the (s+,K), (s-,K), (s+,K'), (s-,K') basis, and the
/// transformed channels K1, K2, K'1, K'2.
struct OutputSpectrum {
    std::vector<double> omega;
    std::vector<double> weight; // quadrature weights, may be empty
    std::vector<std::array<cplx, 4>> amp;
    std::vector<std::array<cplx, 4>> chan;

    std::size_t size() const { return omega.size(); }
    double p_K1(std::size_t i) const { return std::norm(chan[i][0]); }
    double p_K2(std::size_t i) const { return std::norm(chan[i][1]); }
    double p_Kp1(std::size_t i) const { return std::norm(chan[i][2]); }
    double p_Kp2(std::size_t i) const { return std::norm(chan[i][3]); }
};

/// Circular-basis amplitudes -> transformed channels.
std::array<cplx, 4> to_transformed(const std::array<cplx, 4>& amp, const CouplingSet& cs);
/// Inverse of to_transformed.
std::array<cplx, 4> from_transformed(const std::array<cplx, 4>& chan, const CouplingSet& cs);

/// Analytic spectrum on a grid (evaluated in parallel by index).
OutputSpectrum output_spectrum(const SystemParams& p, const std::vector<double>& omega,
                               Exec exec = Exec::Parallel);

/// Uniform grid of n points over omega_ph +- half_width.
std::vector<double> uniform_grid(double center, double half_width, int n);

} // namespace vqst

#endif
