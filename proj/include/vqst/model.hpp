#ifndef VQST_MODEL_HPP
#define VQST_MODEL_HPP

// Physical parameter types for the photon -> valley-pair transfer model.
//
// Units: hbar = 1, every frequency and rate is an angular frequency in GHz
// (1/ns), times are in ns. The damping rates kappa_DC, Gamma_PC and gamma_SE
// are AMPLITUDE rates (half widths): they appear as the imaginary parts of the
// complex mode energies. The corresponding intensity (leakage) rates are
// 2*kappa_DC, 2*Gamma_PC and 2*gamma_SE.

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace vqst {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Invalid parameter value. `key()` names the offending canonical field.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Failure of a numerical procedure (non-convergence, defective matrix, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace units {
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double eps0 = 8.8541878128e-12;   // F/m
inline constexpr double e_charge = 1.602176634e-19; // C
inline constexpr double c_m_per_ns = 0.299792458;

/// Photon energy (eV) -> angular frequency (GHz).
inline double ev_to_ghz(double energy_ev) { return energy_ev / hbar_eV_s * 1e-9; }
inline double ghz_to_ev(double omega_ghz) { return omega_ghz * 1e9 * hbar_eV_s; }
} // namespace units

/// Polarization qubit alpha|s+> + beta|s->, always normalized.
class PhotonQubit {
public:
    PhotonQubit() = default;

    /// Accepts (alpha, beta) whose norm is 1 within `tol`, then renormalizes exactly.
    PhotonQubit(cplx alpha, cplx beta, double tol = 1e-9);

    /// Normalizes any non-zero pair.
    static PhotonQubit normalized(cplx alpha, cplx beta);

    /// alpha = 1/sqrt(1+r^2) real, beta = r e^{i phase} alpha.
    static PhotonQubit from_ratio(double ratio_abs, double phase);

    cplx alpha() const noexcept { return alpha_; }
    cplx beta() const noexcept { return beta_; }

    /// |beta/alpha|; +inf when alpha = 0.
    double ratio_abs() const;
    /// arg(beta/alpha); 0 when either amplitude vanishes.
    double ratio_phase() const;

private:
    cplx alpha_{1.0, 0.0};
    cplx beta_{0.0, 0.0};
};

/// Optical matrix elements: A, B couple trion <-> PC cavity (major, minor),
/// C, D couple trion <-> DBR cavity.
///
/// Only a common phase of all four elements drops out of the transfer, so the
/// constructor removes arg(A) from every element. A and C must share their
/// phase; after the rotation both are real and non-negative.
class CouplingSet {
public:
    CouplingSet() = default;
    CouplingSet(cplx A, cplx B, cplx C, cplx D);

    /// B = A r_BA e^{i phi_BA}, D = C r_DC e^{i phi_DC}, A and C real.
    static CouplingSet from_ratios(double A, double C, double ratio_BA, double phase_BA,
                                   double ratio_DC, double phase_DC);

    cplx A() const noexcept { return A_; }
    cplx B() const noexcept { return B_; }
    cplx C() const noexcept { return C_; }
    cplx D() const noexcept { return D_; }

    /// |A|^2 + |B|^2, the squared trion coupling to the bright PC combination.
    double pc_coupling_sq() const { return std::norm(A_) + std::norm(B_); }

    /// |B/A - D/C|; zero when either major element vanishes.
    double ratio_mismatch() const;
    /// B/A = D/C within `tol` (a consistency warning, never an error).
    bool ratio_consistent(double tol = 1e-9) const { return ratio_mismatch() <= tol; }

private:
    cplx A_{0.0}, B_{0.0}, C_{0.0}, D_{0.0};
};

struct CavityParams {
    double omega_DC = 1.6e5;
    double kappa_DC = 90.0;  // amplitude decay rate of the DBR mode
    double omega_PC = 1.6e5;
    double Gamma_PC = 200.0; // amplitude decay rate of the PC mode

    void validate() const;
};

struct TrionParams {
    double omega_trion = 1.6e5;
    double gamma_SE = 1.0; // amplitude decay into non-cavity modes / non-radiative

    void validate() const;
};

struct PulseParams {
    double omega_ph = 1.6e5;
    double delta_omega_ph = 5.0;
    double x0 = -8.0 * units::c_m_per_ns / 5.0; // metres; packet starts outside the cavity
    double c = units::c_m_per_ns;               // metres per ns
    double L = 1.0;                             // metres, normalization length

    /// Spectral normalization pi^{1/4} sqrt(2 / (c delta_omega)).
    double phi0() const;
    /// Arrival time of the packet centre at the DBR interface, -x0/c.
    double center_time() const { return -x0 / c; }

    void validate() const;
};

struct SystemParams {
    PhotonQubit qubit;
    CouplingSet couplings = CouplingSet::from_ratios(45.0, 30.0, 0.04, 0.0, 0.04, 0.0);
    CavityParams cavities;
    TrionParams trion;
    PulseParams pulse;

    /// The reference configuration: A=45, C=30, B/A=D/C=0.04, gamma_SE=1,
    /// delta_omega=5, kappa_DC=90, Gamma_PC=200 GHz, all modes resonant at
    /// 1.6e5 GHz, (alpha, beta) = (1, 0).
    static SystemParams baseline() { return {}; }

    void validate() const;
};

struct DerivedRates {
    double gamma_iD = 0.0;    // trion emission into the DBR mode, |C|^2 / kappa_DC
    double gamma_tp = 0.0;    // trion emission into the PC mode, |A|^2 / Gamma_PC
    double gamma_total = 0.0; // gamma_SE + gamma_iD
    double gamma_iD_prime = 0.0;
    double gamma_SE_prime = 0.0;
    double delta_omega_prime = 0.0;
};

DerivedRates derive_rates(const SystemParams& params);

enum class Regime { Case1, Case2, Outside };

const char* to_string(Regime r);

/// Case1: min(Gamma, kappa) >= max(gamma_total, gamma_tp) >= delta_omega;
/// Case2: min(Gamma, kappa) >= delta_omega >= max(gamma_total, gamma_tp).
/// Ties resolve to Case1.
Regime classify_regime(const SystemParams& params);

} // namespace vqst

#endif
