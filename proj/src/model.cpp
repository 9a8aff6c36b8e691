#include "vqst/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vqst {

namespace {

void require_positive(double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(key, "must be a positive finite number");
}

void require_non_negative(double v, const char* key) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw ValidationError(key, "must be a non-negative finite number");
}

} // namespace

PhotonQubit::PhotonQubit(cplx alpha, cplx beta, double tol) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol)
        throw ValidationError("alpha", "|alpha|^2 + |beta|^2 must equal 1 (got " +
                                           std::to_string(n2) + ")");
    const double n = std::sqrt(n2);
    alpha_ = alpha / n;
    beta_ = beta / n;
}

PhotonQubit PhotonQubit::normalized(cplx alpha, cplx beta) {
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(n > 0.0) || !std::isfinite(n))
        throw ValidationError("alpha", "photon qubit amplitudes must not both vanish");
    return PhotonQubit(alpha / n, beta / n, 1e-12);
}

PhotonQubit PhotonQubit::from_ratio(double ratio_abs, double phase) {
    require_non_negative(ratio_abs, "beta_over_alpha");
    const double a = 1.0 / std::sqrt(1.0 + ratio_abs * ratio_abs);
    return normalized(a, std::polar(ratio_abs * a, phase));
}

double PhotonQubit::ratio_abs() const {
    if (alpha_ == cplx(0.0)) return std::numeric_limits<double>::infinity();
    return std::abs(beta_ / alpha_);
}

double PhotonQubit::ratio_phase() const {
    if (alpha_ == cplx(0.0) || beta_ == cplx(0.0)) return 0.0;
    return std::arg(beta_ / alpha_);
}

CouplingSet::CouplingSet(cplx A, cplx B, cplx C, cplx D) {
    for (auto [v, key] : {std::pair{A, "A"}, {B, "B"}, {C, "C"}, {D, "D"}})
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError(key, "coupling must be finite");

    // Global gauge: rotate every element by -arg(A) (or -arg(C) when A = 0).
    const cplx ref = (A != cplx(0.0)) ? A : C;
    const cplx rot = (ref != cplx(0.0)) ? std::conj(ref) / std::abs(ref) : cplx(1.0);
    A_ = A * rot;
    B_ = B * rot;
    C_ = C * rot;
    D_ = D * rot;

    const double tol = 1e-12;
    if (std::abs(A_.imag()) > tol * std::max(1.0, std::abs(A_)) ||
        std::abs(C_.imag()) > tol * std::max(1.0, std::abs(C_)) || C_.real() < 0.0)
        throw ValidationError("C", "major couplings A and C must carry the same phase");
    A_ = A_.real();
    C_ = C_.real();
}

CouplingSet CouplingSet::from_ratios(double A, double C, double ratio_BA, double phase_BA,
                                     double ratio_DC, double phase_DC) {
    require_non_negative(A, "A");
    require_non_negative(C, "C");
    require_non_negative(ratio_BA, "B_over_A");
    require_non_negative(ratio_DC, "D_over_C");
    return CouplingSet(A, std::polar(A * ratio_BA, phase_BA), C, std::polar(C * ratio_DC, phase_DC));
}

double CouplingSet::ratio_mismatch() const {
    if (A_ == cplx(0.0) || C_ == cplx(0.0)) return 0.0;
    return std::abs(B_ / A_ - D_ / C_);
}

void CavityParams::validate() const {
    require_positive(omega_DC, "omega_DC");
    require_positive(kappa_DC, "kappa_DC");
    require_positive(omega_PC, "omega_PC");
    require_positive(Gamma_PC, "Gamma_PC");
}

void TrionParams::validate() const {
    require_positive(omega_trion, "omega_trion");
    require_non_negative(gamma_SE, "gamma_SE");
}

double PulseParams::phi0() const { return std::pow(pi, 0.25) * std::sqrt(2.0 / (c * delta_omega_ph)); }

void PulseParams::validate() const {
    require_positive(omega_ph, "omega_ph");
    require_positive(delta_omega_ph, "delta_omega_ph");
    require_positive(c, "c");
    require_positive(L, "L");
    if (!(x0 <= 0.0) || !std::isfinite(x0)) throw ValidationError("x0", "must be <= 0 (packet starts outside)");
}

void SystemParams::validate() const {
    cavities.validate();
    trion.validate();
    pulse.validate();
}

DerivedRates derive_rates(const SystemParams& p) {
    DerivedRates r;
    r.gamma_iD = std::norm(p.couplings.C()) / p.cavities.kappa_DC;
    r.gamma_tp = std::norm(p.couplings.A()) / p.cavities.Gamma_PC;
    r.gamma_total = p.trion.gamma_SE + r.gamma_iD;
    r.gamma_iD_prime = r.gamma_iD / r.gamma_tp;
    r.gamma_SE_prime = p.trion.gamma_SE / r.gamma_tp;
    r.delta_omega_prime = p.pulse.delta_omega_ph / r.gamma_tp;
    return r;
}

const char* to_string(Regime r) {
    switch (r) {
    case Regime::Case1: return "Case1";
    case Regime::Case2: return "Case2";
    case Regime::Outside: return "Outside";
    }
    return "Outside";
}

Regime classify_regime(const SystemParams& p) {
    const DerivedRates r = derive_rates(p);
    const double cav = std::min(p.cavities.Gamma_PC, p.cavities.kappa_DC);
    const double trion = std::max(r.gamma_total, r.gamma_tp);
    const double bw = p.pulse.delta_omega_ph;
    if (cav >= trion && trion >= bw) return Regime::Case1;
    if (cav >= bw && bw >= trion) return Regime::Case2;
    return Regime::Outside;
}

} // namespace vqst
