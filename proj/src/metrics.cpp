#include "vqst/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "vqst/kernels.hpp"

namespace vqst {

namespace {

constexpr int max_refinements = 6;

double transfer_prefactor(const SystemParams& p) {
    const double S = std::norm(source_weight(p, Branch::K)) + std::norm(source_weight(p, Branch::Kprime));
    return 2.0 / std::sqrt(pi) * p.cavities.kappa_DC * p.cavities.Gamma_PC / p.pulse.delta_omega_ph * S *
           p.couplings.pc_coupling_sq();
}

} // namespace

SpectralIntegral spectral_integral_info(const SystemParams& p, Exec exec) {
    const SpectralTerms f = spectral_terms(p);
    const EigenSystem e = eigensystem(p);
    const double w = p.pulse.omega_ph;
    const double D = p.pulse.delta_omega_ph;
    double W = std::max(10.0 * D, 5.0 * std::max(p.cavities.Gamma_PC, p.cavities.kappa_DC));

    std::vector<Feature> feats{{0.0, D}};
    for (cplx lam : {e.lambda1, e.lambda2, e.lambda3}) {
        const double wd = std::abs(lam.imag());
        if (wd > 0.0) feats.push_back({lam.real() - w, wd});
    }

    SpectralIntegral r;
    double shrink = 1.0;
    std::vector<double> edges = panel_edges(W, feats, shrink);
    double prev = integrate_panels(f, edges, exec);
    for (int k = 1; k <= max_refinements; ++k) {
        W *= 2.0;
        shrink *= 0.5;
        edges = panel_edges(W, feats, shrink);
        const double cur = integrate_panels(f, edges, exec);
        const double change = std::abs(cur - prev) / std::abs(cur);
        r.value = cur;
        r.info = {W, shrink, k, change, edges.size() - 1};
        if (change < 1e-8 && cur > 0.0) return r;
        prev = cur;
    }
    std::ostringstream os;
    os << "spectral integral did not converge after " << max_refinements
       << " refinements (last relative change " << r.info.rel_change << ", W = " << W << ", panels "
       << r.info.panels << ")";
    throw NumericalError(os.str());
}

double spectral_integral(const SystemParams& p) { return spectral_integral_info(p).value; }

double spectral_integral_simpson(const SystemParams& p, std::size_t n, double half_width) {
    const SpectralTerms f = spectral_terms(p);
    const double h = 2.0 * half_width / static_cast<double>(n - 1);
    const std::vector<double> wts = simpson_weights(n, h);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = wts[i] * f(-half_width + h * static_cast<double>(i));
    return pairwise_sum(v);
}

YieldBreakdown yield(const SystemParams& p, Exec exec) {
    YieldBreakdown y;
    const SpectralIntegral si = spectral_integral_info(p, exec);
    y.I_w = si.value;
    y.quadrature = si.info;
    y.P = transfer_prefactor(p) * y.I_w;
    const DerivedRates r = derive_rates(p);
    const double G = p.cavities.Gamma_PC, k = p.cavities.kappa_DC, D = p.pulse.delta_omega_ph;
    const double M = std::max(r.gamma_total, r.gamma_tp);
    y.eta1 = G * G * M * M * k * k * y.I_w / D;
    y.eta2 = G * G * M * k * k * y.I_w;
    y.regime = classify_regime(p);
    return y;
}

double yield_case1(const SystemParams& p) {
    if (classify_regime(p) != Regime::Case1) throw ValidationError("regime", "parameters are not in Case 1");
    const DerivedRates r = derive_rates(p);
    const YieldBreakdown y = yield(p);
    return 2.0 / std::sqrt(pi) * y.eta1 * r.gamma_iD_prime / std::max(r.gamma_iD_prime + r.gamma_SE_prime, 1.0);
}

double yield_case2(const SystemParams& p) {
    if (classify_regime(p) != Regime::Case2) throw ValidationError("regime", "parameters are not in Case 2");
    const DerivedRates r = derive_rates(p);
    const YieldBreakdown y = yield(p);
    return 2.0 / std::sqrt(pi) * y.eta2 * r.gamma_iD_prime /
           std::max(r.gamma_iD_prime + r.gamma_SE_prime, 1.0) / r.delta_omega_prime;
}

double fidelity(const PhotonQubit& q, const CouplingSet& c) {
    const cplx al = q.alpha(), be = q.beta();
    const cplx wK = al * c.C() + be * c.D();
    const cplx wKp = al * std::conj(c.D()) + be * std::conj(c.C());
    const double den = (std::norm(wK) + std::norm(wKp)) * c.pc_coupling_sq();
    if (!(den > 0.0)) throw NumericalError("no transferred population");
    const cplx num = std::conj(al) * std::conj(c.A()) * wK + std::conj(be) * c.A() * wKp;
    return std::norm(num) / den;
}

double fidelity_equal_amplitude(double delta, const CouplingSet& c) {
    const double A = std::abs(c.A()), C = std::abs(c.C()), D = std::abs(c.D());
    const double cd = std::cos(delta);
    const double den = (C * C + D * D + 2.0 * C * D * cd) * c.pc_coupling_sq();
    if (!(den > 0.0)) throw NumericalError("no transferred population");
    return A * A * (C + D * cd) * (C + D * cd) / den;
}

double fidelity_from_spectrum(const OutputSpectrum& s, const PhotonQubit& q) {
    const std::size_t n = s.size();
    if (n == 0) throw ValidationError("spectrum", "empty spectrum");
    std::vector<double> num(n), den(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = s.weight.empty() ? 1.0 : s.weight[i];
        const auto& a = s.amp[i];
        const cplx ov = -std::conj(q.alpha()) * a[0] + std::conj(q.beta()) * a[3];
        num[i] = w * std::norm(ov);
        den[i] = w * (std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]));
    }
    const double P = pairwise_sum(den);
    if (!(P > 1e-300)) throw NumericalError("no transferred population");
    return pairwise_sum(num) / P;
}

double haar_average_fidelity(const CouplingSet& c, int samples, std::uint64_t seed) {
    if (samples <= 0) throw ValidationError("samples", "must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> f(samples);
    for (int i = 0; i < samples; ++i) {
        const cplx a(nd(rng), nd(rng)), b(nd(rng), nd(rng));
        f[i] = fidelity(PhotonQubit::normalized(a, b), c);
    }
    return pairwise_sum(f) / samples;
}

} // namespace vqst
