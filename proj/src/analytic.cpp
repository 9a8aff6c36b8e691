#include "vqst/analytic.hpp"

#include <cmath>

#include "vqst/faddeeva.hpp"

namespace vqst {

namespace {

const cplx I(0.0, 1.0);

std::array<cplx, 2> unit(std::array<cplx, 2> v) {
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return {v[0] / n, v[1] / n};
}

// int_{-inf}^{tau} exp(-i mu (tau - s)) exp(-a^2 s^2) ds
cplx gauss_pole(cplx mu, double tau, double a) {
    const double pref = std::sqrt(pi) / (2.0 * a);
    const cplx z = -mu / (2.0 * a) - I * (a * tau);
    const double g2 = -(a * tau) * (a * tau);
    if (z.imag() >= 0.0) return pref * std::exp(g2) * faddeeva_upper(z);
    return pref * (2.0 * std::exp(g2 - z * z) - std::exp(g2) * faddeeva_upper(-z));
}

} // namespace

const char* to_string(Branch b) { return b == Branch::K ? "K" : "Kp"; }

double EigenSystem::residual() const {
    const double hn = std::sqrt(std::norm(a) + std::norm(b) + 2.0 * g * g);
    if (hn == 0.0) return 0.0;
    double worst = 0.0;
    const cplx lam[2] = {lambda1, lambda2};
    for (int n = 0; n < 2; ++n) {
        const auto& v = phi[n];
        const cplx r0 = a * v[0] + g * v[1] - lam[n] * v[0];
        const cplx r1 = g * v[0] + b * v[1] - lam[n] * v[1];
        worst = std::max(worst, std::sqrt(std::norm(r0) + std::norm(r1)) / hn);
    }
    return worst;
}

EigenSystem eigensystem(cplx a, cplx b, cplx A, cplx B) {
    EigenSystem e;
    e.a = a;
    e.b = b;
    e.g = std::sqrt(std::norm(A) + std::norm(B));
    const cplx d = a - b;
    cplx s = std::sqrt(d * d + 4.0 * e.g * e.g);
    if ((s * std::conj(d)).real() < 0.0) s = -s;
    e.lambda1 = 0.5 * (a + b + s);
    e.lambda2 = 0.5 * (a + b - s);
    e.lambda3 = 0.0;

    const double scale = std::abs(d) + 2.0 * e.g;
    e.exceptional = e.g > 0.0 && std::abs(s) <= 1e-9 * scale;

    const cplx lam[2] = {e.lambda1, e.lambda2};
    for (int n = 0; n < 2; ++n) {
        const std::array<cplx, 2> c1{lam[n] - b, e.g}, c2{e.g, lam[n] - a};
        const double n1 = std::norm(c1[0]) + std::norm(c1[1]);
        const double n2 = std::norm(c2[0]) + std::norm(c2[1]);
        if (n1 == 0.0 && n2 == 0.0) {
            e.phi[n] = {n == 0 ? 1.0 : 0.0, n == 0 ? 0.0 : 1.0};
        } else {
            e.phi[n] = unit(n1 >= n2 ? c1 : c2);
        }
    }
    return e;
}

EigenSystem eigensystem(const SystemParams& p) {
    const DerivedRates r = derive_rates(p);
    EigenSystem e = eigensystem(cplx(p.trion.omega_trion, -r.gamma_total),
                                cplx(p.cavities.omega_PC, -p.cavities.Gamma_PC), p.couplings.A(),
                                p.couplings.B());
    e.lambda3 = cplx(p.cavities.omega_DC, -p.cavities.kappa_DC);
    return e;
}

std::pair<cplx, cplx> source_coefficients(const EigenSystem& e, cplx f) {
    const cplx det = e.phi[0][0] * e.phi[1][1] - e.phi[0][1] * e.phi[1][0];
    if (e.exceptional || std::abs(det) < 1e-12) throw NumericalError("defective eigensystem");
    return {e.phi[1][1] * f / det, -e.phi[0][1] * f / det};
}

cplx gaussian_input(double t, const PulseParams& pu) {
    const double D = pu.delta_omega_ph;
    const double amp = pu.phi0() * std::sqrt(pu.L) * D / std::sqrt(2.0 * pi);
    const double tau = t - pu.center_time();
    return amp * std::exp(-0.5 * D * D * tau * tau) * std::polar(1.0, -pu.omega_ph * t);
}

cplx gaussian_spectrum(double omega, const PulseParams& pu) {
    const double u = omega - pu.omega_ph;
    const double D = pu.delta_omega_ph;
    return pu.phi0() * std::sqrt(pu.L) * std::exp(-0.5 * u * u / (D * D)) *
           std::polar(1.0, -u * pu.x0 / pu.c);
}

cplx source_weight(const SystemParams& p, Branch b) {
    const cplx al = p.qubit.alpha(), be = p.qubit.beta();
    const CouplingSet& c = p.couplings;
    if (b == Branch::K) return al * c.C() + be * c.D();
    return al * std::conj(c.D()) + be * std::conj(c.C());
}

TimeSolution::TimeSolution(const SystemParams& p) : p_(p), eig_(eigensystem(p)) {
    const double w = p.pulse.omega_ph;
    mu_[0] = eig_.lambda1 - w;
    mu_[1] = eig_.lambda2 - w;
    mu_[2] = eig_.lambda3 - w;
    d_ = source_coefficients(eig_, 1.0);
    const double D = p.pulse.delta_omega_ph;
    a2_ = D / std::sqrt(2.0);
    t0_ = p.pulse.center_time();
    const double G0 = p.pulse.phi0() * std::sqrt(p.pulse.L) * D / std::sqrt(2.0 * pi);
    drive_ = I * std::sqrt(p.pulse.c * p.cavities.kappa_DC / p.pulse.L) * G0;
}

cplx TimeSolution::kernel(cplx mu, double t) const {
    return gauss_pole(mu, t - t0_, a2_) - std::exp(-I * mu * t) * gauss_pole(mu, -t0_, a2_);
}

cplx TimeSolution::nested(cplx mu_n, double t) const {
    const cplx mu3 = mu_[2];
    const cplx diff = mu_n - mu3;
    const double scale = std::abs(mu3) + p_.pulse.delta_omega_ph;
    if (std::abs(diff) >= 1e-5 * scale) return (kernel(mu3, t) - kernel(mu_n, t)) / (I * diff);
    // Near-coincident poles: symmetric secant of width 1e-5 scale around the midpoint.
    const cplx dir = std::abs(diff) > 0.0 ? diff / std::abs(diff) : cplx(1.0);
    const cplx m = 0.5 * (mu_n + mu3), h = 0.5e-5 * scale * dir;
    return (kernel(m - h, t) - kernel(m + h, t)) / (I * 2.0 * h);
}

cplx TimeSolution::chain(int j, Branch v, double t) const {
    const cplx n1 = nested(mu_[0], t), n2 = nested(mu_[1], t);
    const cplx sum = d_.first * eig_.phi[0][j] * n1 + d_.second * eig_.phi[1][j] * n2;
    return -I * source_weight(p_, v) * drive_ * sum;
}

cplx TimeSolution::dbr(Pol s, Branch v, double t) const {
    const cplx al = p_.qubit.alpha(), be = p_.qubit.beta();
    cplx bar = (s == Pol::Plus) ? al : be;
    if (v == Branch::Kprime) bar = -bar;
    return bar * drive_ * kernel(mu_[2], t);
}

cplx TimeSolution::trion(Branch v, double t) const { return chain(0, v, t); }

cplx TimeSolution::pc1(Branch v, double t) const { return chain(1, v, t); }

cplx TimeSolution::pc(Pol s, Branch v, double t) const {
    const double g = eig_.g;
    if (g == 0.0) return 0.0;
    const cplx A = p_.couplings.A(), B = p_.couplings.B();
    const cplx x = pc1(v, t);
    if (v == Branch::K) return (s == Pol::Plus ? std::conj(A) : std::conj(B)) / g * x;
    return -(s == Pol::Plus ? B : A) / g * x;
}

cplx dbr_amplitude(Pol s, Branch v, double t, const SystemParams& p) {
    return TimeSolution(p).dbr(s, v, t) * std::polar(1.0, -p.pulse.omega_ph * t);
}

cplx pc_amplitude(double t, const SystemParams& p, Branch v) {
    return TimeSolution(p).pc1(v, t) * std::polar(1.0, -p.pulse.omega_ph * t);
}

double tk_squared(const SystemParams& p) {
    const double c = p.pulse.c, L = p.pulse.L;
    return 2.0 * c * c * p.cavities.Gamma_PC / (L * L * p.cavities.omega_PC);
}

double mode_density(const SystemParams& p) { return p.cavities.Gamma_PC / (pi * tk_squared(p)); }

cplx pole_product_detuned(double u, const SystemParams& p) {
    const DerivedRates r = derive_rates(p);
    const double w = p.pulse.omega_ph;
    const cplx da = cplx(u - (p.trion.omega_trion - w), r.gamma_total);
    const cplx db = cplx(u - (p.cavities.omega_PC - w), p.cavities.Gamma_PC);
    const cplx d3 = cplx(u - (p.cavities.omega_DC - w), p.cavities.kappa_DC);
    return (da * db - p.couplings.pc_coupling_sq()) * d3;
}

cplx pole_product(double omega, const SystemParams& p) {
    return pole_product_detuned(omega - p.pulse.omega_ph, p);
}

cplx output_amplitude(double omega, const SystemParams& p, Branch v) {
    const double u = omega - p.pulse.omega_ph;
    const double D = p.pulse.delta_omega_ph;
    const double g = std::sqrt(p.couplings.pc_coupling_sq());
    const cplx num = I * std::sqrt(tk_squared(p)) * g * source_weight(p, v) *
                     std::sqrt(p.pulse.c * p.cavities.kappa_DC) * p.pulse.phi0() *
                     std::exp(-0.5 * u * u / (D * D)) * std::polar(1.0, -u * p.pulse.x0 / p.pulse.c);
    return num / pole_product_detuned(u, p);
}

double output_probability(double omega, const SystemParams& p, Branch v) {
    return std::norm(output_amplitude(omega, p, v));
}

double output_density(double omega, const SystemParams& p, Branch v) {
    return mode_density(p) * output_probability(omega, p, v);
}

std::array<cplx, 4> to_transformed(const std::array<cplx, 4>& x, const CouplingSet& cs) {
    const double g = std::sqrt(cs.pc_coupling_sq());
    if (g == 0.0) return x;
    const cplx A = cs.A(), B = cs.B();
    return {(A * x[0] + B * x[1]) / g, (-std::conj(B) * x[0] + std::conj(A) * x[1]) / g,
            -(std::conj(B) * x[2] + std::conj(A) * x[3]) / g, (A * x[2] - B * x[3]) / g};
}

std::array<cplx, 4> from_transformed(const std::array<cplx, 4>& y, const CouplingSet& cs) {
    const double g = std::sqrt(cs.pc_coupling_sq());
    if (g == 0.0) return y;
    const cplx A = cs.A(), B = cs.B();
    return {(std::conj(A) * y[0] - B * y[1]) / g, (std::conj(B) * y[0] + A * y[1]) / g,
            (-B * y[2] + std::conj(A) * y[3]) / g, (-A * y[2] - std::conj(B) * y[3]) / g};
}

OutputSpectrum output_spectrum(const SystemParams& p, const std::vector<double>& omega, Exec exec) {
    OutputSpectrum s;
    const long n = static_cast<long>(omega.size());
    s.omega = omega;
    s.amp.resize(n);
    s.chan.resize(n);
    const double sr = std::sqrt(mode_density(p));
    auto cell = [&](long i) {
        const cplx k1 = sr * output_amplitude(omega[i], p, Branch::K);
        const cplx kp1 = sr * output_amplitude(omega[i], p, Branch::Kprime);
        s.chan[i] = {k1, 0.0, kp1, 0.0};
        s.amp[i] = from_transformed(s.chan[i], p.couplings);
    };
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) cell(i);
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) cell(i);
    }
    return s;
}

std::vector<double> uniform_grid(double center, double half_width, int n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = center;
        return g;
    }
    for (int i = 0; i < n; ++i) g[i] = center - half_width + 2.0 * half_width * i / (n - 1);
    return g;
}

} // namespace vqst
