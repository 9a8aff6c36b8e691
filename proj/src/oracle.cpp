#include "vqst/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "vqst/kernels.hpp"
#include "vqst/metrics.hpp"

namespace vqst {

namespace {

using State = std::vector<cplx>;
constexpr std::size_t core = 10; // dc[0..3], trion[4..5], pc[6..9]
constexpr std::size_t flux = 10;
constexpr std::size_t bins0 = 11;

const cplx I(0.0, 1.0);

struct Rhs {
    cplx hdc, htr, hpc;
    cplx A, B, C, D;
    cplx al, be;
    double in_coupling; // sqrt(2 c kappa / L)
    double G0, t0, delta;
    double two_gamma;
    double k; // bin coupling in scaled units
    bool drive;
    const std::vector<double>* u;
    Exec exec;

    void operator()(const State& z, State& dz, double t) const {
        const double tau = t - t0;
        const double env = drive ? G0 * std::exp(-0.5 * delta * delta * tau * tau) / std::sqrt(2.0) : 0.0;
        const cplx in[4] = {-al * env, -be * env, al * env, be * env};
        for (int c = 0; c < 4; ++c) dz[c] = -I * (hdc * z[c] + in_coupling * in[c]);

        const cplx *dc = &z[0], *pc = &z[6];
        dz[4] = -I * (htr * z[4] + A * pc[0] + B * pc[1] + C * dc[0] + D * dc[1]);
        dz[5] = -I * (htr * z[5] - std::conj(B) * pc[2] - std::conj(A) * pc[3] - std::conj(D) * dc[2] -
                      std::conj(C) * dc[3]);
        dz[6] = -I * (std::conj(A) * z[4] + hpc * pc[0]);
        dz[7] = -I * (std::conj(B) * z[4] + hpc * pc[1]);
        dz[8] = -I * (-B * z[5] + hpc * pc[2]);
        dz[9] = -I * (-A * z[5] + hpc * pc[3]);

        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += std::norm(pc[c]);
        dz[flux] = two_gamma * s;

        const cplx src[4] = {pc[0], pc[1], pc[2], pc[3]};
        bin_rhs(&z[bins0], &dz[bins0], u->data(), u->size(), src, k, exec);
    }
};

double core_population(const State& z) {
    double s = 0.0;
    for (std::size_t i = 0; i < core; ++i) s += std::norm(z[i]);
    return s;
}

double pc_k2(const State& z, const CouplingSet& cs) {
    const double g = std::sqrt(cs.pc_coupling_sq());
    if (g == 0.0) return 0.0;
    const std::array<cplx, 4> t = to_transformed({z[6], z[7], z[8], z[9]}, cs);
    return std::norm(t[1]) + std::norm(t[3]);
}

double min_width(const SystemParams& p) {
    const DerivedRates r = derive_rates(p);
    double w = p.pulse.delta_omega_ph;
    for (double x : {p.cavities.kappa_DC, p.cavities.Gamma_PC, r.gamma_total})
        if (x > 0.0) w = std::min(w, x);
    return w;
}

} // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0)) throw ValidationError("rel_tol", "must be positive");
    if (!(abs_tol > 0.0)) throw ValidationError("abs_tol", "must be positive");
    if (t_end < 0.0) throw ValidationError("t_end", "must be non-negative");
    if (dt_max < 0.0) throw ValidationError("dt_max", "must be non-negative");
    if (omega_points != 0 && (omega_points < 3 || omega_points % 2 == 0))
        throw ValidationError("omega_points", "must be an odd number >= 3");
    if (omega_half_width < 0.0) throw ValidationError("omega_half_width", "must be non-negative");
    if (!(residual_cutoff > 0.0)) throw ValidationError("residual_cutoff", "must be positive");
}

std::vector<double> oracle_grid(const SystemParams& p, const IntegratorConfig& cfg) {
    const double D = p.pulse.delta_omega_ph;
    const double half = cfg.omega_half_width > 0.0 ? cfg.omega_half_width : 10.0 * D;
    long n = cfg.omega_points;
    if (n == 0) {
        n = 2001;
        const double need = 2.0 * half / (min_width(p) / 8.0);
        if (need > n - 1) n = static_cast<long>(std::ceil(need)) + 1;
        n = std::min<long>(n, 40001);
        if (n % 2 == 0) ++n;
    }
    return uniform_grid(p.pulse.omega_ph, half, static_cast<int>(n));
}

OracleResult integrate(const SystemParams& p, const IntegratorConfig& cfg) {
    p.validate();
    cfg.validate();
    namespace ode = boost::numeric::odeint;

    const DerivedRates r = derive_rates(p);
    const double w = p.pulse.omega_ph;
    const double D = p.pulse.delta_omega_ph;
    const double Gamma = p.cavities.Gamma_PC;

    const std::vector<double> omega = oracle_grid(p, cfg);
    const std::size_t n = omega.size();
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = omega[j] - w;

    // Output bins are integrated in units of S = |T| sqrt(pi / (Gamma D)), which
    // makes them O(1) and independent of the normalization length.
    const double T = std::sqrt(tk_squared(p));
    const double S = T * std::sqrt(pi / (Gamma * D));
    const double rho = mode_density(p);

    Rhs rhs;
    rhs.hdc = cplx(p.cavities.omega_DC - w, -p.cavities.kappa_DC);
    rhs.htr = cplx(p.trion.omega_trion - w, -r.gamma_total);
    rhs.hpc = cplx(p.cavities.omega_PC - w, -Gamma);
    rhs.A = p.couplings.A();
    rhs.B = p.couplings.B();
    rhs.C = p.couplings.C();
    rhs.D = p.couplings.D();
    rhs.al = p.qubit.alpha();
    rhs.be = p.qubit.beta();
    rhs.in_coupling = std::sqrt(2.0 * p.pulse.c * p.cavities.kappa_DC / p.pulse.L);
    rhs.G0 = p.pulse.phi0() * std::sqrt(p.pulse.L) * D / std::sqrt(2.0 * pi);
    rhs.t0 = p.pulse.center_time();
    rhs.delta = D;
    rhs.two_gamma = 2.0 * Gamma;
    rhs.k = T / S;
    rhs.u = &u;
    rhs.exec = cfg.exec;
    rhs.drive = cfg.drive_pulse;

    const double t_pass = cfg.drive_pulse ? rhs.t0 + 6.0 / D : 0.0;
    const double slow = std::min({r.gamma_total > 0.0 ? r.gamma_total : Gamma, Gamma, p.cavities.kappa_DC});
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : t_pass + 24.0 / slow;
    const double dt_max = cfg.dt_max > 0.0 ? cfg.dt_max : 0.2 / D;

    std::vector<double> samples = cfg.sample_times;
    std::sort(samples.begin(), samples.end());

    State z(bins0 + 4 * n, cplx(0.0));
    if (cfg.initial) {
        for (int c = 0; c < 4; ++c) {
            z[c] = cfg.initial->dc[c];
            z[6 + c] = cfg.initial->pc[c];
        }
        z[4] = cfg.initial->trion[0];
        z[5] = cfg.initial->trion[1];
    }
    auto ctrl = ode::make_controlled(cfg.abs_tol, cfg.rel_tol, dt_max,
                                     ode::runge_kutta_dopri5<State, double, State, double>());

    OracleResult res;
    auto record = [&](double t) {
        BranchAmplitudes b;
        b.t = t;
        for (int c = 0; c < 4; ++c) {
            b.dc[c] = z[c];
            b.pc[c] = z[6 + c];
        }
        b.trion = {z[4], z[5]};
        res.samples.push_back(b);
    };
    const double du = n > 1 ? u[1] - u[0] : 1.0;
    // Bin populations carry the density weight rho S^2 du.
    auto tracked_total = [&]() {
        double s = 0.0;
        for (std::size_t i = bins0; i < z.size(); ++i) s += std::norm(z[i]);
        return core_population(z) + s * rho * S * S * du;
    };

    double t = 0.0, dt = std::min(dt_max, 0.01 / std::max(D, 1e-300));
    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] <= 0.0) record(samples[next_sample++]);

    double last_tracked = -1.0;
    long since_check = 0;
    bool done = false;
    while (!done) {
        double target = t_end;
        if (next_sample < samples.size()) target = std::min(target, samples[next_sample]);
        if (t >= target) {
            if (next_sample < samples.size() && t >= samples[next_sample]) {
                record(t);
                ++next_sample;
                continue;
            }
            break;
        }
        double step = std::min(dt, target - t);
        const bool clipped = step < dt;
        const double keep = dt;
        const ode::controlled_step_result cr = ctrl.try_step(rhs, z, t, step);
        if (cr == ode::success) {
            ++res.steps;
            if (clipped) t = target;
            dt = clipped ? keep : step;
            res.max_k2 = std::max(res.max_k2, pc_k2(z, p.couplings));
            if (t >= t_pass) {
                if (++since_check >= 10) {
                    since_check = 0;
                    const double tot = tracked_total();
                    if (last_tracked >= 0.0)
                        res.tracked_increase = std::max(res.tracked_increase, (tot - last_tracked) / last_tracked);
                    last_tracked = tot;
                }
                if (core_population(z) < cfg.residual_cutoff && next_sample >= samples.size()) done = true;
            }
        } else {
            dt = step;
            if (dt < 1e-14 * std::max(1.0, t)) throw NumericalError("oracle: step-size underflow");
        }
    }
    res.t_final = t;
    res.residual = core_population(z);
    if (res.residual >= cfg.residual_cutoff || t < t_pass) {
        std::ostringstream os;
        os << "oracle: insufficient t_end (residual population " << res.residual << " at t = " << t << ")";
        throw NumericalError(os.str());
    }
    res.P_flux = z[flux].real();

    OutputSpectrum& sp = res.spectrum;
    sp.omega = omega;
    sp.weight = simpson_weights(n, du);
    sp.amp.resize(n);
    sp.chan.resize(n);
    const double scale = std::sqrt(rho) * S;
    std::vector<double> pw(n), k2(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx ph = std::polar(scale, u[j] * t);
        for (int c = 0; c < 4; ++c) sp.amp[j][c] = z[bins0 + c * n + j] * ph;
        sp.chan[j] = to_transformed(sp.amp[j], p.couplings);
        pw[j] = sp.weight[j] * (std::norm(sp.amp[j][0]) + std::norm(sp.amp[j][1]) + std::norm(sp.amp[j][2]) +
                                std::norm(sp.amp[j][3]));
        k2[j] = sp.weight[j] * (sp.p_K2(j) + sp.p_Kp2(j));
    }
    res.P = pairwise_sum(pw);
    res.max_k2 = std::max(res.max_k2, pairwise_sum(k2));
    res.F = res.P >= 1e-12 ? fidelity_from_spectrum(sp, p.qubit) : std::numeric_limits<double>::quiet_NaN();
    return res;
}

double yield_numeric(const SystemParams& p, const IntegratorConfig& cfg) { return integrate(p, cfg).P; }

double fidelity_numeric(const SystemParams& p, const IntegratorConfig& cfg) {
    const OracleResult r = integrate(p, cfg);
    if (!(r.P >= 1e-12)) throw NumericalError("no transferred population");
    return r.F;
}

} // namespace vqst
