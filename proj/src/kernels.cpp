#include "vqst/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <omp.h>


namespace vqst {

void set_threads(int n) { omp_set_num_threads(n > 0 ? n : omp_get_num_procs()); }

int max_threads() { return omp_get_max_threads(); }

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

std::vector<double> panel_edges(double W, const std::vector<Feature>& features, double shrink) {
    auto width = [&](double u) {
        double w = 2.0 * W;
        for (const Feature& f : features) w = std::min(w, f.width / 2.0 + std::abs(u - f.center) / 4.0);
        return shrink * w;
    };
    std::vector<double> e{-W};
    double u = -W;
    while (u < W) {
        const double h = width(u);
        // Do not step over a feature centre: the width function is smallest there.
        double next = u + h;
        for (const Feature& f : features)
            if (f.center > u && f.center < next) next = std::min(next, u + std::max(h / 2.0, width(f.center)));
        if (next > W || W - next < 0.25 * width(W)) next = W;
        e.push_back(next);
        u = next;
    }
    return e;
}

double SpectralTerms::operator()(double u) const {
    const cplx den = ((u - da) * (u - db) - gsq) * (u - d3);
    return std::exp(-u * u / (delta * delta)) / std::norm(den);
}

SpectralTerms spectral_terms(const SystemParams& p) {
    const DerivedRates r = derive_rates(p);
    const double w = p.pulse.omega_ph;
    SpectralTerms t;
    t.da = cplx(p.trion.omega_trion - w, -r.gamma_total);
    t.db = cplx(p.cavities.omega_PC - w, -p.cavities.Gamma_PC);
    t.d3 = cplx(p.cavities.omega_DC - w, -p.cavities.kappa_DC);
    t.gsq = p.couplings.pc_coupling_sq();
    t.delta = p.pulse.delta_omega_ph;
    return t;
}

double integrate_panels(const SpectralTerms& f, const std::vector<double>& edges, Exec exec) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const long n = static_cast<long>(edges.size()) - 1;
    if (n <= 0) return 0.0;
    std::vector<double> part(n);
    auto panel = [&](long i) { part[i] = GL::integrate(f, edges[i], edges[i + 1]); };
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) panel(i);
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) panel(i);
    }
    return pairwise_sum(part);
}

std::vector<double> simpson_weights(std::size_t n, double h) {
    std::vector<double> w(n, 0.0);
    if (n < 3 || n % 2 == 0) throw ValidationError("omega_points", "Simpson rule needs an odd count >= 3");
    for (std::size_t i = 0; i < n; ++i) w[i] = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    for (double& x : w) x *= h / 3.0;
    return w;
}

void bin_rhs(const cplx* y, cplx* dy, const double* u, std::size_t n, const cplx src[4], double k,
             Exec exec) {
    const long total = static_cast<long>(4 * n);
    const cplx mi(0.0, -1.0);
    auto one = [&](long idx) {
        const std::size_t c = static_cast<std::size_t>(idx) / n, j = static_cast<std::size_t>(idx) % n;
        dy[idx] = mi * (u[j] * y[idx] + k * src[c]);
    };
    if (exec == Exec::Serial) {
        for (long i = 0; i < total; ++i) one(i);
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < total; ++i) one(i);
    }
}

} // namespace vqst
