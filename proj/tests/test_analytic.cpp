#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <random>

#include "vqst/analytic.hpp"

using namespace vqst;
using doctest::Approx;

namespace {

cplx rnd(std::mt19937_64& g, double s = 1.0) {
    std::normal_distribution<double> n;
    return {s * n(g), s * n(g)};
}

template <class F>
cplx integrate_c(F f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = [&](double t) { return f(t).real(); };
    auto im = [&](double t) { return f(t).imag(); };
    return {gauss_kronrod<double, 61>::integrate(re, a, b, 15, 1e-13),
            gauss_kronrod<double, 61>::integrate(im, a, b, 15, 1e-13)};
}

} // namespace

TEST_CASE("eigensystem limits") {
    const cplx a(3.0, -1.0), b(-2.0, -5.0);
    const EigenSystem d = eigensystem(a, b, 0.0, 0.0);
    CHECK(std::abs(d.lambda1 - a) < 1e-15);
    CHECK(std::abs(d.lambda2 - b) < 1e-15);
    CHECK_FALSE(d.exceptional);

    const EigenSystem s = eigensystem(a, a, 3.0, 4.0);
    const cplx hi = a + 5.0, lo = a - 5.0;
    CHECK(std::min(std::abs(s.lambda1 - hi), std::abs(s.lambda1 - lo)) < 1e-13);
    CHECK(std::abs(s.lambda1 + s.lambda2 - 2.0 * a) < 1e-13);
}

TEST_CASE("eigensystem against a general 2x2 solver") {
    std::mt19937_64 g(42);
    for (int k = 0; k < 200; ++k) {
        const cplx a = rnd(g, 10.0), b = rnd(g, 10.0), A = rnd(g, 5.0), B = rnd(g, 0.5);
        const EigenSystem e = eigensystem(a, b, A, B);
        Eigen::Matrix2cd H;
        H << a, e.g, e.g, b;
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(H);
        const cplx m0 = es.eigenvalues()[0], m1 = es.eigenvalues()[1];
        const double scale = H.norm();
        const double d_direct = std::abs(e.lambda1 - m0) + std::abs(e.lambda2 - m1);
        const double d_swap = std::abs(e.lambda1 - m1) + std::abs(e.lambda2 - m0);
        CHECK(std::min(d_direct, d_swap) < 1e-12 * scale);
        CHECK(e.residual() < 1e-12);
        CHECK(std::abs(e.lambda1 + e.lambda2 - (a + b)) < 1e-12 * scale);
        CHECK(std::abs(e.lambda1 * e.lambda2 - (a * b - e.g * e.g)) < 1e-12 * scale * scale);

        // branch choice: Re(s conj(a-b)) >= 0
        CHECK(((e.lambda1 - e.lambda2) * std::conj(a - b)).real() >= 0.0);

        // source coefficients reconstruct (f, 0) and match a direct solve
        const cplx f = rnd(g);
        const auto [c1, c2] = source_coefficients(e, f);
        CHECK(std::abs(c1 * e.phi[0][0] + c2 * e.phi[1][0] - f) < 1e-12 * std::abs(f));
        CHECK(std::abs(c1 * e.phi[0][1] + c2 * e.phi[1][1]) < 1e-12 * std::abs(f));
        Eigen::Matrix2cd V;
        V << e.phi[0][0], e.phi[1][0], e.phi[0][1], e.phi[1][1];
        const Eigen::Vector2cd x = V.partialPivLu().solve(Eigen::Vector2cd(f, 0.0));
        CHECK(std::abs(x[0] - c1) < 1e-11 * std::abs(f));
        CHECK(std::abs(x[1] - c2) < 1e-11 * std::abs(f));
    }
}

TEST_CASE("exceptional point") {
    // (a-b)^2 + 4 g^2 = 0 for a - b = 2 i g
    const EigenSystem e = eigensystem(cplx(0.0, -1.0), cplx(0.0, -3.0), 1.0, 0.0);
    CHECK(e.exceptional);
    CHECK_THROWS_WITH_AS(source_coefficients(e, 1.0), "defective eigensystem", NumericalError);
    const EigenSystem ok = eigensystem(cplx(0.0, -1.0), cplx(0.0, -3.0), 0.5, 0.0);
    const auto z = source_coefficients(ok, 0.0);
    CHECK(z.first == cplx(0.0));
    CHECK(z.second == cplx(0.0));
}

TEST_CASE("physical eigenvalues decay") {
    const SystemParams p;
    const EigenSystem e = eigensystem(p);
    CHECK(e.lambda1.imag() < 0.0);
    CHECK(e.lambda2.imag() < 0.0);
    CHECK(e.lambda3 == cplx(1.6e5, -90.0));
    CHECK(e.residual() < 1e-10);
}

TEST_CASE("gaussian input") {
    const PulseParams pu;
    const double tc = pu.center_time();
    CHECK(std::abs(gaussian_input(tc, pu)) > std::abs(gaussian_input(tc + 1e-3, pu)));
    CHECK(std::abs(gaussian_input(tc, pu)) > std::abs(gaussian_input(tc - 1e-3, pu)));
    const double D = pu.delta_omega_ph;
    auto dens = [&](double t) { return cplx(std::norm(gaussian_input(t, pu)), 0.0); };
    const double n = integrate_c(dens, tc - 12.0 / D, tc + 12.0 / D).real();
    CHECK(n * pu.c / pu.L == Approx(1.0).epsilon(1e-10));

    // time-bandwidth product is fixed
    PulseParams wide = pu;
    wide.delta_omega_ph = 2.0 * D;
    wide.x0 = pu.x0;
    const double h = 0.7 / D;
    const double r1 = std::abs(gaussian_input(tc + h, pu) / gaussian_input(tc, pu));
    const double r2 = std::abs(gaussian_input(tc + h / 2.0, wide) / gaussian_input(tc, wide));
    CHECK(r1 == Approx(r2).epsilon(1e-12));

    // spectrum is the Fourier transform of the input
    for (double u : {0.0, 2.0, -4.0}) {
        const double w = pu.omega_ph + u;
        auto f = [&](double t) {
            return gaussian_input(t, pu) * std::polar(1.0, pu.omega_ph * t) * std::polar(1.0, u * t);
        };
        const cplx num = integrate_c(f, tc - 12.0 / D, tc + 12.0 / D);
        CHECK(std::abs(num - gaussian_spectrum(w, pu)) < 1e-9 * std::abs(gaussian_spectrum(pu.omega_ph, pu)));
    }
}

TEST_CASE("DBR amplitude closed form") {
    SystemParams p;
    p.qubit = PhotonQubit::normalized(cplx(0.8, 0.1), cplx(0.2, -0.55));
    p.cavities.omega_DC += 7.0; // detuned
    const TimeSolution ts(p);
    const double k = p.cavities.kappa_DC;
    const double dw = p.cavities.omega_DC - p.pulse.omega_ph;
    const double tc = p.pulse.center_time(), D = p.pulse.delta_omega_ph;
    const cplx pref = cplx(0.0, 1.0) * std::sqrt(p.pulse.c * k / p.pulse.L);
    for (double t : {tc - 1.0 / D, tc, tc + 0.5 / D, tc + 3.0 / D}) {
        auto f = [&](double s) {
            return std::exp(cplx(-k, -dw) * (t - s)) * gaussian_input(s, p.pulse) *
                   std::polar(1.0, p.pulse.omega_ph * s);
        };
        const cplx ref = pref * integrate_c(f, 0.0, t);
        const cplx got = ts.dbr(Pol::Plus, Branch::K, t) / p.qubit.alpha();
        CHECK(std::abs(got - ref) < 1e-7 * std::abs(ref));
        CHECK(std::abs(ts.dbr(Pol::Minus, Branch::Kprime, t) + p.qubit.beta() * ref) < 1e-7 * std::abs(ref));
    }

    SystemParams z = p;
    z.qubit = PhotonQubit(0.0, 1.0);
    const TimeSolution tz(z);
    CHECK(tz.dbr(Pol::Plus, Branch::K, tc) == cplx(0.0));
}

TEST_CASE("PC amplitude vanishes without a source") {
    SystemParams p;
    p.couplings = CouplingSet(45.0, 1.8, 0.0, 0.0);
    const TimeSolution ts(p);
    const double tc = p.pulse.center_time();
    CHECK(std::abs(ts.pc1(Branch::K, tc)) == 0.0);

    // alpha C + beta D = 0
    SystemParams q;
    q.couplings = CouplingSet(45.0, 1.8, 30.0, 1.2);
    q.qubit = PhotonQubit::normalized(1.2, -30.0);
    CHECK(std::abs(source_weight(q, Branch::K)) < 1e-14);
    const TimeSolution tq(q);
    CHECK(std::abs(tq.pc1(Branch::K, tc)) < 1e-15);
    CHECK(std::abs(tq.pc1(Branch::Kprime, tc)) > 1e-6);
}

TEST_CASE("output probability") {
    SystemParams p;
    p.couplings = CouplingSet(45.0, cplx(1.2, 0.9), 30.0, cplx(0.5, -1.1));
    p.qubit = PhotonQubit::normalized(cplx(0.6, 0.2), cplx(-0.1, 0.5));
    const double w0 = p.pulse.omega_ph, D = p.pulse.delta_omega_ph;

    // closed form of the density
    for (double u : {-7.0, 0.0, 3.0}) {
        const double w = w0 + u;
        for (Branch v : {Branch::K, Branch::Kprime}) {
            const double ref = 2.0 * std::sqrt(pi) * (p.cavities.kappa_DC / D) * std::exp(-u * u / (D * D)) *
                               tk_squared(p) * std::norm(source_weight(p, v)) * p.couplings.pc_coupling_sq() /
                               std::norm(pole_product(w, p));
            CHECK(output_probability(w, p, v) == Approx(ref).epsilon(1e-10));
        }
    }

    // deep Gaussian tail
    const double tail = output_probability(w0 + 10.0 * D, p, Branch::K);
    const double ctr = output_probability(w0, p, Branch::K);
    CHECK(tail / ctr < std::exp(-100.0));

    // product of detuned poles matches the direct product
    const EigenSystem e = eigensystem(p);
    for (double u : {-3.0, 0.5, 40.0}) {
        const double w = w0 + u;
        const cplx direct = (w - e.lambda1) * (w - e.lambda2) * (w - e.lambda3);
        CHECK(std::abs(pole_product_detuned(u, p) - direct) < 1e-6 * std::abs(direct));
    }

    // global phase of the qubit drops out
    SystemParams r = p;
    const cplx ph = std::polar(1.0, 2.3);
    r.qubit = PhotonQubit(p.qubit.alpha() * ph, p.qubit.beta() * ph);
    CHECK(output_probability(w0 + 1.0, r, Branch::K) ==
          Approx(output_probability(w0 + 1.0, p, Branch::K)).epsilon(1e-13));

    // the two branches are proportional with ratio |W_K|^2 / |W_K'|^2
    const double ratio = std::norm(source_weight(p, Branch::K)) / std::norm(source_weight(p, Branch::Kprime));
    for (double u : {-5.0, 0.0, 2.5})
        CHECK(output_probability(w0 + u, p, Branch::K) / output_probability(w0 + u, p, Branch::Kprime) ==
              Approx(ratio).epsilon(1e-12));
}

TEST_CASE("L and c cancel in the exit density") {
    SystemParams p;
    SystemParams q = p;
    q.pulse.L = 10.0;
    q.pulse.c = 3.0;
    q.pulse.x0 = p.pulse.x0 * 3.0 / p.pulse.c;
    for (double u : {-2.0, 0.0, 4.0})
        CHECK(output_density(p.pulse.omega_ph + u, q, Branch::K) ==
              Approx(output_density(p.pulse.omega_ph + u, p, Branch::K)).epsilon(1e-12));
}

TEST_CASE("transformed channels") {
    std::mt19937_64 g(3);
    const CouplingSet cs(45.0, rnd(g), 30.0, rnd(g));
    std::array<cplx, 4> x{rnd(g), rnd(g), rnd(g), rnd(g)};
    const auto y = to_transformed(x, cs);
    const auto back = from_transformed(y, cs);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-13);
    double nx = 0, ny = 0;
    for (int i = 0; i < 4; ++i) {
        nx += std::norm(x[i]);
        ny += std::norm(y[i]);
    }
    CHECK(ny == Approx(nx).epsilon(1e-13));

    SystemParams p;
    p.couplings = cs;
    p.qubit = PhotonQubit::normalized(rnd(g), rnd(g));
    const OutputSpectrum s = output_spectrum(p, uniform_grid(p.pulse.omega_ph, 50.0, 201));
    double peak = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.p_K2(i) == 0.0);
        CHECK(s.p_Kp2(i) == 0.0);
        CHECK(s.p_K1(i) >= 0.0);
        peak = std::max(peak, s.p_K1(i));
        CHECK(s.p_K1(i) == Approx(output_density(s.omega[i], p, Branch::K)).epsilon(1e-10));
    }
    CHECK(peak > 0.0);

    const OutputSpectrum ser = output_spectrum(p, s.omega, Exec::Serial);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (int c = 0; c < 4; ++c) CHECK(ser.amp[i][c] == s.amp[i][c]);
}

TEST_CASE("uniform grid") {
    const auto g = uniform_grid(10.0, 2.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 8.0);
    CHECK(g[2] == 10.0);
    CHECK(g.back() == 12.0);
}
