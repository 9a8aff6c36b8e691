#include <doctest.h>

#include <cmath>

#include "vqst/metrics.hpp"
#include "vqst/oracle.hpp"

using namespace vqst;
using doctest::Approx;

TEST_CASE("isolated DBR mode decays at kappa") {
    SystemParams p;
    p.couplings = CouplingSet(0.0, 0.0, 0.0, 0.0);
    IntegratorConfig cfg;
    cfg.drive_pulse = false;
    cfg.abs_tol = 1e-18;
    cfg.rel_tol = 1e-11;
    cfg.omega_points = 101;
    BranchAmplitudes kick;
    kick.dc = {cplx(0.6, 0.2), 0.0, cplx(0.0, -0.3), 0.1};
    cfg.initial = kick;
    cfg.sample_times = {0.005, 0.02, 0.05, 0.1};
    const OracleResult r = integrate(p, cfg);
    REQUIRE(r.samples.size() == 4);
    const double k = p.cavities.kappa_DC;
    for (const BranchAmplitudes& s : r.samples)
        for (int c : {0, 2, 3})
            CHECK(std::abs(s.dc[c]) == Approx(std::abs(kick.dc[c]) * std::exp(-k * s.t)).epsilon(1e-8));
    CHECK(r.P == 0.0);
    CHECK(std::isnan(r.F));
    CHECK_THROWS_AS(fidelity_numeric(p, cfg), NumericalError);
}

TEST_CASE("trion-PC block follows the eigenmodes") {
    SystemParams p;
    p.pulse.omega_ph += 3.0; // slight detuning keeps the phases non-trivial
    IntegratorConfig cfg;
    cfg.drive_pulse = false;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-11;
    cfg.omega_points = 101;
    BranchAmplitudes init;
    init.trion = {1.0, 0.0};
    cfg.initial = init;
    cfg.sample_times = {0.002, 0.01, 0.03, 0.08};
    const OracleResult r = integrate(p, cfg);

    const EigenSystem e = eigensystem(p);
    const auto [c1, c2] = source_coefficients(e, 1.0);
    const cplx mu1 = e.lambda1 - p.pulse.omega_ph, mu2 = e.lambda2 - p.pulse.omega_ph;
    for (const BranchAmplitudes& s : r.samples) {
        const cplx e1 = std::exp(-cplx(0, 1) * mu1 * s.t), e2 = std::exp(-cplx(0, 1) * mu2 * s.t);
        const cplx tr = c1 * e.phi[0][0] * e1 + c2 * e.phi[1][0] * e2;
        const cplx pc1 = c1 * e.phi[0][1] * e1 + c2 * e.phi[1][1] * e2;
        const auto ch = to_transformed(s.pc, p.couplings);
        const double scale = std::abs(tr) + std::abs(pc1);
        CHECK(std::abs(s.trion[0] - tr) < 1e-6 * scale);
        CHECK(std::abs(ch[0] - pc1) < 1e-6 * scale);
        CHECK(std::norm(ch[1]) < 1e-20);
    }
}

TEST_CASE("insufficient end time is reported") {
    const SystemParams p;
    IntegratorConfig cfg;
    cfg.t_end = 0.5;
    CHECK_THROWS_AS(integrate(p, cfg), NumericalError);
    cfg.t_end = 0.0;
    cfg.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate(p, cfg), ValidationError);
}

TEST_CASE("full chain at the reference point") {
    const SystemParams p;
    IntegratorConfig cfg;
    const double tc = p.pulse.center_time(), D = p.pulse.delta_omega_ph;
    cfg.sample_times = {tc - 1.0 / D, tc, tc + 1.0 / D, tc + 4.0 / D};
    const OracleResult r = integrate(p, cfg);
    const YieldBreakdown y = yield(p);
    CHECK(r.P == Approx(y.P).epsilon(1e-6));
    CHECK(r.P_flux == Approx(y.P).epsilon(1e-6));
    CHECK(r.F == Approx(fidelity(p.qubit, p.couplings)).epsilon(1e-6));
    CHECK(r.max_k2 < 1e-10);
    CHECK(r.tracked_increase < 1e-6);

    // spectrum against the closed form
    double peak = 0.0;
    for (std::size_t j = 0; j < r.spectrum.size(); ++j)
        peak = std::max(peak, output_density(r.spectrum.omega[j], p, Branch::K));
    double worst = 0.0;
    for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
        const double a = output_density(r.spectrum.omega[j], p, Branch::K);
        if (a < 1e-6 * peak) continue;
        worst = std::max(worst, std::abs(r.spectrum.p_K1(j) - a) / a);
    }
    CHECK(worst < 1e-3);

    // trajectory against the closed-form time solution
    const TimeSolution ts(p);
    REQUIRE(r.samples.size() == 4);
    for (const BranchAmplitudes& s : r.samples) {
        const cplx dc = ts.dbr(Pol::Plus, Branch::K, s.t);
        const cplx tr = ts.trion(Branch::K, s.t);
        const cplx pc = ts.pc(Pol::Plus, Branch::K, s.t);
        CHECK(std::abs(s.dc[0] - dc) < 1e-6 * std::abs(dc));
        CHECK(std::abs(s.trion[0] - tr) < 1e-5 * std::abs(tr));
        CHECK(std::abs(s.pc[0] - pc) < 1e-5 * std::abs(pc));
    }
}

TEST_CASE("normalization length cancels") {
    SystemParams p;
    SystemParams q = p;
    q.pulse.L = 10.0;
    CHECK(yield_numeric(q) == Approx(yield_numeric(p)).epsilon(1e-6));
}

TEST_CASE("no DBR coupling, no output") {
    SystemParams p;
    p.couplings = CouplingSet(45.0, 1.8, 0.0, 0.0);
    CHECK(yield_numeric(p) == 0.0);
}

TEST_CASE("ideal couplings transfer perfectly") {
    SystemParams p;
    p.couplings = CouplingSet(45.0, 0.0, 30.0, 0.0);
    p.qubit = PhotonQubit::normalized(cplx(0.6, 0.3), cplx(-0.2, 0.7));
    CHECK(fidelity_numeric(p) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("equal-amplitude phase sweep") {
    SystemParams p;
    const double r = 0.4, phDC = 0.25 * pi;
    p.couplings = CouplingSet::from_ratios(45.0, 30.0, r, phDC, r, phDC);
    std::vector<double> F;
    for (int k = 0; k < 8; ++k) {
        const double delta = k * pi / 4.0;
        p.qubit = PhotonQubit::from_ratio(1.0, delta - phDC);
        F.push_back(fidelity_numeric(p));
        CHECK(F.back() == Approx(fidelity_equal_amplitude(delta, p.couplings)).epsilon(1e-3));
    }
    // maxima at 0, pi and minima at pi/2, 3pi/2 on this grid
    const auto mx = std::max_element(F.begin(), F.end()) - F.begin();
    const auto mn = std::min_element(F.begin(), F.end()) - F.begin();
    CHECK((mx == 0 || mx == 4));
    CHECK((mn == 2 || mn == 6));
    CHECK(F[0] == Approx(F[4]).epsilon(1e-6));
    CHECK(F[2] == Approx(F[6]).epsilon(1e-6));
}

TEST_CASE("serial and parallel oracle runs agree bitwise") {
    SystemParams p;
    IntegratorConfig a, b;
    a.exec = Exec::Serial;
    b.exec = Exec::Parallel;
    const OracleResult x = integrate(p, a), y = integrate(p, b);
    CHECK(x.P == y.P);
    CHECK(x.steps == y.steps);
}

TEST_CASE("grid selection") {
    SystemParams p;
    IntegratorConfig cfg;
    const auto g = oracle_grid(p, cfg);
    CHECK(g.size() % 2 == 1);
    CHECK(g.size() >= 2001);
    CHECK(g.front() == Approx(p.pulse.omega_ph - 50.0));
    cfg.omega_points = 4;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
