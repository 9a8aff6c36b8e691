#include <doctest.h>

#include <cmath>

#include "vqst/metrics.hpp"
#include "vqst/sweep.hpp"

using namespace vqst;
using doctest::Approx;

TEST_CASE("binding rule") {
    const SystemParams d = bind_params({});
    const SystemParams ref;
    CHECK(std::abs(d.couplings.C()) == Approx(30.0).epsilon(1e-13));
    CHECK(d.trion.gamma_SE == Approx(1.0).epsilon(1e-13));
    CHECK(d.pulse.delta_omega_ph == Approx(5.0).epsilon(1e-13));
    CHECK(yield(d).P == Approx(yield(ref).P).epsilon(1e-10));

    const SystemParams p = bind_params({{"gamma_iD_prime", 2.0}, {"B_over_A", 0.3}, {"phi_DC", 0.5}});
    const DerivedRates r = derive_rates(p);
    CHECK(r.gamma_iD_prime == Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(p.couplings.B() / p.couplings.A() - p.couplings.D() / p.couplings.C()) < 1e-15);
    CHECK(std::arg(p.couplings.D()) == Approx(pi / 2).epsilon(1e-13));

    CHECK_THROWS_AS(bind_params({{"nope", 1.0}}), ValidationError);
    CHECK_THROWS_AS(bind_params({{"delta_omega_prime", 0.0}}), ValidationError);
}

TEST_CASE("presets") {
    CHECK(preset("fig7b").fixed.at("gamma_iD_prime") == 1.0);
    CHECK(preset("fig9d").fixed.at("B_over_A") == 0.4);
    CHECK(preset("fig9d").fixed.at("phi_DC") == 0.0);
    CHECK(preset("fig9f").fixed.at("phi_DC") == 0.5);
    CHECK(preset("fig6a").fixed.at("gamma_SE_prime") == 0.1);
    CHECK(preset("fig8a").quantity == Quantity::Fidelity);
    CHECK(preset("fig5a").axes[0].scale == Scale::Log);
    CHECK(preset_names().size() == 16);
    for (const auto& n : preset_names()) CHECK_NOTHROW(preset(n).validate());
    CHECK_THROWS_AS(preset("fig10"), ValidationError);
}

TEST_CASE("axis values") {
    const SweepAxis a{"gamma_SE_prime", 0.01, 100.0, 5, Scale::Log};
    const auto v = a.values();
    CHECK(v[0] == 0.01);
    CHECK(v[2] == Approx(1.0).epsilon(1e-14));
    CHECK(v[4] == 100.0);
    const SweepAxis l{"B_over_A", 0.0, 0.5, 6, Scale::Linear};
    CHECK(l.values()[1] == Approx(0.1).epsilon(1e-15));
}

TEST_CASE("spec validation") {
    SweepSpec s = preset("fig5a");
    s.axes[1].name = s.axes[0].name;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = preset("fig5a");
    s.axes[0].points = 1;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = preset("fig5a");
    s.axes[0].min = 0.0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = preset("fig5a");
    s.fixed["gamma_SE_prime"] = 1.0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("deterministic evaluation") {
    SweepSpec s = preset("fig5a");
    s.axes[0].points = 9;
    s.axes[1].points = 11;
    const SweepResult a = run_grid(s, Exec::Serial), b = run_grid(s, Exec::Parallel);
    REQUIRE(a.values.size() == 99);
    CHECK(a.values == b.values);
    CHECK(a.argmax.i == b.argmax.i);
    CHECK(a.argmax.j == b.argmax.j);
    CHECK(a.at(2, 3) == a.values[2 * 11 + 3]);
    const auto bind = a.cell_bindings(2, 3);
    CHECK(bind.at("gamma_SE_prime") == a.axis1[2]);
    CHECK(bind.at("gamma_iD_prime") == a.axis2[3]);
    CHECK(bind.at("delta_omega_prime") == 0.5);
}

TEST_CASE("optimum tie-break") {
    SweepResult r;
    r.axis1 = {1, 2, 3};
    r.axis2 = {1, 2};
    r.values.assign(6, 0.25);
    const Cell c = find_optimum(r);
    CHECK(c.i == 0);
    CHECK(c.j == 0);
    r.values[3] = 0.5;
    r.values[5] = 0.5;
    CHECK(find_optimum(r).i == 1);
    CHECK(find_optimum(r).j == 1);
}

TEST_CASE("cell errors carry coordinates") {
    SweepSpec s;
    s.name = "bad";
    s.axes = {SweepAxis{"delta_omega_prime", -1.0, 1.0, 3, Scale::Linear},
              SweepAxis{"gamma_iD_prime", 0.5, 1.0, 2, Scale::Linear}};
    try {
        run_grid(s);
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("cell (0, 0)") != std::string::npos);
    }
}

TEST_CASE("grid refinement keeps the optimum in place") {
    for (const char* name : {"fig5a", "fig6a", "fig7b"}) {
        SweepSpec c = preset(name);
        c.axes[0].points = 11;
        c.axes[1].points = 11;
        SweepSpec f = c;
        f.axes[0].points = 21;
        f.axes[1].points = 21;
        const SweepResult rc = run_grid(c), rf = run_grid(f);
        CAPTURE(name);
        const double ci = rc.argmax.i, cj = rc.argmax.j;
        const double fi = rf.argmax.i / 2.0, fj = rf.argmax.j / 2.0;
        CHECK(std::abs(ci - fi) <= 1.0);
        CHECK(std::abs(cj - fj) <= 1.0);
    }
}

TEST_CASE("qualitative trends") {
    SweepSpec s = preset("fig8a");
    s.axes[0].points = 11;
    s.axes[1].points = 9;
    const SweepResult r = run_grid(s);
    for (std::size_t i = 0; i < r.axis1.size(); ++i)
        for (std::size_t j = 1; j < r.axis2.size(); ++j) CHECK(std::abs(r.at(i, j) - r.at(i, 0)) <= 1e-10);
    for (std::size_t j = 0; j < r.axis2.size(); ++j)
        for (std::size_t i = 1; i < r.axis1.size(); ++i) CHECK(r.at(i, j) <= r.at(i - 1, j));
}
