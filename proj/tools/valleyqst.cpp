// valleyqst: command-line front end.
//   exit 0 ok, 2 configuration/validation error, 3 numerical error, 1 other.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqst/analytic.hpp"
#include "vqst/config.hpp"
#include "vqst/format.hpp"
#include "vqst/ideal_evolution.hpp"
#include "vqst/metrics.hpp"
#include "vqst/optical_matrix.hpp"
#include "vqst/oracle.hpp"
#include "vqst/sweep.hpp"

using namespace vqst;

namespace {

struct Common {
    std::string config;
    std::vector<std::string> sets;
    std::string output;
    std::string format;
    int threads = 0;
};

ConfigBundle load(const Common& c) {
    ConfigParser p;
    if (!c.config.empty()) p.parse_file(c.config);
    for (const std::string& kv : c.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ValidationError("set", "expected key=value, got '" + kv + "'");
        p.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    ConfigBundle b = p.build();
    for (const auto& w : b.warnings) std::cerr << "warning: " << w << "\n";
    return b;
}

std::string fmt_or(const Common& c, const char* def) { return c.format.empty() ? def : c.format; }

/// Flat key/value record printed either as JSON or as a one-row CSV.
std::string emit_record(const json& j, const std::string& format) {
    if (format == "json") return j.dump(2) + "\n";
    std::vector<std::string> head, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
        head.push_back(it.key());
        const json& v = it.value();
        if (v.is_number()) row.push_back(fmt12(v.get<double>()));
        else if (v.is_null()) row.push_back("nan");
        else if (v.is_boolean()) row.push_back(v.get<bool>() ? "true" : "false");
        else if (v.is_string()) row.push_back(v.get<std::string>());
        else row.push_back(v.dump());
    }
    CsvTable t(head);
    t.add_row(row);
    return t.str();
}

std::string emit_table(const CsvTable& t, const std::vector<std::string>& head,
                       const std::vector<std::vector<json>>& rows, const std::string& format) {
    if (format == "csv") return t.str();
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        for (std::size_t i = 0; i < head.size(); ++i) o[head[i]] = r[i];
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

/// Table builder that keeps a CSV and a JSON view in step.
struct Table {
    std::vector<std::string> head;
    CsvTable csv;
    std::vector<std::vector<json>> rows;
    explicit Table(std::vector<std::string> h) : head(h), csv(h) {}
    void add(std::vector<json> r) {
        std::vector<std::string> s;
        for (const json& v : r) s.push_back(v.is_string() ? v.get<std::string>() : v.is_null() ? "nan" : fmt12(v.get<double>()));
        csv.add_row(s);
        rows.push_back(std::move(r));
    }
    std::string str(const std::string& format) const { return emit_table(csv, head, rows, format); }
};

json params_json(const SystemParams& p) {
    const DerivedRates r = derive_rates(p);
    json j;
    j["gamma_iD"] = num12(r.gamma_iD);
    j["gamma_tp"] = num12(r.gamma_tp);
    j["gamma_total"] = num12(r.gamma_total);
    j["gamma_iD_prime"] = num12(r.gamma_iD_prime);
    j["gamma_SE_prime"] = num12(r.gamma_SE_prime);
    j["delta_omega_prime"] = num12(r.delta_omega_prime);
    return j;
}

// ---------------------------------------------------------------- commands

std::string cmd_estimate(const Common& c) {
    const ConfigBundle b = load(c);
    const double v = qd_velocity(b.geometry);
    const CouplingSet cs = build_couplings(b.geometry, b.dbr_mode, b.pc_mode, 0.0);
    json j;
    j["v_over_vF"] = num12(v);
    j["E0_dbr"] = num12(vacuum_field(b.dbr_mode));
    j["E0_pc"] = num12(vacuum_field(b.pc_mode));
    j["M_major_dbr"] = num12(std::abs(cs.C()));
    j["M_major_pc"] = num12(std::abs(cs.A()));
    j["minor_ratio"] = num12(estimate_minor_ratio(b.geometry));
    j["M_minor_dbr"] = num12(std::abs(cs.D()));
    j["M_minor_pc"] = num12(std::abs(cs.B()));
    return emit_record(j, fmt_or(c, "json"));
}

std::string cmd_ideal(const Common& c) {
    const ConfigBundle b = load(c);
    const SystemParams& p = b.params;
    const ForwardSequence f = forward_sequence(p.qubit, p.couplings);
    const ReverseSequence r = reverse_sequence(p.qubit);
    const HybridState ideal = ideal_reference(p.qubit);
    Table t({"stage", "basis", "re", "im", "abs2"});
    auto add = [&](const std::string& stage, const std::string& basis, cplx z) {
        t.add({stage, basis, num12(z.real()), num12(z.imag()), num12(std::norm(z))});
    };
    add("phi0", "s+", f.phi0[0]);
    add("phi0", "s-", f.phi0[1]);
    for (int k = 0; k < 2; ++k) add("phi1", trion_label(k), f.phi1.trion[k]);
    auto add_state = [&](const std::string& stage, const HybridState& s) {
        for (int v = 0; v < 2; ++v)
            for (int q = 0; q < 2; ++q)
                add(stage, polarization_label(s.frame, q) + " " + valley_label(v), s.photon[v][q]);
    };
    add_state("phi2", f.phi2);
    add_state("phi2_linear", f.phi2.to_linear());
    for (int v = 0; v < 2; ++v) add("phi3x", valley_label(v), f.phi3x[v]);
    for (int v = 0; v < 2; ++v) add("phi3y", valley_label(v), f.phi3y[v]);
    add("phi3S", "s+", r.phi3S[0]);
    add("phi3S", "s-", r.phi3S[1]);
    add("phi3T0", "s+", r.phi3T0[0]);
    add("phi3T0", "s-", r.phi3T0[1]);
    add_state("psi_ideal", ideal);
    add_state("psi_ideal_linear", ideal.to_linear());
    return t.str(fmt_or(c, "csv"));
}

struct AmpOptions {
    std::string kind = "both";
    int samples = 201;
    double t_max = 0.0;
    int omega_points = 401;
};

std::string cmd_amplitudes(const Common& c, const AmpOptions& o) {
    const ConfigBundle b = load(c);
    const SystemParams& p = b.params;
    Table t({"t_or_omega", "re", "im", "abs2", "branch", "channel"});
    auto add = [&](double x, cplx z, const char* br, const std::string& ch) {
        t.add({num12(x), num12(z.real()), num12(z.imag()), num12(std::norm(z)), br, ch});
    };
    if (o.kind == "time" || o.kind == "both") {
        if (o.samples < 2) throw ValidationError("samples", "must be >= 2");
        const TimeSolution ts(p);
        const DerivedRates r = derive_rates(p);
        const double slow = std::min(std::max(r.gamma_total, 1e-12), p.cavities.Gamma_PC);
        const double tmax = o.t_max > 0 ? o.t_max : p.pulse.center_time() + 6.0 / p.pulse.delta_omega_ph + 4.0 / slow;
        for (int k = 0; k < o.samples; ++k) {
            const double tt = tmax * k / (o.samples - 1);
            for (Branch br : {Branch::K, Branch::Kprime}) {
                const char* bn = to_string(br);
                add(tt, ts.dbr(Pol::Plus, br, tt), bn, "dc_s+");
                add(tt, ts.dbr(Pol::Minus, br, tt), bn, "dc_s-");
                add(tt, ts.trion(br, tt), bn, "trion");
                add(tt, ts.pc1(br, tt), bn, "pc1");
                add(tt, 0.0, bn, "pc2");
            }
        }
    }
    if (o.kind == "spectrum" || o.kind == "both") {
        if (o.omega_points < 2) throw ValidationError("omega_points", "must be >= 2");
        const OutputSpectrum s = output_spectrum(
            p, uniform_grid(p.pulse.omega_ph, 10.0 * p.pulse.delta_omega_ph, o.omega_points));
        for (std::size_t i = 0; i < s.size(); ++i) {
            add(s.omega[i], s.chan[i][0], "K", "out1");
            add(s.omega[i], s.chan[i][1], "K", "out2");
            add(s.omega[i], s.chan[i][2], "Kp", "out1");
            add(s.omega[i], s.chan[i][3], "Kp", "out2");
        }
    }
    if (o.kind != "time" && o.kind != "spectrum" && o.kind != "both")
        throw ValidationError("kind", "must be time, spectrum or both");
    return t.str(fmt_or(c, "csv"));
}

std::string cmd_yield(const Common& c) {
    const ConfigBundle b = load(c);
    const YieldBreakdown y = yield(b.params);
    json j;
    j["P"] = num12(y.P);
    j["I_w"] = num12(y.I_w);
    j["eta1"] = num12(y.eta1);
    j["eta2"] = num12(y.eta2);
    j["regime"] = to_string(y.regime);
    const json rates = params_json(b.params);
    for (auto it = rates.begin(); it != rates.end(); ++it) j[it.key()] = it.value();
    return emit_record(j, fmt_or(c, "json"));
}

std::string cmd_fidelity(const Common& c) {
    const ConfigBundle b = load(c);
    const SystemParams& p = b.params;
    json j;
    j["F"] = num12(fidelity(p.qubit, p.couplings));
    j["F_lossless"] = num12(lossless_fidelity(p.qubit, p.couplings));
    return emit_record(j, fmt_or(c, "json"));
}

std::string sweep_payload(const SweepResult& r, const std::string& format) {
    Table t({r.spec.axes[0].name, r.spec.axes[1].name, "value"});
    for (std::size_t i = 0; i < r.axis1.size(); ++i)
        for (std::size_t j = 0; j < r.axis2.size(); ++j) t.add({num12(r.axis1[i]), num12(r.axis2[j]), num12(r.at(i, j))});
    return t.str(format);
}

json sweep_meta(const SweepResult& r) {
    json m;
    m["name"] = r.spec.name;
    m["preset"] = r.spec.preset_id;
    m["quantity"] = to_string(r.spec.quantity);
    json axes = json::array();
    for (const SweepAxis& a : r.spec.axes)
        axes.push_back({{"name", a.name}, {"min", num12(a.min)}, {"max", num12(a.max)}, {"points", a.points},
                        {"scale", a.scale == Scale::Log ? "log" : "linear"}});
    m["axes"] = axes;
    json fixed = json::object();
    for (const auto& [k, v] : r.spec.fixed) fixed[k] = num12(v);
    m["fixed"] = fixed;
    m["angle_unit"] = "pi";
    m["binding"] = "A, Gamma_PC, kappa_DC, omega fixed; gamma_tp = A^2/Gamma_PC; C = sqrt(gamma_iD_prime*gamma_tp*kappa_DC); "
                   "gamma_SE = gamma_SE_prime*gamma_tp; delta_omega_ph = delta_omega_prime*gamma_tp; x0 = -8c/delta_omega_ph; "
                   "B/A = D/C = B_over_A*exp(i*pi*phi_DC); alpha = 1/sqrt(1+rho^2), beta = rho*exp(i*pi*phi_beta_alpha)*alpha";
    json am;
    am["i"] = r.argmax.i;
    am["j"] = r.argmax.j;
    am["value"] = num12(r.argmax.value);
    json cell = json::object();
    for (const auto& [k, v] : r.cell_bindings(r.argmax.i, r.argmax.j)) cell[k] = num12(v);
    am["bindings"] = cell;
    const SystemParams p = bind_params(r.cell_bindings(r.argmax.i, r.argmax.j));
    am["physical"] = {{"A", num12(p.couplings.A().real())}, {"C", num12(p.couplings.C().real())},
                      {"gamma_SE", num12(p.trion.gamma_SE)}, {"delta_omega_ph", num12(p.pulse.delta_omega_ph)},
                      {"kappa_DC", num12(p.cavities.kappa_DC)}, {"Gamma_PC", num12(p.cavities.Gamma_PC)}};
    m["argmax"] = am;
    m["rows"] = r.values.size();
    m["version"] = VQST_VERSION;
    return m;
}

SweepSpec spec_from_json(const json& j) {
    SweepSpec s;
    s.name = j.value("name", std::string("sweep"));
    s.preset_id = j.value("preset", std::string());
    const std::string q = j.value("quantity", std::string("yield"));
    if (q != "yield" && q != "fidelity") throw ValidationError("quantity", "must be yield or fidelity");
    s.quantity = q == "yield" ? Quantity::Yield : Quantity::Fidelity;
    if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].size() != 2)
        throw ValidationError("axes", "exactly two axes required");
    for (int a = 0; a < 2; ++a) {
        const json& x = j["axes"][a];
        SweepAxis& ax = s.axes[a];
        ax.name = x.at("name").get<std::string>();
        ax.min = x.at("min").get<double>();
        ax.max = x.at("max").get<double>();
        ax.points = x.at("points").get<int>();
        const std::string sc = x.value("scale", std::string("linear"));
        if (sc != "linear" && sc != "log") throw ValidationError("scale", "must be linear or log");
        ax.scale = sc == "log" ? Scale::Log : Scale::Linear;
    }
    if (j.contains("fixed"))
        for (auto& [k, v] : j["fixed"].items()) s.fixed[k] = v.get<double>();
    return s;
}

std::string cmd_sweep(const Common& c, const std::string& preset_name, const std::string& spec_path) {
    SweepSpec spec;
    if (!preset_name.empty() == !spec_path.empty()) throw ValidationError("sweep", "give exactly one of --preset, --spec");
    if (!preset_name.empty()) {
        spec = preset(preset_name);
    } else {
        std::ifstream f(spec_path);
        if (!f) throw ValidationError("spec", "cannot open '" + spec_path + "'");
        json j;
        try {
            j = json::parse(f);
            spec = spec_from_json(j);
        } catch (const json::exception& e) {
            throw ValidationError("spec", e.what());
        }
    }
    const SweepResult r = run_grid(spec);
    const std::string dir = c.output.empty() ? "." : c.output;
    std::filesystem::create_directories(dir);
    const std::string format = fmt_or(c, "csv");
    const std::string ext = format == "json" ? ".json" : ".csv";
    write_output((std::filesystem::path(dir) / (spec.name + ext)).string(), sweep_payload(r, format));
    write_output((std::filesystem::path(dir) / (spec.name + ".meta.json")).string(), sweep_meta(r).dump(2) + "\n");
    return "";
}

struct Check {
    std::string name;
    double analytic, oracle, deviation, tolerance;
    bool pass;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

std::vector<Check> run_verify(const ConfigBundle& b) {
    const SystemParams& p = b.params;
    std::vector<Check> out;
    auto push = [&](std::string n, double a, double o, double dev, double tol) {
        out.push_back({std::move(n), a, o, dev, tol, dev <= tol});
    };

    const YieldBreakdown y = yield(p);
    IntegratorConfig cfg = b.integrator;
    const double tc = p.pulse.center_time(), D = p.pulse.delta_omega_ph;
    cfg.sample_times = {tc - 1.0 / D, tc, tc + 1.0 / D, tc + 2.0 / D};
    const OracleResult o = integrate(p, cfg);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    push("yield", y.P, o.P, y.P > 0 ? rel(y.P, o.P) : std::abs(o.P), 1e-3);
    if (y.P > 0) {
        const double F = fidelity(p.qubit, p.couplings);
        push("fidelity", F, o.F, rel(F, o.F), 1e-3);
    }
    push("pc_flux_vs_bins", o.P, o.P_flux, y.P > 0 ? rel(o.P, o.P_flux) : std::abs(o.P_flux), 1e-3);

    const OutputSpectrum an = output_spectrum(p, o.spectrum.omega);
    double peak = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < an.size(); ++i) peak = std::max({peak, an.p_K1(i), an.p_Kp1(i)});
    for (std::size_t i = 0; i < an.size(); ++i) {
        if (an.p_K1(i) > 1e-6 * peak) worst = std::max(worst, rel(an.p_K1(i), o.spectrum.p_K1(i)));
        if (an.p_Kp1(i) > 1e-6 * peak) worst = std::max(worst, rel(an.p_Kp1(i), o.spectrum.p_Kp1(i)));
    }
    push("spectrum_pointwise", nan, nan, worst, 1e-3);
    push("k2_channel", 0.0, o.max_k2, o.max_k2, 1e-10);

    if (y.P > 0) {
        const TimeSolution ts(p);
        double dev = 0.0, scale = 0.0;
        for (const BranchAmplitudes& s : o.samples)
            for (int c2 = 0; c2 < 4; ++c2) scale = std::max(scale, std::abs(s.pc[c2]));
        for (const BranchAmplitudes& s : o.samples) {
            const Pol pol[4] = {Pol::Plus, Pol::Minus, Pol::Plus, Pol::Minus};
            const Branch br[4] = {Branch::K, Branch::K, Branch::Kprime, Branch::Kprime};
            for (int c2 = 0; c2 < 4; ++c2) dev = std::max(dev, std::abs(s.pc[c2] - ts.pc(pol[c2], br[c2], s.t)) / scale);
        }
        push("pc_time_domain", nan, nan, dev, 1e-5);
    }

    SystemParams pL = p;
    pL.pulse.L *= 10.0;
    const OracleResult oL = integrate(pL, b.integrator);
    push("L_invariance", o.P, oL.P, y.P > 0 ? rel(o.P, oL.P) : std::abs(oL.P), 1e-6);

    IntegratorConfig half = b.integrator;
    half.rel_tol /= 2.0;
    half.abs_tol /= 2.0;
    const OracleResult oh = integrate(p, half);
    push("tolerance_halving", o.P, oh.P, y.P > 0 ? rel(o.P, oh.P) : std::abs(oh.P), 10.0 * b.integrator.rel_tol);

    const double simpson = spectral_integral_simpson(p, 400001, y.quadrature.half_width);
    push("quadrature_vs_simpson", y.I_w, simpson, rel(y.I_w, simpson), 1e-6);
    push("quadrature_refinement", nan, nan, y.quadrature.rel_change, 1e-8);
    const EigenSystem e = eigensystem(p);
    push("eigen_residual", nan, nan, e.residual(), 1e-10);
    return out;
}

std::string cmd_verify(const Common& c) {
    const ConfigBundle b = load(c);
    const std::vector<Check> checks = run_verify(b);
    const std::string format = fmt_or(c, "json");
    bool all = true;
    for (const Check& k : checks) all = all && k.pass;
    if (format == "csv") {
        CsvTable t({"check", "analytic", "oracle", "deviation", "tolerance", "pass"});
        for (const Check& k : checks)
            t.add_row({k.name, fmt12(k.analytic), fmt12(k.oracle), fmt12(k.deviation), fmt12(k.tolerance), k.pass ? "true" : "false"});
        return t.str();
    }
    json j;
    json arr = json::array();
    for (const Check& k : checks)
        arr.push_back({{"check", k.name}, {"analytic", num12(k.analytic)}, {"oracle", num12(k.oracle)},
                       {"deviation", num12(k.deviation)}, {"tolerance", num12(k.tolerance)}, {"pass", k.pass}});
    j["checks"] = arr;
    j["all_pass"] = all;
    return j.dump(2) + "\n";
}

std::string cmd_reproduce(const Common& c) {
    const ConfigBundle b = load(c);
    const SystemParams& p = b.params;
    const double target = 0.998, tol = 0.01;
    const YieldBreakdown y = yield(p);
    const OracleResult o = integrate(p, b.integrator);
    json j;
    j["P_analytic"] = num12(y.P);
    j["P_oracle"] = num12(o.P);
    double F = std::numeric_limits<double>::quiet_NaN(), Fo = F;
    bool defined = true;
    try {
        F = fidelity(p.qubit, p.couplings);
        Fo = o.F;
    } catch (const NumericalError&) {
        defined = false;
    }
    j["F_analytic"] = defined ? num12(F) : json("undefined");
    j["F_oracle"] = defined ? num12(Fo) : json("undefined");
    j["target"] = target;
    j["tolerance"] = tol;
    j["P_pass"] = std::abs(y.P - target) <= tol && std::abs(o.P - target) <= tol;
    j["F_pass"] = defined && std::abs(F - target) <= tol && std::abs(Fo - target) <= tol;
    j["regime"] = to_string(y.regime);
    return emit_record(j, fmt_or(c, "json"));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon to valley-pair quantum state transfer simulator"};
    app.set_version_flag("--version", std::string(VQST_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--config", common.config, "Configuration file (key = value)");
    app.add_option("--set", common.sets, "Override a configuration key: key=value (repeatable)");
    app.add_option("--output,-o", common.output, "Output file (sweep: output directory)");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", common.threads, "Maximum number of threads (fallback: VALLEYQST_THREADS)");

    std::function<std::string()> run;
    auto* est = app.add_subcommand("estimate-matrix", "Optical matrix-element estimates");
    est->callback([&] { run = [&] { return cmd_estimate(common); }; });
    auto* ide = app.add_subcommand("ideal", "Lossless state sequences");
    ide->callback([&] { run = [&] { return cmd_ideal(common); }; });

    AmpOptions amp;
    auto* am = app.add_subcommand("amplitudes", "Closed-form amplitudes (time series and exit spectra)");
    am->add_option("--kind", amp.kind, "time | spectrum | both");
    am->add_option("--samples", amp.samples, "Number of time samples");
    am->add_option("--t-max", amp.t_max, "Last time sample (ns)");
    am->add_option("--omega-points", amp.omega_points, "Spectrum grid points");
    am->callback([&] { run = [&] { return cmd_amplitudes(common, amp); }; });

    auto* yl = app.add_subcommand("yield", "Transfer yield");
    yl->callback([&] { run = [&] { return cmd_yield(common); }; });
    auto* fi = app.add_subcommand("fidelity", "Transfer fidelity");
    fi->callback([&] { run = [&] { return cmd_fidelity(common); }; });

    std::string preset_name, spec_path;
    auto* sw = app.add_subcommand("sweep", "Two-axis parameter grid");
    sw->add_option("--preset", preset_name, "Preset name")->check(CLI::IsMember(preset_names()));
    sw->add_option("--spec", spec_path, "Sweep spec (JSON)");
    sw->callback([&] { run = [&] { return cmd_sweep(common, preset_name, spec_path); }; });

    auto* ve = app.add_subcommand("verify", "Closed form versus time-domain integration");
    ve->callback([&] { run = [&] { return cmd_verify(common); }; });
    auto* rb = app.add_subcommand("reproduce-baseline", "Reference-configuration report");
    rb->callback([&] { run = [&] { return cmd_reproduce(common); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        int threads = common.threads;
        if (threads <= 0)
            if (const char* env = std::getenv("VALLEYQST_THREADS")) threads = std::atoi(env);
        if (threads > 0) set_threads(threads);
        const std::string text = run();
        if (!text.empty()) write_output(common.output, text);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
