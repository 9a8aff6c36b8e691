#include "vqst/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "vqst/metrics.hpp"

namespace vqst {

namespace {

const std::map<std::string, double>& defaults() {
    static const std::map<std::string, double> d = {
        {"gamma_SE_prime", 1.0 / 10.125},
        {"gamma_iD_prime", 10.0 / 10.125},
        {"delta_omega_prime", 5.0 / 10.125},
        {"B_over_A", 0.04},
        {"phi_DC", 0.0},
        {"beta_over_alpha", 0.0},
        {"phi_beta_alpha", 0.0},
        {"A", 45.0},
        {"Gamma_PC", 200.0},
        {"kappa_DC", 90.0},
        {"omega", 1.6e5},
    };
    return d;
}

SweepAxis log_axis(const std::string& n, double lo, double hi, int pts) { return {n, lo, hi, pts, Scale::Log}; }
SweepAxis lin_axis(const std::string& n, double lo, double hi, int pts) { return {n, lo, hi, pts, Scale::Linear}; }

SweepAxis gse() { return log_axis("gamma_SE_prime", 1e-2, 1e2, 81); }
SweepAxis gid() { return log_axis("gamma_iD_prime", 1e-2, 1e2, 81); }
SweepAxis dwp() { return log_axis("delta_omega_prime", 0.1, 10.0, 61); }
SweepAxis ratio() { return lin_axis("B_over_A", 0.0, 0.5, 51); }
SweepAxis phase(const std::string& n) { return lin_axis(n, 0.0, 2.0, 81); }
SweepAxis rho() { return lin_axis("beta_over_alpha", 0.0, 1.0, 51); }

} // namespace

const char* to_string(Quantity q) { return q == Quantity::Yield ? "yield" : "fidelity"; }

std::vector<double> SweepAxis::values() const {
    std::vector<double> v(points);
    for (int k = 0; k < points; ++k) {
        const double f = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
        v[k] = scale == Scale::Log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                                   : min + f * (max - min);
    }
    v.front() = min;
    if (points > 1) v.back() = max;
    return v;
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& kv : defaults()) n.push_back(kv.first);
        return n;
    }();
    return names;
}

std::map<std::string, double> default_bindings() { return defaults(); }

void SweepSpec::validate() const {
    const auto& known = sweep_parameters();
    auto check_name = [&](const std::string& n, const std::string& key) {
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw ValidationError(key, "unknown sweep parameter '" + n + "'");
    };
    for (int a = 0; a < 2; ++a) {
        const SweepAxis& ax = axes[a];
        const std::string key = "axes[" + std::to_string(a) + "]";
        check_name(ax.name, key);
        if (ax.points < 2) throw ValidationError(key, "points must be >= 2");
        if (!std::isfinite(ax.min) || !std::isfinite(ax.max)) throw ValidationError(key, "bounds must be finite");
        if (ax.scale == Scale::Log && !(ax.min > 0.0 && ax.max > 0.0))
            throw ValidationError(key, "log-scaled bounds must be positive");
    }
    if (axes[0].name == axes[1].name) throw ValidationError("axes", "axis parameters must be distinct");
    for (const auto& kv : fixed) {
        check_name(kv.first, "fixed");
        if (kv.first == axes[0].name || kv.first == axes[1].name)
            throw ValidationError("fixed", "'" + kv.first + "' is also an axis");
    }
}

SystemParams bind_params(const std::map<std::string, double>& given) {
    std::map<std::string, double> v = defaults();
    for (const auto& kv : given) {
        if (!v.count(kv.first)) throw ValidationError(kv.first, "unknown sweep parameter");
        v[kv.first] = kv.second;
    }
    const double A = v["A"], G = v["Gamma_PC"], k = v["kappa_DC"], w = v["omega"];
    if (!(A > 0.0)) throw ValidationError("A", "must be positive for the dimensionless binding");
    for (const char* key : {"gamma_SE_prime", "gamma_iD_prime", "B_over_A", "beta_over_alpha"})
        if (!(v[key] >= 0.0)) throw ValidationError(key, "must be non-negative");
    if (!(v["delta_omega_prime"] > 0.0)) throw ValidationError("delta_omega_prime", "must be positive");

    const double gtp = A * A / G;
    SystemParams p;
    p.cavities = {w, k, w, G};
    p.trion = {w, v["gamma_SE_prime"] * gtp};
    const double C = std::sqrt(v["gamma_iD_prime"] * gtp * k);
    const double ph = v["phi_DC"] * pi;
    p.couplings = CouplingSet::from_ratios(A, C, v["B_over_A"], ph, v["B_over_A"], ph);
    p.pulse.omega_ph = w;
    p.pulse.delta_omega_ph = v["delta_omega_prime"] * gtp;
    p.pulse.x0 = -8.0 * p.pulse.c / p.pulse.delta_omega_ph;
    p.qubit = PhotonQubit::from_ratio(v["beta_over_alpha"], v["phi_beta_alpha"] * pi);
    p.validate();
    return p;
}

std::map<std::string, double> SweepResult::cell_bindings(std::size_t i, std::size_t j) const {
    std::map<std::string, double> b = defaults();
    for (const auto& kv : spec.fixed) b[kv.first] = kv.second;
    b[spec.axes[0].name] = axis1[i];
    b[spec.axes[1].name] = axis2[j];
    return b;
}

Cell find_optimum(const SweepResult& r) {
    Cell best;
    if (r.values.empty()) return best;
    std::size_t bi = 0;
    for (std::size_t k = 1; k < r.values.size(); ++k)
        if (r.values[k] > r.values[bi]) bi = k;
    best.i = bi / r.axis2.size();
    best.j = bi % r.axis2.size();
    best.value = r.values[bi];
    return best;
}

SweepResult run_grid(const SweepSpec& spec, Exec exec) {
    spec.validate();
    SweepResult r;
    r.spec = spec;
    r.axis1 = spec.axes[0].values();
    r.axis2 = spec.axes[1].values();
    const std::size_t n1 = r.axis1.size(), n2 = r.axis2.size();
    const long total = static_cast<long>(n1 * n2);
    r.values.assign(total, 0.0);
    std::vector<std::exception_ptr> err(total);

    auto cell = [&](long idx) {
        const std::size_t i = idx / n2, j = idx % n2;
        try {
            const SystemParams p = bind_params(r.cell_bindings(i, j));
            r.values[idx] = spec.quantity == Quantity::Yield ? yield(p, Exec::Serial).P
                                                             : fidelity(p.qubit, p.couplings);
            if (!std::isfinite(r.values[idx])) throw NumericalError("non-finite cell value");
        } catch (...) {
            err[idx] = std::current_exception();
        }
    };
    if (exec == Exec::Serial) {
        for (long k = 0; k < total; ++k) cell(k);
    } else {
#pragma omp parallel for schedule(dynamic, 8)
        for (long k = 0; k < total; ++k) cell(k);
    }
    for (long k = 0; k < total; ++k) {
        if (!err[k]) continue;
        std::ostringstream os;
        os << "sweep cell (" << k / n2 << ", " << k % n2 << ") [" << spec.axes[0].name << " = "
           << r.axis1[k / n2] << ", " << spec.axes[1].name << " = " << r.axis2[k % n2] << "]: ";
        try {
            std::rethrow_exception(err[k]);
        } catch (const ValidationError& e) {
            throw ValidationError(e.key(), os.str() + e.what());
        } catch (const std::exception& e) {
            throw NumericalError(os.str() + e.what());
        }
    }
    r.argmax = find_optimum(r);
    return r;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> n = {"fig5a", "fig5b", "fig6a", "fig6b", "fig7a", "fig7b",
                                               "fig7c", "fig8a", "fig8b", "fig8c", "fig9a", "fig9b",
                                               "fig9c", "fig9d", "fig9e", "fig9f"};
    return n;
}

SweepSpec preset(const std::string& name) {
    SweepSpec s;
    s.name = name;
    s.preset_id = name;
    if (name == "fig5a" || name == "fig5b") {
        s.axes = {gse(), gid()};
        s.fixed = {{"delta_omega_prime", name == "fig5a" ? 0.5 : 5.0}};
    } else if (name == "fig6a" || name == "fig6b") {
        s.axes = {dwp(), gid()};
        s.fixed = {{"gamma_SE_prime", name == "fig6a" ? 0.1 : 1.0}};
    } else if (name == "fig7a" || name == "fig7b" || name == "fig7c") {
        s.axes = {gse(), dwp()};
        s.fixed = {{"gamma_iD_prime", name == "fig7a" ? 0.1 : name == "fig7b" ? 1.0 : 10.0}};
    } else if (name == "fig8a" || name == "fig8b" || name == "fig8c") {
        s.quantity = Quantity::Fidelity;
        s.axes = {ratio(), phase("phi_DC")};
        if (name == "fig8a") s.fixed = {{"beta_over_alpha", 0.0}, {"phi_beta_alpha", 0.0}};
        if (name == "fig8b") s.fixed = {{"beta_over_alpha", 1.0}, {"phi_beta_alpha", 0.0}};
        if (name == "fig8c") s.fixed = {{"beta_over_alpha", 1.0}, {"phi_beta_alpha", 0.5}};
    } else if (name.size() == 5 && name.rfind("fig9", 0) == 0 && name[4] >= 'a' && name[4] <= 'f') {
        s.quantity = Quantity::Fidelity;
        s.axes = {rho(), phase("phi_beta_alpha")};
        const int k = name[4] - 'a';
        const double phases[3] = {0.0, 0.25, 0.5};
        s.fixed = {{"B_over_A", k < 3 ? 0.04 : 0.4}, {"phi_DC", phases[k % 3]}};
    } else {
        throw ValidationError("preset", "unknown preset '" + name + "'");
    }
    return s;
}

} // namespace vqst
