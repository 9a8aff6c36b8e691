#include "vqst/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vqst {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> k = {
        "alpha", "beta", "phi_beta_alpha",
        "A", "C", "B_over_A", "D_over_C", "phi_BA", "phi_DC",
        "omega_DC", "kappa_DC", "omega_PC", "Gamma_PC", "omega_trion", "gamma_SE",
        "omega_ph", "delta_omega_ph", "x0", "c", "L",
        "qd_edge_length", "qd_gap", "fermi_velocity",
        "dbr_mode_volume", "dbr_refractive_index", "pc_mode_volume", "pc_refractive_index",
        "rel_tol", "abs_tol", "t_end", "dt_max", "omega_points"};
    return k;
}

void ConfigParser::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    parse_stream(ss.str(), path, dir.empty() ? "." : dir.string(), 0);
}

void ConfigParser::parse_text(const std::string& text, const std::string& origin, const std::string& base_dir) {
    parse_stream(text, origin, base_dir, 0);
}

void ConfigParser::set(const std::string& key, const std::string& value, const std::string& origin) {
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ValidationError(key, origin + ": unknown key");
    double v = 0.0;
    if (!parse_number(trim(value), v)) throw ValidationError(key, origin + ": not a number: '" + value + "'");
    entries_[key] = {v, origin};
}

void ConfigParser::parse_stream(const std::string& text, const std::string& origin, const std::string& base_dir,
                                int depth) {
    if (depth > 16) throw ValidationError("include", origin + ": includes nested too deeply");
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const std::string where = origin + ":" + std::to_string(no);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("config", where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "include") {
            std::filesystem::path inc(val);
            if (inc.is_relative()) inc = std::filesystem::path(base_dir) / inc;
            std::ifstream f(inc);
            if (!f) throw ValidationError("include", where + ": cannot open '" + inc.string() + "'");
            std::stringstream ss;
            ss << f.rdbuf();
            const auto dir = inc.parent_path();
            parse_stream(ss.str(), inc.string(), dir.empty() ? "." : dir.string(), depth + 1);
            continue;
        }
        set(key, val, where);
    }
}

ConfigBundle ConfigParser::build() const {
    auto has = [&](const char* k) { return entries_.count(k) > 0; };
    auto get = [&](const char* k, double def) { return has(k) ? entries_.at(k).value : def; };
    auto where = [&](const std::string& k) {
        auto it = entries_.find(k);
        return it == entries_.end() ? std::string("default") : it->second.where;
    };

    ConfigBundle b;
    try {
        SystemParams& p = b.params;
        p.cavities = {get("omega_DC", 1.6e5), get("kappa_DC", 90.0), get("omega_PC", 1.6e5),
                      get("Gamma_PC", 200.0)};
        p.trion = {get("omega_trion", 1.6e5), get("gamma_SE", 1.0)};
        p.pulse.omega_ph = get("omega_ph", 1.6e5);
        p.pulse.delta_omega_ph = get("delta_omega_ph", 5.0);
        p.pulse.c = get("c", units::c_m_per_ns);
        p.pulse.L = get("L", 1.0);
        if (!(p.pulse.delta_omega_ph > 0.0)) throw ValidationError("delta_omega_ph", "must be positive");
        if (!(p.pulse.c > 0.0)) throw ValidationError("c", "must be positive");
        p.pulse.x0 = get("x0", -8.0 * p.pulse.c / p.pulse.delta_omega_ph);

        const double alpha = get("alpha", 1.0), beta = get("beta", 0.0);
        if (alpha < 0.0) throw ValidationError("alpha", "magnitude must be non-negative");
        if (beta < 0.0) throw ValidationError("beta", "magnitude must be non-negative");
        p.qubit = PhotonQubit(alpha, std::polar(beta, get("phi_beta_alpha", 0.0) * pi));

        p.couplings = CouplingSet::from_ratios(get("A", 45.0), get("C", 30.0), get("B_over_A", 0.04),
                                               get("phi_BA", 0.0) * pi, get("D_over_C", 0.04),
                                               get("phi_DC", 0.0) * pi);
        if (!p.couplings.ratio_consistent(1e-9))
            b.warnings.push_back("B/A differs from D/C by " + std::to_string(p.couplings.ratio_mismatch()));
        p.validate();

        b.geometry = {get("qd_edge_length", 70.0), get("qd_gap", 0.1), get("fermi_velocity", 1e6)};
        b.geometry.validate();
        b.dbr_mode = {get("dbr_mode_volume", 1e4), get("dbr_refractive_index", 1.0), p.pulse.omega_ph};
        b.pc_mode = {get("pc_mode_volume", 600.0), get("pc_refractive_index", 2.6), p.pulse.omega_ph};
        for (const auto& [m, prefix] : {std::pair{b.dbr_mode, "dbr_"}, {b.pc_mode, "pc_"}}) {
            if (!(m.mode_volume > 0.0)) throw ValidationError(std::string(prefix) + "mode_volume", "must be positive");
            if (!(m.refractive_index > 0.0))
                throw ValidationError(std::string(prefix) + "refractive_index", "must be positive");
        }

        IntegratorConfig& ic = b.integrator;
        ic.rel_tol = get("rel_tol", ic.rel_tol);
        ic.abs_tol = get("abs_tol", ic.abs_tol);
        ic.t_end = get("t_end", 0.0);
        ic.dt_max = get("dt_max", 0.0);
        const double op = get("omega_points", 0.0);
        if (op != std::floor(op)) throw ValidationError("omega_points", "must be an integer");
        ic.omega_points = static_cast<int>(op);
        ic.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(e.key(), std::string(e.what()) + " [" + where(e.key()) + "]");
    }
    return b;
}

ConfigBundle parse_config(const std::string& path) {
    ConfigParser p;
    p.parse_file(path);
    return p.build();
}

ConfigBundle parse_config_text(const std::string& text) {
    ConfigParser p;
    p.parse_text(text, "<text>");
    return p.build();
}

} // namespace vqst
