#include "vqst/optical_matrix.hpp"

#include <cmath>

namespace vqst {

namespace {
void positive(double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be a positive finite number");
}
} // namespace

void QdGeometry::validate() const {
    positive(edge_length, "qd_edge_length");
    if (!(gap_parameter >= 0.0) || !std::isfinite(gap_parameter))
        throw ValidationError("qd_gap", "must be a non-negative finite number");
    positive(fermi_velocity, "fermi_velocity");
}

void CavityMode::validate() const {
    positive(mode_volume, "mode_volume");
    positive(refractive_index, "refractive_index");
    positive(omega, "omega");
}

double vacuum_field(const CavityMode& mode) {
    mode.validate();
    const double w = mode.omega * 1e9;          // rad/s
    const double V = mode.mode_volume * 1e-18;  // m^3
    const double n2 = mode.refractive_index * mode.refractive_index;
    return std::sqrt(units::hbar_J_s * w / (4.0 * pi * units::eps0 * n2 * V));
}

double qd_velocity(const QdGeometry& geom) {
    geom.validate();
    const double k = std::sqrt(2.0) * pi / (geom.edge_length * 1e-9);
    const double kin = units::hbar_eV_s * geom.fermi_velocity * k; // eV
    return kin / std::hypot(geom.gap_parameter, kin);
}

double major_from_field(double fermi_velocity, double field, double omega_ghz) {
    return units::e_charge * fermi_velocity * field / (units::hbar_J_s * omega_ghz * 1e9) * 1e-9;
}

double estimate_major(const QdGeometry& geom, const CavityMode& mode) {
    geom.validate();
    return major_from_field(geom.fermi_velocity, vacuum_field(mode), mode.omega);
}

double minor_ratio_from_velocity(double v_over_vf) { return v_over_vf * v_over_vf / 4.0; }

double estimate_minor_ratio(const QdGeometry& geom) { return minor_ratio_from_velocity(qd_velocity(geom)); }

CouplingSet build_couplings(const QdGeometry& geom, const CavityMode& dbr, const CavityMode& pc,
                            double phase_BA) {
    const double r = estimate_minor_ratio(geom);
    return CouplingSet::from_ratios(estimate_major(geom, pc), estimate_major(geom, dbr), r, phase_BA, r,
                                    phase_BA);
}

} // namespace vqst
