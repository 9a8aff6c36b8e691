#ifndef VQST_OPTICAL_MATRIX_HPP
#define VQST_OPTICAL_MATRIX_HPP

#include "vqst/model.hpp"

namespace vqst {

/// Square hard-wall graphene quantum dot.
struct QdGeometry {
    double edge_length = 70.0;    // nm
    double gap_parameter = 0.1;   // eV, Dirac mass scale
    double fermi_velocity = 1e6;  // m/s

    void validate() const;
};

struct CavityMode {
    double mode_volume = 1e4;      // um^3
    double refractive_index = 1.0;
    double omega = 1.6e5;          // GHz (angular)

    void validate() const;
};

inline CavityMode default_dbr_mode() { return {1e4, 1.0, 1.6e5}; }
inline CavityMode default_pc_mode() { return {600.0, 2.6, 1.6e5}; }

/// Per-photon vacuum field sqrt(hbar w / (4 pi eps0 n^2 V)) in V/m.
double vacuum_field(const CavityMode& mode);

/// In-dot electron velocity as a fraction of v_F for the ground state
/// k = sqrt(2) pi / edge_length: hbar v_F k / sqrt(gap^2 + (hbar v_F k)^2).
double qd_velocity(const QdGeometry& geom);

/// e v_F E0 / (hbar w), in GHz.
double major_from_field(double fermi_velocity, double field, double omega_ghz);
double estimate_major(const QdGeometry& geom, const CavityMode& mode);

/// |M_<| / |M_>| = v^2 / (4 v_F^2).
double minor_ratio_from_velocity(double v_over_vf);
double estimate_minor_ratio(const QdGeometry& geom);

/// A = |M_>|(PC), C = |M_>|(DBR), B/A = D/C = ratio e^{i phase_BA}.
CouplingSet build_couplings(const QdGeometry& geom, const CavityMode& dbr, const CavityMode& pc,
                            double phase_BA);

} // namespace vqst

#endif
