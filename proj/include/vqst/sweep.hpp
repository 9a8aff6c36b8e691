#ifndef VQST_SWEEP_HPP
#define VQST_SWEEP_HPP

// Two-axis parameter grids over dimensionless quantities.
//
// Binding of dimensionless values to a physical parameter set: A, Gamma_PC,
// kappa_DC and the common resonance frequency are fixed (45, 200, 90 and
// 1.6e5 GHz by default), gamma_tp = A^2 / Gamma_PC, and
//   C = sqrt(gamma_iD' gamma_tp kappa_DC), gamma_SE = gamma_SE' gamma_tp,
//   delta_omega_ph = delta_omega' gamma_tp, x0 = -8 c / delta_omega_ph,
//   B = A r e^{i phi_DC}, D = C r e^{i phi_DC}  (r = B_over_A),
//   alpha = 1/sqrt(1 + rho^2), beta = rho e^{i phi_beta_alpha} alpha  (rho = beta_over_alpha).
// Angles are in units of pi.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "vqst/model.hpp"
#include "vqst/parallel.hpp"

namespace vqst {

enum class Scale { Linear, Log };
enum class Quantity { Yield, Fidelity };

const char* to_string(Quantity q);

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    Scale scale = Scale::Linear;

    std::vector<double> values() const;
};

struct SweepSpec {
    std::string name;
    std::array<SweepAxis, 2> axes;
    std::map<std::string, double> fixed;
    Quantity quantity = Quantity::Yield;
    std::string preset_id;

    void validate() const;
};

/// Names accepted as axes or fixed bindings.
const std::vector<std::string>& sweep_parameters();

/// Default value of every binding parameter (the reference configuration).
std::map<std::string, double> default_bindings();

/// Physical parameters for one set of dimensionless values (missing keys take defaults).
SystemParams bind_params(const std::map<std::string, double>& values);

struct Cell {
    std::size_t i = 0, j = 0;
    double value = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> axis1, axis2;
    std::vector<double> values; // row-major, index i * axis2.size() + j
    Cell argmax;

    double at(std::size_t i, std::size_t j) const { return values[i * axis2.size() + j]; }
    /// Bound values (fixed + axes) of a cell.
    std::map<std::string, double> cell_bindings(std::size_t i, std::size_t j) const;
};

SweepResult run_grid(const SweepSpec& spec, Exec exec = Exec::Parallel);

/// Largest cell; ties go to the smallest row-major index.
Cell find_optimum(const SweepResult& r);

const std::vector<std::string>& preset_names();
SweepSpec preset(const std::string& name);

} // namespace vqst

#endif
