#ifndef VQST_IDEAL_EVOLUTION_HPP
#define VQST_IDEAL_EVOLUTION_HPP

// Lossless state sequences for photon -> valley-pair transfer and back.
//
// Valley index 0 = |K_L K'_R>, 1 = |K'_L K_R>.
// Polarization index 0/1 = s+/s- (circular frame) or sx/sy (linear frame).
// Trion index 0 = |K'_ex,L K_L K'_R>, 1 = |K_ex,L K'_L K_R>.

#include <array>
#include <string>

#include "vqst/model.hpp"

namespace vqst {

using Pair = std::array<cplx, 2>;

enum class Frame { Circular, Linear };

struct HybridState {
    enum class Sector { PhotonValley, Trion };

    Sector sector = Sector::PhotonValley;
    Frame frame = Frame::Circular;
    std::array<Pair, 2> photon{}; // photon[valley][polarization]
    Pair trion{};

    double norm_sq() const;
    HybridState to_linear() const;
    HybridState to_circular() const;
    /// Frame-independent overlap <this|other> (both in the photon-valley sector).
    cplx inner(const HybridState& other) const;
};

struct ForwardSequence {
    Pair phi0;        // incoming polarization (s+, s-)
    HybridState phi1; // trion sector
    HybridState phi2; // photon (PC) x valley, circular frame
    Pair phi3x;       // valley state after detecting sx
    Pair phi3y;       // valley state after detecting sy
};

ForwardSequence forward_sequence(const PhotonQubit& qubit, const CouplingSet& couplings);

struct ReverseSequence {
    Pair phi3S;  // photon state when Z_S is detected
    Pair phi3T0; // photon state when Z_T0 is detected
};

ReverseSequence reverse_sequence(const PhotonQubit& qubit);

/// -alpha |s+>|K'_L K_R> + beta |s->|K_L K'_R>.
HybridState ideal_reference(const PhotonQubit& qubit);

/// |<ideal|phi2>|^2 / <phi2|phi2>.
double lossless_fidelity(const PhotonQubit& qubit, const CouplingSet& couplings);

std::string valley_label(int v);
std::string polarization_label(Frame f, int p);
std::string trion_label(int t);

} // namespace vqst

#endif
