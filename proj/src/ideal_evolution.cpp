#include "vqst/ideal_evolution.hpp"

#include <cmath>

namespace vqst {

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
const cplx I(0.0, 1.0);

// <sx|s+> = <sx|s-> = 1/sqrt2, <sy|s+> = i/sqrt2, <sy|s-> = -i/sqrt2.
Pair circ_to_lin(const Pair& c) { return {(c[0] + c[1]) * inv_sqrt2, I * (c[0] - c[1]) * inv_sqrt2}; }
Pair lin_to_circ(const Pair& l) { return {(l[0] - I * l[1]) * inv_sqrt2, (l[0] + I * l[1]) * inv_sqrt2}; }
} // namespace

double HybridState::norm_sq() const {
    double s = 0.0;
    if (sector == Sector::Trion) return std::norm(trion[0]) + std::norm(trion[1]);
    for (const auto& row : photon) s += std::norm(row[0]) + std::norm(row[1]);
    return s;
}

HybridState HybridState::to_linear() const {
    if (sector == Sector::Trion || frame == Frame::Linear) return *this;
    HybridState out = *this;
    out.frame = Frame::Linear;
    for (int v = 0; v < 2; ++v) out.photon[v] = circ_to_lin(photon[v]);
    return out;
}

HybridState HybridState::to_circular() const {
    if (sector == Sector::Trion || frame == Frame::Circular) return *this;
    HybridState out = *this;
    out.frame = Frame::Circular;
    for (int v = 0; v < 2; ++v) out.photon[v] = lin_to_circ(photon[v]);
    return out;
}

cplx HybridState::inner(const HybridState& other) const {
    const HybridState a = to_circular(), b = other.to_circular();
    cplx s = 0.0;
    for (int v = 0; v < 2; ++v)
        for (int p = 0; p < 2; ++p) s += std::conj(a.photon[v][p]) * b.photon[v][p];
    return s;
}

ForwardSequence forward_sequence(const PhotonQubit& q, const CouplingSet& cs) {
    const cplx al = q.alpha(), be = q.beta();
    const cplx A = cs.A(), B = cs.B(), C = cs.C(), D = cs.D();
    const cplx wK = al * C + be * D;
    const cplx wKp = al * std::conj(D) + be * std::conj(C);

    ForwardSequence s;
    s.phi0 = {al, be};

    s.phi1.sector = HybridState::Sector::Trion;
    s.phi1.trion = {wKp, -wK};

    // K'_ex emits (B s+ + A s-) into |K_L K'_R>, K_ex emits (A* s+ + B* s-) into |K'_L K_R>.
    s.phi2.photon[0] = {wKp * B, wKp * A};
    s.phi2.photon[1] = {-wK * std::conj(A), -wK * std::conj(B)};

    const HybridState lin = s.phi2.to_linear();
    s.phi3x = {lin.photon[0][0], lin.photon[1][0]};
    s.phi3y = {lin.photon[0][1], lin.photon[1][1]};
    return s;
}

ReverseSequence reverse_sequence(const PhotonQubit& q) {
    return {{q.alpha(), q.beta()}, {-q.alpha(), q.beta()}};
}

HybridState ideal_reference(const PhotonQubit& q) {
    HybridState s;
    s.photon[1][0] = -q.alpha();
    s.photon[0][1] = q.beta();
    return s;
}

double lossless_fidelity(const PhotonQubit& q, const CouplingSet& cs) {
    const HybridState phi2 = forward_sequence(q, cs).phi2;
    const double n = phi2.norm_sq();
    if (!(n > 0.0)) throw NumericalError("no transferred population");
    return std::norm(ideal_reference(q).inner(phi2)) / n;
}

std::string valley_label(int v) { return v == 0 ? "|K_L K'_R>" : "|K'_L K_R>"; }

std::string polarization_label(Frame f, int p) {
    if (f == Frame::Circular) return p == 0 ? "s+" : "s-";
    return p == 0 ? "sx" : "sy";
}

std::string trion_label(int t) { return t == 0 ? "|K'_ex,L K_L K'_R>" : "|K_ex,L K'_L K_R>"; }

} // namespace vqst
