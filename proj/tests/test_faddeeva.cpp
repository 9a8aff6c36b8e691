#include <doctest.h>

#include <cmath>

#include "vqst/faddeeva.hpp"

using namespace vqst;
using cplx = std::complex<double>;

namespace {
struct Ref {
    double x, y, re, im;
};

// High-precision values of w(z).
constexpr Ref refs[] = {
    {0.5, 0.5, 0.53315670791217491, 0.23048823138445841},
    {3.0, 0.1, 0.0079426809987699907, 0.20074234309867737},
    {-2.0, 4.0, 0.11213947790211601, -0.053488993852966928},
    {10.0, 30.0, 0.016920609313369536, 0.0056345747162323377},
    {0.01, 0.001, 0.99877285044209933, 0.011263063992759194},
    {-7.5, 0.2, 0.0020604741773023759, -0.075856113825185593},
    {1.0, -0.5, 0.15554114245433108, 1.1378372157816864},
    {100.0, 1.0, 5.6421779161441335e-5, 0.005641613670145867},
};
} // namespace

TEST_CASE("reference values") {
    for (const Ref& r : refs) {
        const cplx w = faddeeva(cplx(r.x, r.y));
        const cplx e(r.re, r.im);
        CAPTURE(r.x);
        CAPTURE(r.y);
        CHECK(std::abs(w - e) <= 1e-13 * std::abs(e));
    }
}

TEST_CASE("special points and symmetries") {
    CHECK(std::abs(faddeeva(cplx(0.0, 0.0)) - 1.0) < 1e-14);
    // w(iy) = exp(y^2) erfc(y), real
    for (double y : {0.1, 1.0, 3.0, 8.0}) {
        const cplx w = faddeeva(cplx(0.0, y));
        CHECK(std::abs(w.real() - std::exp(y * y) * std::erfc(y)) < 1e-13 * w.real());
        CHECK(std::abs(w.imag()) < 1e-15);
    }
    // w(-conj z) = conj w(z)
    for (const Ref& r : refs) {
        const cplx z(r.x, r.y);
        CHECK(std::abs(faddeeva(-std::conj(z)) - std::conj(faddeeva(z))) < 1e-13 * std::abs(faddeeva(z)));
    }
    // large |z| asymptote i / (sqrt(pi) z)
    const cplx z(2e3, 5e2);
    CHECK(std::abs(faddeeva_upper(z) - cplx(0, 1) / (std::sqrt(M_PI) * z)) < 1e-6 * std::abs(faddeeva_upper(z)));
}
