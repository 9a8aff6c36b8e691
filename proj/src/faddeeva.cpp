#include "vqst/faddeeva.hpp"

#include <array>
#include <cmath>

namespace vqst {

namespace {

constexpr int N = 40;
constexpr double pi_ = 3.14159265358979323846;

struct Coeffs {
    double L;
    std::array<double, N> a; // a[n-1] multiplies Z^{n-1}
};

const Coeffs& coeffs() {
    static const Coeffs c = [] {
        Coeffs r{};
        const int M = 2 * N;
        r.L = std::sqrt(N / std::sqrt(2.0));
        for (int n = 1; n <= N; ++n) {
            double s = 0.0;
            for (int k = -M + 1; k <= M - 1; ++k) {
                const double th = k * pi_ / M;
                const double t = r.L * std::tan(th / 2.0);
                s += std::exp(-t * t) * (r.L * r.L + t * t) * std::cos(n * th);
            }
            r.a[n - 1] = s / (2.0 * M);
        }
        return r;
    }();
    return c;
}

} // namespace

std::complex<double> faddeeva_upper(std::complex<double> z) {
    const std::complex<double> I(0.0, 1.0);
    if (std::abs(z) > 1e3) {
        // Asymptotic series, relative error ~ 0.75 |z|^-4.
        return I / std::sqrt(pi_) * z / (z * z - 0.5);
    }
    const Coeffs& c = coeffs();
    const std::complex<double> d = c.L - I * z;
    const std::complex<double> Z = (c.L + I * z) / d;
    std::complex<double> p = 0.0;
    for (int n = N - 1; n >= 0; --n) p = p * Z + c.a[n];
    return 2.0 * p / (d * d) + 1.0 / (std::sqrt(pi_) * d);
}

std::complex<double> faddeeva(std::complex<double> z) {
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

} // namespace vqst
