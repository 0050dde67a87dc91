// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/em_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mmwsim {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = 0.57721566490153286;

// Ascending series (small x), J0 and Y0 accumulated together:
//   J0 = sum_m (-t)^m / (m!)^2,                       t = x^2/4
//   Y0 = (2/pi) [ (ln(x/2) + gamma) J0
//                 + sum_{m>=1} (-1)^{m+1} H_m t^m / (m!)^2 ],  H_m = sum 1/i
std::complex<double> hankel_small(double x) {
    const double t = 0.25 * x * x;
    double term = 1.0;  // (-t)^m / (m!)^2
    double j0 = 1.0;
    double ysum = 0.0;
    double harmonic = 0.0;
    for (int m = 1; m <= 48; ++m) {
        term *= -t / (static_cast<double>(m) * static_cast<double>(m));
        j0 += term;
        harmonic += 1.0 / m;
        ysum -= term * harmonic;  // (-1)^{m+1} t^m/(m!)^2 = -term
        if (std::abs(term) < 1e-18 * (std::abs(j0) + 1.0)) break;
    }
    const double y0 = (2.0 / pi) * ((std::log(0.5 * x) + euler_gamma) * j0 + ysum);
    return {j0, -y0};
}

// Large-argument asymptotic (optimally truncated):
//   H0^(2)(x) ~ sqrt(2/(pi x)) e^{-j(x - pi/4)} sum_k j^k b_k / x^k
//   b_0 = 1, b_k = b_{k-1} (2k-1)^2 / (8k)   [ = ((2k-1)!!)^2 / (k! 8^k) ]
// Smallest term at x = 9 is ~2.8e-9, well under the 1e-8 budget.
std::complex<double> hankel_large(double x) {
    static const std::complex<double> jpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::complex<double> s{1.0, 0.0};
    double bk = 1.0;
    double xk = 1.0;
    double prev_mag = 1.0;
    for (int k = 1; k <= 32; ++k) {
        const double odd = 2.0 * k - 1.0;
        bk *= odd * odd / (8.0 * k);
        xk *= x;
        const double mag = bk / xk;
        if (mag >= prev_mag) break;  // divergent tail reached
        s += jpow[k & 3] * mag;
        prev_mag = mag;
        if (mag < 1e-17) break;
    }
    const double amp = std::sqrt(2.0 / (pi * x));
    return amp * std::polar(1.0, -(x - 0.25 * pi)) * s;
}

}  // namespace

std::complex<double> hankel_h0_2(double x) {
    if (!(x > 0.0)) throw std::domain_error("hankel_h0_2: argument must be positive");
    return x < 9.0 ? hankel_small(x) : hankel_large(x);
}

std::complex<double> wavenumber(double freq_hz, const Material& m) {
    if (!(freq_hz > 0.0)) throw std::invalid_argument("wavenumber: frequency must be positive");
    std::complex<double> k = (2.0 * pi * freq_hz / c0) * std::sqrt(m.eps_rel);
    if (k.imag() > 0.0) k = -k;  // decaying-wave branch
    return k;
}

std::complex<double> impedance(const Material& m) {
    return eta0 / std::sqrt(m.eps_rel);
}

std::complex<double> reflection_coefficient(Angle theta_i, const Material& medium) {
    if (medium.eps_rel == std::complex<double>(1.0, 0.0)) return {0.0, 0.0};  // no contrast
    const double s = std::sin(theta_i.rad);
    const double c1 = std::sqrt(1.0 - s * s);
    const std::complex<double> w = std::sqrt(medium.eps_rel - s * s);
    return (c1 - w) / (c1 + w);
}

RefractionCosines refraction_cosines(Angle theta_1, const Material& outer, const Material& inner) {
    const double s = std::sin(theta_1.rad);
    RefractionCosines rc;
    rc.cos_theta1 = std::sqrt(1.0 - s * s);
    std::complex<double> c2 = std::sqrt(1.0 - (outer.eps_rel / inner.eps_rel) * (s * s));
    if (c2.real() < 0.0) c2 = -c2;
    rc.cos_theta2 = c2;
    return rc;
}

TransmissionPair transmission_pair(Angle theta_1, const Material& outer, const Material& inner) {
    const RefractionCosines rc = refraction_cosines(theta_1, outer, inner);
    const std::complex<double> eta_out = impedance(outer);
    const std::complex<double> eta_in = impedance(inner);
    const std::complex<double> denom = eta_out * rc.cos_theta1 + eta_in * rc.cos_theta2;
    TransmissionPair t;
    t.into = 2.0 * eta_in * rc.cos_theta1 / denom;
    t.out_of = 2.0 * eta_out * rc.cos_theta2 / (eta_in * rc.cos_theta2 + eta_out * rc.cos_theta1);
    return t;
}

std::complex<double> slab_phase(Angle theta_1, const Material& m, double thickness_m,
                                double freq_hz) {
    if (!(thickness_m > 0.0)) throw std::invalid_argument("slab_phase: thickness must be positive");
    const RefractionCosines rc = refraction_cosines(theta_1, Material::vacuum(), m);
    const std::complex<double> k_slab = wavenumber(freq_hz, m);
    return k_slab * thickness_m * (1.0 / rc.cos_theta1 - std::sqrt(m.eps_rel) / rc.cos_theta2);
}

std::complex<double> slab_excess_phase(Angle theta_1, const Material& m, double thickness_m,
                                       double freq_hz) {
    if (!(thickness_m > 0.0))
        throw std::invalid_argument("slab_excess_phase: thickness must be positive");
    if (!(freq_hz > 0.0))
        throw std::invalid_argument("slab_excess_phase: frequency must be positive");
    const double s = std::sin(theta_1.rad);
    const double c1 = std::sqrt(1.0 - s * s);
    std::complex<double> w = std::sqrt(m.eps_rel - s * s);
    if (w.real() < 0.0) w = -w;
    const double k0 = 2.0 * pi * freq_hz / c0;
    return -k0 * thickness_m * (w - c1);
}

}  // namespace mmwsim
