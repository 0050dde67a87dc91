// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

namespace mmwsim {

// Physical constants (SI). eta0 = mu0*c0 = 376.73... ohm.
inline constexpr double c0 = 299792458.0;
inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);
inline constexpr double eta0 = mu0 * c0;

/// Relative permittivity eps' - j*eps'' under the e^{+j omega t} convention.
/// Passive media have Im(eps_rel) <= 0.
struct Material {
    std::complex<double> eps_rel{1.0, 0.0};

    /// eps' only, zero loss.
    static Material lossless(double re) { return Material{{re, 0.0}}; }

    /// eps' and a positive loss magnitude eps'' (stored as -j*eps'').
    static Material lossy(double re, double loss) { return Material{{re, -loss}}; }

    static Material vacuum() { return Material{{1.0, 0.0}}; }

    bool passive() const { return eps_rel.real() > 0.0 && eps_rel.imag() <= 0.0; }
};

/// Incidence/refraction angle in radians, measured from the surface normal.
struct Angle {
    double rad = 0.0;

    static Angle from_degrees(double deg) { return Angle{deg * std::numbers::pi / 180.0}; }
    double degrees() const { return rad * 180.0 / std::numbers::pi; }
};

}  // namespace mmwsim
