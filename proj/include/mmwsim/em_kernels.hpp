// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "mmwsim/materials.hpp"

namespace mmwsim {

/// Hankel function of the second kind, order zero: H0^(2)(x) = J0(x) - j*Y0(x).
/// Outgoing cylindrical wave under e^{+j omega t}. Piecewise: ascending series
/// below x = 9, large-argument asymptotic series above; relative accuracy
/// better than 1e-8 over [0.1, 2500]. Throws std::domain_error for x <= 0.
std::complex<double> hankel_h0_2(double x);

/// Complex wavenumber k = (2 pi f / c0) * sqrt(eps_rel).
/// Branch: Re(k) > 0 and Im(k) <= 0 for passive media (decaying e^{-jkr}).
std::complex<double> wavenumber(double freq_hz, const Material& m);

/// Intrinsic impedance eta = sqrt(mu0 / (eps0 * eps_rel)) = eta0 / sqrt(eps_rel),
/// principal branch (Re > 0).
std::complex<double> impedance(const Material& m);

/// Perpendicular-polarization Fresnel reflection coefficient at an air/medium
/// interface:
///   R = (cos th - sqrt(eps_r - sin^2 th)) / (cos th + sqrt(eps_r - sin^2 th))
/// cos th is evaluated as sqrt(1 - sin^2 th) so eps_r = 1 gives exactly 0.
/// theta_i in [0, pi/2).
std::complex<double> reflection_coefficient(Angle theta_i, const Material& medium);

struct RefractionCosines {
    double cos_theta1 = 1.0;                   // incidence side
    std::complex<double> cos_theta2{1.0, 0.0};  // refraction side, Re >= 0
};

/// Snell refraction carried as cosines; cos th2 = sqrt(1 - (eps_out/eps_in) sin^2 th1)
/// stays complex for lossy media (the refracted angle itself is never formed).
RefractionCosines refraction_cosines(Angle theta_1, const Material& outer, const Material& inner);

struct TransmissionPair {
    std::complex<double> into{1.0, 0.0};    // outer -> inner
    std::complex<double> out_of{1.0, 0.0};  // inner -> outer
};

/// Perpendicular-polarization Fresnel transmission coefficients for one slab
/// interface crossing in each direction:
///   T_in  = 2 eta_in  cos th1 / (eta_out cos th1 + eta_in  cos th2)
///   T_out = 2 eta_out cos th2 / (eta_in  cos th2 + eta_out cos th1)
TransmissionPair transmission_pair(Angle theta_1, const Material& outer, const Material& inner);

/// Slab phase correction, transcribed form:
///   phi = k_slab * l * (1/cos th1 - sqrt(eps_r)/cos th2)
/// Applied as e^{+j phi}. Kept for reference/comparison; see slab_excess_phase
/// for the default model.
std::complex<double> slab_phase(Angle theta_1, const Material& m, double thickness_m,
                                double freq_hz);

/// Standard slab excess phase (delay + attenuation relative to the same path
/// in free space, multiple internal reflections neglected):
///   phi = -k0 * l * (sqrt(eps_r - sin^2 th1) - cos th1)
/// Applied as e^{+j phi}; Im(phi) >= 0 for passive media, so the factor decays.
std::complex<double> slab_excess_phase(Angle theta_1, const Material& m, double thickness_m,
                                       double freq_hz);

}  // namespace mmwsim
