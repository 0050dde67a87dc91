// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>

#include "mmwsim/scene.hpp"

namespace mmwsim {

/// Thrown when a numerical stage produces non-finite values.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Samples with incidence angle at or beyond this are excluded from the
/// physical-optics integration.
inline constexpr double grazing_cutoff_deg = 89.0;

/// z-polarized incident field at a surface sample. h_t is the in-plane
/// magnetic field magnitude |H| = |E|/eta0 (direction: s_hat x z_hat).
struct IncidentField {
    std::complex<double> e_z{0.0, 0.0};
    std::complex<double> h_t{0.0, 0.0};
};

/// E_i = prior * H0^(2)(k d), H_i = E_i / eta0, with d = |tr - sample|.
/// k is the free-space wavenumber (imaginary part must be zero); `prior`
/// carries any transmission factors already accumulated along the path.
/// Throws std::invalid_argument for coincident points.
IncidentField incident_fields(const Eigen::Vector2d& tr, const SurfaceSample& sample,
                              std::complex<double> k, std::complex<double> prior);

/// Physical-optics equivalent currents on an impedance surface:
///   J_z = (1 - R) (E_i / eta0) cos th_i      (electric, z-directed)
///   M_t = (1 + R) E_i                        (magnetic, along t = z x n)
/// R is the Fresnel coefficient of the sample's material at th_i.
struct SurfaceCurrents {
    std::complex<double> j_z{0.0, 0.0};
    std::complex<double> m_t{0.0, 0.0};
};

SurfaceCurrents equivalent_currents(const SurfaceSample& sample, const IncidentField& inc,
                                    Angle theta_i);

enum class ScatterPath { obstacle, target };

/// Result of a field summation. all_grazing is set when a non-empty sample
/// list produced no usable element (every ray at/beyond the grazing cutoff).
struct FieldResult {
    std::complex<double> value{0.0, 0.0};
    bool all_grazing = false;
};

/// Scattered field at the transceiver from a set of surface samples, radiated
/// with the 2D Green's function G = -(1/4j) H0^(2)(k d):
///   E_z = sum [ -j omega mu0 J_z + j k cos th_s M_t ] G dl
/// (far-field form of the M radiation term; th_s = th_i for the monostatic
/// return). For ScatterPath::target with an obstacle present, each sample's
/// contribution carries the one-way slab factor e^{j phi} T_in T_out twice
/// (incident and return legs use the identical factor).
FieldResult scattered_field(const Eigen::Vector2d& tr, std::span<const SurfaceSample> samples,
                            double freq_hz, ScatterPath path, const Scene& scene);

/// Obstacle and target contributions at one scan position and frequency.
/// Discretization density is taken at the scene's highest frequency.
FieldResult total_signal(const Eigen::Vector2d& tr, const Scene& scene, double freq_hz,
                         double samples_per_wavelength = 10.0);

struct SweepOptions {
    double samples_per_wavelength = 10.0;
    int workers = 1;
    double e0 = 1.0;  // incident-field amplitude; scales entries exactly
};

/// Frequency x scan-position dataset S. data(q, p) = signal at frequency q,
/// scan position p.
struct Dataset {
    Eigen::MatrixXcd data;  // count_f x count_p
    ScanPlan scan;
    FrequencyGrid freq;
};

/// Full monostatic sweep. Deterministic: identical bits for any worker count.
/// Throws NumericalError if any entry is non-finite.
Dataset sweep(const Scene& scene, const SweepOptions& opts = {});

}  // namespace mmwsim
