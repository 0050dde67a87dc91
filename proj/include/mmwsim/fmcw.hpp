// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mmwsim/solver.hpp"

namespace mmwsim {

/// Dechirped (stretch-processed) FMCW radar parameters.
struct RadarParams {
    double f0 = 77.2e9;     // Hz, sweep start
    double slope = 0.0;     // Hz/s, chirp rate K
    double dt = 0.0;        // s, IF sample interval
    int n_samples = 256;    // IF samples per chirp
    double a0 = 1.0;        // transmit amplitude
    double phi0 = 0.0;      // transmit phase offset (cancels in dechirp)

    void validate() const;
};

/// Canonical parameter set matching the measurement grid:
/// K*dt = 14.0625 MHz exactly (dt = 2^-22 s, K = 5.89824e13 Hz/s), N = 256.
RadarParams canonical_radar_params();

/// Idealized point scatterer as seen by the dechirp model.
struct Reflector {
    double tau = 0.0;    // s, two-way delay
    double sigma = 1.0;  // reflectivity amplitude
};

/// Complex IF signal of one chirp:
///   s[n] = sum_i (a0^2 / 2) sigma_i e^{+j 2 pi tau_i (K n dt + f0)}
/// Positive-beat I/Q convention: the standard DFT peaks at bin
/// round(N K tau dt) for a single reflector.
Eigen::VectorXcd if_signal(const RadarParams& params, const std::vector<Reflector>& reflectors);

/// Instantaneous mapped frequency of IF sample n: f0 + K n dt.
/// Throws std::out_of_range for n outside [0, n_samples).
double sample_frequency(const RadarParams& params, int n);

/// The frequency grid the IF samples correspond to (f_start = f0,
/// f_step = K*dt, count = n_samples).
FrequencyGrid frequency_grid(const RadarParams& params);

/// Phase convention of externally acquired IF data.
enum class IqConvention {
    positive_beat,  // e^{+j 2 pi tau f} samples; conjugated on ingest
    phasor,         // already e^{-j 2 k d}-convention; copied verbatim
};

/// Re-indexes a per-position IF cube (n_samples rows x scan positions cols)
/// into a Dataset via the sample->frequency bijection, adapting the I/Q
/// phase convention so that backprojection focuses.
Dataset dataset_from_if_cube(const Eigen::MatrixXcd& cube, const RadarParams& params,
                             const ScanPlan& scan,
                             IqConvention convention = IqConvention::positive_beat);

/// Raw-IF CSV: header "p,n,re,im", one sample per row, dense in both indices.
void write_if_cube_csv(const std::string& path, const Eigen::MatrixXcd& cube);
Eigen::MatrixXcd read_if_cube_csv(const std::string& path);

}  // namespace mmwsim
