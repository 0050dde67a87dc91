// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mmwsim/solver.hpp"

namespace mmwsim {

/// Binary dataset container:
///   bytes  0..15  magic "MMWSIM-DATASET1\0"
///   then little-endian: u32 count_f, u32 count_p,
///   f64 f_start_hz, f64 f_step_hz, f64 x_start_m, f64 x_step_m, f64 y_tr_m,
///   then count_f * count_p complex entries as f64 (re, im) pairs,
///   frequency-major (row q contiguous over p).
void write_dataset(const std::string& path, const Dataset& ds);

/// Reads and validates; diagnostics name the offending field.
Dataset read_dataset(const std::string& path);

/// Text export, one entry per row: q,p,f_hz,x_m,re,im (with a header line).
void write_dataset_csv(const std::string& path, const Dataset& ds);

}  // namespace mmwsim
