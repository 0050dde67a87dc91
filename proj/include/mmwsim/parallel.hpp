// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace mmwsim {

/// Runs fn(begin, end) over a static contiguous partition of [0, count) on
/// `workers` threads (clamped to [1, count]). Each index is processed by
/// exactly one thread with identical per-index arithmetic, so results are
/// byte-identical for any worker count as long as fn writes disjoint slots.
void parallel_chunks(std::size_t count, int workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mmwsim
