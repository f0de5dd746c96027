// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ARTIC_PARALLEL_HPP_
#define ARTIC_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace artic {

/// Worker count: ARTIC_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into per-index slots so output never depends on scheduling.
/// The first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace artic

#endif  // ARTIC_PARALLEL_HPP_
