#pragma once

#include <cstddef>

namespace zi {

// Reductions are split into chunks of this many elements regardless of the
// worker count; per-chunk partials are combined in chunk order. This is what
// makes --threads 1 and --threads N produce identical bits.
inline constexpr std::size_t kReductionChunk = 4096;

// Sets the OpenMP worker count (n >= 1). No-op in builds without OpenMP.
void set_threads(int n);
int threads();

// Resolves the worker count from an explicit request (> 0), then the
// GAUSS_HALASZ_THREADS environment variable, then the OpenMP default.
int resolve_threads(int requested);

} // namespace zi
