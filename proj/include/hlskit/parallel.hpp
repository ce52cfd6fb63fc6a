#pragma once

namespace hlskit {

/// Worker cap for parallel kernels: HLSKIT_THREADS if set to a positive
/// integer, otherwise the OpenMP default. Always 1 without OpenMP.
int worker_count() noexcept;

}  // namespace hlskit
