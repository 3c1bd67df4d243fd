#pragma once

namespace emkdv {

/// Kernels that fan out over independent work items take a policy.  The
/// serial path is the reference; the parallel path must produce identical
/// results (every work item is computed by the same code, only the loop is
/// distributed).
enum class Exec { serial, parallel };

int max_threads();

}  // namespace emkdv
