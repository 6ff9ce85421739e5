#pragma once

namespace bayescal {

/// Selects the OpenMP kernel or the single-threaded reference kernel. Both
/// produce bit-identical results; the serial path exists for testing and
/// benchmarking.
enum class Execution { Serial, Parallel };

}  // namespace bayescal
