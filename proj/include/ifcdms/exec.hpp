#pragma once

namespace ifcdms {

// Selects between the OpenMP batch kernels and their serial reference loops.
// Both produce bit-identical results; the serial path exists for testing
// and benchmarking.
enum class ExecPolicy { serial, parallel };

}  // namespace ifcdms
