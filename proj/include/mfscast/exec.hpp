#pragma once

namespace mfs {

// Parallel kernels keep a serial twin; tests pin them against each other and
// the benchmark tool times both.
enum class ExecMode { serial, parallel };

}  // namespace mfs
