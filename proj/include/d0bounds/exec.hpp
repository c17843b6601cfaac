#pragma once

namespace d0b {

// Execution policy for the data-parallel drivers.  Every parallel kernel has
// a serial twin that must produce bitwise-identical results; tests compare
// the two and the benchmark target measures the speedup.
enum class Exec {
  kSerial,
  kParallel,
};

}  // namespace d0b
