#pragma once

namespace kkp {

// Worker cap from KKP_THREADS: unset -> OpenMP default, "0" -> serial (1),
// N -> exactly N. Queried at call time so tests can flip the variable.
int thread_count();

} // namespace kkp
