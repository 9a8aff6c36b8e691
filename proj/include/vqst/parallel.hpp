#ifndef VQST_PARALLEL_HPP
#define VQST_PARALLEL_HPP

namespace vqst {

/// Kernels take an execution policy; the serial path is the reference the
/// OpenMP path is tested against (outputs are bit-identical).
enum class Exec { Serial, Parallel };

/// Upper bound on OpenMP threads; n <= 0 restores the runtime default.
void set_threads(int n);
int max_threads();

} // namespace vqst

#endif
