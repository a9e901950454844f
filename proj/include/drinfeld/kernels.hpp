#pragma once

// Dense convolution over F_Q in log form. Two implementations are kept:
// a scatter loop used as the reference in tests, and a gather loop whose
// output index is data-parallel under OpenMP.

#include <cstddef>
#include <span>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld::kernels {

/// out[k] = sum_{i+j=k} a[i] b[j] for k < out_len (scatter, single thread).
std::vector<Fe> convolve_serial(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
                                size_t out_len);

/// Same result; each output coefficient is an independent reduction.
std::vector<Fe> convolve_parallel(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
                                  size_t out_len);

/// Picks the parallel kernel above a work threshold.
std::vector<Fe> convolve(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
                         size_t out_len);

/// Work (products) above which `convolve` switches to the parallel kernel.
size_t parallel_threshold();
void set_parallel_threshold(size_t work);

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace drinfeld::kernels
