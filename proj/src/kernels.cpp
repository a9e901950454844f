#include "drinfeld/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>

#ifdef DRINFELD_HAVE_OPENMP
#include <omp.h>
#endif

namespace drinfeld::kernels {

namespace {
std::atomic<size_t> g_threshold{1u << 16};
}

size_t parallel_threshold() { return g_threshold.load(std::memory_order_relaxed); }
void set_parallel_threshold(size_t work) { g_threshold.store(work, std::memory_order_relaxed); }

int max_threads() {
#ifdef DRINFELD_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Fe> convolve_serial(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
                                size_t out_len) {
  std::vector<Fe> out(out_len);
  for (size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (a[i].is_zero()) continue;
    const size_t jmax = std::min(b.size(), out_len - i);
    for (size_t j = 0; j < jmax; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }
  return out;
}

std::vector<Fe> convolve_parallel(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
                                  size_t out_len) {
  // Iterate over the sparser operand's support.
  if (a.size() > b.size()) std::swap(a, b);
  std::vector<uint32_t> support;
  support.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) support.push_back(static_cast<uint32_t>(i));

  std::vector<Fe> out(out_len);
  const auto n = static_cast<int64_t>(out_len);
  const size_t nb = b.size();
#ifdef DRINFELD_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int64_t k = 0; k < n; ++k) {
    Fe acc{};
    const auto kk = static_cast<size_t>(k);
    for (uint32_t i : support) {
      if (i > kk) break;
      const size_t j = kk - i;
      if (j >= nb) continue;
      const Fe bj = b[j];
      if (bj.is_zero()) continue;
      acc = f.add(acc, f.mul(a[i], bj));
    }
    out[kk] = acc;
  }
  return out;
}

std::vector<Fe> convolve(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
                         size_t out_len) {
  const size_t work = std::min(a.size(), out_len) * std::min(b.size(), out_len);
  if (max_threads() > 1 && work >= parallel_threshold())
    return convolve_parallel(f, a, b, out_len);
  return convolve_serial(f, a, b, out_len);
}

}  // namespace drinfeld::kernels
