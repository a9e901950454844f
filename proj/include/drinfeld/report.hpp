#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/cinf.hpp"

namespace drinfeld {

/// Outcome of one identity check. Residuals are recorded as horizons
/// min(valuation, precision) in grid units; kExact marks an exact zero.
struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<int64_t> residual_valuations;
  int64_t required = 0;
  bool pass = false;
  double wall_time = 0;
  std::string note;

  void param(std::string k, std::string v) { parameters.emplace_back(std::move(k), std::move(v)); }
  void add(int64_t horizon) { residual_valuations.push_back(horizon); }
  int64_t min_residual() const {
    int64_t m = kExact;
    for (int64_t h : residual_valuations) m = std::min(m, h);
    return m;
  }
  /// pass iff every residual reaches `level` (and `extra` holds).
  CheckReport& finish(int64_t level, bool extra = true) {
    required = level;
    pass = extra && min_residual() >= level;
    return *this;
  }
};

}  // namespace drinfeld
