#ifndef FTRANS_TRANSLATION_VALUE_HPP
#define FTRANS_TRANSLATION_VALUE_HPP

#include <cstdint>
#include <optional>

#include "ftrans/arrangement.hpp"
#include "ftrans/curves.hpp"
#include "ftrans/frechet.hpp"

namespace ftrans {

struct ValueParams {
  double epsilon = 1e-7;
  std::uint64_t gamma_size = 200;
  int gamma_depth = 30;
  /// Lower-bound evaluations use tolerance max(epsilon, coarse_factor * d_B).
  double coarse_factor = 0.125;
  /// Samples translations in every popped box and throws std::logic_error
  /// when the lower or upper bound is violated. Test use only.
  bool check_invariants = false;
};

struct PrioritizedBox {
  AxisBox box;
  int depth = 0;
  double lower_bound = 0;
  std::uint64_t seq = 0;
};

struct ValueTrace {
  double value = 0;
  std::optional<Translation> witness;
  std::uint64_t black_box_calls = 0;
  std::uint64_t boxes_processed = 0;
  std::uint64_t base_cases = 0;
  double preprocessing_ms = 0;
  double estimates_ms = 0;
  double arrangement_ms = 0;
  double total_ms = 0;
};

/// [max(d_start, d_end)/2, min(d_start, d_end)] from aligning first and last
/// vertices. The upper end is a verified distance.
TestDistanceInterval initial_estimates(const Curve& pi, const Curve& sigma,
                                       FrechetQueryCounter& counter,
                                       double epsilon = 1e-7);

/// Lipschitz branch-and-bound with an arrangement-based binary-search base
/// case; |value - d_transF| <= epsilon.
ValueTrace lmf_value(const Curve& pi, const Curve& sigma, const ValueParams& params = {});

/// Bisection on decide_translation starting from initial_estimates.
ValueTrace binary_search_value(const Curve& pi, const Curve& sigma,
                               const ValueParams& params = {});

/// lmf_value without the arrangement base case.
ValueTrace lipschitz_only_value(const Curve& pi, const Curve& sigma,
                                const ValueParams& params = {});

}  // namespace ftrans

#endif  // FTRANS_TRANSLATION_VALUE_HPP
