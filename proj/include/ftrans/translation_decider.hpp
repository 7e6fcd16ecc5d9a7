#ifndef FTRANS_TRANSLATION_DECIDER_HPP
#define FTRANS_TRANSLATION_DECIDER_HPP

#include <cstdint>
#include <optional>

#include "ftrans/curves.hpp"
#include "ftrans/frechet.hpp"

namespace ftrans {

struct DeciderParams {
  std::uint64_t gamma_size = 200;
  int gamma_depth = 30;
};

struct BoxNode {
  AxisBox box;
  int depth = 0;
};

struct DeciderTrace {
  bool result = false;
  std::uint64_t boxes_processed = 0;
  std::uint64_t boxes_dropped_lower_bound = 0;
  std::uint64_t base_cases = 0;
  std::uint64_t black_box_calls = 0;
  std::optional<Translation> witness;
};

/// Bounding box of all translations that can reach distance delta: the lens of
/// the start and end disks, clipped so that the translated bounding box of
/// sigma and the bounding box of pi are within delta of each other per side.
std::optional<AxisBox> initial_search_box(const Curve& pi, const Curve& sigma,
                                          double delta);
std::optional<AxisBox> initial_search_box(const Curve& pi, const CurveStats& pi_stats,
                                          const Curve& sigma,
                                          const CurveStats& sigma_stats, double delta);

/// Splits along the longest edge (x on ties); lower half first.
std::pair<AxisBox, AxisBox> halve_longest_edge(const AxisBox& box);

/// Exact decision of min_tau d_F(pi, sigma + tau) <= delta by FIFO
/// branch-and-bound with a local arrangement base case.
DeciderTrace decide_translation(const Curve& pi, const Curve& sigma, double delta,
                                const DeciderParams& params = {});

}  // namespace ftrans

#endif  // FTRANS_TRANSLATION_DECIDER_HPP
