#ifndef FTRANS_FRECHET_HPP
#define FTRANS_FRECHET_HPP

#include <cstdint>
#include <optional>

#include "ftrans/curves.hpp"

namespace ftrans {

/// Counts invocations of the fixed-translation decision procedure.
struct FrechetQueryCounter {
  std::uint64_t calls = 0;
};

/// Decides d_F(pi, sigma_view) <= delta with the reachability DP over the
/// free-space grid. Always counts one call, including endpoint rejections.
bool decide_frechet(const Curve& pi, const TranslatedView& sigma, double delta,
                    FrechetQueryCounter& counter);

/// Exact discrete Fréchet distance by the min-max DP.
double frechet_value_exact(const Curve& pi, const TranslatedView& sigma);

/// Bisection on decide_frechet over the caller-supplied bracket [lo, hi].
/// Returns a value v that is a verified upper bound with v - d_F <= tol, or
/// nullopt when decide fails at hi. Callers that already know decide(hi)
/// holds pass hi_verified to skip that call.
std::optional<double> frechet_value_search(const Curve& pi,
                                           const TranslatedView& sigma, double lo,
                                           double hi, double tol,
                                           FrechetQueryCounter& counter,
                                           bool hi_verified = false);

/// max(|pi_1 - sigma'_1|, |pi_n - sigma'_m|), a lower bound of d_F.
double endpoint_lower_bound(const Curve& pi, const TranslatedView& sigma);

/// Distance between farthest bounding-box corners, an upper bound of d_F.
double bbox_upper_bound(const CurveStats& pi, const CurveStats& sigma_translated);

}  // namespace ftrans

#endif  // FTRANS_FRECHET_HPP
