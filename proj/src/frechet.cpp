#include "ftrans/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ftrans {

bool decide_frechet(const Curve& pi, const TranslatedView& sigma, double delta,
                    FrechetQueryCounter& counter) {
  ++counter.calls;
  const double d2 = delta * delta;
  if ((pi.front() - sigma.front()).squaredNorm() > d2 ||
      (pi.back() - sigma.back()).squaredNorm() > d2) {
    return false;
  }
  const std::size_t n = pi.size();
  const std::size_t m = sigma.size();
  const Translation& shift = sigma.shift();
  const auto& sv = sigma.base().vertices;

  // Only [prev_first, prev_last] of the previous row can hold reachable cells.
  std::vector<char> prev(m, 0), cur(m, 0);
  std::size_t prev_first = 0, prev_last = 0;
  // Row 0: reachable prefix of free cells.
  {
    const Point2& p = pi[0];
    std::size_t j = 0;
    while (j < m && (p - (sv[j] + shift)).squaredNorm() <= d2) {
      prev[j] = 1;
      ++j;
    }
    prev_last = j - 1;  // j >= 1 since the start cell is free
  }
  for (std::size_t i = 1; i < n; ++i) {
    const Point2& p = pi[i];
    std::size_t first = m, last = 0;
    for (std::size_t j = prev_first; j < m; ++j) {
      const bool from_prev = prev[j] || (j > 0 && prev[j - 1]);
      const bool from_left = j > 0 && cur[j - 1];
      if (j > prev_last + 1 && !from_left) break;
      char r = 0;
      if ((from_prev || from_left) && (p - (sv[j] + shift)).squaredNorm() <= d2) {
        r = 1;
        if (first == m) first = j;
        last = j;
      }
      cur[j] = r;
    }
    if (first == m) return false;
    // Clearing the old live range keeps cur all-zero after the swap.
    std::fill(prev.begin() + prev_first, prev.begin() + prev_last + 1, 0);
    std::swap(prev, cur);
    prev_first = first;
    prev_last = last;
  }
  return prev[m - 1] != 0;
}

double frechet_value_exact(const Curve& pi, const TranslatedView& sigma) {
  const std::size_t n = pi.size();
  const std::size_t m = sigma.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m, inf), cur(m, inf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = (pi[i] - sigma[j]).norm();
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      }
      cur[j] = std::max(d, best);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

std::optional<double> frechet_value_search(const Curve& pi,
                                           const TranslatedView& sigma, double lo,
                                           double hi, double tol,
                                           FrechetQueryCounter& counter,
                                           bool hi_verified) {
  if (!hi_verified && !decide_frechet(pi, sigma, hi, counter)) return std::nullopt;
  lo = std::min(lo, hi);
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (decide_frechet(pi, sigma, mid, counter)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double endpoint_lower_bound(const Curve& pi, const TranslatedView& sigma) {
  return std::max((pi.front() - sigma.front()).norm(),
                  (pi.back() - sigma.back()).norm());
}

double bbox_upper_bound(const CurveStats& pi, const CurveStats& sigma_translated) {
  const AxisBox& a = pi.bbox;
  const AxisBox& b = sigma_translated.bbox;
  const double dx = std::max(a.x_hi, b.x_hi) - std::min(a.x_lo, b.x_lo);
  const double dy = std::max(a.y_hi, b.y_hi) - std::min(a.y_lo, b.y_lo);
  return std::hypot(dx, dy);
}

}  // namespace ftrans
