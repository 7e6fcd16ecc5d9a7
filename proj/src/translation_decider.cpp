#include "ftrans/translation_decider.hpp"

#include <deque>

#include "ftrans/arrangement.hpp"

namespace ftrans {

std::optional<AxisBox> initial_search_box(const Curve& pi, const Curve& sigma,
                                          double delta) {
  return initial_search_box(pi, curve_stats(pi), sigma, curve_stats(sigma), delta);
}

std::optional<AxisBox> initial_search_box(const Curve& pi, const CurveStats& ps,
                                          const Curve& sigma, const CurveStats& ss,
                                          double delta) {
  const Point2 start = pi.front() - sigma.front();
  const Point2 end = pi.back() - sigma.back();
  auto lens = disks_intersection_box(start, end, delta);
  if (!lens) return std::nullopt;

  // Each extreme side of sigma + tau must be within delta of the matching
  // extreme side of pi, in both directions.
  const AxisBox& a = ps.bbox;
  const AxisBox& b = ss.bbox;
  const AxisBox extremes{
      std::max(a.x_lo - b.x_lo, a.x_hi - b.x_hi) - delta,
      std::min(a.x_lo - b.x_lo, a.x_hi - b.x_hi) + delta,
      std::max(a.y_lo - b.y_lo, a.y_hi - b.y_hi) - delta,
      std::min(a.y_lo - b.y_lo, a.y_hi - b.y_hi) + delta,
  };
  AxisBox box = intersect(*lens, extremes);
  const double tol = scaled_tolerance(std::max(delta, start.cwiseAbs().maxCoeff()));
  if (box.x_lo > box.x_hi + tol || box.y_lo > box.y_hi + tol) return std::nullopt;
  if (box.x_lo > box.x_hi) box.x_lo = box.x_hi = (box.x_lo + box.x_hi) / 2;
  if (box.y_lo > box.y_hi) box.y_lo = box.y_hi = (box.y_lo + box.y_hi) / 2;
  return box;
}

std::pair<AxisBox, AxisBox> halve_longest_edge(const AxisBox& box) {
  AxisBox lo = box, hi = box;
  if (box.width() >= box.height()) {
    const double mid = (box.x_lo + box.x_hi) / 2;
    lo.x_hi = mid;
    hi.x_lo = mid;
  } else {
    const double mid = (box.y_lo + box.y_hi) / 2;
    lo.y_hi = mid;
    hi.y_lo = mid;
  }
  return {lo, hi};
}

DeciderTrace decide_translation(const Curve& pi, const Curve& sigma, double delta,
                                const DeciderParams& params) {
  DeciderTrace trace;
  FrechetQueryCounter counter;
  auto finish = [&](std::optional<Translation> witness) {
    trace.result = witness.has_value();
    trace.witness = witness;
    trace.black_box_calls = counter.calls;
    return trace;
  };

  if (pi.size() == 1 && sigma.size() == 1) {
    return finish(Translation(pi.front() - sigma.front()));
  }
  const auto root = initial_search_box(pi, sigma, delta);
  if (!root) return finish(std::nullopt);

  const Point2 start = pi.front() - sigma.front();
  const Point2 end = pi.back() - sigma.back();
  const std::size_t cap = contributing_cap(params.gamma_size);

  std::deque<BoxNode> queue{BoxNode{*root, 0}};
  while (!queue.empty()) {
    const BoxNode node = queue.front();
    queue.pop_front();
    ++trace.boxes_processed;
    const Translation center = node.box.center();
    const double diag = node.box.diagonal();
    const auto view = translate_view(sigma, center);

    if (!decide_frechet(pi, view, delta + diag / 2, counter)) {
      ++trace.boxes_dropped_lower_bound;
      continue;
    }
    const bool at_max_depth = node.depth >= params.gamma_depth;
    if (!at_max_depth && decide_frechet(pi, view, delta, counter)) {
      return finish(center);
    }

    ContributionReport report =
        count_contributing_circles(pi, sigma, delta, node.box, at_max_depth ? kNoCap : cap);
    const std::uint64_t u = size_bound(report.count);
    if (u == 0) {
      // Single face, represented by the already tested center.
      if (!at_max_depth) continue;
    }
    if (u <= params.gamma_size || at_max_depth) {
      ++trace.base_cases;
      if (auto w = local_arrangement_decide(pi, sigma, delta, node.box, report.loci,
                                            counter)) {
        return finish(*w);
      }
      continue;
    }

    const auto [first, second] = halve_longest_edge(node.box);
    for (const AxisBox& child : {first, second}) {
      if (!disk_intersects_box(start, delta, child) ||
          !disk_intersects_box(end, delta, child)) {
        continue;
      }
      queue.push_back(BoxNode{child, node.depth + 1});
    }
  }
  return finish(std::nullopt);
}

}  // namespace ftrans
