#include "ftrans/arrangement.hpp"

#include <algorithm>
#include <cmath>

namespace ftrans {

namespace {

constexpr double kDedupeTolerance = 1e-9;
constexpr std::uint32_t kLeafSize = 8;

}  // namespace

std::size_t contributing_cap(std::uint64_t gamma_size) {
  std::size_t c = 0;
  while (size_bound(c) <= gamma_size) ++c;
  return c;
}

ContributionReport count_contributing_circles(const Curve& pi, const Curve& sigma,
                                              double delta, const AxisBox& box,
                                              std::size_t cap) {
  ContributionReport report;
  for (const auto& p : pi.vertices) {
    for (const auto& s : sigma.vertices) {
      const Point2 center = p - s;
      if (!circle_contributes(Circle{center, delta}, box)) continue;
      ++report.count;
      report.loci.push_back(center);
      if (report.count >= cap) {
        report.truncated = true;
        report.loci.clear();
        return report;
      }
    }
  }
  return report;
}

DifferenceIndex::DifferenceIndex(const Curve& pi, const Curve& sigma) {
  entries_.reserve(pi.size() * sigma.size());
  for (std::uint32_t i = 0; i < pi.size(); ++i) {
    for (std::uint32_t j = 0; j < sigma.size(); ++j) {
      entries_.push_back({pi[i] - sigma[j], i, j});
    }
  }
  nodes_.reserve(2 * entries_.size() / kLeafSize + 1);
  build(0, static_cast<std::uint32_t>(entries_.size()));
}

std::int32_t DifferenceIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({AxisBox::from_point(entries_[begin].point), begin, end});
  AxisBox bbox = nodes_[id].bbox;
  for (std::uint32_t k = begin; k < end; ++k) bbox.extend(entries_[k].point);
  nodes_[id].bbox = bbox;
  if (end - begin <= kLeafSize) return id;

  const int axis = bbox.width() >= bbox.height() ? 0 : 1;
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(entries_.begin() + begin, entries_.begin() + mid,
                   entries_.begin() + end, [axis](const Entry& a, const Entry& b) {
                     return a.point[axis] < b.point[axis];
                   });
  const auto left = build(begin, mid);
  const auto right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

ContributionReport count_contributing_annuli(const DifferenceIndex& index,
                                             const TestDistanceInterval& interval,
                                             const AxisBox& box, std::size_t cap) {
  ContributionReport report;
  const Point2 center = box.center();
  const double half = box.diagonal() / 2;
  const double slack = scaled_tolerance(interval.ub + half);
  // Expanded ring around the box center: any annulus meeting the box has its
  // center within [lb - half, ub + half] of the box center.
  const double near = std::max(0.0, interval.lb - half - slack);
  const double far = interval.ub + half + slack;
  index.visit_ring(center, near, far, [&](const DifferenceIndex::Entry& e) {
    if (!annulus_intersects_box(Annulus{e.point, interval.lb, interval.ub}, box)) {
      return true;
    }
    ++report.count;
    report.loci.push_back(e.point);
    if (report.count >= cap) {
      report.truncated = true;
      report.loci.clear();
      return false;
    }
    return true;
  });
  return report;
}

std::vector<Point2> dedupe_points(std::vector<Point2> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Point2> kept;
  kept.reserve(pts.size());
  for (const auto& p : pts) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend() && p.x() - it->x() <= tol; ++it) {
      if (std::abs(p.y() - it->y()) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(p);
  }
  return kept;
}

std::vector<Translation> candidate_translations(std::span<const Point2> loci,
                                                double delta, const AxisBox& box) {
  const std::vector<Point2> centers =
      dedupe_points(std::vector<Point2>(loci.begin(), loci.end()), kDedupeTolerance);
  const std::size_t c = centers.size();

  std::vector<Point2> out;
  out.reserve(5 + 2 * c * c + 4 * c);
  out.push_back(box.center());
  for (const auto& corner : box.corners()) out.push_back(corner);

  std::vector<char> has_vertex(c, 0);
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = a + 1; b < c; ++b) {
      const auto pts =
          circle_circle_intersections(Circle{centers[a], delta}, Circle{centers[b], delta});
      if (pts.empty()) continue;
      has_vertex[a] = has_vertex[b] = 1;
      out.insert(out.end(), pts.begin(), pts.end());
    }
  }
  for (std::size_t a = 0; a < c; ++a) {
    const auto pts = circle_box_boundary_intersections(Circle{centers[a], delta}, box);
    if (pts.empty()) continue;
    has_vertex[a] = 1;
    out.insert(out.end(), pts.begin(), pts.end());
  }

  // A face without vertices is bounded by lone circles only. Stabbing each
  // lone circle's horizontal diameter and taking midpoints between
  // consecutive crossings puts a candidate in every such face.
  std::vector<double> xs;
  for (std::size_t a = 0; a < c; ++a) {
    if (has_vertex[a]) continue;
    const Point2& ca = centers[a];
    const double lo = std::max(box.x_lo, ca.x() - delta);
    const double hi = std::min(box.x_hi, ca.x() + delta);
    xs.assign({lo, hi});
    for (std::size_t b = 0; b < c; ++b) {
      if (b == a) continue;
      const double dy = ca.y() - centers[b].y();
      const double rem = delta * delta - dy * dy;
      if (rem < 0) continue;
      const double s = std::sqrt(rem);
      for (double x : {centers[b].x() - s, centers[b].x() + s}) {
        if (x > lo && x < hi) xs.push_back(x);
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      out.emplace_back((xs[k] + xs[k + 1]) / 2, ca.y());
    }
  }
  return dedupe_points(std::move(out), kDedupeTolerance);
}

double candidate_test_radius(double delta, std::span<const Point2> loci,
                             const AxisBox& box) {
  double magnitude = std::max({std::abs(box.x_lo), std::abs(box.x_hi),
                               std::abs(box.y_lo), std::abs(box.y_hi)});
  for (const auto& p : loci) magnitude = std::max(magnitude, p.cwiseAbs().maxCoeff());
  return delta + scaled_tolerance(delta + magnitude);
}

std::optional<Translation> local_arrangement_decide(const Curve& pi,
                                                    const Curve& sigma, double delta,
                                                    const AxisBox& box,
                                                    std::span<const Point2> loci,
                                                    FrechetQueryCounter& counter) {
  const double radius = candidate_test_radius(delta, loci, box);
  // Circles that miss the box boundary have a constant sign on it and cannot
  // split a face, so only contributing circles generate candidates.
  std::vector<Point2> active;
  active.reserve(loci.size());
  for (const auto& p : loci) {
    if (circle_contributes(Circle{p, delta}, box)) active.push_back(p);
  }
  // Every traversal pairs the first and the last vertices, so a candidate
  // outside either endpoint disk is infeasible without asking the decider.
  const Point2 start = pi.front() - sigma.front();
  const Point2 end = pi.back() - sigma.back();
  const double r2 = radius * radius;
  for (const auto& tau : candidate_translations(active, delta, box)) {
    if ((tau - start).squaredNorm() > r2 || (tau - end).squaredNorm() > r2) continue;
    if (decide_frechet(pi, translate_view(sigma, tau), radius, counter)) return tau;
  }
  return std::nullopt;
}

}  // namespace ftrans
