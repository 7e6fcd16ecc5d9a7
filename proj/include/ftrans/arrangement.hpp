#ifndef FTRANS_ARRANGEMENT_HPP
#define FTRANS_ARRANGEMENT_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ftrans/curves.hpp"
#include "ftrans/frechet.hpp"

namespace ftrans {

inline constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

/// Maximal number of arrangement vertices produced by c circles inside a box:
/// two per circle pair and two per circle/box crossing, 2(c + c^2).
constexpr std::uint64_t size_bound(std::uint64_t c) { return 2 * (c + c * c); }

/// Smallest count c with size_bound(c) > gamma_size. Counting can stop there.
std::size_t contributing_cap(std::uint64_t gamma_size);

struct ContributionReport {
  std::size_t count = 0;
  std::vector<Point2> loci;  // empty when truncated
  bool truncated = false;
};

/// Naive scan over the circles C_delta(pi_i - sigma_j).
ContributionReport count_contributing_circles(const Curve& pi, const Curve& sigma,
                                              double delta, const AxisBox& box,
                                              std::size_t cap = kNoCap);

struct TestDistanceInterval {
  double lb = 0;
  double ub = 0;
};

/// Static kd-tree over the difference points pi_i - sigma_j.
class DifferenceIndex {
 public:
  struct Entry {
    Point2 point;
    std::uint32_t i;
    std::uint32_t j;
  };

  DifferenceIndex(const Curve& pi, const Curve& sigma);

  std::size_t size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  /// Visits entries whose distance to `center` lies in [near, far], pruning
  /// subtrees by their bounding boxes. The visitor returns false to stop.
  template <typename Visitor>
  void visit_ring(const Point2& center, double near, double far, Visitor&& visit) const;

 private:
  struct Node {
    AxisBox bbox;
    std::uint32_t begin, end;
    std::int32_t left = -1, right = -1;
  };
  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
};

/// Difference points whose annulus D_ub \ D_lb meets the box.
ContributionReport count_contributing_annuli(const DifferenceIndex& index,
                                             const TestDistanceInterval& interval,
                                             const AxisBox& box,
                                             std::size_t cap = kNoCap);

/// Face-covering candidate translations for the circles of radius delta
/// around `loci`: circle/circle and circle/box vertices, the box center and
/// corners, and horizontal stabbing midpoints for circles carrying no vertex.
/// Deduplicated with absolute tolerance 1e-9.
std::vector<Translation> candidate_translations(std::span<const Point2> loci,
                                                double delta, const AxisBox& box);

/// Radius used when testing candidates. Arrangement vertices lie exactly on
/// their circles, so after rounding a vertex of a feasible face can sit just
/// outside it; the test radius absorbs that with a tolerance scaled to the
/// coordinate magnitude.
double candidate_test_radius(double delta, std::span<const Point2> loci,
                             const AxisBox& box);

/// Tests every candidate with the fixed-translation decider at
/// candidate_test_radius. Returns a witness translation, or nullopt which
/// certifies that no translation in the box achieves distance <= delta
/// (given complete loci).
std::optional<Translation> local_arrangement_decide(const Curve& pi,
                                                    const Curve& sigma, double delta,
                                                    const AxisBox& box,
                                                    std::span<const Point2> loci,
                                                    FrechetQueryCounter& counter);

/// Removes points within `tol` (max-norm) of an earlier kept point.
std::vector<Point2> dedupe_points(std::vector<Point2> pts, double tol);

// ---------------------------------------------------------------------------

template <typename Visitor>
void DifferenceIndex::visit_ring(const Point2& center, double near, double far,
                                 Visitor&& visit) const {
  if (nodes_.empty()) return;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (min_distance(center, node.bbox) > far ||
        max_distance(center, node.bbox) < near) {
      continue;
    }
    if (node.left < 0) {
      for (std::uint32_t k = node.begin; k < node.end; ++k) {
        const double d = (entries_[k].point - center).norm();
        if (d >= near && d <= far && !visit(entries_[k])) return;
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
}

}  // namespace ftrans

#endif  // FTRANS_ARRANGEMENT_HPP
