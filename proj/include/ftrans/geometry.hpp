#ifndef FTRANS_GEOMETRY_HPP
#define FTRANS_GEOMETRY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace ftrans {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2 = Vector2<double>;
using Translation = Vector2<double>;

/// Absolute tolerance used when classifying tangencies. Predicates scale it by
/// max(1, magnitude of the compared quantities).
inline constexpr double kTangencyTolerance = 1e-12;

template <typename Scalar>
inline Scalar scaled_tolerance(Scalar magnitude) {
  return Scalar(kTangencyTolerance) * std::max(Scalar(1), std::abs(magnitude));
}

template <typename Scalar>
struct BasicAxisBox {
  Scalar x_lo{0}, x_hi{0}, y_lo{0}, y_hi{0};

  static BasicAxisBox from_point(const Vector2<Scalar>& p) {
    return {p.x(), p.x(), p.y(), p.y()};
  }

  Vector2<Scalar> center() const {
    return {(x_lo + x_hi) / 2, (y_lo + y_hi) / 2};
  }
  Scalar width() const { return x_hi - x_lo; }
  Scalar height() const { return y_hi - y_lo; }
  Scalar diagonal() const { return std::hypot(width(), height()); }
  bool empty() const { return x_lo > x_hi || y_lo > y_hi; }

  bool contains(const Vector2<Scalar>& p, Scalar tol = Scalar(0)) const {
    return p.x() >= x_lo - tol && p.x() <= x_hi + tol && p.y() >= y_lo - tol &&
           p.y() <= y_hi + tol;
  }

  void extend(const Vector2<Scalar>& p) {
    x_lo = std::min(x_lo, p.x());
    x_hi = std::max(x_hi, p.x());
    y_lo = std::min(y_lo, p.y());
    y_hi = std::max(y_hi, p.y());
  }

  BasicAxisBox translated(const Vector2<Scalar>& t) const {
    return {x_lo + t.x(), x_hi + t.x(), y_lo + t.y(), y_hi + t.y()};
  }

  std::array<Vector2<Scalar>, 4> corners() const {
    return {Vector2<Scalar>(x_lo, y_lo), Vector2<Scalar>(x_hi, y_lo),
            Vector2<Scalar>(x_hi, y_hi), Vector2<Scalar>(x_lo, y_hi)};
  }

  bool operator==(const BasicAxisBox&) const = default;
};

template <typename Scalar>
struct BasicCircle {
  Vector2<Scalar> center;
  Scalar radius{0};
};

template <typename Scalar>
struct BasicAnnulus {
  Vector2<Scalar> center;
  Scalar r_inner{0};
  Scalar r_outer{0};
};

using AxisBox = BasicAxisBox<double>;
using Circle = BasicCircle<double>;
using Annulus = BasicAnnulus<double>;

/// Intersection of two boxes; may be empty().
template <typename Scalar>
BasicAxisBox<Scalar> intersect(const BasicAxisBox<Scalar>& a,
                               const BasicAxisBox<Scalar>& b) {
  return {std::max(a.x_lo, b.x_lo), std::min(a.x_hi, b.x_hi),
          std::max(a.y_lo, b.y_lo), std::min(a.y_hi, b.y_hi)};
}

/// Euclidean distance from p to the closed box (0 inside).
template <typename Scalar>
Scalar min_distance(const Vector2<Scalar>& p, const BasicAxisBox<Scalar>& b) {
  const Scalar dx = std::max({b.x_lo - p.x(), Scalar(0), p.x() - b.x_hi});
  const Scalar dy = std::max({b.y_lo - p.y(), Scalar(0), p.y() - b.y_hi});
  return std::hypot(dx, dy);
}

/// Distance from p to the farthest point of the box.
template <typename Scalar>
Scalar max_distance(const Vector2<Scalar>& p, const BasicAxisBox<Scalar>& b) {
  const Scalar dx = std::max(std::abs(p.x() - b.x_lo), std::abs(p.x() - b.x_hi));
  const Scalar dy = std::max(std::abs(p.y() - b.y_lo), std::abs(p.y() - b.y_hi));
  return std::hypot(dx, dy);
}

/// Boundary intersections of two circles. Coincident circles yield none.
template <typename Scalar>
std::vector<Vector2<Scalar>> circle_circle_intersections(
    const BasicCircle<Scalar>& a, const BasicCircle<Scalar>& b) {
  std::vector<Vector2<Scalar>> out;
  const Vector2<Scalar> delta = b.center - a.center;
  const Scalar d = delta.norm();
  const Scalar tol = scaled_tolerance(std::max({d, a.radius, b.radius}));
  if (d <= tol) return out;  // concentric: coincident or nested, no points
  if (d > a.radius + b.radius + tol) return out;
  if (d < std::abs(a.radius - b.radius) - tol) return out;

  const Scalar along =
      (d * d + a.radius * a.radius - b.radius * b.radius) / (2 * d);
  const Scalar h2 = a.radius * a.radius - along * along;
  const Vector2<Scalar> unit = delta / d;
  const Vector2<Scalar> foot = a.center + along * unit;
  if (h2 <= tol * std::max(Scalar(1), a.radius)) {
    out.push_back(foot);
    return out;
  }
  const Scalar h = std::sqrt(h2);
  const Vector2<Scalar> normal(-unit.y(), unit.x());
  out.push_back(foot + h * normal);
  out.push_back(foot - h * normal);
  return out;
}

namespace detail {

// Crossings of the circle with the line coord[axis] == value, restricted to
// the other coordinate lying in [lo, hi].
template <typename Scalar>
void circle_line_crossings(const BasicCircle<Scalar>& c, int axis, Scalar value,
                           Scalar lo, Scalar hi,
                           std::vector<Vector2<Scalar>>& out) {
  const int other = 1 - axis;
  const Scalar offset = value - c.center[axis];
  const Scalar tol = scaled_tolerance(std::max(c.radius, std::abs(offset)));
  const Scalar rem = c.radius * c.radius - offset * offset;
  if (rem < -tol * std::max(Scalar(1), c.radius)) return;
  auto emit = [&](Scalar t) {
    if (t < lo - tol || t > hi + tol) return;
    Vector2<Scalar> p;
    p[axis] = value;
    p[other] = std::clamp(t, lo, hi);
    out.push_back(p);
  };
  if (rem <= tol * std::max(Scalar(1), c.radius)) {
    emit(c.center[other]);
    return;
  }
  const Scalar s = std::sqrt(rem);
  emit(c.center[other] - s);
  emit(c.center[other] + s);
}

}  // namespace detail

/// All points where the circle boundary meets the four box edges.
/// A crossing through a corner is reported once.
template <typename Scalar>
std::vector<Vector2<Scalar>> circle_box_boundary_intersections(
    const BasicCircle<Scalar>& c, const BasicAxisBox<Scalar>& b) {
  std::vector<Vector2<Scalar>> raw;
  detail::circle_line_crossings(c, 1, b.y_lo, b.x_lo, b.x_hi, raw);
  detail::circle_line_crossings(c, 1, b.y_hi, b.x_lo, b.x_hi, raw);
  detail::circle_line_crossings(c, 0, b.x_lo, b.y_lo, b.y_hi, raw);
  detail::circle_line_crossings(c, 0, b.x_hi, b.y_lo, b.y_hi, raw);
  std::vector<Vector2<Scalar>> out;
  const Scalar tol = scaled_tolerance(c.radius);
  for (const auto& p : raw) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& q) {
      return (p - q).cwiseAbs().maxCoeff() <= tol;
    });
    if (!dup) out.push_back(p);
  }
  return out;
}

/// True iff the circle boundary meets the closed box: the circle lies inside
/// the box or crosses its boundary.
template <typename Scalar>
bool circle_contributes(const BasicCircle<Scalar>& c,
                        const BasicAxisBox<Scalar>& b) {
  const Scalar near = min_distance(c.center, b);
  const Scalar far = max_distance(c.center, b);
  const Scalar tol = scaled_tolerance(std::max(far, c.radius));
  return near <= c.radius + tol && c.radius <= far + tol;
}

/// True iff the closed annulus meets the closed box.
template <typename Scalar>
bool annulus_intersects_box(const BasicAnnulus<Scalar>& a,
                            const BasicAxisBox<Scalar>& b) {
  const Scalar near = min_distance(a.center, b);
  const Scalar far = max_distance(a.center, b);
  const Scalar tol = scaled_tolerance(std::max(far, a.r_outer));
  return near <= a.r_outer + tol && a.r_inner <= far + tol;
}

/// Tight bounding box of the lens D_r(p) ∩ D_r(q), or nullopt when the disks
/// are disjoint.
template <typename Scalar>
std::optional<BasicAxisBox<Scalar>> disks_intersection_box(
    const Vector2<Scalar>& p, const Vector2<Scalar>& q, Scalar radius) {
  const Scalar d = (p - q).norm();
  if (d > 2 * radius) return std::nullopt;
  const Scalar tol = scaled_tolerance(std::max(radius, p.cwiseAbs().maxCoeff()));

  std::vector<Vector2<Scalar>> pts = circle_circle_intersections(
      BasicCircle<Scalar>{p, radius}, BasicCircle<Scalar>{q, radius});
  auto add_extremes = [&](const Vector2<Scalar>& c, const Vector2<Scalar>& other) {
    const Vector2<Scalar> dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& u : dirs) {
      const Vector2<Scalar> e = c + radius * u;
      if ((e - other).norm() <= radius + tol) pts.push_back(e);
    }
  };
  add_extremes(p, q);
  add_extremes(q, p);
  if (pts.empty()) {
    // Only reachable through rounding at exact tangency.
    pts.push_back((p + q) / 2);
  }
  auto box = BasicAxisBox<Scalar>::from_point(pts.front());
  for (const auto& v : pts) box.extend(v);
  return box;
}

/// True iff the closed disk meets the closed box.
template <typename Scalar>
bool disk_intersects_box(const Vector2<Scalar>& center, Scalar radius,
                         const BasicAxisBox<Scalar>& b) {
  return min_distance(center, b) <= radius + scaled_tolerance(radius);
}

}  // namespace ftrans

#endif  // FTRANS_GEOMETRY_HPP
