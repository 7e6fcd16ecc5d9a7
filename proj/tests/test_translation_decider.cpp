#include <doctest.h>

#include <cmath>
#include <random>

#include "ftrans/frechet.hpp"
#include "ftrans/translation_decider.hpp"
#include "oracles.hpp"

using namespace ftrans;

namespace {

const Curve kSeg = make_curve("seg", {Point2(0, 0), Point2(1, 0)});
const Curve kRev = make_curve("rev", {Point2(1, 0), Point2(0, 0)});

Curve shifted(const Curve& c, const Point2& t) {
  Curve out = c;
  for (auto& v : out.vertices) v += t;
  return out;
}

struct Instance {
  Curve pi, sigma;
  double delta;
  bool expected;
};

// Random integer instances with delta kept at least 1e-2 away from the
// translation-invariant optimum.
std::vector<Instance> random_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Instance> out;
  while (static_cast<int>(out.size()) < count) {
    Instance in{oracle::random_integer_curve(rng, len(rng)),
                oracle::random_integer_curve(rng, len(rng)), 0, false};
    const double v = oracle::value_by_candidates(in.pi, in.sigma);
    in.delta = v * (0.5 + u(rng));
    if (std::abs(in.delta - v) < 1e-2) continue;
    in.expected = in.delta > v;
    out.push_back(std::move(in));
  }
  return out;
}

}  // namespace

TEST_CASE("initial_search_box examples") {
  const Curve a = make_curve("a", {Point2(0, 0), Point2(10, 0)});
  const Curve o = make_curve("o", {Point2(0, 0), Point2(0, 0)});
  CHECK_FALSE(initial_search_box(a, o, 4).has_value());

  const Curve pi = make_curve("p", {Point2(0, 0), Point2(3, 1), Point2(2, 5)});
  const auto same = initial_search_box(pi, pi, 1);
  REQUIRE(same);
  CHECK(same->contains(Point2(0, 0)));
  CHECK(same->width() <= 2 + 1e-12);
  CHECK(same->height() <= 2 + 1e-12);

  const auto rev = initial_search_box(kSeg, kRev, 1);
  REQUIRE(rev);
  CHECK(rev->diagonal() <= 1e-9);
  CHECK(rev->contains(Point2(0, 0), 1e-9));
  const auto lens = disks_intersection_box<double>(Point2(-1, 0), Point2(1, 0), 1.0);
  REQUIRE(lens);
  CHECK(lens->contains(rev->center(), 1e-9));
}

TEST_CASE("initial_search_box keeps every feasible translation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 300; ++k) {
    const Curve a = oracle::random_real_curve(rng, 1 + k % 6, 5);
    const Curve b = oracle::random_real_curve(rng, 1 + k % 5, 5);
    const Point2 t = a.front() - b.front() + Point2(u(rng), u(rng));
    const double f = oracle::frechet_at(a, b, t);
    const auto box = initial_search_box(a, b, f);
    REQUIRE(box);
    CHECK(box->contains(t, 1e-9));
  }
}

TEST_CASE("halve_longest_edge") {
  const auto [a, b] = halve_longest_edge(AxisBox{0, 4, 0, 2});
  CHECK(a == AxisBox{0, 2, 0, 2});
  CHECK(b == AxisBox{2, 4, 0, 2});
  const auto [c, d] = halve_longest_edge(AxisBox{0, 2, 0, 2});
  CHECK(c.x_hi == 1);  // ties split x
  const auto [e, f] = halve_longest_edge(AxisBox{0, 1, 0, 3});
  CHECK(e == AxisBox{0, 1, 0, 1.5});
  CHECK(f == AxisBox{0, 1, 1.5, 3});
}

TEST_CASE("decide_translation examples") {
  const Curve pi = make_curve("p", {Point2(0, 0), Point2(2, 1), Point2(3, -1), Point2(4, 4)});
  const auto t = decide_translation(pi, shifted(pi, {5, 5}), 1e-6);
  CHECK(t.result);
  REQUIRE(t.witness);
  CHECK((*t.witness - Point2(-5, -5)).norm() <= 1e-6);

  CHECK_FALSE(decide_translation(kSeg, kRev, 0.9).result);
  CHECK(decide_translation(kSeg, kRev, 1.0).result);
  CHECK(oracle::decide_by_candidates(kSeg, kRev, 1.0));
  CHECK_FALSE(oracle::decide_by_candidates(kSeg, kRev, 0.9));
}

TEST_CASE("decide_translation matches the global candidate oracle") {
  for (const auto& in : random_suite(12, 150)) {
    const auto trace = decide_translation(in.pi, in.sigma, in.delta);
    CHECK(trace.result == in.expected);
    if (trace.result) {
      REQUIRE(trace.witness);
      // Witnesses are sound up to the tangency tolerance of vertex tests.
      CHECK(oracle::frechet_at(in.pi, in.sigma, *trace.witness) <= in.delta + 1e-9);
    }
  }
}

TEST_CASE("decide_translation is monotone and translation invariant") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-50, 50);
  for (const auto& in : random_suite(14, 60)) {
    const bool r = decide_translation(in.pi, in.sigma, in.delta).result;
    if (r) CHECK(decide_translation(in.pi, in.sigma, in.delta * 1.3 + 0.1).result);
    const Point2 t(u(rng), u(rng));
    CHECK(decide_translation(in.pi, shifted(in.sigma, t), in.delta).result == r);
  }
}

TEST_CASE("a failed lower-bound probe excludes the whole box") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0, 1);
  int exercised = 0;
  for (int k = 0; k < 400; ++k) {
    const Curve a = oracle::random_real_curve(rng, 5, 6);
    const Curve b = oracle::random_real_curve(rng, 5, 6);
    const Point2 c = a.front() - b.front() + Point2(2 * u(rng) - 1, 2 * u(rng) - 1);
    const double w = 0.1 + u(rng);
    const AxisBox box{c.x() - w, c.x() + w, c.y() - w * u(rng), c.y() + w};
    const double delta = 3 * u(rng);
    FrechetQueryCounter counter;
    if (decide_frechet(a, translate_view(b, box.center()), delta + box.diagonal() / 2,
                       counter)) {
      continue;
    }
    ++exercised;
    for (int s = 0; s < 100; ++s) {
      const Point2 t(box.x_lo + box.width() * u(rng), box.y_lo + box.height() * u(rng));
      CHECK(oracle::frechet_at(a, b, t) > delta);
    }
  }
  CHECK(exercised > 50);
}

TEST_CASE("decision results do not depend on the tuning parameters") {
  const DeciderParams settings[] = {{1, 4}, {500, 20}, {5000, 40}};
  for (const auto& in : random_suite(16, 80)) {
    for (const auto& p : settings) {
      CHECK(decide_translation(in.pi, in.sigma, in.delta, p).result == in.expected);
    }
  }
}

TEST_CASE("delta zero and single vertices") {
  const Curve pi = make_curve("p", {Point2(1, 1), Point2(2, 3)});
  CHECK(decide_translation(pi, shifted(pi, {-4, 2}), 0).result);
  const Curve bent = make_curve("b", {Point2(1, 1), Point2(2, 4)});
  CHECK_FALSE(decide_translation(pi, bent, 0).result);

  const Curve one = make_curve("o", {Point2(3, 3)});
  const Curve two = make_curve("t", {Point2(7, -2)});
  CHECK(decide_translation(one, two, 0).result);
  // One point against a segment of length 2: the best translation sits at
  // the segment midpoint.
  const Curve seg = make_curve("s", {Point2(0, 0), Point2(2, 0)});
  CHECK(decide_translation(one, seg, 1.0).result);
  CHECK_FALSE(decide_translation(one, seg, 0.99).result);
}
