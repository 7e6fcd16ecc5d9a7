#include <doctest.h>

#include <cmath>
#include <random>

#include "ftrans/translation_value.hpp"
#include "oracles.hpp"

using namespace ftrans;

namespace {

constexpr double kEps = 1e-7;

const Curve kSeg = make_curve("seg", {Point2(0, 0), Point2(1, 0)});
const Curve kRev = make_curve("rev", {Point2(1, 0), Point2(0, 0)});

Curve shifted(const Curve& c, const Point2& t) {
  Curve out = c;
  for (auto& v : out.vertices) v += t;
  return out;
}

}  // namespace

TEST_CASE("initial_estimates examples") {
  FrechetQueryCounter counter;
  const Curve pi = make_curve("p", {Point2(0, 0), Point2(2, 1), Point2(5, 2)});
  const auto same = initial_estimates(pi, pi, counter);
  CHECK(same.lb == 0);
  CHECK(same.ub <= kEps);

  const auto rev = initial_estimates(kSeg, kRev, counter);
  CHECK(rev.lb == doctest::Approx(1).epsilon(kEps));
  CHECK(rev.ub >= 2);
  CHECK(rev.ub <= 2 + kEps);

  const Curve a = make_curve("a", {Point2(0, 0)});
  const Curve b = make_curve("b", {Point2(3, 4)});
  const auto pts = initial_estimates(a, b, counter);
  CHECK(pts.lb == 0);
  CHECK(pts.ub <= kEps);
}

TEST_CASE("value examples") {
  const Curve pi = make_curve("p", {Point2(0, 0), Point2(2, 1), Point2(5, 2), Point2(4, 6)});
  const Curve moved = shifted(pi, {7, -3});
  CHECK(lmf_value(pi, moved).value <= kEps);
  CHECK(binary_search_value(pi, pi).value <= kEps);
  CHECK(lipschitz_only_value(pi, moved).value <= kEps);

  CHECK(std::abs(lmf_value(kSeg, kRev).value - 1) <= kEps);
  CHECK(std::abs(binary_search_value(kSeg, kRev).value - 1) <= kEps);
  CHECK(std::abs(lipschitz_only_value(kSeg, kRev).value - 1) <= kEps);
}

TEST_CASE("methods agree and meet the brute-force optimum") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> len(1, 6);
  ValueParams checked;
  checked.check_invariants = true;
  for (int k = 0; k < 60; ++k) {
    const Curve a = oracle::random_real_curve(rng, len(rng), 8);
    const Curve b = oracle::random_real_curve(rng, len(rng), 8);
    const auto lmf = lmf_value(a, b, checked);
    const auto bin = binary_search_value(a, b);
    const auto lip = lipschitz_only_value(a, b, checked);
    const double truth = oracle::value_by_candidates(a, b);
    INFO("instance ", k);
    CHECK(std::abs(lmf.value - bin.value) <= 2 * kEps);
    CHECK(std::abs(lmf.value - lip.value) <= 2 * kEps);
    CHECK(std::abs(lmf.value - truth) <= kEps + 1e-10);

    REQUIRE(lmf.witness);
    CHECK(oracle::frechet_at(a, b, *lmf.witness) <= lmf.value + kEps);
    const double f_start = oracle::frechet_at(a, b, a.front() - b.front());
    CHECK(f_start <= 2 * (lmf.value + kEps));
  }
}

TEST_CASE("the arrangement base case saves black-box calls") {
  std::mt19937_64 rng(22);
  std::uint64_t lmf_calls = 0, lip_calls = 0;
  for (int k = 0; k < 20; ++k) {
    const Curve a = oracle::random_real_curve(rng, 12, 10);
    const Curve b = oracle::random_real_curve(rng, 12, 10);
    lmf_calls += lmf_value(a, b).black_box_calls;
    lip_calls += lipschitz_only_value(a, b).black_box_calls;
  }
  CHECK(lip_calls > lmf_calls);
}

TEST_CASE("epsilon controls the additive error") {
  std::mt19937_64 rng(23);
  for (double eps : {1e-3, 1e-5}) {
    ValueParams p;
    p.epsilon = eps;
    for (int k = 0; k < 10; ++k) {
      const Curve a = oracle::random_real_curve(rng, 4, 6);
      const Curve b = oracle::random_real_curve(rng, 5, 6);
      const double truth = oracle::value_by_candidates(a, b);
      CHECK(std::abs(lmf_value(a, b, p).value - truth) <= eps + 1e-10);
      CHECK(std::abs(binary_search_value(a, b, p).value - truth) <= eps + 1e-10);
    }
  }
}
