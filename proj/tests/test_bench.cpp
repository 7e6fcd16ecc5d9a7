#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ftrans/bench.hpp"
#include "ftrans/translation_decider.hpp"
#include "oracles.hpp"

using namespace ftrans;

namespace {

// Writes a small two-class dataset and returns its manifest path.
std::filesystem::path make_dataset(const std::string& name, int per_class, int length,
                                   std::uint64_t seed) {
  const auto root = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);
  std::mt19937_64 rng(seed);
  std::ofstream manifest(root / "manifest.txt");
  for (const char* cls : {"a", "b"}) {
    std::filesystem::create_directories(root / cls);
    for (int k = 0; k < per_class; ++k) {
      const auto rel = std::filesystem::path(cls) / ("c" + std::to_string(k) + ".txt");
      Curve c = oracle::random_real_curve(rng, length, 10);
      write_curve(root / rel, c);
      manifest << rel.string() << '\n';
    }
  }
  return root / "manifest.txt";
}

// Tukey hinges from the depth formula, independent of summarize().
std::pair<double, double> hinges(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double depth = (std::floor((n + 1) / 2.0) + 1) / 2.0;
  const auto lo = static_cast<std::size_t>(std::floor(depth)) - 1;
  const auto hi = static_cast<std::size_t>(std::ceil(depth)) - 1;
  return {(v[lo] + v[hi]) / 2, (v[n - 1 - lo] + v[n - 1 - hi]) / 2};
}

// Circle/box-edge crossings by solving the edge quadratics directly.
int box_crossings(const Point2& c, double r, const AxisBox& b) {
  std::vector<Point2> pts;
  auto edge = [&](bool vertical, double at, double lo, double hi) {
    const double off = at - (vertical ? c.x() : c.y());
    const double rem = r * r - off * off;
    if (rem < 0) return;
    for (double s : {-std::sqrt(rem), std::sqrt(rem)}) {
      const double t = (vertical ? c.y() : c.x()) + s;
      if (t < lo || t > hi) continue;
      const Point2 p = vertical ? Point2(at, t) : Point2(t, at);
      bool dup = false;
      for (const auto& q : pts) dup |= (p - q).norm() < 1e-9;
      if (!dup) pts.push_back(p);
    }
  };
  edge(false, b.y_lo, b.x_lo, b.x_hi);
  edge(false, b.y_hi, b.x_lo, b.x_hi);
  edge(true, b.x_lo, b.y_lo, b.y_hi);
  edge(true, b.x_hi, b.y_lo, b.y_hi);
  return static_cast<int>(pts.size());
}

}  // namespace

TEST_CASE("query_factor examples") {
  CHECK(query_factor(false, -1) == 0.75);
  CHECK(query_factor(true, 2) == 17);
  CHECK(query_factor(true, -10) == doctest::Approx(1 + std::pow(4.0, -10)));
}

TEST_CASE("gen_queries is deterministic and consistent with the decider") {
  const auto manifest = make_dataset("ftrans_bench_gen", 4, 6, 31);
  const auto catalog = load_catalog(manifest);
  GenOptions opts;
  opts.pairs = 3;
  opts.seed = 9;
  const auto q1 = gen_queries(catalog, opts);
  const auto q2 = gen_queries(catalog, opts);
  std::ostringstream s1, s2;
  write_queries(s1, q1);
  write_queries(s2, q2);
  CHECK(s1.str() == s2.str());
  CHECK(q1.size() == 3 * 23);

  std::istringstream in(s1.str());
  CHECK(read_queries(in) == q1);

  for (const auto& q : q1) {
    const auto& curves = catalog.curves;
    auto find = [&](const std::string& id) {
      return *std::find_if(curves.begin(), curves.end(),
                           [&](const Curve& c) { return c.id == id; });
    };
    CHECK(q.curve_a != q.curve_b);
    const bool r = decide_translation(find(q.curve_a), find(q.curve_b), *q.delta).result;
    CHECK(r == (q.expected == "YES"));
  }

  GenOptions same = opts;
  same.same_class = true;
  for (const auto& q : gen_queries(catalog, same)) {
    CHECK(std::filesystem::path(q.curve_a).parent_path() ==
          std::filesystem::path(q.curve_b).parent_path());
  }

  GenOptions classes = opts;
  classes.class_pair_samples = 2;
  const auto v = gen_queries(catalog, classes);
  CHECK(v.size() == 3 * 2);  // (a,a), (a,b), (b,b)
  for (const auto& q : v) {
    CHECK(q.set == "VALUE");
    CHECK_FALSE(q.delta.has_value());
  }
}

TEST_CASE("bench CSV round-trips") {
  std::vector<BenchRecord> records{
      {0, "NO", -3, "a/x.txt", "b,y.txt", 0.1 + 0.2, "decider", "NO", 1.25, 17, 2, 12345.5},
      {1, "VALUE", 0, "a/\"q\".txt", "b", std::nullopt, "lmf", "0.30000000000000004",
       3e-5, 0, 0, std::nullopt},
      {2, "YES", 2, "p", "q", 1e300, "decider", "ERROR:bad, really", 0, 1, 0, 0.0},
  };
  std::ostringstream out;
  write_bench_csv(out, records);
  CHECK(out.str().rfind(std::string(kBenchHeader) + "\n", 0) == 0);
  std::istringstream in(out.str());
  CHECK(read_bench_csv(in) == records);

  std::istringstream bad("nope\n");
  CHECK_THROWS_AS(read_bench_csv(bad), DataError);
}

TEST_CASE("summarize and aggregate match a naive computation") {
  CHECK(summarize({1, 2, 3, 4, 5}).q1 == 2);
  CHECK(summarize({1, 2, 3, 4, 5}).q3 == 4);
  CHECK(summarize({1, 2, 3, 4}).q1 == 1.5);
  CHECK(summarize({1, 2, 3, 4}).q3 == 3.5);
  CHECK(summarize({7}).q1 == 7);

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<BenchRecord> records;
  for (int k = 0; k < 500; ++k) {
    BenchRecord r;
    r.query_id = k;
    r.set = k % 3 ? "YES" : "NO";
    r.level = k % 5 - 2;
    r.algorithm = k % 2 ? "lmf" : "decider";
    r.result = k % 41 == 0 ? "ERROR:x" : "YES";
    r.time_ms = u(rng);
    r.bb_calls = static_cast<std::uint64_t>(u(rng));
    if (k % 7) r.arr_estimate = u(rng);
    records.push_back(r);
  }
  const auto groups = aggregate(records);
  std::size_t total = 0;
  for (const auto& g : groups) {
    std::vector<double> t, arr;
    for (const auto& r : records) {
      if (r.set == g.set && r.level == g.level && r.algorithm == g.algorithm &&
          r.result.rfind("ERROR", 0) != 0) {
        t.push_back(r.time_ms);
        if (r.arr_estimate) arr.push_back(*r.arr_estimate);
      }
    }
    REQUIRE(t.size() == g.count);
    total += g.count;
    double sum = 0;
    for (double x : t) sum += x;
    CHECK(g.time_ms.mean == doctest::Approx(sum / t.size()).epsilon(1e-12));
    const auto [q1, q3] = hinges(t);
    CHECK(g.time_ms.q1 == q1);
    CHECK(g.time_ms.q3 == q3);
    REQUIRE(g.arr_estimate.has_value() == !arr.empty());
    if (!arr.empty()) CHECK(g.arr_estimate->q1 == hinges(arr).first);
  }
  CHECK(total == 500 - 13);
}

TEST_CASE("estimate_arrangement_size") {
  const Curve one = make_curve("o", {Point2(0, 0)});
  CHECK(estimate_arrangement_size(one, one, 1, 1000, 1) == 0);

  const Curve pi = make_curve("p", {Point2(0, 0), Point2(0.6, 0.3), Point2(1, 0)});
  const double delta = 0.8;
  const auto box = initial_search_box(pi, one, delta);
  REQUIRE(box);
  double exact = oracle::ordered_pair_intersections_in_box(pi, one, delta, *box);
  for (const auto& p : pi.vertices) exact += box_crossings(p, delta, *box);
  const double est = estimate_arrangement_size(pi, one, delta, 100000, 5);
  CHECK(std::abs(est - exact) <= 0.05 * exact);
  CHECK(est == estimate_arrangement_size(pi, one, delta, 100000, 5));
}

TEST_CASE("run_bench") {
  std::vector<QueryRecord> none;
  std::ostringstream empty;
  write_bench_csv(empty, run_bench(none, {}));
  CHECK(empty.str() == std::string(kBenchHeader) + "\n");

  const auto manifest = make_dataset("ftrans_bench_run", 2, 5, 33);
  const auto catalog = load_catalog(manifest);
  GenOptions opts;
  opts.pairs = 1;
  const auto queries = gen_queries(catalog, opts);

  BenchOptions decide;
  decide.threads = 2;
  decide.estimate_arrangement = true;
  decide.samples = 1000;
  const auto rows = run_bench(queries, decide);
  REQUIRE(rows.size() == queries.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].query_id == queries[k].query_id);
    CHECK(rows[k].result == queries[k].expected);
    CHECK(rows[k].arr_estimate.has_value());
  }

  BenchOptions values;
  values.mode = BenchMode::value_baselines;
  const auto v = run_bench(queries, values);
  REQUIRE(v.size() == 3);
  const double a = std::stod(v[0].result);
  CHECK(std::abs(std::stod(v[1].result) - a) <= 2e-7);
  CHECK(std::abs(std::stod(v[2].result) - a) <= 2e-7);

  std::vector<QueryRecord> broken{{0, "YES", 0, "/missing/a", "/missing/b", 1.0, "YES"}};
  const auto err = run_bench(broken, decide);
  REQUIRE(err.size() == 1);
  CHECK(err[0].result.rfind("ERROR:", 0) == 0);
}
