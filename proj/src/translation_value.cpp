#include "ftrans/translation_value.hpp"

#include <chrono>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

#include "ftrans/translation_decider.hpp"

namespace ftrans {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Lipschitz-only boxes stop splitting here; far below any useful epsilon.
constexpr int kLipschitzDepthGuard = 256;

// Fine searches stop at epsilon * kFineFraction. An incumbent that overshoots
// the optimum by nearly epsilon would leave no slack for the termination
// test, and near a minimum where f grows quadratically the boxes would then
// have to shrink far below epsilon along the whole valley.
constexpr double kFineFraction = 0.25;

struct Estimates {
  TestDistanceInterval interval;
  Translation best_translation;
};

double value_at(const Curve& pi, const Curve& sigma, const CurveStats& ps,
                const CurveStats& ss, const Translation& tau, double epsilon,
                FrechetQueryCounter& counter) {
  const auto view = translate_view(sigma, tau);
  const double lo = endpoint_lower_bound(pi, view);
  double hi = bbox_upper_bound(ps, ss.translated(tau));
  hi += scaled_tolerance(hi);
  // The bounding-box bound always holds, so the bracket is valid.
  return frechet_value_search(pi, view, lo, hi, epsilon, counter).value_or(hi);
}

Estimates compute_estimates(const Curve& pi, const Curve& sigma,
                            FrechetQueryCounter& counter, double epsilon) {
  const CurveStats ps = curve_stats(pi);
  const CurveStats ss = curve_stats(sigma);
  const Translation t_start = pi.front() - sigma.front();
  const Translation t_end = pi.back() - sigma.back();
  const double d_start = value_at(pi, sigma, ps, ss, t_start, epsilon, counter);
  const double d_end =
      (t_end == t_start) ? d_start : value_at(pi, sigma, ps, ss, t_end, epsilon, counter);
  Estimates e;
  // Searched values overshoot by at most epsilon.
  e.interval.lb = std::max(0.0, (std::max(d_start, d_end) - epsilon) / 2);
  e.interval.ub = std::min(d_start, d_end);
  e.interval.lb = std::min(e.interval.lb, e.interval.ub);
  e.best_translation = d_start <= d_end ? t_start : t_end;
  return e;
}

struct BoxOrder {
  bool operator()(const PrioritizedBox& a, const PrioritizedBox& b) const {
    if (a.lower_bound != b.lower_bound) return a.lower_bound > b.lower_bound;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.seq > b.seq;
  }
};

class InvariantChecker {
 public:
  InvariantChecker(const Curve& pi, const Curve& sigma) : pi_(pi), sigma_(sigma) {}

  void check(const PrioritizedBox& popped, double queue_min, double upper,
             const Translation& witness) {
    if (popped.lower_bound > queue_min) {
      throw std::logic_error("popped box does not carry the smallest lower bound");
    }
    const double at_witness = frechet_value_exact(pi_, translate_view(sigma_, witness));
    if (at_witness > upper + 1e-9) {
      throw std::logic_error("global upper bound below witness value");
    }
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const AxisBox& b = popped.box;
    for (int k = 0; k < 4; ++k) {
      const Translation tau(b.x_lo + u01(rng_) * b.width(), b.y_lo + u01(rng_) * b.height());
      const double f = frechet_value_exact(pi_, translate_view(sigma_, tau));
      if (f < popped.lower_bound - 1e-9) {
        throw std::logic_error("local lower bound exceeds sampled value " +
                               std::to_string(f));
      }
    }
  }

 private:
  const Curve& pi_;
  const Curve& sigma_;
  std::mt19937_64 rng_{12345};
};

ValueTrace branch_and_bound(const Curve& pi, const Curve& sigma, const ValueParams& params,
                            bool use_arrangement) {
  const auto t0 = Clock::now();
  ValueTrace trace;
  FrechetQueryCounter counter;
  const double eps = params.epsilon;
  const double fine = eps * kFineFraction;

  auto finish = [&](double value, const Translation& witness) {
    trace.value = value;
    trace.witness = witness;
    trace.black_box_calls = counter.calls;
    trace.total_ms = elapsed_ms(t0);
    return trace;
  };

  if (pi.size() == 1 && sigma.size() == 1) {
    return finish(0.0, pi.front() - sigma.front());
  }

  std::optional<DifferenceIndex> index;
  if (use_arrangement) {
    const auto tp = Clock::now();
    index.emplace(pi, sigma);
    trace.preprocessing_ms = elapsed_ms(tp);
  }

  const auto te = Clock::now();
  const Estimates est = compute_estimates(pi, sigma, counter, eps);
  trace.estimates_ms = elapsed_ms(te);

  double best = est.interval.ub;
  Translation witness = est.best_translation;
  if (best <= est.interval.lb + eps) return finish(best, witness);

  const CurveStats ps = curve_stats(pi);
  const CurveStats ss = curve_stats(sigma);
  const auto root = initial_search_box(pi, ps, sigma, ss, best);
  if (!root) return finish(best, witness);

  const Point2 start = pi.front() - sigma.front();
  const Point2 end = pi.back() - sigma.back();
  const std::size_t cap = contributing_cap(params.gamma_size);
  std::optional<InvariantChecker> checker;
  if (params.check_invariants) checker.emplace(pi, sigma);

  std::priority_queue<PrioritizedBox, std::vector<PrioritizedBox>, BoxOrder> queue;
  std::uint64_t seq = 0;
  queue.push({*root, 0, est.interval.lb, seq++});

  while (!queue.empty()) {
    const PrioritizedBox node = queue.top();
    queue.pop();
    if (checker) {
      checker->check(node, queue.empty() ? node.lower_bound : queue.top().lower_bound,
                     best, witness);
    }
    // Best-first: every remaining box has a lower bound at least this large.
    if (best <= node.lower_bound + eps) break;
    ++trace.boxes_processed;

    const Translation center = node.box.center();
    const double diag = node.box.diagonal();
    const auto view = translate_view(sigma, center);
    double lb = node.lower_bound;

    if (decide_frechet(pi, view, best, counter)) {
      const double lo = std::min(best, std::max(lb, endpoint_lower_bound(pi, view)));
      const double v = *frechet_value_search(pi, view, lo, best, fine, counter, true);
      if (v < best) {
        best = v;
        witness = center;
      }
      lb = std::max(lb, v - fine - diag / 2);
    } else {
      if (!decide_frechet(pi, view, best + diag / 2, counter)) continue;
      const double tol = std::max(eps, params.coarse_factor * diag);
      const double v =
          *frechet_value_search(pi, view, best, best + diag / 2, tol, counter, true);
      lb = std::max(lb, v - tol - diag / 2);
    }
    if (best <= lb + eps) continue;

    const bool at_max_depth = node.depth >= params.gamma_depth;
    if (use_arrangement) {
      const auto ta = Clock::now();
      const double lo = std::max(0.0, lb);
      const ContributionReport report = count_contributing_annuli(
          *index, {lo, best}, node.box, at_max_depth ? kNoCap : cap);
      const std::uint64_t u = size_bound(report.count);
      bool resolved = false;
      if (u == 0) {
        resolved = true;
      } else if (u <= params.gamma_size || at_max_depth) {
        resolved = true;
        ++trace.base_cases;
        // Improvement check first, then bisection on [lo, best].
        double probe = best - eps;
        if (probe >= lo) {
          if (auto w = local_arrangement_decide(pi, sigma, probe, node.box, report.loci,
                                                counter)) {
            double hi = probe;
            best = hi;
            witness = *w;
            double low = lo;
            while (hi - low > fine) {
              const double mid = low + (hi - low) / 2;
              if (auto wm = local_arrangement_decide(pi, sigma, mid, node.box,
                                                     report.loci, counter)) {
                hi = mid;
                best = mid;
                witness = *wm;
              } else {
                low = mid;
              }
            }
          }
        }
      }
      trace.arrangement_ms += elapsed_ms(ta);
      if (resolved) continue;
    } else if (node.depth >= kLipschitzDepthGuard) {
      continue;
    }

    const auto [first, second] = halve_longest_edge(node.box);
    for (const AxisBox& child : {first, second}) {
      if (!disk_intersects_box(start, best, child) ||
          !disk_intersects_box(end, best, child)) {
        continue;
      }
      queue.push({child, node.depth + 1, lb, seq++});
    }
  }
  return finish(best, witness);
}

}  // namespace

TestDistanceInterval initial_estimates(const Curve& pi, const Curve& sigma,
                                       FrechetQueryCounter& counter, double epsilon) {
  return compute_estimates(pi, sigma, counter, epsilon).interval;
}

ValueTrace lmf_value(const Curve& pi, const Curve& sigma, const ValueParams& params) {
  return branch_and_bound(pi, sigma, params, true);
}

ValueTrace lipschitz_only_value(const Curve& pi, const Curve& sigma,
                                const ValueParams& params) {
  return branch_and_bound(pi, sigma, params, false);
}

ValueTrace binary_search_value(const Curve& pi, const Curve& sigma,
                               const ValueParams& params) {
  const auto t0 = Clock::now();
  ValueTrace trace;
  FrechetQueryCounter counter;
  const auto te = Clock::now();
  const Estimates est = compute_estimates(pi, sigma, counter, params.epsilon);
  trace.estimates_ms = elapsed_ms(te);
  trace.black_box_calls = counter.calls;
  trace.witness = est.best_translation;

  const DeciderParams dp{params.gamma_size, params.gamma_depth};
  double lo = est.interval.lb;
  double hi = est.interval.ub;
  while (hi - lo > params.epsilon) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const DeciderTrace d = decide_translation(pi, sigma, mid, dp);
    trace.black_box_calls += d.black_box_calls;
    trace.boxes_processed += d.boxes_processed;
    trace.base_cases += d.base_cases;
    if (d.result) {
      hi = mid;
      trace.witness = d.witness;
    } else {
      lo = mid;
    }
  }
  trace.value = lo + (hi - lo) / 2;
  trace.total_ms = elapsed_ms(t0);
  return trace;
}

}  // namespace ftrans
