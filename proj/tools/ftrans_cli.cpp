// Command-line front end: decide, value, gen-queries, bench,
// estimate-arrangement.
#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "ftrans/bench.hpp"
#include "ftrans/translation_decider.hpp"
#include "ftrans/translation_value.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Common {
  std::uint64_t gamma_size = 200;
  int gamma_depth = 30;
  double epsilon = 1e-7;
  double coarse_factor = 0.125;

  ftrans::ValueParams value_params() const {
    ftrans::ValueParams p;
    p.epsilon = epsilon;
    p.gamma_size = gamma_size;
    p.gamma_depth = gamma_depth;
    p.coarse_factor = coarse_factor;
    return p;
  }
};

void print_witness(std::ostream& out, const std::optional<ftrans::Translation>& w) {
  if (w) {
    out << "witness=" << ftrans::format_double(w->x()) << ','
        << ftrans::format_double(w->y()) << '\n';
  }
}

// Output goes to a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ftrans::DataError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Fréchet distance under translation"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--gamma-size", common.gamma_size, "arrangement size threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--gamma-depth", common.gamma_depth, "branch-and-bound depth threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--epsilon", common.epsilon, "additive precision")
      ->check(CLI::PositiveNumber);
  app.add_option("--coarse-factor", common.coarse_factor,
                 "lower-bound evaluation tolerance per unit box diagonal")
      ->check(CLI::PositiveNumber);

  std::string curve_a, curve_b;
  double delta = 0;

  auto* decide = app.add_subcommand("decide", "decide d_transF(A, B) <= delta");
  decide->add_option("curveA", curve_a)->required();
  decide->add_option("curveB", curve_b)->required();
  decide->add_option("--delta", delta)->required()->check(CLI::NonNegativeNumber);

  std::string method = "lmf";
  auto* value = app.add_subcommand("value", "approximate d_transF(A, B)");
  value->add_option("curveA", curve_a)->required();
  value->add_option("curveB", curve_b)->required();
  value->add_option("--method", method)
      ->check(CLI::IsMember({"lmf", "binsearch", "lipschitz"}));

  std::string manifest, output;
  ftrans::GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-queries", "generate NO/YES query sets");
  gen_cmd->add_option("--manifest", manifest)->required();
  gen_cmd->add_option("--pairs", gen.pairs)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--same-class", gen.same_class);
  gen_cmd->add_option("--class-pairs", gen.class_pair_samples,
                      "emit N value pairs per class pair instead");
  gen_cmd->add_option("--output", output);

  std::string queries_path, mode = "decide";
  ftrans::BenchOptions bench;
  std::string summary_path;
  auto* bench_cmd = app.add_subcommand("bench", "run a query file");
  bench_cmd->add_option("--queries", queries_path)->required();
  bench_cmd->add_option("--mode", mode)
      ->check(CLI::IsMember({"decide", "value", "value-baselines"}));
  bench_cmd->add_option("--threads", bench.threads)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output", output);
  bench_cmd->add_option("--summary", summary_path, "aggregate file (default stderr)");
  bench_cmd->add_flag("--estimate-arrangement", bench.estimate_arrangement);
  bench_cmd->add_option("--samples", bench.samples)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);

  std::uint64_t samples = 100000, seed = 1;
  auto* est = app.add_subcommand("estimate-arrangement", "sampled arrangement size");
  est->add_option("curveA", curve_a)->required();
  est->add_option("curveB", curve_b)->required();
  est->add_option("--delta", delta)->required()->check(CLI::NonNegativeNumber);
  est->add_option("--samples", samples)->check(CLI::PositiveNumber);
  est->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*decide) {
      const auto a = ftrans::load_curve(curve_a);
      const auto b = ftrans::load_curve(curve_b);
      const auto t = ftrans::decide_translation(a, b, delta,
                                                {common.gamma_size, common.gamma_depth});
      std::cout << "result=" << (t.result ? "YES" : "NO") << '\n';
      print_witness(std::cout, t.witness);
      std::cout << "bb_calls=" << t.black_box_calls << "\nboxes=" << t.boxes_processed
                << "\nbase_cases=" << t.base_cases << '\n';
    } else if (*value) {
      const auto a = ftrans::load_curve(curve_a);
      const auto b = ftrans::load_curve(curve_b);
      const auto p = common.value_params();
      ftrans::ValueTrace t;
      if (method == "lmf") {
        t = ftrans::lmf_value(a, b, p);
      } else if (method == "binsearch") {
        t = ftrans::binary_search_value(a, b, p);
      } else {
        t = ftrans::lipschitz_only_value(a, b, p);
      }
      std::cout << "value=" << ftrans::format_double(t.value) << '\n';
      print_witness(std::cout, t.witness);
      std::cout << "bb_calls=" << t.black_box_calls << "\nboxes=" << t.boxes_processed
                << "\nbase_cases=" << t.base_cases
                << "\ntime_ms=" << ftrans::format_double(t.total_ms) << '\n';
    } else if (*gen_cmd) {
      gen.params = common.value_params();
      const auto catalog = ftrans::load_catalog(manifest);
      const auto queries = ftrans::gen_queries(catalog, gen);
      Sink sink(output);
      ftrans::write_queries(sink.stream(), queries);
    } else if (*bench_cmd) {
      std::ifstream in(queries_path, std::ios::binary);
      if (!in) throw ftrans::DataError("cannot open " + queries_path);
      const auto queries = ftrans::read_queries(in);
      bench.mode = *ftrans::parse_bench_mode(mode);
      bench.params = common.value_params();
      const auto records = ftrans::run_bench(queries, bench);
      Sink sink(output);
      ftrans::write_bench_csv(sink.stream(), records);
      const auto groups = ftrans::aggregate(records);
      if (summary_path.empty()) {
        ftrans::write_summary(std::cerr, groups);
      } else {
        Sink summary(summary_path);
        ftrans::write_summary(summary.stream(), groups);
      }
    } else if (*est) {
      const auto a = ftrans::load_curve(curve_a);
      const auto b = ftrans::load_curve(curve_b);
      std::cout << ftrans::format_double(
                       ftrans::estimate_arrangement_size(a, b, delta, samples, seed))
                << '\n';
    }
  } catch (const ftrans::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
