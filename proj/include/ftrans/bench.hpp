#ifndef FTRANS_BENCH_HPP
#define FTRANS_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftrans/curves.hpp"
#include "ftrans/translation_value.hpp"

namespace ftrans {

/// Query sets: "NO" and "YES" decision sets, "VALUE" for value-only pairs.
struct QueryRecord {
  std::uint64_t query_id = 0;
  std::string set;
  int level = 0;
  std::string curve_a;
  std::string curve_b;
  std::optional<double> delta;
  std::string expected;  // YES, NO or unknown

  bool operator==(const QueryRecord&) const = default;
};

struct BenchRecord {
  std::uint64_t query_id = 0;
  std::string set;
  int level = 0;
  std::string curve_a;
  std::string curve_b;
  std::optional<double> delta;
  std::string algorithm;
  std::string result;  // YES, NO, a decimal value, or ERROR:<message>
  double time_ms = 0;
  std::uint64_t bb_calls = 0;
  std::uint64_t base_cases = 0;
  std::optional<double> arr_estimate;

  bool operator==(const BenchRecord&) const = default;
};

inline constexpr int kNoLevelMin = -10;
inline constexpr int kNoLevelMax = -1;
inline constexpr int kYesLevelMin = -10;
inline constexpr int kYesLevelMax = 2;

/// Scale applied to the distance bracket: (1 - 4^level) for NO queries,
/// (1 + 4^level) for YES queries.
double query_factor(bool yes, int level);

struct CurveCatalog {
  std::vector<Curve> curves;            // id = resolved path
  std::vector<std::string> class_names;  // parallel to curves
};

CurveCatalog load_catalog(const std::filesystem::path& manifest);

struct GenOptions {
  std::size_t pairs = 1000;
  std::uint64_t seed = 1;
  /// Draw `pairs` pairs inside each class instead of across the dataset.
  bool same_class = false;
  /// When > 0, emit this many VALUE pairs for every unordered class pair
  /// instead of decision queries.
  std::size_t class_pair_samples = 0;
  ValueParams params;
};

/// Samples curve pairs and emits the NO/YES decision sets around the
/// pair's distance interval (or VALUE pairs, see GenOptions).
std::vector<QueryRecord> gen_queries(const CurveCatalog& catalog, const GenOptions& opts);

void write_queries(std::ostream& out, std::span<const QueryRecord> queries);
std::vector<QueryRecord> read_queries(std::istream& in);

/// Sampling estimate of the arrangement size inside the initial search box:
/// (I/S)(nm)^2 sampled circle/circle intersections plus the exact number of
/// circle/box crossings.
double estimate_arrangement_size(const Curve& pi, const Curve& sigma, double delta,
                                 std::uint64_t samples, std::uint64_t seed);

enum class BenchMode { decide, value, value_baselines };

std::optional<BenchMode> parse_bench_mode(const std::string& s);

struct BenchOptions {
  BenchMode mode = BenchMode::decide;
  unsigned threads = 1;
  ValueParams params;
  /// Fill arr_estimate for decision queries.
  bool estimate_arrangement = false;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};

std::vector<BenchRecord> run_bench(std::span<const QueryRecord> queries,
                                   const BenchOptions& opts);

extern const char* const kBenchHeader;
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

struct Quartiles {
  double mean = 0;
  double q1 = 0;
  double q3 = 0;
};

/// Mean and inclusive-median quartiles (the median joins both halves when
/// the sample size is odd).
Quartiles summarize(std::vector<double> values);

struct GroupSummary {
  std::string set;
  int level = 0;
  std::string algorithm;
  std::size_t count = 0;
  Quartiles time_ms;
  Quartiles bb_calls;
  std::optional<Quartiles> arr_estimate;
};

/// Groups successful records by (set, level, algorithm) in first-seen order.
std::vector<GroupSummary> aggregate(std::span<const BenchRecord> records);
void write_summary(std::ostream& out, std::span<const GroupSummary> groups);

std::string format_double(double v);

}  // namespace ftrans

#endif  // FTRANS_BENCH_HPP
