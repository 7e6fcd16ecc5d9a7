#include "ftrans/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include "ftrans/translation_decider.hpp"

namespace ftrans {

const char* const kBenchHeader =
    "query_id,set,level,curve_a,curve_b,delta,algorithm,result,time_ms,bb_calls,"
    "base_cases,arr_estimate";

namespace {

constexpr const char* kQueryHeader = "query_id,set,level,curve_a,curve_b,delta,expected";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s, const char* what,
                                     std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_number<double>(s, what, line);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

// Reads data rows after checking the header; skips blank lines.
template <typename Fn>
void for_each_row(std::istream& in, const std::string& header, std::size_t columns,
                  Fn&& fn) {
  std::string line;
  if (!std::getline(in, line)) return;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw DataError("unexpected CSV header '" + line + "'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != columns) {
      throw DataError("line " + std::to_string(lineno) + ": expected " +
                      std::to_string(columns) + " fields, got " +
                      std::to_string(fields.size()));
    }
    fn(fields, lineno);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double query_factor(bool yes, int level) {
  const double p = std::pow(4.0, level);
  return yes ? 1.0 + p : 1.0 - p;
}

CurveCatalog load_catalog(const std::filesystem::path& manifest) {
  CurveCatalog cat;
  for (const auto& e : read_manifest(manifest)) {
    Curve c = load_curve(e.path);
    c.id = e.path.string();
    cat.curves.push_back(std::move(c));
    cat.class_names.push_back(e.class_name);
  }
  return cat;
}

std::vector<QueryRecord> gen_queries(const CurveCatalog& catalog, const GenOptions& opts) {
  const std::size_t total = catalog.curves.size();
  if (total < 2) throw DataError("need at least two curves to sample pairs");
  std::mt19937_64 rng(opts.seed);

  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t k = 0; k < total; ++k) by_class[catalog.class_names[k]].push_back(k);

  auto draw = [&](const std::vector<std::size_t>& from) {
    std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
    return from[pick(rng)];
  };
  auto draw_distinct = [&](const std::vector<std::size_t>& from) {
    const std::size_t a = draw(from);
    std::size_t b = draw(from);
    while (from.size() > 1 && b == a) b = draw(from);
    return std::pair{a, b};
  };

  std::vector<QueryRecord> out;
  std::uint64_t next_id = 0;

  if (opts.class_pair_samples > 0) {
    for (auto ia = by_class.begin(); ia != by_class.end(); ++ia) {
      for (auto ib = ia; ib != by_class.end(); ++ib) {
        for (std::size_t s = 0; s < opts.class_pair_samples; ++s) {
          std::size_t a = draw(ia->second);
          std::size_t b = draw(ib->second);
          if (ia == ib && ia->second.size() > 1) {
            while (b == a) b = draw(ib->second);
          }
          out.push_back({next_id++, "VALUE", 0, catalog.curves[a].id,
                         catalog.curves[b].id, std::nullopt, "unknown"});
        }
      }
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (opts.same_class) {
    for (const auto& [name, members] : by_class) {
      if (members.size() < 2) continue;
      for (std::size_t s = 0; s < opts.pairs; ++s) pairs.push_back(draw_distinct(members));
    }
  } else {
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t s = 0; s < opts.pairs; ++s) pairs.push_back(draw_distinct(all));
  }

  ValueParams vp = opts.params;
  for (const auto& [a, b] : pairs) {
    const Curve& pi = catalog.curves[a];
    const Curve& sigma = catalog.curves[b];
    const ValueTrace v = lmf_value(pi, sigma, vp);
    // The returned value is attained by a witness and lies within epsilon of
    // the optimum, so the optimum sits in [value - epsilon, value].
    const double ub = v.value;
    const double lb = std::max(0.0, v.value - vp.epsilon);
    if (lb > 0) {
      for (int level = kNoLevelMin; level <= kNoLevelMax; ++level) {
        out.push_back({next_id++, "NO", level, pi.id, sigma.id,
                       query_factor(false, level) * lb, "NO"});
      }
    }
    for (int level = kYesLevelMin; level <= kYesLevelMax; ++level) {
      out.push_back({next_id++, "YES", level, pi.id, sigma.id,
                     query_factor(true, level) * ub, "YES"});
    }
  }
  return out;
}

void write_queries(std::ostream& out, std::span<const QueryRecord> queries) {
  out << kQueryHeader << '\n';
  for (const auto& q : queries) {
    out << q.query_id << ',' << q.set << ',' << q.level << ',' << csv_field(q.curve_a)
        << ',' << csv_field(q.curve_b) << ',' << format_optional(q.delta) << ','
        << q.expected << '\n';
  }
}

std::vector<QueryRecord> read_queries(std::istream& in) {
  std::vector<QueryRecord> out;
  for_each_row(in, kQueryHeader, 7, [&](std::vector<std::string>& f, std::size_t line) {
    QueryRecord q;
    q.query_id = parse_number<std::uint64_t>(f[0], "query_id", line);
    q.set = f[1];
    q.level = parse_number<int>(f[2], "level", line);
    q.curve_a = f[3];
    q.curve_b = f[4];
    q.delta = parse_optional(f[5], "delta", line);
    q.expected = f[6];
    if (q.set != "VALUE" && !q.delta) {
      throw DataError("line " + std::to_string(line) + ": decision query without delta");
    }
    out.push_back(std::move(q));
  });
  return out;
}

double estimate_arrangement_size(const Curve& pi, const Curve& sigma, double delta,
                                 std::uint64_t samples, std::uint64_t seed) {
  if (pi.size() == 1 && sigma.size() == 1) return 0.0;
  const auto box = initial_search_box(pi, sigma, delta);
  if (!box) return 0.0;
  const std::size_t n = pi.size();
  const std::size_t m = sigma.size();
  const double tol = scaled_tolerance(box->diagonal());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_i(0, n - 1), pick_j(0, m - 1);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t i1 = pick_i(rng), j1 = pick_j(rng);
    const std::size_t i2 = pick_i(rng), j2 = pick_j(rng);
    const auto pts = circle_circle_intersections(Circle{pi[i1] - sigma[j1], delta},
                                                 Circle{pi[i2] - sigma[j2], delta});
    for (const auto& p : pts) hits += box->contains(p, tol) ? 1 : 0;
  }
  const double nm = static_cast<double>(n * m);
  double estimate = static_cast<double>(hits) / static_cast<double>(samples) * nm * nm;
  for (const auto& p : pi.vertices) {
    for (const auto& q : sigma.vertices) {
      estimate += static_cast<double>(
          circle_box_boundary_intersections(Circle{p - q, delta}, *box).size());
    }
  }
  return estimate;
}

std::optional<BenchMode> parse_bench_mode(const std::string& s) {
  if (s == "decide") return BenchMode::decide;
  if (s == "value") return BenchMode::value;
  if (s == "value-baselines") return BenchMode::value_baselines;
  return std::nullopt;
}

std::vector<BenchRecord> run_bench(std::span<const QueryRecord> queries,
                                   const BenchOptions& opts) {
  struct Job {
    const QueryRecord* query;
    std::string algorithm;
  };
  std::vector<Job> jobs;
  if (opts.mode == BenchMode::decide) {
    for (const auto& q : queries) {
      if (q.delta) jobs.push_back({&q, "decider"});
    }
  } else {
    std::vector<const char*> algos{"lmf"};
    if (opts.mode == BenchMode::value_baselines) algos = {"lmf", "binsearch", "lipschitz"};
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& q : queries) {
      if (q.set != "VALUE" && !seen.insert({q.curve_a, q.curve_b}).second) continue;
      for (const char* a : algos) jobs.push_back({&q, a});
    }
  }

  // Curves are loaded once, up front; failures become per-query errors.
  std::map<std::string, std::optional<Curve>> curves;
  std::map<std::string, std::string> load_errors;
  for (const auto& job : jobs) {
    for (const std::string* path : {&job.query->curve_a, &job.query->curve_b}) {
      if (curves.count(*path)) continue;
      try {
        curves[*path] = load_curve(*path);
      } catch (const DataError& e) {
        curves[*path] = std::nullopt;
        load_errors[*path] = e.what();
      }
    }
  }

  std::vector<BenchRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& job = jobs[k];
      const QueryRecord& q = *job.query;
      BenchRecord& r = records[k];
      r.query_id = q.query_id;
      r.set = opts.mode == BenchMode::decide ? q.set : "VALUE";
      r.level = opts.mode == BenchMode::decide ? q.level : 0;
      r.curve_a = q.curve_a;
      r.curve_b = q.curve_b;
      r.delta = opts.mode == BenchMode::decide ? q.delta : std::nullopt;
      r.algorithm = job.algorithm;
      const auto& ca = curves.at(q.curve_a);
      const auto& cb = curves.at(q.curve_b);
      if (!ca || !cb) {
        r.result = "ERROR:" + load_errors[ca ? q.curve_b : q.curve_a];
        continue;
      }
      try {
        const auto t0 = std::chrono::steady_clock::now();
        if (opts.mode == BenchMode::decide) {
          const DeciderTrace d = decide_translation(
              *ca, *cb, *q.delta, {opts.params.gamma_size, opts.params.gamma_depth});
          r.result = d.result ? "YES" : "NO";
          r.bb_calls = d.black_box_calls;
          r.base_cases = d.base_cases;
        } else {
          ValueTrace v;
          if (job.algorithm == "lmf") {
            v = lmf_value(*ca, *cb, opts.params);
          } else if (job.algorithm == "binsearch") {
            v = binary_search_value(*ca, *cb, opts.params);
          } else {
            v = lipschitz_only_value(*ca, *cb, opts.params);
          }
          r.result = format_double(v.value);
          r.bb_calls = v.black_box_calls;
          r.base_cases = v.base_cases;
        }
        r.time_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        if (opts.mode == BenchMode::decide && opts.estimate_arrangement) {
          r.arr_estimate =
              estimate_arrangement_size(*ca, *cb, *q.delta, opts.samples, opts.seed);
        }
      } catch (const std::exception& e) {
        r.result = std::string("ERROR:") + e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, opts.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kBenchHeader << '\n';
  for (const auto& r : records) {
    out << r.query_id << ',' << r.set << ',' << r.level << ',' << csv_field(r.curve_a)
        << ',' << csv_field(r.curve_b) << ',' << format_optional(r.delta) << ','
        << r.algorithm << ',' << csv_field(r.result) << ',' << format_double(r.time_ms)
        << ',' << r.bb_calls << ',' << r.base_cases << ','
        << format_optional(r.arr_estimate) << '\n';
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  for_each_row(in, kBenchHeader, 12, [&](std::vector<std::string>& f, std::size_t line) {
    BenchRecord r;
    r.query_id = parse_number<std::uint64_t>(f[0], "query_id", line);
    r.set = f[1];
    r.level = parse_number<int>(f[2], "level", line);
    r.curve_a = f[3];
    r.curve_b = f[4];
    r.delta = parse_optional(f[5], "delta", line);
    r.algorithm = f[6];
    r.result = f[7];
    r.time_ms = parse_number<double>(f[8], "time_ms", line);
    r.bb_calls = parse_number<std::uint64_t>(f[9], "bb_calls", line);
    r.base_cases = parse_number<std::uint64_t>(f[10], "base_cases", line);
    r.arr_estimate = parse_optional(f[11], "arr_estimate", line);
    out.push_back(std::move(r));
  });
  return out;
}

Quartiles summarize(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  q.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  auto median = [&](std::size_t begin, std::size_t end) {
    const std::size_t len = end - begin;
    const std::size_t mid = begin + len / 2;
    return len % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
  };
  const std::size_t half = (n + 1) / 2;
  q.q1 = median(0, half);
  q.q3 = median(n - half, n);
  return q;
}

std::vector<GroupSummary> aggregate(std::span<const BenchRecord> records) {
  struct Acc {
    GroupSummary summary;
    std::vector<double> time, calls, arr;
  };
  std::vector<Acc> groups;
  for (const auto& r : records) {
    if (r.result.rfind("ERROR", 0) == 0) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Acc& a) {
      return a.summary.set == r.set && a.summary.level == r.level &&
             a.summary.algorithm == r.algorithm;
    });
    if (it == groups.end()) {
      groups.push_back({});
      it = groups.end() - 1;
      it->summary.set = r.set;
      it->summary.level = r.level;
      it->summary.algorithm = r.algorithm;
    }
    it->time.push_back(r.time_ms);
    it->calls.push_back(static_cast<double>(r.bb_calls));
    if (r.arr_estimate) it->arr.push_back(*r.arr_estimate);
  }
  std::vector<GroupSummary> out;
  for (auto& g : groups) {
    g.summary.count = g.time.size();
    g.summary.time_ms = summarize(g.time);
    g.summary.bb_calls = summarize(g.calls);
    if (!g.arr.empty()) g.summary.arr_estimate = summarize(g.arr);
    out.push_back(std::move(g.summary));
  }
  return out;
}

void write_summary(std::ostream& out, std::span<const GroupSummary> groups) {
  out << "set,level,algorithm,metric,count,mean,q1,q3\n";
  auto row = [&](const GroupSummary& g, const char* metric, const Quartiles& q) {
    out << g.set << ',' << g.level << ',' << g.algorithm << ',' << metric << ','
        << g.count << ',' << format_double(q.mean) << ',' << format_double(q.q1) << ','
        << format_double(q.q3) << '\n';
  };
  for (const auto& g : groups) {
    row(g, "time_ms", g.time_ms);
    row(g, "bb_calls", g.bb_calls);
    if (g.arr_estimate) row(g, "arr_estimate", *g.arr_estimate);
  }
}

}  // namespace ftrans
