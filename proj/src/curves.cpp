#include "ftrans/curves.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ftrans {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("read failure on " + path.string());
  return ss.str();
}

}  // namespace

Curve make_curve(std::string id, std::vector<Point2> vertices) {
  if (vertices.empty()) throw DataError("curve '" + id + "' has no vertices");
  for (const auto& v : vertices) {
    if (!v.allFinite()) throw DataError("curve '" + id + "' has a non-finite vertex");
  }
  return Curve{std::move(id), std::move(vertices)};
}

CurveStats curve_stats(const Curve& c) {
  CurveStats s{AxisBox::from_point(c.front()), c.front(), c.back()};
  for (const auto& v : c.vertices) s.bbox.extend(v);
  return s;
}

Curve parse_curve(const std::string& text, const std::string& id,
                  const std::string& origin) {
  std::vector<Point2> pts;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto split = body.find_first_of(" \t");
    double x = 0, y = 0;
    if (split == std::string_view::npos || !parse_double(body.substr(0, split), x) ||
        !parse_double(trim(body.substr(split)), y)) {
      throw DataError(origin + ":" + std::to_string(lineno) +
                      ": expected two reals, got '" + std::string(body) + "'");
    }
    pts.emplace_back(x, y);
  }
  if (pts.empty()) throw DataError(origin + ": empty curve file");
  return make_curve(id, std::move(pts));
}

Curve load_curve(const std::filesystem::path& path) {
  return parse_curve(read_file(path), path.string(), path.string());
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest) {
  const std::string text = read_file(manifest);
  const auto dir = manifest.parent_path();
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty()) continue;
    std::filesystem::path rel{std::string(body)};
    ManifestEntry e;
    e.path = (dir / rel).lexically_normal();
    e.label = std::string(body);
    e.class_name = rel.parent_path().filename().string();
    out.push_back(std::move(e));
  }
  if (out.empty()) throw DataError(manifest.string() + ": empty manifest");
  return out;
}

void write_curve(const std::filesystem::path& path, const Curve& c) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  char buf[64];
  for (const auto& v : c.vertices) {
    auto r = std::to_chars(buf, buf + sizeof buf, v.x());
    *r.ptr++ = ' ';
    r = std::to_chars(r.ptr, buf + sizeof buf, v.y());
    *r.ptr++ = '\n';
    out.write(buf, r.ptr - buf);
  }
}

}  // namespace ftrans
