#ifndef FTRANS_CURVES_HPP
#define FTRANS_CURVES_HPP

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftrans/geometry.hpp"

namespace ftrans {

/// Raised for unreadable or malformed input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Curve {
  std::string id;
  std::vector<Point2> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point2& operator[](std::size_t i) const { return vertices[i]; }
  const Point2& front() const { return vertices.front(); }
  const Point2& back() const { return vertices.back(); }
};

/// Builds a curve, rejecting empty or non-finite input.
Curve make_curve(std::string id, std::vector<Point2> vertices);

/// A curve shifted by a translation; vertices are translated on access.
class TranslatedView {
 public:
  TranslatedView(const Curve& base, const Translation& shift)
      : base_(&base), shift_(shift) {}

  std::size_t size() const { return base_->size(); }
  Point2 operator[](std::size_t i) const { return base_->vertices[i] + shift_; }
  Point2 front() const { return base_->front() + shift_; }
  Point2 back() const { return base_->back() + shift_; }
  const Curve& base() const { return *base_; }
  const Translation& shift() const { return shift_; }

 private:
  const Curve* base_;
  Translation shift_;
};

inline TranslatedView translate_view(const Curve& c, const Translation& t) {
  return TranslatedView(c, t);
}

struct CurveStats {
  AxisBox bbox;
  Point2 first;
  Point2 last;

  CurveStats translated(const Translation& t) const {
    return {bbox.translated(t), first + t, last + t};
  }
};

CurveStats curve_stats(const Curve& c);

/// Reads "x y" per nonempty line. Throws DataError with the offending line.
Curve load_curve(const std::filesystem::path& path);

/// Parses curve text already in memory; `origin` labels error messages.
Curve parse_curve(const std::string& text, const std::string& id,
                  const std::string& origin);

struct ManifestEntry {
  std::filesystem::path path;  // resolved against the manifest directory
  std::string label;           // path as written in the manifest
  std::string class_name;      // parent directory name of the curve file
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest);

void write_curve(const std::filesystem::path& path, const Curve& c);

}  // namespace ftrans

#endif  // FTRANS_CURVES_HPP
