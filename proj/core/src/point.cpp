#include "relaxcut/point.hpp"

#include <charconv>
#include <cmath>

#include "relaxcut/error.hpp"

namespace relaxcut {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a point needs at least one coordinate");
  }
  if (!all_finite()) {
    throw Error(ErrorCode::NonFinite, "point has a non-finite coordinate: " + to_string());
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dim) {
  if (dim == 0) {
    throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  }
  return Point(Unchecked{}, std::vector<double>(dim, 0.0));
}

Point Point::basis(std::size_t dim, std::size_t index) {
  Point e = zeros(dim);
  if (index >= dim) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  e.coords_[index] = 1.0;
  return e;
}

bool Point::all_finite() const noexcept {
  for (double v : coords_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Point& Point::operator+=(const Point& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) noexcept {
  for (double& v : coords_) v *= s;
  return *this;
}

std::string Point::to_string() const {
  std::string out = "(";
  char buf[64];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    // Shortest decimal that reads back as the same double.
    const auto res = std::to_chars(buf, buf + sizeof buf, coords_[i]);
    out.append(buf, res.ptr);
  }
  return out + ")";
}

void require_same_dim(const Point& a, const Point& b, const char* context) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(context) + ": " +
                                                  std::to_string(a.dim()) + " vs " +
                                                  std::to_string(b.dim()));
  }
}

void require_dim(const Point& x, std::size_t dim, const char* context) {
  if (x.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(context) + ": expected dimension " +
                                                  std::to_string(dim) + ", got " +
                                                  std::to_string(x.dim()));
  }
}

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const Point& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double norm(const Point& a) { return std::sqrt(squared_norm(a)); }

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

Point lerp(const Point& x, const Point& y, double t) {
  require_same_dim(x, y, "lerp");
  Point r = x;
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = x[i] + t * (y[i] - x[i]);
  return r;
}

}  // namespace relaxcut
