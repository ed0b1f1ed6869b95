#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace relaxcut {

/// A point of R^d, the iterate type used everywhere in the library.
///
/// Construction from user data rejects empty or non-finite coordinates.
/// Arithmetic does not re-validate; the solver checks every iterate with
/// all_finite() so an overflow surfaces as an error instead of a NaN trace.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);
  static Point basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool all_finite() const noexcept;

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s) noexcept;

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }

  friend bool operator==(const Point&, const Point&) = default;

  std::string to_string() const;

 private:
  struct Unchecked {};
  Point(Unchecked, std::vector<double> coords) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

/// Throws DimensionMismatch unless a and b live in the same space.
void require_same_dim(const Point& a, const Point& b, const char* context);
void require_dim(const Point& x, std::size_t dim, const char* context);

double dot(const Point& a, const Point& b);
double squared_norm(const Point& a);
double norm(const Point& a);
double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// Returns x + t (y - x), evaluated coordinatewise in that exact form.
Point lerp(const Point& x, const Point& y, double t);

}  // namespace relaxcut
