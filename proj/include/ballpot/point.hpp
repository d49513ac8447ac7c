#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ballpot {

using Complex = std::complex<double>;

/// A point of the closed unit ball of C^n. Validated on construction.
class Point {
 public:
  /// Accepts any point with |z| <= 1 (up to 1e-12 rounding slack).
  explicit Point(std::vector<Complex> coords);
  Point(std::initializer_list<Complex> coords) : Point(std::vector<Complex>(coords)) {}

  /// A point of S; |z| must equal 1 within 1e-12.
  static Point onSphere(std::vector<Complex> coords);
  static Point zero(int n);
  /// scale * e_k.
  static Point axis(int n, int k = 0, double scale = 1.0);

  int dim() const { return static_cast<int>(coords_.size()); }
  std::span<const Complex> coords() const { return coords_; }
  const Complex& operator[](std::size_t k) const { return coords_[k]; }

  double normSquared() const;
  double norm() const;
  bool isZero() const;

  /// Copy scaled by a real factor; the result must stay in the closed ball.
  Point scaled(double factor) const;
  /// z / |z| for z != 0.
  Point direction() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Complex> coords_;
};

double normSquared(std::span<const Complex> z);
Complex inner(std::span<const Complex> z, std::span<const Complex> w);

/// <z,w> = sum z_j conj(w_j).
Complex inner(const Point& z, const Point& w);

}  // namespace ballpot
