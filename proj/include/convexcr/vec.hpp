#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "convexcr/errors.hpp"

namespace convexcr {

// Dense Euclidean vector / point. Dimensions of interest are 2..4, so a
// heap-backed coordinate list is plenty.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : c_(dim, 0.0) {}
  Vec(std::initializer_list<double> init) : c_(init) {}
  explicit Vec(std::vector<double> coords) : c_(std::move(coords)) {}

  static Vec zero(int dim) { return Vec(static_cast<std::size_t>(dim)); }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return c_; }

  bool finite() const {
    for (double x : c_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim(); ++i) c_[i] += o[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim(); ++i) c_[i] -= o[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }

  friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }

 private:
  std::vector<double> c_;
};

inline void require_same_dim(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "vector dimensions disagree");
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& a) {
  double n = norm(a);
  if (n == 0.0) throw Error(ErrorCode::ZeroDirection, "cannot normalize zero vector");
  return a * (1.0 / n);
}

// Strict lexicographic order on coordinates; the tie-break used everywhere a
// deterministic choice among geometrically equivalent answers is needed.
inline bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace convexcr
