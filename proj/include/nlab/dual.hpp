#pragma once

// Forward-mode differentiation on runtime-width dual numbers.  A Dual with an
// empty derivative slot behaves as a constant and broadcasts across any width,
// so model code can freely mix literals and seeded coordinates.

#include <cmath>
#include <cstddef>
#include <vector>

namespace nlab {

class Dual {
 public:
  Dual() = default;
  Dual(double v) : v_(v) {}  // NOLINT: implicit lift of constants is the point
  Dual(double v, std::size_t width, std::size_t seed) : v_(v), d_(width, 0.0) {
    d_[seed] = 1.0;
  }
  Dual(double v, std::vector<double> d) : v_(v), d_(std::move(d)) {}

  double value() const { return v_; }
  const std::vector<double>& derivs() const { return d_; }
  std::size_t width() const { return d_.size(); }
  bool constant() const { return d_.empty(); }

  Dual operator-() const {
    Dual r(-v_, d_);
    for (double& x : r.d_) x = -x;
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v_ + b.v_, merged(a, b));
    if (!a.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += a.d_[i];
    if (!b.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v_ - b.v_, merged(a, b));
    if (!a.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += a.d_[i];
    if (!b.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v_ * b.v_, merged(a, b));
    if (!a.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.v_ * a.d_[i];
    if (!b.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += a.v_ * b.d_[i];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const double inv = 1.0 / b.v_;
    Dual r(a.v_ * inv, merged(a, b));
    if (!a.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += inv * a.d_[i];
    if (!b.d_.empty())
      for (std::size_t i = 0; i < r.d_.size(); ++i)
        r.d_[i] -= a.v_ * inv * inv * b.d_[i];
    return r;
  }

  friend Dual chain(double value, double slope, const Dual& x) {
    Dual r(value, x.d_);
    for (double& g : r.d_) g *= slope;
    return r;
  }

 private:
  static std::vector<double> merged(const Dual& a, const Dual& b) {
    return std::vector<double>(std::max(a.d_.size(), b.d_.size()), 0.0);
  }

  double v_ = 0.0;
  std::vector<double> d_;
};

inline Dual sin(const Dual& x) { return chain(std::sin(x.value()), std::cos(x.value()), x); }
inline Dual cos(const Dual& x) { return chain(std::cos(x.value()), -std::sin(x.value()), x); }
inline Dual exp(const Dual& x) {
  const double e = std::exp(x.value());
  return chain(e, e, x);
}
inline Dual log(const Dual& x) { return chain(std::log(x.value()), 1.0 / x.value(), x); }
inline Dual sqrt(const Dual& x) {
  const double s = std::sqrt(x.value());
  return chain(s, 0.5 / s, x);
}
inline Dual pow(const Dual& x, int n) {
  return chain(std::pow(x.value(), n), n * std::pow(x.value(), n - 1), x);
}

}  // namespace nlab
