#pragma once

#include <vector>

#include "sixv/real.hpp"

namespace sixv {

/// Bivariate Taylor polynomial sum c[i][j] s^i t^j truncated to i <= p, j <= q.
class Jet2 {
 public:
  Jet2(int p, int q, const Real& constant = Real(0));

  static Jet2 variable_s(int p, int q, const Real& at);
  static Jet2 variable_t(int p, int q, const Real& at);
  /// sin(alpha + scale (s + sigma t)) and the cosine analogue; sigma = 0
  /// drops the t dependence.
  static Jet2 sin_affine(int p, int q, const Real& alpha, int sigma = 1, const Real& scale = Real(1));
  static Jet2 cos_affine(int p, int q, const Real& alpha, int sigma = 1, const Real& scale = Real(1));

  int order_s() const { return p_; }
  int order_t() const { return q_; }
  const Real& operator()(int i, int j) const { return c_[i * (q_ + 1) + j]; }
  Real& operator()(int i, int j) { return c_[i * (q_ + 1) + j]; }

  /// i! j! c[i][j] = d^i/ds^i d^j/dt^j at the expansion point.
  Real derivative(int i, int j) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Real& k);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Real& k) { return a *= k; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);

  Jet2 reciprocal() const;

 private:
  int p_, q_;
  std::vector<Real> c_;
};

}  // namespace sixv
