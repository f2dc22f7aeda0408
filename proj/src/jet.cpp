#include "sixv/jet.hpp"

namespace sixv {

namespace {

void require_same_shape(int p1, int q1, int p2, int q2) {
  if (p1 != p2 || q1 != q2) throw std::invalid_argument("jet truncation orders differ");
}

// n-th derivative of sin (kind 0) or cos (kind 1) at alpha.
std::vector<Real> trig_derivatives(int kind, const Real& alpha, int n) {
  const Real s = sin(alpha), c = cos(alpha);
  const Real cycle_sin[4] = {s, c, -s, -c};
  const Real cycle_cos[4] = {c, -s, -c, s};
  std::vector<Real> out;
  for (int k = 0; k <= n; ++k) out.push_back(kind == 0 ? cycle_sin[k % 4] : cycle_cos[k % 4]);
  return out;
}

Jet2 trig_affine(int kind, int p, int q, const Real& alpha, int sigma, const Real& scale) {
  Jet2 j(p, q);
  const auto d = trig_derivatives(kind, alpha, p + q);
  std::vector<Real> inv_fact(static_cast<std::size_t>(p + q + 1));
  inv_fact[0] = 1;
  for (int k = 1; k <= p + q; ++k) inv_fact[k] = inv_fact[k - 1] / k;
  std::vector<Real> scale_pow(static_cast<std::size_t>(p + q + 1));
  scale_pow[0] = 1;
  for (int k = 1; k <= p + q; ++k) scale_pow[k] = scale_pow[k - 1] * scale;
  for (int a = 0; a <= p; ++a)
    for (int b = 0; b <= q; ++b) {
      if (sigma == 0 && b > 0) continue;
      Real v = d[a + b] * inv_fact[a] * inv_fact[b] * scale_pow[a + b];
      if (sigma < 0 && (b % 2)) v = -v;
      j(a, b) = v;
    }
  return j;
}

}  // namespace

Jet2::Jet2(int p, int q, const Real& constant)
    : p_(p), q_(q), c_(static_cast<std::size_t>((p + 1) * (q + 1)), Real(0)) {
  c_[0] = constant;
}

Jet2 Jet2::variable_s(int p, int q, const Real& at) {
  Jet2 j(p, q, at);
  if (p > 0) j(1, 0) = 1;
  return j;
}

Jet2 Jet2::variable_t(int p, int q, const Real& at) {
  Jet2 j(p, q, at);
  if (q > 0) j(0, 1) = 1;
  return j;
}

Jet2 Jet2::sin_affine(int p, int q, const Real& alpha, int sigma, const Real& scale) {
  return trig_affine(0, p, q, alpha, sigma, scale);
}

Jet2 Jet2::cos_affine(int p, int q, const Real& alpha, int sigma, const Real& scale) {
  return trig_affine(1, p, q, alpha, sigma, scale);
}

Real Jet2::derivative(int i, int j) const {
  Real f = 1;
  for (int k = 2; k <= i; ++k) f *= k;
  for (int k = 2; k <= j; ++k) f *= k;
  return f * (*this)(i, j);
}

Jet2& Jet2::operator+=(const Jet2& o) {
  require_same_shape(p_, q_, o.p_, o.q_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  require_same_shape(p_, q_, o.p_, o.q_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(const Real& k) {
  for (auto& x : c_) x *= k;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  require_same_shape(a.p_, a.q_, b.p_, b.q_);
  Jet2 r(a.p_, a.q_);
  for (int i1 = 0; i1 <= a.p_; ++i1)
    for (int j1 = 0; j1 <= a.q_; ++j1) {
      const Real& x = a(i1, j1);
      if (x == 0) continue;
      for (int i2 = 0; i1 + i2 <= a.p_; ++i2)
        for (int j2 = 0; j1 + j2 <= a.q_; ++j2) r(i1 + i2, j1 + j2) += x * b(i2, j2);
    }
  return r;
}

Jet2 Jet2::reciprocal() const {
  const Real& f0 = (*this)(0, 0);
  if (f0 == 0) throw DomainError("series division by zero: a weight vanishes at the expansion point");
  Jet2 g(p_, q_);
  const Real inv = 1 / f0;
  for (int i = 0; i <= p_; ++i)
    for (int j = 0; j <= q_; ++j) {
      if (i == 0 && j == 0) {
        g(0, 0) = inv;
        continue;
      }
      Real acc = 0;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          if (a == 0 && b == 0) continue;
          acc += (*this)(a, b) * g(i - a, j - b);
        }
      g(i, j) = -acc * inv;
    }
  return g;
}

}  // namespace sixv
