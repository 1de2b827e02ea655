#pragma once

#include "ruin/algebra.hpp"

namespace ruin {

// omega(a,b) = 1 - (1-a)(1-b) r^2 y^2 z^2
template <class A>
typename A::value_type omega(const A& alg, const Rational& a, const Rational& b) {
  auto ryz = alg.r() * alg.y() * alg.z();
  return alg.constant(1) - alg.constant((1 - a) * (1 - b)) * ryz * ryz;
}

// tau(a,b) = 1 + (1-a)(1-b) r^2 z^2 y (1-y); symmetric in (a, b).
template <class A>
typename A::value_type tau(const A& alg, const Rational& a, const Rational& b) {
  auto rz = alg.r() * alg.z();
  return alg.constant(1) +
         alg.constant((1 - a) * (1 - b)) * rz * rz * alg.y() * (alg.constant(1) - alg.y());
}

template <class A>
struct Kernels {
  using V = typename A::value_type;
  V omega;
  V kk;
  V tau;
  V h;
};

template <class A>
Kernels<A> kernels(const A& alg, const Rational& a, const Rational& b) {
  Kernels<A> out;
  out.omega = omega(alg, a, b);
  out.tau = tau(alg, a, b);
  out.kk = alg.div(alg.constant(a + b - a * b), out.omega);
  out.h = alg.div(out.tau, out.omega);
  return out;
}

}  // namespace ruin
