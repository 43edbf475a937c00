#pragma once

#include "stokesmg/kkt.hpp"
#include "stokesmg/precond.hpp"

#include <functional>

namespace stokesmg {

struct SmootherConfig {
  double tau = 0.35; // damping, safe whenever tau * rho(L^-1 A L^-1 A) <= 2
  int nu_pre = 2;
  int nu_post = 2;
};

/// Damped normal-equation smoother: repeats
///   x <- x + tau L^-1 A L^-1 (f - A x)
/// `steps` times. Two operator applications and two diagonal solves per step.
void smooth(const KktOperator& op, const BlockPreconditioner& l, const SmootherConfig& cfg,
            StateVector& x, const StateVector& f, int steps);

/// Power-iteration estimate of rho(L^-1 A L^-1 A) for symmetric A and a
/// positive diagonal L. The iterated operator is self-adjoint and positive
/// semidefinite in the L-inner product, so the Rayleigh quotients converge
/// to the spectral radius from below, nondecreasing in the iteration count.
double estimate_spectral_radius(const std::function<void(const Vector&, Vector&)>& apply_op,
                                const Vector& l_diagonal, int iterations);

double estimate_spectral_radius(const KktOperator& op, const BlockPreconditioner& l,
                                int iterations);

} // namespace stokesmg
