#include "stokesmg/smoother.hpp"

#include <random>
#include <stdexcept>

namespace stokesmg {

void smooth(const KktOperator& op, const BlockPreconditioner& l, const SmootherConfig& cfg,
            StateVector& x, const StateVector& f, int steps) {
  if (steps < 0)
    throw std::invalid_argument("smoothing step count must be nonnegative");
  StateVector work(op.layout());
  StateVector scaled(op.layout());
  for (int s = 0; s < steps; ++s) {
    op.apply(x, work); // work = A x
    scaled.coeffs = l.inv_diag.cwiseProduct(f.coeffs - work.coeffs);
    op.apply(scaled, work); // work = A L^-1 r
    x.coeffs += cfg.tau * l.inv_diag.cwiseProduct(work.coeffs);
  }
}

double estimate_spectral_radius(const std::function<void(const Vector&, Vector&)>& apply_op,
                                const Vector& l_diagonal, int iterations) {
  if (iterations < 1)
    throw std::invalid_argument("power iteration needs at least one step");
  const Index n = l_diagonal.size();
  const Vector inv_diag = l_diagonal.cwiseInverse();

  // fixed seed: estimates are reproducible across runs
  std::mt19937 gen(20240613);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(n);
  for (Index i = 0; i < n; ++i)
    x[i] = dist(gen);
  x /= std::sqrt(x.dot(l_diagonal.cwiseProduct(x)));

  Vector bx(n), work(n);
  double rho = 0.0;
  for (int it = 0; it < iterations; ++it) {
    apply_op(x, work);
    work = inv_diag.cwiseProduct(work);
    apply_op(work, bx);
    bx = inv_diag.cwiseProduct(bx); // bx = L^-1 A L^-1 A x
    rho = bx.dot(l_diagonal.cwiseProduct(x)); // Rayleigh quotient, x is L-normalized
    const double norm = std::sqrt(bx.dot(l_diagonal.cwiseProduct(bx)));
    if (norm == 0.0)
      return 0.0; // x in the nullspace of A
    x = bx / norm;
  }
  return rho;
}

double estimate_spectral_radius(const KktOperator& op, const BlockPreconditioner& l,
                                int iterations) {
  const StateLayout layout = op.layout();
  StateVector in(layout), out(layout);
  const auto apply = [&](const Vector& v, Vector& result) {
    in.coeffs = v;
    op.apply(in, out);
    result = out.coeffs;
  };
  return estimate_spectral_radius(apply, l.diag, iterations);
}

} // namespace stokesmg
