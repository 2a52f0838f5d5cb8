#pragma once

#include <complex>
#include <functional>

namespace barnesbeta {

// Controls evaluation of the Malmsten-type integrals and their relatives.
// split_point is the base T of the finite window; the effective window for
// a kernel decaying like e^{-w t} is split_point / min(Re w, 1).
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double split_point = 40.0;
  int max_refinements = 36;
  int tail_index_cutoff = 512;  // multi-index count cap for analytic tails

  void validate() const;
};

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double est_error = 0.0;
};

// Adaptive Gauss-Legendre (15-point panels, bisection on disagreement).
QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                              double b, double abs_tol, int max_depth);

// Same, with an initial geometric subdivision suited to integrands that
// decay over several decades.
QuadResult integrate_decaying(const std::function<std::complex<double>(double)>& f, double a,
                              double b, double abs_tol, int max_depth);

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_depth);

}  // namespace barnesbeta
