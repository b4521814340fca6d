#pragma once
// Shared numerical kernels: Laplace-transform inversion (Euler-accelerated
// Bromwich sum with a fixed-Talbot alternative), adaptive quadrature on
// finite and semi-infinite intervals, and the special functions the model
// formulas need.

#include <functional>

#include "levydd/levy_models.hpp"

namespace levydd {

// ---------------------------------------------------------------------------
// Laplace inversion
// ---------------------------------------------------------------------------

struct InversionConfig {
  enum class Method { euler_acceleration, talbot };
  Method method = Method::euler_acceleration;
  int terms = 30;        // base terms (Euler) / node count (Talbot)
  int euler_terms = 15;  // binomial averaging tail of the Euler scheme
  double target_rel_err = 1e-9;

  void validate() const;
};

struct InversionResult {
  double value = 0.0;
  double est_rel_err = 0.0;
  bool converged = true;
};

using TransformFn = std::function<Complex(Complex)>;

// Pointwise inverse of f_hat at x > 0. f_hat must be analytic for
// Re(s) > abscissa; the contour is shifted accordingly and the result scaled
// back by e^{abscissa * x}.
InversionResult laplace_invert_checked(const TransformFn& f_hat, double x,
                                       const InversionConfig& cfg = {},
                                       double abscissa = 0.0);
double laplace_invert(const TransformFn& f_hat, double x,
                      const InversionConfig& cfg = {}, double abscissa = 0.0);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double est_abs_err = 0.0;
  long evaluations = 0;
};

// Adaptive integration of f over (a, b); b may be +inf (internal substitution).
// Integrable endpoint singularities are handled by the double-exponential rule.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-8, double abs_tol = 1e-10);

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// Density p_t^X(x) of the spectrally negative alpha-stable process with
// psi(s) = s^alpha, by the convergent power series around x = 0.
// Requires |t^{-1/alpha} x| <= radius (series is kept near the origin where
// cancellation is controlled); throws SpecError outside.
double stable_density_at(double alpha, double t, double x, double radius = 1.0);

double normal_cdf(double x);

}  // namespace levydd
