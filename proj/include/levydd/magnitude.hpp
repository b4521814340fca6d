#pragma once
// Drawdown-magnitude laws for spectrally negative models: the running-maximum
// transform at tau_a, the exponential law of M_{tau_a}, the conditional
// crash ("ricochet") transform, and the quadruple Laplace transform of
// (tau_a, G_{tau_a}, Y_{tau_a}, M_{tau_a}).

#include "levydd/levy_models.hpp"
#include "levydd/numerics.hpp"

namespace levydd {

struct DrawdownQuery {
  double q = 0.0;      // transform argument of tau_a
  double r = 0.0;      // of G_{tau_a}
  double s = 0.0;      // of Y_{tau_a}
  double delta = 0.0;  // of M_{tau_a}
  double a = 1.0;      // magnitude threshold > 0

  void validate() const;
};

// E[ e^{-q T_x^+} 1{ M_{tau_a} >= x } ] = exp(-(W^{(q)'}(a)/W^{(q)}(a)) x).
double lt_running_max_exceeds(const LevyModelSpec& model, double q, double x, double a,
                              const InversionConfig& cfg = {});

// Mean of the exponential law of M_{tau_a}: W(a)/W'(a).
double mean_max_at_drawdown(const LevyModelSpec& model, double a,
                            const InversionConfig& cfg = {});

// Conditional crash transform
// E_a[ e^{-q T_0^- - s (a - X_{T_0^-})} | T_0^- < T_a^+ ].
double ricochet_lt(const LevyModelSpec& model, double q, double s, double a,
                   const InversionConfig& cfg = {});

// Quadruple transform E[e^{-q tau_a - r G - s Y - delta M}]. Raw value is
// returned unclamped; clamping to [0,1] is presentation-level only.
double quadruple_lt(const LevyModelSpec& model, const DrawdownQuery& query,
                    const InversionConfig& cfg = {});

}  // namespace levydd
