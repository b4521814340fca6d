#pragma once
// Small-threshold drawdown asymptotics: the limit of
// (W^{(q)'}(eps)/W^{(q)}(eps)) (1 - E[e^{-q tau_eps - s Y_tau_eps}]) as
// eps -> 0, its two-sided compound-Poisson-perturbed analogue, the exact
// finite-eps expression used to verify the trend, and the unnormalized
// finite-activity limit.

#include <vector>

#include "levydd/levy_models.hpp"
#include "levydd/numerics.hpp"

namespace levydd {

struct AsymptoteResult {
  double limit_value = 0.0;
  std::vector<double> epsilon_grid;   // strictly decreasing
  std::vector<double> scaled_values;  // finite-eps values of the exact expression
  bool converged = false;
};

// Certificate that x W'(x) -> 0 as x -> 0: preset whitelist (sigma > 0,
// finite jump mass, or the pure-stable family) first, then the numeric
// integrability probe of (s psi'(s) - psi(s))/psi(s)^2 along a vertical line.
bool scale_root_regularity_certified(const LevyModelSpec& model);

// Limit for a spectrally negative model: s if unbounded variation,
// s + (q - psi(s))/d if bounded variation.
double asymptote_sn(const LevyModelSpec& model, double q, double s);

// Same limit for the two-sided model (SN part + positive compound Poisson),
// normalized by W^{(q + lambda_+)} of the SN part.
double asymptote_two_sided(const LevyModelSpec& model, double q, double s);

// Evaluates the exact finite-eps expression on the grid and compares the
// trend against asymptote_sn. tolerance applies to the last grid point.
AsymptoteResult verify_asymptote_sn(const LevyModelSpec& model, double q, double s,
                                    std::vector<double> eps_grid = {},
                                    double tolerance = 0.02,
                                    const InversionConfig& cfg = {});

// Finite-activity unnormalized limit (q + s d - psi(s)) / (q + Pi(-inf,0))
// for the spectrally negative part.
double finite_activity_limit(const LevyModelSpec& model, double q, double s);

}  // namespace levydd
