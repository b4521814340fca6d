#pragma once
// P{ M_{e_p ^ t} <= y } evaluators for the running maximum mixed over an
// independent exponential clock. Sources, in order of preference: closed form
// (Brownian reflection), the first-passage density route for spectrally
// negative models with a smooth transition density, and Monte Carlo samples
// of crossing times (built by the simulator for two-sided models).

#include <memory>
#include <vector>

#include "levydd/levy_models.hpp"
#include "levydd/numerics.hpp"

namespace levydd {

enum class MaxCdfSource { closed_form, kendall_density, monte_carlo };

class RunningMaxCdf {
public:
  // Brownian reflection formula.
  static RunningMaxCdf closed_form_brownian(double mu_drift, double sigma);
  // First-passage route P{M_t <= y} = y * int_{t}^{inf} p_s(y)/s ds for
  // spectrally negative models with a smooth density (gamma family, Brownian).
  static RunningMaxCdf kendall(const LevyModelSpec& model);
  // From per-path first-crossing times over a y-grid (see simulate).
  static RunningMaxCdf from_crossing_samples(std::vector<double> y_grid,
                                             std::vector<std::vector<float>> times,
                                             double horizon);

  // P{ M_{e_p ^ t} <= y }, p >= 0 (p = 0 gives the fixed-time CDF).
  double at(double t, double y, double p = 0.0) const;
  MaxCdfSource source() const;

  ~RunningMaxCdf();
  RunningMaxCdf(const RunningMaxCdf&);
  RunningMaxCdf(RunningMaxCdf&&) noexcept;

private:
  RunningMaxCdf();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace levydd
