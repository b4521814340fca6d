#pragma once
// Ascending-ladder machinery: the joint exponent kappa(alpha, beta) where it is
// known in closed form (spectrally negative models: Phi(alpha) + beta; the Kou
// model: (beta+rho_1)(beta+rho_2)/(beta+eta_+)), the killing rate kappa(0,0),
// ladder drifts, and the jump tail nu_bar_L recovered by Laplace inversion of
// (kappa(alpha,0) - kappa(0,0))/alpha - d_L.

#include <memory>
#include <utility>

#include "levydd/levy_models.hpp"
#include "levydd/numerics.hpp"

namespace levydd {

class LadderData {
public:
  // Supported models: spectrally negative, or Kou (exponential jumps both
  // sides with sigma > 0). Throws SpecError otherwise.
  static LadderData build(const LevyModelSpec& model, InversionConfig cfg = {});

  double kappa(double alpha, double beta) const;
  // kappa(alpha, 0) for complex alpha with Re(alpha) > 0 (inversion contour).
  Complex kappa_time(Complex alpha) const;
  double kappa00() const;

  // Ladder time drift: snapped value used by the nu_bar inversion, and the raw
  // Richardson/Aitken limit of (kappa(alpha,0) - kappa00)/alpha.
  double drift_dL() const;
  double drift_dL_raw() const;
  // Ladder height drift (diagnostic; cancels in the duration formulas).
  double drift_dH() const;

  double nu_bar(double t) const;
  double excursion_tail(double t) const;  // nu_bar(t) + kappa00

  bool is_kou() const;
  // The two nonnegative real roots of psi = alpha for the Kou model.
  std::pair<double, double> kou_roots(double alpha) const;

  ~LadderData();
  LadderData(const LadderData&);
  LadderData(LadderData&&) noexcept;

private:
  LadderData();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace levydd
