#pragma once
// q-scale functions W^{(q)}, W^{(q)'}, Z^{(q)} and their Esscher-tilted
// versions for spectrally negative models. Closed forms are used where the
// model admits them (Brownian partial fractions, stable power series); the
// general backend inverts 1/(psi - q) on a contour shifted right of Phi(q),
// splitting off the known W(0+) atom first.

#include <memory>
#include <string>
#include <vector>

#include "levydd/levy_models.hpp"
#include "levydd/numerics.hpp"

namespace levydd {

struct BoundaryReport {
  double q = 0.0;
  double w0_predicted = 0.0;
  double w0_extrapolated = 0.0;
  bool w0_ok = false;
  bool wprime0_finite = false;
  double wprime0_predicted = 0.0;     // valid when finite
  double wprime0_extrapolated = 0.0;  // valid when finite
  bool wprime0_ok = false;            // finite: within 1%; infinite: monotone growth
  double ratio_x = 0.0;               // evaluation point of W'/W
  double ratio_value = 0.0;
  double phi_q = 0.0;
  double ratio_dev = 0.0;  // |ratio - phi| / max(|phi|, 1e-2)
  std::string summary() const;
};

class TiltedScale;

class ScaleFunctionEvaluator {
public:
  enum class Backend { closed_form, inversion };

  ScaleFunctionEvaluator(const LevyModelSpec& model, double q,
                         InversionConfig cfg = {});
  // Forces a specific backend (closed_form throws if none is known).
  ScaleFunctionEvaluator(const LevyModelSpec& model, double q, Backend forced,
                         InversionConfig cfg = {});
  ~ScaleFunctionEvaluator();
  ScaleFunctionEvaluator(const ScaleFunctionEvaluator&);
  ScaleFunctionEvaluator& operator=(const ScaleFunctionEvaluator&) = delete;
  ScaleFunctionEvaluator(ScaleFunctionEvaluator&&) noexcept;

  double w(double x) const;        // W^{(q)}(x), 0 for x <= 0
  double w_prime(double x) const;  // transform-based
  double w_prime_referee(double x) const;  // central-difference referee
  double z(double x) const;        // Z^{(q)}(x), 1 for x <= 0

  double phi_q() const;
  double w0() const;        // W^{(q)}(0+)
  double w_prime0() const;  // W^{(q)'}(0+); +inf when sigma = 0, Pi = inf
  double level() const { return q_; }
  Backend backend() const;
  const LevyModelSpec& model() const { return model_; }

  // Tilted evaluator under P^s: level p = q - psi(s), exponent
  // psi_s(u) = psi(u+s) - psi(s).
  TiltedScale tilted(double s) const;

  BoundaryReport boundary_report() const;

private:
  friend class TiltedScale;
  LevyModelSpec model_;
  double q_;
  InversionConfig cfg_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class TiltedScale {
public:
  double w(double x) const;
  double w_prime(double x) const;
  double z(double x) const;
  double level() const { return p_; }  // p = q - psi(s)
  double tilt() const { return s_; }

  ~TiltedScale();
  TiltedScale(TiltedScale&&) noexcept;

private:
  friend class ScaleFunctionEvaluator;
  TiltedScale();
  double s_ = 0.0;
  double p_ = 0.0;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace levydd
