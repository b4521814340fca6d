#include "levydd/asymptotics.hpp"

#include <cmath>

#include "levydd/scale_fn.hpp"

namespace levydd {

namespace {

bool stable_family(const LevyModelSpec& m) {
  return m.gaussian_sigma == 0.0 && m.neg_jump.family == NegJumpFamily::stable_tail;
}

// Truncated L1 norms of phi(s0 - i v) = (s psi'(s) - psi(s))/psi(s)^2 must
// flatten as the window grows.
bool integrability_probe(const LevyModelSpec& model) {
  const LevyModelSpec sn = model.sn_part();
  const double s0 = phi(sn, 0.0) + 1.0;
  auto integrand = [&](double v) {
    const Complex s(s0, -v);
    const Complex ps = psi(sn, s);
    return std::abs((s * psi_prime(sn, s) - ps) / (ps * ps));
  };
  double total = 0.0, last_inc = 0.0;
  double lo = 0.0;
  bool decreasing_tail = true;
  for (int j = 0; j <= 7; ++j) {
    const double hi = std::pow(4.0, j);
    const double inc = integrate(integrand, lo, hi, 1e-8, 1e-10).value;
    if (j >= 4 && inc > last_inc) decreasing_tail = false;
    total += inc;
    last_inc = inc;
    lo = hi;
  }
  return decreasing_tail && last_inc <= 1e-3 * total;
}

void require_certified(const LevyModelSpec& model) {
  if (!scale_root_regularity_certified(model))
    throw SpecError(
        "scale-function regularity at 0+ could not be certified for this model");
}

}  // namespace

bool scale_root_regularity_certified(const LevyModelSpec& model) {
  const LevyModelSpec sn = model.sn_part();
  if (sn.gaussian_sigma > 0) return true;
  if (std::isfinite(sn.neg_jump.total_mass())) return true;
  if (stable_family(sn)) return true;
  return integrability_probe(sn);
}

double asymptote_sn(const LevyModelSpec& model, double q, double s) {
  if (!model.spectrally_negative())
    throw SpecError("asymptote_sn requires a spectrally negative model");
  if (q < 0 || s < 0) throw SpecError("q, s must be >= 0");
  require_certified(model);
  const VariationClass vc = classify_variation(model);
  if (vc.kind == PathVariation::unbounded) return s;
  return s + (q - psi(model, s)) / vc.drift;
}

double asymptote_two_sided(const LevyModelSpec& model, double q, double s) {
  if (!model.pos_jump)
    throw SpecError("asymptote_two_sided requires a positive jump component");
  // the limit matches the spectrally negative part's with the same (q, s)
  return asymptote_sn(model.sn_part(), q, s);
}

AsymptoteResult verify_asymptote_sn(const LevyModelSpec& model, double q, double s,
                                    std::vector<double> eps_grid, double tolerance,
                                    const InversionConfig& cfg) {
  if (!model.spectrally_negative())
    throw SpecError("verify_asymptote_sn requires a spectrally negative model");
  AsymptoteResult out;
  out.limit_value = asymptote_sn(model, q, s);

  if (eps_grid.empty()) {
    for (int k = 2; k <= 10; ++k) eps_grid.push_back(std::pow(2.0, -k));
  }
  for (size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] < eps_grid[i - 1]))
      throw SpecError("eps grid must be strictly decreasing");
  if (eps_grid.front() > 0.5 || eps_grid.back() <= 0)
    throw SpecError("eps grid must lie in (0, 0.5]");

  const ScaleFunctionEvaluator ev(model, q, cfg);
  const double qps = q - psi(model, s);
  for (double eps : eps_grid) {
    const double w = ev.w(eps);
    const double wp = ev.w_prime(eps);
    const double trunc =
        integrate([&](double x) { return std::exp(-s * x) * ev.w(x); }, 0.0, eps,
                  1e-10, 1e-13)
            .value;
    const double value = s - qps * (wp / w) * trunc + s * qps * trunc +
                         qps * std::exp(-s * eps) * w;
    out.epsilon_grid.push_back(eps);
    out.scaled_values.push_back(value);
  }
  const double dev = std::abs(out.scaled_values.back() - out.limit_value);
  out.converged = dev <= tolerance * std::max(1.0, std::abs(out.limit_value));
  return out;
}

double finite_activity_limit(const LevyModelSpec& model, double q, double s) {
  const LevyModelSpec sn = model.sn_part();
  const double mass = sn.neg_jump.total_mass();
  if (!std::isfinite(mass))
    throw SpecError("finite_activity_limit requires a finite negative jump mass");
  const VariationClass vc = classify_variation(sn);
  if (vc.kind != PathVariation::bounded)
    throw SpecError("finite_activity_limit requires bounded variation");
  if (q < 0 || s < 0) throw SpecError("q, s must be >= 0");
  return (q + s * vc.drift - psi(sn, s)) / (q + mass);
}

}  // namespace levydd
