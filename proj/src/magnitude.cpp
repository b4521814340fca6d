#include "levydd/magnitude.hpp"

#include <cmath>

#include "levydd/scale_fn.hpp"

namespace levydd {

void DrawdownQuery::validate() const {
  if (!(a > 0)) throw SpecError("drawdown threshold a must be > 0");
  if (q < 0 || r < 0 || s < 0 || delta < 0)
    throw SpecError("transform arguments must be >= 0");
}

namespace {

void require_sn(const LevyModelSpec& model) {
  if (!model.spectrally_negative())
    throw SpecError("magnitude laws require a spectrally negative model");
}

// (Z_s^{(p)}(a) W_s^{(p)'}(a) - p W_s^{(p)}(a)^2) / W_s^{(p)}(a)
double crash_factor(const ScaleFunctionEvaluator& base_q, double s, double a) {
  const TiltedScale t = base_q.tilted(s);
  const double w = t.w(a);
  const double wp = t.w_prime(a);
  const double z = t.z(a);
  const double p = t.level();
  return (z * wp - p * w * w) / w;
}

}  // namespace

double lt_running_max_exceeds(const LevyModelSpec& model, double q, double x, double a,
                              const InversionConfig& cfg) {
  require_sn(model);
  if (!(x > 0) || !(a > 0)) throw SpecError("lt_running_max_exceeds needs x, a > 0");
  if (q < 0) throw SpecError("q must be >= 0");
  const ScaleFunctionEvaluator ev(model, q, cfg);
  return std::exp(-ev.w_prime(a) / ev.w(a) * x);
}

double mean_max_at_drawdown(const LevyModelSpec& model, double a,
                            const InversionConfig& cfg) {
  require_sn(model);
  if (!(a > 0)) throw SpecError("mean_max_at_drawdown needs a > 0");
  const ScaleFunctionEvaluator ev(model, 0.0, cfg);
  return ev.w(a) / ev.w_prime(a);
}

double ricochet_lt(const LevyModelSpec& model, double q, double s, double a,
                   const InversionConfig& cfg) {
  require_sn(model);
  if (!(a > 0)) throw SpecError("ricochet_lt needs a > 0");
  if (q < 0 || s < 0) throw SpecError("q, s must be >= 0");
  const ScaleFunctionEvaluator ev0(model, 0.0, cfg);
  const ScaleFunctionEvaluator evq(model, q, cfg);
  return ev0.w(a) / ev0.w_prime(a) * crash_factor(evq, s, a);
}

double quadruple_lt(const LevyModelSpec& model, const DrawdownQuery& query,
                    const InversionConfig& cfg) {
  require_sn(model);
  query.validate();
  const double a = query.a;
  const ScaleFunctionEvaluator ev_qr(model, query.q + query.r, cfg);
  const double w = ev_qr.w(a);
  const double rising = w / (query.delta * w + ev_qr.w_prime(a));

  const ScaleFunctionEvaluator ev_q(model, query.q, cfg);
  return rising * crash_factor(ev_q, query.s, a);
}

}  // namespace levydd
