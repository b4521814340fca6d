#include "levydd/scale_fn.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

namespace levydd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// --- Brownian closed form: psi(s) = mu s + sigma^2 s^2 / 2, any real level ---

struct BrownianCF {
  double mu = 0, sigma = 1, level = 0;

  double c() const { return mu / (sigma * sigma); }
  double disc() const { return mu * mu + 2.0 * level * sigma * sigma; }

  double w(double x) const {
    if (x <= 0) return 0.0;
    const double s2 = sigma * sigma, D = disc(), cc = c();
    if (std::abs(D) < 1e-12 * (mu * mu + s2 * s2 + 1.0)) {
      return 2.0 / s2 * x * std::exp(-cc * x);
    }
    if (D > 0) {
      const double del = std::sqrt(D) / s2;
      return 2.0 / (s2 * del) * std::exp(-cc * x) * std::sinh(del * x);
    }
    const double del = std::sqrt(-D) / s2;
    return 2.0 / (s2 * del) * std::exp(-cc * x) * std::sin(del * x);
  }

  double w_prime(double x) const {
    const double s2 = sigma * sigma, D = disc(), cc = c();
    if (x <= 0) return 0.0;
    if (std::abs(D) < 1e-12 * (mu * mu + s2 * s2 + 1.0)) {
      return 2.0 / s2 * std::exp(-cc * x) * (1.0 - cc * x);
    }
    if (D > 0) {
      const double del = std::sqrt(D) / s2;
      return 2.0 / s2 * std::exp(-cc * x) *
             (std::cosh(del * x) - cc / del * std::sinh(del * x));
    }
    const double del = std::sqrt(-D) / s2;
    return 2.0 / s2 * std::exp(-cc * x) *
           (std::cos(del * x) - cc / del * std::sin(del * x));
  }

  double z(double x) const {
    if (x <= 0 || level == 0.0) return 1.0;
    const double s2 = sigma * sigma, D = disc(), cc = c();
    if (std::abs(D) < 1e-12 * (mu * mu + s2 * s2 + 1.0)) {
      if (std::abs(cc) < 1e-14) return 1.0 + level * x * x / s2;
      return 1.0 +
             level * 2.0 / s2 * (1.0 - std::exp(-cc * x) * (1.0 + cc * x)) / (cc * cc);
    }
    if (D > 0) {
      const double del = std::sqrt(D) / s2;
      return 2.0 - std::exp(-cc * x) *
                       (std::cosh(del * x) + cc / del * std::sinh(del * x));
    }
    const double del = std::sqrt(-D) / s2;
    return std::exp(-cc * x) * (std::cos(del * x) + cc / del * std::sin(del * x));
  }
};

// --- Stable closed form: psi(s) = s^alpha, level q >= 0 (power series) ---

struct StableCF {
  double alpha = 1.5, level = 0;

  // sum over k of level^k x^{alpha(k+1)+off} / Gamma(alpha(k+1)+off+1), off in {-1,-2}
  double series(double x, double off, bool z_form = false) const {
    const double lx = std::log(x);
    const double ll = level > 0 ? std::log(level) : -kInf;
    double sum = 0.0, prev = kInf;
    for (int k = 0; k <= 500; ++k) {
      const double ak = alpha * (k + 1);
      const double k_ll = (k == 0) ? 0.0 : k * ll;  // avoid 0 * (-inf)
      double lt;
      if (z_form) {
        lt = (k + 1) * ll + ak * lx - std::lgamma(ak + 1.0);
      } else {
        lt = k_ll + (ak + off) * lx - std::lgamma(ak + off + 1.0);
      }
      const double term = std::isfinite(lt) ? std::exp(lt) : 0.0;
      sum += term;
      if (k >= 2 && term < 1e-16 * sum && term <= prev) return sum;
      prev = term;
      if (level == 0.0) return sum;  // single term
    }
    throw NumericsError("stable scale-function series did not converge");
  }

  double w(double x) const { return x <= 0 ? 0.0 : series(x, -1.0); }
  double w_prime(double x) const { return x <= 0 ? 0.0 : series(x, -2.0); }
  double z(double x) const {
    if (x <= 0 || level == 0.0) return 1.0;
    return 1.0 + series(x, 0.0, /*z_form=*/true);
  }
};

// --- Generic inversion backend ---

struct InversionScale {
  std::function<Complex(Complex)> psi;  // exponent of the (possibly tilted) model
  double level = 0;                     // may be negative for tilted evaluators
  double abscissa = 0;                  // contour base, right of all singularities
  double w0 = 0;                        // W(0+)
  double wp0 = kInf;                    // W'(0+), +inf when unknown/infinite
  InversionConfig cfg;

  double w(double x) const {
    if (x <= 0) return 0.0;
    auto F = [this](Complex s) { return 1.0 / (psi(s) - level) - w0 / s; };
    return w0 + laplace_invert(F, x, cfg, abscissa);
  }

  double w_prime(double x) const {
    if (x <= 0) return 0.0;
    const bool smooth = std::isfinite(wp0);
    const double a = abscissa;
    auto F = [this, smooth, a](Complex s) {
      Complex v = s / (psi(s) - level) - w0;
      if (smooth) v -= wp0 / (s - a + 1.0);
      return v;
    };
    double val = laplace_invert(F, x, cfg, abscissa);
    if (smooth) val += wp0 * std::exp((a - 1.0) * x);
    return val;
  }
};

using ScaleVariant = std::variant<BrownianCF, StableCF, InversionScale>;

double variant_w(const ScaleVariant& v, double x) {
  return std::visit([&](const auto& s) { return s.w(x); }, v);
}
double variant_wp(const ScaleVariant& v, double x) {
  return std::visit([&](const auto& s) { return s.w_prime(x); }, v);
}

// W'(0+) per the boundary table, for the exponent tilted by s at the given level.
double wprime0_of(const LevyModelSpec& model, double tilt, double level) {
  const double sig = model.gaussian_sigma;
  if (sig > 0) return 2.0 / (sig * sig);
  const auto& nj = model.neg_jump;
  double mass = kInf;
  if (nj.family == NegJumpFamily::exponential) {
    mass = nj.intensity * nj.rate / (nj.rate + tilt);  // int e^{tilt x} Pi(dx)
  } else if (nj.family == NegJumpFamily::none) {
    mass = 0.0;
  }
  if (!std::isfinite(mass)) return kInf;
  const double d = classify_variation(model).drift;
  return (level + mass) / (d * d);
}

double w0_of(const LevyModelSpec& model) {
  const VariationClass vc = classify_variation(model);
  return vc.kind == PathVariation::bounded ? 1.0 / vc.drift : 0.0;
}

bool is_pure_brownian(const LevyModelSpec& m) {
  return m.neg_jump.family == NegJumpFamily::none && m.gaussian_sigma > 0;
}

bool is_pure_stable(const LevyModelSpec& m) {
  if (m.neg_jump.family != NegJumpFamily::stable_tail || m.gaussian_sigma != 0)
    return false;
  const double a = m.neg_jump.alpha;
  const double b = -m.center_mu - a / std::tgamma(2.0 - a);  // residual drift
  return std::abs(b) <= 1e-12 * (1.0 + std::abs(m.center_mu));
}

// Aitken delta-squared extrapolation of a geometrically converging sequence.
double aitken_limit(const std::vector<double>& v) {
  std::vector<double> s = v;
  for (int pass = 0; pass < 2 && s.size() >= 3; ++pass) {
    std::vector<double> nxt;
    for (size_t i = 0; i + 2 < s.size(); ++i) {
      const double d1 = s[i + 1] - s[i], d2 = s[i + 2] - s[i + 1];
      const double den = d2 - d1;
      if (std::abs(den) < 1e-300)
        nxt.push_back(s[i + 2]);
      else
        nxt.push_back(s[i + 2] - d2 * d2 / den);
    }
    s = nxt;
  }
  return s.back();
}

}  // namespace

// ---------------------------------------------------------------------------
// ScaleFunctionEvaluator
// ---------------------------------------------------------------------------

struct ScaleFunctionEvaluator::Impl {
  ScaleVariant scale;
  double phi_q = 0;
  double w0 = 0;
  double wp0 = kInf;
  Backend backend = Backend::inversion;
};

ScaleFunctionEvaluator::ScaleFunctionEvaluator(const LevyModelSpec& model, double q,
                                               InversionConfig cfg)
    : ScaleFunctionEvaluator(model, q,
                             (is_pure_brownian(model) || is_pure_stable(model))
                                 ? Backend::closed_form
                                 : Backend::inversion,
                             cfg) {}

ScaleFunctionEvaluator::ScaleFunctionEvaluator(const LevyModelSpec& model, double q,
                                               Backend forced, InversionConfig cfg)
    : model_(model.sn_part()), q_(q), cfg_(cfg), impl_(std::make_unique<Impl>()) {
  if (q < 0) throw SpecError("scale functions require q >= 0");
  cfg_.validate();
  impl_->phi_q = phi(model_, q);
  impl_->w0 = w0_of(model_);
  impl_->wp0 = wprime0_of(model_, 0.0, q);
  impl_->backend = forced;

  if (forced == Backend::closed_form) {
    if (is_pure_brownian(model_)) {
      impl_->scale = BrownianCF{-model_.center_mu, model_.gaussian_sigma, q};
    } else if (is_pure_stable(model_)) {
      impl_->scale = StableCF{model_.neg_jump.alpha, q};
    } else {
      throw SpecError("no closed-form scale function for this model");
    }
  } else {
    InversionScale inv;
    const LevyModelSpec sn = model_;
    inv.psi = [sn](Complex s) { return psi(sn, s); };
    inv.level = q;
    inv.abscissa = impl_->phi_q;
    inv.w0 = impl_->w0;
    inv.wp0 = impl_->wp0;
    inv.cfg = cfg_;
    impl_->scale = inv;
  }
}

ScaleFunctionEvaluator::~ScaleFunctionEvaluator() = default;
ScaleFunctionEvaluator::ScaleFunctionEvaluator(ScaleFunctionEvaluator&&) noexcept =
    default;
ScaleFunctionEvaluator::ScaleFunctionEvaluator(const ScaleFunctionEvaluator& o)
    : model_(o.model_), q_(o.q_), cfg_(o.cfg_), impl_(std::make_unique<Impl>(*o.impl_)) {}

double ScaleFunctionEvaluator::w(double x) const { return variant_w(impl_->scale, x); }
double ScaleFunctionEvaluator::w_prime(double x) const {
  return variant_wp(impl_->scale, x);
}

double ScaleFunctionEvaluator::w_prime_referee(double x) const {
  if (!(x > 0)) throw SpecError("w_prime_referee requires x > 0");
  const double h = x * 1e-5;
  return (w(x + h) - w(x - h)) / (2.0 * h);
}

double ScaleFunctionEvaluator::z(double x) const {
  if (x <= 0 || q_ == 0.0) return 1.0;
  if (const auto* b = std::get_if<BrownianCF>(&impl_->scale)) return b->z(x);
  if (const auto* s = std::get_if<StableCF>(&impl_->scale)) return s->z(x);
  const QuadratureResult qr =
      integrate([this](double y) { return w(y); }, 0.0, x, 1e-10, 1e-12);
  return 1.0 + q_ * qr.value;
}

double ScaleFunctionEvaluator::phi_q() const { return impl_->phi_q; }
double ScaleFunctionEvaluator::w0() const { return impl_->w0; }
double ScaleFunctionEvaluator::w_prime0() const { return impl_->wp0; }
ScaleFunctionEvaluator::Backend ScaleFunctionEvaluator::backend() const {
  return impl_->backend;
}

// ---------------------------------------------------------------------------
// TiltedScale
// ---------------------------------------------------------------------------

struct TiltedScale::Impl {
  ScaleVariant scale;
  double q = 0;
  std::function<double(double)> z_closed;  // set for closed forms
};

TiltedScale::TiltedScale() = default;
TiltedScale::~TiltedScale() = default;
TiltedScale::TiltedScale(TiltedScale&&) noexcept = default;

TiltedScale ScaleFunctionEvaluator::tilted(double s) const {
  if (s < 0) throw SpecError("tilt parameter must be >= 0");
  TiltedScale t;
  t.impl_ = std::make_unique<TiltedScale::Impl>();
  t.s_ = s;
  const double psi_s = psi(model_, s);
  const double p = q_ - psi_s;
  t.p_ = p;
  t.impl_->q = q_;

  if (is_pure_brownian(model_)) {
    const double mu = -model_.center_mu, sig = model_.gaussian_sigma;
    // completing the square: tilted exponent is Brownian with drift mu + sigma^2 s
    t.impl_->scale = BrownianCF{mu + sig * sig * s, sig, p};
    return t;
  }
  if (s == 0.0 && is_pure_stable(model_)) {
    t.impl_->scale = StableCF{model_.neg_jump.alpha, q_};
    return t;
  }

  InversionScale inv;
  const LevyModelSpec sn = model_;
  inv.psi = [sn, s, psi_s](Complex u) { return psi(sn, u + s) - psi_s; };
  inv.level = p;
  auto psi_s_real = [&sn, s, psi_s](double u) { return psi(sn, u + s) - psi_s; };
  auto dpsi_s_real = [&sn, s](double u) { return psi_prime(sn, u + s); };
  // For p < 0 the transform 1/(psi_s - p) is analytic right of the abscissa of
  // absolute convergence, which is bounded by Phi_s(|p|).
  inv.abscissa = detail::largest_psi_root(psi_s_real, dpsi_s_real, std::abs(p));
  inv.w0 = w0_of(model_);
  inv.wp0 = wprime0_of(model_, s, p);
  inv.cfg = cfg_;
  t.impl_->scale = inv;
  return t;
}

double TiltedScale::w(double x) const { return variant_w(impl_->scale, x); }
double TiltedScale::w_prime(double x) const { return variant_wp(impl_->scale, x); }

double TiltedScale::z(double x) const {
  if (x <= 0 || p_ == 0.0) return 1.0;
  if (const auto* b = std::get_if<BrownianCF>(&impl_->scale)) return b->z(x);
  if (const auto* s = std::get_if<StableCF>(&impl_->scale)) return s->z(x);
  const QuadratureResult qr =
      integrate([this](double y) { return w(y); }, 0.0, x, 1e-10, 1e-12);
  return 1.0 + p_ * qr.value;
}

// ---------------------------------------------------------------------------
// Boundary behaviour report
// ---------------------------------------------------------------------------

BoundaryReport ScaleFunctionEvaluator::boundary_report() const {
  BoundaryReport r;
  r.q = q_;
  r.phi_q = impl_->phi_q;
  r.w0_predicted = impl_->w0;
  r.wprime0_finite = std::isfinite(impl_->wp0);
  r.wprime0_predicted = r.wprime0_finite ? impl_->wp0 : kInf;

  std::vector<double> wv, wpv;
  for (int k = 5; k <= 13; ++k) {
    const double x = std::pow(2.0, -k);
    wv.push_back(w(x));
    wpv.push_back(w_prime(x));
  }
  r.w0_extrapolated = aitken_limit(wv);
  const double w_scale = std::max(std::abs(w(0.5)), 1e-12);
  if (r.w0_predicted == 0.0) {
    r.w0_ok = std::abs(r.w0_extrapolated) <= 1e-2 * w_scale;
  } else {
    r.w0_ok = std::abs(r.w0_extrapolated - r.w0_predicted) <= 1e-2 * r.w0_predicted;
  }

  if (r.wprime0_finite) {
    r.wprime0_extrapolated = aitken_limit(wpv);
    r.wprime0_ok = std::abs(r.wprime0_extrapolated - r.wprime0_predicted) <=
                   1e-2 * r.wprime0_predicted;
  } else {
    bool increasing = true;
    for (size_t i = 1; i < wpv.size(); ++i) increasing &= wpv[i] > wpv[i - 1];
    r.wprime0_extrapolated = wpv.back();
    r.wprime0_ok = increasing && wpv.back() > 1.25 * wpv.front();
  }

  // large-x ratio against Phi(q); empirical value only, no rate asserted
  double xr = 50.0;
  if (impl_->phi_q * xr > 600.0) xr = 600.0 / impl_->phi_q;
  r.ratio_x = xr;
  r.ratio_value = w_prime(xr) / w(xr);
  r.ratio_dev = std::abs(r.ratio_value - r.phi_q) / std::max(std::abs(r.phi_q), 1e-2);
  return r;
}

std::string BoundaryReport::summary() const {
  std::ostringstream os;
  os << "q=" << q << " W(0+): pred=" << w0_predicted << " extrap=" << w0_extrapolated
     << (w0_ok ? " ok" : " MISMATCH") << "; W'(0+): ";
  if (wprime0_finite)
    os << "pred=" << wprime0_predicted << " extrap=" << wprime0_extrapolated;
  else
    os << "divergent (last=" << wprime0_extrapolated << ")";
  os << (wprime0_ok ? " ok" : " MISMATCH") << "; W'/W(" << ratio_x
     << ")=" << ratio_value << " vs phi(q)=" << phi_q << " dev=" << ratio_dev;
  return os.str();
}

}  // namespace levydd
